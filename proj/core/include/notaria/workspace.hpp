#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "notaria/crypto.hpp"
#include "notaria/model.hpp"
#include "notaria/sim.hpp"

// On-disk workspace. Binary files hold the exact canonical encodings; each
// client directory also carries a JSON mirror of its evidence.
//
//   ca.key                      CA seed (hex)
//   registry.bin                CA-signed key registry
//   ledger.bin                  mock public ledger
//   keys/<identity>.key         seeds of keys created with `keys gen`
//   nodes/node-<i>/chain.log    client-visible blocks
//   nodes/node-<i>/phantom.log  node-only transaction lists
//   clients/client-<i>/tx-<j>.{doc,tx,first,receipt,header,aux}
//   clients/client-<i>/bundle.json
//   report.json, trace.ndjson
namespace notaria::workspace {

/// Explicit path, else $NOTARIA_WORKSPACE, else ./notaria-workspace.
std::filesystem::path resolve(const std::optional<std::filesystem::path>& explicit_path);

struct Layout {
    std::filesystem::path root;

    std::filesystem::path ca_key() const { return root / "ca.key"; }
    std::filesystem::path registry() const { return root / "registry.bin"; }
    std::filesystem::path ledger() const { return root / "ledger.bin"; }
    std::filesystem::path keys_dir() const { return root / "keys"; }
    std::filesystem::path report() const { return root / "report.json"; }
    std::filesystem::path trace() const { return root / "trace.ndjson"; }
    std::filesystem::path node_dir(std::size_t i) const { return root / "nodes" / ("node-" + std::to_string(i)); }
    std::filesystem::path client_dir(std::size_t i) const {
        return root / "clients" / ("client-" + std::to_string(i));
    }
};

/// Paths of one transaction's evidence inside a client directory.
struct BundleFiles {
    std::filesystem::path document, transaction, first_receipt, receipt, header, aux_receipt;
};

BundleFiles bundle_files(const std::filesystem::path& client_dir, std::uint32_t tx);

// Key files hold the 32-byte keygen seed in hex.
void save_keypair(const std::filesystem::path& file, const crypto::KeyPair& keys);
crypto::KeyPair load_keypair(const std::filesystem::path& file);

/// Loads the CA key, creating a random one if the workspace has none.
crypto::KeyPair load_or_create_ca(const Layout& layout);

/// Persists registry, ledger, node logs, client bundles, report and trace.
/// Existing node logs and client bundles are replaced.
void save_sim(const Layout& layout, const sim::SimResult& result);

// JSON mirrors of the binary formats. Digests, keys and signatures are hex.
std::string to_json(const Transaction& tx);
std::string to_json(const FirstReceipt& fr);
std::string to_json(const BlockHeader& h);
std::string to_json(const PubData& p);
/// `block` is unsigned metadata: the receipt itself does not carry k.
std::string to_json(const Receipt& r, std::optional<std::uint64_t> block = std::nullopt);
std::string to_json(const AuxReceipt& r);
/// Phantom parts are shown only with `node_view`.
std::string to_json(const Block& b, bool node_view);
std::string to_json(const sim::ClientEvidence& evidence);

}  // namespace notaria::workspace
