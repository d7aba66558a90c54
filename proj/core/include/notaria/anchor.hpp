#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "notaria/crypto.hpp"
#include "notaria/ledger.hpp"
#include "notaria/merkle.hpp"
#include "notaria/model.hpp"

// Auxiliary node: every m proxy blocks it builds the 2m-leaf auxiliary tree,
// commits pub_data to the public ledger and issues auxiliary receipts.
namespace notaria::anchor {

/// Leaves [P_{k0+1}, H(H_{k0+1}), P_{k0+2}, H(H_{k0+2}), ...] in ascending k.
/// `headers` must hold every index in k0+1..k0+m. Throws MissingHeader.
merkle::MerkleTree build_aux_tree(const std::map<std::uint64_t, BlockHeader>& headers, std::uint64_t k0,
                                  std::uint64_t m);

/// Leaf position of block k's root inside the auxiliary tree.
std::size_t aux_leaf_index(std::uint64_t k, std::uint64_t k0);

PubData make_pub_data(const Identity& anchorer, std::uint64_t k0, std::uint64_t m, const Digest& aux_root);

/// Single-transaction commitment of pub_data. Throws LedgerUnavailable.
LedgerAddress commit(PublicLedger& ledger, const PubData& pub_data);

enum class AnomalyKind { MissingBlock, HeaderRewrite };

struct MonitorAnomaly {
    AnomalyKind kind;
    std::uint64_t k;
    std::string details;
};

std::string_view to_string(AnomalyKind kind);

struct EpochRecord {
    std::uint64_t k0 = 0;
    std::uint64_t m = 0;
    PubData pub_data;
    LedgerAddress address;
    std::map<std::uint64_t, BlockHeader> headers;      // headers the tree was built from
    std::map<Identity, std::set<std::uint64_t>> membership;
    std::vector<std::uint64_t> included;  // block indices present in the tree, ascending
    std::vector<Digest> leaves;
};

class AuxiliaryNode {
public:
    /// Throws InvalidConfig when m < 2.
    AuxiliaryNode(crypto::KeyPair keys, std::uint64_t m, std::uint64_t k0 = 0);

    const Identity& identity() const { return keys_.identity; }
    const PublicKey& public_key() const { return keys_.public_key; }
    std::uint64_t last_anchor() const { return k0_; }
    std::uint64_t epoch_length() const { return m_; }
    const std::map<std::uint64_t, BlockHeader>& observed_headers() const { return headers_; }
    const std::vector<MonitorAnomaly>& anomalies() const { return anomalies_; }
    const std::vector<EpochRecord>& epochs() const { return epochs_; }

    /// Records a header, logging gaps and re-signed headers for the same k.
    /// A rewritten header replaces the stored one.
    void monitor(const BlockHeader& header);
    /// Header plus the client-visible summaries; decrypts the client
    /// identities to track which clients transacted in which block.
    void observe_block(const Block& block);

    /// True once headers k0+1..k0+m are all present.
    bool epoch_ready() const;

    /// Builds the tree, commits pub_data and issues one receipt per client,
    /// anchored at the earliest block the client transacted in. Advances k0.
    /// `omit` leaves a block out of the tree (auxiliary-omission attack).
    /// Throws MissingHeader, LedgerUnavailable.
    std::map<Identity, AuxReceipt> anchor_epoch(PublicLedger& ledger, std::optional<std::uint64_t> omit = std::nullopt);

    /// Additional path for a client in a given block of an anchored epoch.
    /// Throws ClientNotInEpoch.
    AuxReceipt query_aux_receipt(const Identity& client, std::uint64_t k) const;

private:
    AuxReceipt make_receipt(const EpochRecord& epoch, std::uint64_t k) const;

    crypto::KeyPair keys_;
    std::uint64_t m_;
    std::uint64_t k0_;
    std::map<std::uint64_t, BlockHeader> headers_;
    std::map<std::uint64_t, std::set<Identity>> block_clients_;
    std::vector<MonitorAnomaly> anomalies_;
    std::vector<EpochRecord> epochs_;
};

/// Issues receipts for every client in `membership` from an already built
/// tree and committed record. Throws ClientNotInEpoch for clients without
/// blocks in the epoch.
std::map<Identity, AuxReceipt> issue_aux_receipts(const crypto::KeyPair& anchorer, const merkle::MerkleTree& tree,
                                                  const PubData& pub_data, const LedgerAddress& address,
                                                  const std::map<Identity, std::set<std::uint64_t>>& membership);

}  // namespace notaria::anchor
