#include "notaria/workspace.hpp"

#include <cstdlib>

#include <json.hpp>

#include "notaria/error.hpp"
#include "notaria/io.hpp"
#include "notaria/nodes.hpp"

namespace notaria::workspace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

ordered_json tx_json(const Transaction& tx) {
    return {{"data_sig", to_hex(tx.data_sig)},
            {"claimed_time", tx.claimed_time.millis},
            {"client", to_hex(tx.client)},
            {"self_sig", to_hex(tx.self_sig)}};
}

ordered_json path_json(const merkle::MerklePath& path) {
    auto out = ordered_json::array();
    for (const auto& step : path.steps) {
        out.push_back({{"side", step.side == merkle::Side::Left ? "left" : "right"}, {"sibling", to_hex(step.sibling)}});
    }
    return out;
}

ordered_json first_json(const FirstReceipt& fr) {
    return {{"tx_digest", to_hex(fr.tx_digest)}, {"validator", to_hex(fr.validator)}, {"sig", to_hex(fr.sig)}};
}

ordered_json header_json(const BlockHeader& h) {
    return {{"index", h.index},
            {"prev_hash", to_hex(h.prev_hash)},
            {"created_at", h.created_at.millis},
            {"block_root", to_hex(h.block_root)},
            {"committer", to_hex(h.committer)},
            {"sig", to_hex(h.sig)},
            {"hash", to_hex(header_hash(h))}};
}

ordered_json pub_json(const PubData& p) {
    return {{"anchorer", to_hex(p.anchorer)},
            {"last_anchor_index", p.last_anchor_index},
            {"epoch_length", p.epoch_length},
            {"aux_root", to_hex(p.aux_root)}};
}

ordered_json receipt_json(const Receipt& r, std::optional<std::uint64_t> block) {
    ordered_json j;
    if (block) j["block"] = *block;
    j["transactions"] = ordered_json::array();
    for (const auto& tx : r.transactions) j["transactions"].push_back(tx_json(tx));
    j["client_root"] = to_hex(r.client_root);
    j["path"] = path_json(r.path);
    j["committer"] = to_hex(r.committer);
    j["sig"] = to_hex(r.sig);
    return j;
}

ordered_json aux_json(const AuxReceipt& r) {
    return {{"first_k", r.first_k},
            {"last_k", r.last_k},
            {"pub_data", pub_json(r.pub_data)},
            {"address", {{"block_height", r.address.block_height}, {"tx_index", r.address.tx_index}}},
            {"path", path_json(r.path)},
            {"sig", to_hex(r.sig)}};
}

void replace_dir(const fs::path& dir) {
    std::error_code ec;
    fs::remove_all(dir, ec);
    fs::create_directories(dir);
}

}  // namespace

fs::path resolve(const std::optional<fs::path>& explicit_path) {
    if (explicit_path && !explicit_path->empty()) return *explicit_path;
    if (const char* env = std::getenv("NOTARIA_WORKSPACE"); env && *env) return env;
    return "notaria-workspace";
}

BundleFiles bundle_files(const fs::path& dir, std::uint32_t tx) {
    auto base = "tx-" + std::to_string(tx);
    return {dir / (base + ".doc"),     dir / (base + ".tx"),     dir / (base + ".first"),
            dir / (base + ".receipt"), dir / (base + ".header"), dir / (base + ".aux")};
}

void save_keypair(const fs::path& file, const crypto::KeyPair& keys) {
    // libsodium secret keys start with the 32-byte seed
    io::write_text(file, to_hex(keys.secret_key.view().first(32)) + "\n");
}

crypto::KeyPair load_keypair(const fs::path& file) {
    auto raw = io::read_file(file);
    std::string text(raw.begin(), raw.end());
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' ')) text.pop_back();
    auto seed = from_hex(text);
    if (seed.size() != crypto::Seed::size) {
        throw Error(ErrorCode::MalformedEncoding, file.string() + ": expected a 32-byte hex seed");
    }
    return crypto::keygen(crypto::Seed::from(seed));
}

crypto::KeyPair load_or_create_ca(const Layout& layout) {
    if (fs::exists(layout.ca_key())) return load_keypair(layout.ca_key());
    auto ca = crypto::keygen_random();
    save_keypair(layout.ca_key(), ca);
    return ca;
}

void save_sim(const Layout& layout, const sim::SimResult& result) {
    const auto& art = result.artifacts;
    fs::create_directories(layout.root);
    save_keypair(layout.ca_key(), art.ca);
    art.registry.save(layout.registry(), art.ca);
    art.ledger.save(layout.ledger());

    replace_dir(layout.root / "nodes");
    for (std::size_t i = 0; i < art.chains.size(); ++i) {
        auto dir = layout.node_dir(i);
        fs::create_directories(dir);
        io::write_text(dir / "identity", to_hex(art.chains[i].identity) + "\n");
        io::write_file(dir / "chain.log", {});
        io::write_file(dir / "phantom.log", {});
        for (const auto& b : art.chains[i].blocks) {
            nodes::append_chain_log(dir / "chain.log", b);
            nodes::append_phantom_log(dir / "phantom.log", b.header.index, b.phantom);
        }
    }

    replace_dir(layout.root / "clients");
    for (const auto& c : art.clients) {
        auto dir = layout.client_dir(c.index);
        fs::create_directories(dir);
        io::write_text(dir / "identity", to_hex(c.identity) + "\n");
        for (const auto& item : c.items) {
            auto files = bundle_files(dir, item.tx);
            io::write_file(files.document, item.document);
            io::write_file(files.transaction, encode(item.transaction));
            if (item.first_receipt) io::write_file(files.first_receipt, encode(*item.first_receipt));
            if (item.receipt) io::write_file(files.receipt, encode(*item.receipt));
            if (item.header) io::write_file(files.header, encode(*item.header));
            if (item.aux_receipt) io::write_file(files.aux_receipt, encode(*item.aux_receipt));
        }
        io::write_text(dir / "bundle.json", to_json(c) + "\n");
    }

    io::write_text(layout.report(), sim::to_json(result.report) + "\n");
    if (result.report.config.trace) {
        std::string trace;
        for (const auto& line : art.trace) trace += line + "\n";
        io::write_text(layout.trace(), trace);
    }
}

std::string to_json(const Transaction& tx) { return tx_json(tx).dump(2); }
std::string to_json(const FirstReceipt& fr) { return first_json(fr).dump(2); }
std::string to_json(const BlockHeader& h) { return header_json(h).dump(2); }
std::string to_json(const PubData& p) { return pub_json(p).dump(2); }
std::string to_json(const Receipt& r, std::optional<std::uint64_t> block) { return receipt_json(r, block).dump(2); }
std::string to_json(const AuxReceipt& r) { return aux_json(r).dump(2); }

std::string to_json(const Block& b, bool node_view) {
    ordered_json j;
    j["header"] = header_json(b.header);
    j["summaries"] = ordered_json::array();
    for (const auto& s : b.summaries) {
        j["summaries"].push_back({{"enc_identity", to_hex(s.enc_identity)}, {"client_root", to_hex(s.client_root)}});
    }
    if (node_view) {
        ordered_json phantom = ordered_json::object();
        for (const auto& [client, txs] : b.phantom.transactions) {
            auto list = ordered_json::array();
            for (const auto& tx : txs) list.push_back(tx_json(tx));
            phantom[to_hex(client)] = list;
        }
        j["phantom"] = phantom;
    } else {
        j["phantom"] = "redacted";
    }
    return j.dump(2);
}

std::string to_json(const sim::ClientEvidence& evidence) {
    ordered_json j;
    j["client"] = evidence.index;
    j["identity"] = to_hex(evidence.identity);
    j["items"] = ordered_json::array();
    for (const auto& item : evidence.items) {
        ordered_json e;
        e["tx"] = item.tx;
        e["document_hash"] = to_hex(crypto::hash(item.document));
        e["transaction"] = tx_json(item.transaction);
        e["first_receipt"] = item.first_receipt ? first_json(*item.first_receipt) : ordered_json();
        e["receipt"] = item.receipt ? receipt_json(*item.receipt, item.block) : ordered_json();
        e["header"] = item.header ? header_json(*item.header) : ordered_json();
        e["aux_receipt"] = item.aux_receipt ? aux_json(*item.aux_receipt) : ordered_json();
        j["items"].push_back(e);
    }
    return j.dump(2);
}

}  // namespace notaria::workspace
