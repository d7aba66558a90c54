#include "notaria/nodes.hpp"

#include <algorithm>
#include <set>

#include "notaria/codec.hpp"
#include "notaria/error.hpp"
#include "notaria/io.hpp"
#include "notaria/merkle.hpp"

namespace notaria::nodes {

void ConsensusStub::validate() const {
    if (!(quorum > 0.0 && quorum <= 1.0)) {
        throw Error(ErrorCode::InvalidConfig, "quorum must lie in (0, 1]");
    }
}

bool ConsensusStub::reached(std::size_t acks, std::size_t total) const {
    if (total == 0) return false;
    return static_cast<double>(acks) >= quorum * static_cast<double>(total) - 1e-9;
}

std::string_view to_string(BlockReject r) {
    switch (r) {
        case BlockReject::None: return "None";
        case BlockReject::UnknownCommitter: return "UnknownCommitter";
        case BlockReject::BadHeaderSig: return "BadHeaderSig";
        case BlockReject::PrevHashMismatch: return "PrevHashMismatch";
        case BlockReject::IndexMismatch: return "IndexMismatch";
        case BlockReject::ClockRegression: return "ClockRegression";
        case BlockReject::SummaryMismatch: return "SummaryMismatch";
        case BlockReject::RootMismatch: return "RootMismatch";
        case BlockReject::InvalidTransaction: return "InvalidTransaction";
    }
    return "Unknown";
}

Digest client_root(std::vector<Transaction> txs) {
    if (txs.empty()) throw Error(ErrorCode::EmptyTransactionSet);
    std::sort(txs.begin(), txs.end(), tx_order);
    std::vector<Digest> leaves;
    leaves.reserve(txs.size());
    for (const auto& tx : txs) leaves.push_back(merkle::leaf_digest(encode(tx)));
    return merkle::MerkleTree::build(std::move(leaves)).root();
}

Digest block_root(std::vector<Digest> client_roots) {
    if (client_roots.empty()) return Digest{};
    std::sort(client_roots.begin(), client_roots.end());
    return merkle::MerkleTree::build(std::move(client_roots)).root();
}

Identity select_committer(std::vector<Identity> nodes, std::uint64_t k) {
    if (nodes.empty()) throw Error(ErrorCode::InvalidConfig, "no service nodes");
    std::sort(nodes.begin(), nodes.end());
    return nodes[(k == 0 ? 0 : k - 1) % nodes.size()];
}

bool chain_is_consistent(std::span<const BlockHeader> headers) {
    for (std::size_t i = 1; i < headers.size(); ++i) {
        const auto& prev = headers[i - 1];
        const auto& cur = headers[i];
        if (cur.prev_hash != header_hash(prev)) return false;
        if (cur.index <= prev.index) return false;
        if (cur.created_at <= prev.created_at) return false;
    }
    return true;
}

ServiceNode::ServiceNode(crypto::KeyPair keys, std::shared_ptr<const Registry> registry, NodeConfig config)
    : keys_(std::move(keys)), registry_(std::move(registry)), config_(config) {}

std::size_t ServiceNode::mempool_size() const {
    std::size_t n = 0;
    for (const auto& [id, txs] : mempool_) n += txs.size();
    return n;
}

std::optional<BlockHeader> ServiceNode::tip() const {
    if (chain_.empty()) return std::nullopt;
    return chain_.back().header;
}

Timestamp ServiceNode::interval_start() const {
    return chain_.empty() ? config_.genesis_time : chain_.back().header.created_at;
}

std::uint64_t ServiceNode::next_index() const { return chain_.empty() ? 1 : chain_.back().header.index + 1; }

Digest ServiceNode::prev_hash() const { return chain_.empty() ? Digest{} : header_hash(chain_.back().header); }

void ServiceNode::check_transaction(const Transaction& tx, Timestamp now) const {
    if (!ca_available_) throw Error(ErrorCode::CAUnavailable, "revocation status unavailable");
    auto pk = registry_->key_for(tx.client, Role::Client);
    if (!pk) throw Error(ErrorCode::UnknownClient, to_hex(tx.client));
    if (!verify_transaction_sig(*pk, tx)) throw Error(ErrorCode::BadSignature);
    if (tx.claimed_time <= interval_start()) {
        throw Error(ErrorCode::StaleTime, "claimed " + std::to_string(tx.claimed_time.millis) + " <= interval start " +
                                              std::to_string(interval_start().millis));
    }
    if (tx.claimed_time.millis > now.millis + config_.max_future_skew_ms) {
        throw Error(ErrorCode::FutureTime, "claimed " + std::to_string(tx.claimed_time.millis) + " at " +
                                               std::to_string(now.millis));
    }
}

void ServiceNode::insert(const Transaction& tx) {
    auto& list = mempool_[tx.client];
    auto pos = std::lower_bound(list.begin(), list.end(), tx, tx_order);
    if (pos != list.end() && *pos == tx) return;
    list.insert(pos, tx);
}

FirstReceipt ServiceNode::validate_transaction(const Transaction& tx, Timestamp now) {
    check_transaction(tx, now);
    insert(tx);
    return make_first_receipt(keys_, tx);
}

void ServiceNode::accept_broadcast(const Transaction& tx, Timestamp now) {
    check_transaction(tx, now);
    insert(tx);
}

void ServiceNode::insert_unchecked(const Transaction& tx) { insert(tx); }

bool ServiceNode::remove_from_mempool(const Transaction& tx) {
    auto it = mempool_.find(tx.client);
    if (it == mempool_.end()) return false;
    auto& list = it->second;
    auto pos = std::find(list.begin(), list.end(), tx);
    if (pos == list.end()) return false;
    list.erase(pos);
    if (list.empty()) mempool_.erase(it);
    return true;
}

std::vector<Block> ServiceNode::truncate_from(std::uint64_t k) {
    std::vector<Block> removed;
    while (!chain_.empty() && chain_.back().header.index >= k) {
        removed.insert(removed.begin(), std::move(chain_.back()));
        chain_.pop_back();
    }
    return removed;
}

BuildResult ServiceNode::build_block(Timestamp t_k, const PublicKey& aux_pk, bool allow_empty) {
    if (t_k <= interval_start()) throw Error(ErrorCode::ClockRegression);

    // Only claims inside [t_{k-1}, t_k) belong to this interval; later
    // claims stay queued for the next block.
    PhantomPart phantom;
    for (auto& [client, txs] : mempool_) {
        std::vector<Transaction> in_interval;
        for (const auto& tx : txs) {
            if (tx.claimed_time < t_k) in_interval.push_back(tx);
        }
        if (!in_interval.empty()) phantom.transactions.emplace(client, std::move(in_interval));
    }
    if (phantom.transactions.empty() && !allow_empty) throw Error(ErrorCode::EmptyMempool);

    const auto k = next_index();
    Block block;
    std::vector<std::pair<Digest, Identity>> roots;
    for (const auto& [client, txs] : phantom.transactions) roots.emplace_back(client_root(txs), client);
    std::sort(roots.begin(), roots.end());

    std::vector<Digest> leaves;
    Bytes k_bytes;
    codec::put_u64(k_bytes, k);
    for (const auto& [root, client] : roots) {
        leaves.push_back(root);
        Bytes material(keys_.secret_key.bytes.begin(), keys_.secret_key.bytes.end());
        append(material, k_bytes);
        append(material, client.view());
        auto seed = crypto::derive_seed("notaria.summary", material);
        block.summaries.push_back({crypto::encrypt(aux_pk, client.view(), seed), root});
    }

    BlockHeader h;
    h.prev_hash = prev_hash();
    h.index = k;
    h.created_at = t_k;
    h.block_root = leaves.empty() ? Digest{} : merkle::MerkleTree::build(leaves).root();
    block.header = sign_header(keys_, h);

    BuildResult result;
    if (!leaves.empty()) {
        auto tree = merkle::MerkleTree::build(leaves);
        for (std::size_t i = 0; i < roots.size(); ++i) {
            const auto& client = roots[i].second;
            Receipt r;
            r.transactions = phantom.transactions.at(client);
            r.client_root = roots[i].first;
            r.path = tree.path(i);
            result.receipts.emplace(client, sign_receipt(keys_, std::move(r)));
        }
    }
    block.phantom = std::move(phantom);
    result.block = block;

    for (const auto& [client, txs] : block.phantom.transactions) {
        for (const auto& tx : txs) remove_from_mempool(tx);
    }
    chain_.push_back(std::move(block));
    return result;
}

AcceptResult ServiceNode::check_block(const Block& block) const {
    const auto& h = block.header;
    auto committer_pk = registry_->key_for(h.committer, Role::Node);
    if (!committer_pk) return {false, BlockReject::UnknownCommitter};
    if (!verify_header_sig(*committer_pk, h)) return {false, BlockReject::BadHeaderSig};
    if (h.prev_hash != prev_hash()) return {false, BlockReject::PrevHashMismatch};
    if (h.index != next_index()) return {false, BlockReject::IndexMismatch};
    if (h.created_at <= interval_start()) return {false, BlockReject::ClockRegression};

    std::vector<Digest> phantom_roots;
    for (const auto& [client, txs] : block.phantom.transactions) {
        if (txs.empty()) return {false, BlockReject::InvalidTransaction};
        for (const auto& tx : txs) {
            if (tx.client != client) return {false, BlockReject::InvalidTransaction};
            auto pk = registry_->key_for(tx.client, Role::Client);
            if (!pk || !verify_transaction_sig(*pk, tx)) return {false, BlockReject::InvalidTransaction};
            if (tx.claimed_time <= interval_start() || tx.claimed_time >= h.created_at) {
                return {false, BlockReject::InvalidTransaction};
            }
        }
        phantom_roots.push_back(client_root(txs));
    }
    std::sort(phantom_roots.begin(), phantom_roots.end());

    std::vector<Digest> summary_roots;
    for (const auto& s : block.summaries) summary_roots.push_back(s.client_root);
    if (summary_roots != phantom_roots) return {false, BlockReject::SummaryMismatch};
    if (block_root(phantom_roots) != h.block_root) return {false, BlockReject::RootMismatch};
    return {true, BlockReject::None};
}

AcceptResult ServiceNode::accept_block(const Block& block) {
    auto result = check_block(block);
    if (!result) return result;
    for (const auto& [client, txs] : block.phantom.transactions) {
        for (const auto& tx : txs) remove_from_mempool(tx);
    }
    // Anything left that predates t_k can no longer enter a later block.
    for (auto it = mempool_.begin(); it != mempool_.end();) {
        auto& list = it->second;
        std::erase_if(list, [&](const Transaction& tx) { return tx.claimed_time <= block.header.created_at; });
        it = list.empty() ? mempool_.erase(it) : std::next(it);
    }
    chain_.push_back(block);
    return result;
}

void append_chain_log(const std::filesystem::path& file, const Block& block) {
    auto body = encode(block);
    Bytes rec;
    codec::put_u32(rec, static_cast<std::uint32_t>(body.size()));
    append(rec, body);
    io::append_file(file, rec);
}

void append_phantom_log(const std::filesystem::path& file, std::uint64_t k, const PhantomPart& phantom) {
    auto body = encode(phantom);
    Bytes rec;
    codec::put_u64(rec, k);
    codec::put_u32(rec, static_cast<std::uint32_t>(body.size()));
    append(rec, body);
    io::append_file(file, rec);
}

std::vector<Block> read_chain_log_bytes(ByteView bytes) {
    codec::Reader in(bytes);
    std::vector<Block> out;
    while (!in.done()) {
        auto n = in.u32();
        out.push_back(decode<Block>(in.take(n)));
    }
    return out;
}

std::vector<Block> read_chain_log(const std::filesystem::path& file) {
    return read_chain_log_bytes(io::read_file(file));
}

std::map<std::uint64_t, PhantomPart> read_phantom_log(const std::filesystem::path& file) {
    auto bytes = io::read_file(file);
    codec::Reader in(bytes);
    std::map<std::uint64_t, PhantomPart> out;
    while (!in.done()) {
        auto k = in.u64();
        auto n = in.u32();
        out[k] = decode<PhantomPart>(in.take(n));
    }
    return out;
}

}  // namespace notaria::nodes
