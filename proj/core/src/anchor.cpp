#include "notaria/anchor.hpp"

#include <algorithm>

#include "notaria/error.hpp"

namespace notaria::anchor {

namespace {

std::vector<Digest> leaves_for(const std::map<std::uint64_t, BlockHeader>& headers,
                               const std::vector<std::uint64_t>& ks) {
    std::vector<Digest> leaves;
    leaves.reserve(2 * ks.size());
    for (auto k : ks) {
        auto it = headers.find(k);
        if (it == headers.end()) throw Error(ErrorCode::MissingHeader, std::to_string(k));
        leaves.push_back(it->second.block_root);
        leaves.push_back(header_hash(it->second));
    }
    return leaves;
}

}  // namespace

std::string_view to_string(AnomalyKind kind) {
    switch (kind) {
        case AnomalyKind::MissingBlock: return "MissingBlock";
        case AnomalyKind::HeaderRewrite: return "HeaderRewrite";
    }
    return "Unknown";
}

merkle::MerkleTree build_aux_tree(const std::map<std::uint64_t, BlockHeader>& headers, std::uint64_t k0,
                                  std::uint64_t m) {
    std::vector<std::uint64_t> ks;
    for (std::uint64_t k = k0 + 1; k <= k0 + m; ++k) ks.push_back(k);
    return merkle::MerkleTree::build(leaves_for(headers, ks));
}

std::size_t aux_leaf_index(std::uint64_t k, std::uint64_t k0) { return static_cast<std::size_t>(2 * (k - k0 - 1)); }

PubData make_pub_data(const Identity& anchorer, std::uint64_t k0, std::uint64_t m, const Digest& aux_root) {
    return {anchorer, k0, m, aux_root};
}

LedgerAddress commit(PublicLedger& ledger, const PubData& pub_data) { return ledger.append(encode(pub_data)); }

std::map<Identity, AuxReceipt> issue_aux_receipts(const crypto::KeyPair& anchorer, const merkle::MerkleTree& tree,
                                                  const PubData& pub_data, const LedgerAddress& address,
                                                  const std::map<Identity, std::set<std::uint64_t>>& membership) {
    const auto k0 = pub_data.last_anchor_index;
    const auto m = pub_data.epoch_length;
    std::map<Identity, AuxReceipt> out;
    for (const auto& [client, blocks] : membership) {
        auto first = std::find_if(blocks.begin(), blocks.end(), [&](auto k) { return k > k0 && k <= k0 + m; });
        if (first == blocks.end()) throw Error(ErrorCode::ClientNotInEpoch, to_hex(client));
        AuxReceipt r;
        r.first_k = k0 + 1;
        r.last_k = k0 + m;
        r.pub_data = pub_data;
        r.address = address;
        r.path = tree.path(aux_leaf_index(*first, k0));
        out.emplace(client, sign_aux_receipt(anchorer, std::move(r)));
    }
    return out;
}

AuxiliaryNode::AuxiliaryNode(crypto::KeyPair keys, std::uint64_t m, std::uint64_t k0)
    : keys_(std::move(keys)), m_(m), k0_(k0) {
    if (m_ < 2) throw Error(ErrorCode::InvalidConfig, "epoch length m must be >= 2");
}

void AuxiliaryNode::monitor(const BlockHeader& header) {
    auto it = headers_.find(header.index);
    if (it != headers_.end()) {
        if (it->second != header) {
            anomalies_.push_back({AnomalyKind::HeaderRewrite, header.index, "re-signed header for known index"});
            it->second = header;
        }
        return;
    }
    std::uint64_t expected = headers_.empty() ? k0_ + 1 : headers_.rbegin()->first + 1;
    if (header.index > expected) {
        for (auto k = expected; k < header.index; ++k) {
            anomalies_.push_back({AnomalyKind::MissingBlock, k, "gap before " + std::to_string(header.index)});
        }
    }
    headers_.emplace(header.index, header);
}

void AuxiliaryNode::observe_block(const Block& block) {
    monitor(block.header);
    auto& clients = block_clients_[block.header.index];
    clients.clear();
    for (const auto& s : block.summaries) {
        try {
            clients.insert(Identity::from(crypto::decrypt(keys_, s.enc_identity)));
        } catch (const Error&) {
            // undecryptable summary: the client cannot be credited
        }
    }
}

bool AuxiliaryNode::epoch_ready() const {
    for (auto k = k0_ + 1; k <= k0_ + m_; ++k) {
        if (!headers_.contains(k)) return false;
    }
    return true;
}

AuxReceipt AuxiliaryNode::make_receipt(const EpochRecord& epoch, std::uint64_t k) const {
    auto pos = std::find(epoch.included.begin(), epoch.included.end(), k);
    if (pos == epoch.included.end()) throw Error(ErrorCode::ClientNotInEpoch, "block " + std::to_string(k));
    auto tree = merkle::MerkleTree::build(epoch.leaves);
    AuxReceipt r;
    r.first_k = epoch.k0 + 1;
    r.last_k = epoch.k0 + epoch.m;
    r.pub_data = epoch.pub_data;
    r.address = epoch.address;
    r.path = tree.path(2 * static_cast<std::size_t>(pos - epoch.included.begin()));
    return sign_aux_receipt(keys_, std::move(r));
}

std::map<Identity, AuxReceipt> AuxiliaryNode::anchor_epoch(PublicLedger& ledger, std::optional<std::uint64_t> omit) {
    EpochRecord epoch;
    epoch.k0 = k0_;
    epoch.m = m_;
    for (auto k = k0_ + 1; k <= k0_ + m_; ++k) {
        auto it = headers_.find(k);
        if (it == headers_.end()) throw Error(ErrorCode::MissingHeader, std::to_string(k));
        epoch.headers.emplace(k, it->second);
        if (omit && *omit == k) continue;
        epoch.included.push_back(k);
        if (auto bc = block_clients_.find(k); bc != block_clients_.end()) {
            for (const auto& c : bc->second) epoch.membership[c].insert(k);
        }
    }
    epoch.leaves = leaves_for(headers_, epoch.included);
    auto tree = merkle::MerkleTree::build(epoch.leaves);
    epoch.pub_data = make_pub_data(keys_.identity, k0_, m_, tree.root());
    epoch.address = commit(ledger, epoch.pub_data);

    std::map<Identity, AuxReceipt> out;
    for (const auto& [client, blocks] : epoch.membership) out.emplace(client, make_receipt(epoch, *blocks.begin()));
    epochs_.push_back(std::move(epoch));
    k0_ += m_;
    return out;
}

AuxReceipt AuxiliaryNode::query_aux_receipt(const Identity& client, std::uint64_t k) const {
    for (const auto& epoch : epochs_) {
        if (k <= epoch.k0 || k > epoch.k0 + epoch.m) continue;
        auto it = epoch.membership.find(client);
        if (it == epoch.membership.end() || !it->second.contains(k)) break;
        return make_receipt(epoch, k);
    }
    throw Error(ErrorCode::ClientNotInEpoch, to_hex(client) + " in block " + std::to_string(k));
}

}  // namespace notaria::anchor
