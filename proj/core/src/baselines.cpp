#include "notaria/baselines.hpp"

#include "notaria/codec.hpp"
#include "notaria/error.hpp"

namespace notaria::baselines {

namespace {

Bytes payload_for(const Digest& data_hash, Timestamp t, AuthorityVariant variant) {
    Bytes plain;
    codec::put(plain, data_hash);
    codec::put_u64(plain, t.millis);
    if (variant == AuthorityVariant::Plain) return plain;
    auto h = crypto::hash(plain);
    return Bytes(h.bytes.begin(), h.bytes.end());
}

}  // namespace

Bytes encode(const AuthorityReceipt& r) {
    Bytes out;
    out.reserve(1 + r.payload.size() + Signature::size);
    codec::put_u8(out, static_cast<std::uint8_t>(r.variant));
    out.insert(out.end(), r.payload.begin(), r.payload.end());
    codec::put(out, r.sig);
    return out;
}

AuthorityReceipt decode_authority_receipt(ByteView bytes) {
    codec::Reader in(bytes);
    AuthorityReceipt r;
    auto v = in.u8();
    if (v > 1) throw Error(ErrorCode::MalformedEncoding, "authority variant " + std::to_string(v));
    r.variant = static_cast<AuthorityVariant>(v);
    std::size_t payload_size = r.variant == AuthorityVariant::Plain ? 40 : 32;
    auto p = in.take(payload_size);
    r.payload.assign(p.begin(), p.end());
    r.sig = in.fixed<Signature>();
    in.expect_done();
    return r;
}

AuthorityReceipt authority_timestamp(const crypto::KeyPair& authority, const Digest& data_hash, Timestamp t,
                                     AuthorityVariant variant) {
    AuthorityReceipt r{variant, payload_for(data_hash, t, variant), {}};
    auto signed_bytes = crypto::sign_container(authority.secret_key, encode(r));
    r.sig = Signature::from(ByteView(signed_bytes).subspan(signed_bytes.size() - Signature::size));
    return r;
}

bool verify_authority_receipt(const PublicKey& authority, const AuthorityReceipt& r) {
    std::size_t expected = r.variant == AuthorityVariant::Plain ? 40 : 32;
    if (r.payload.size() != expected) return false;
    return crypto::verify_container(authority, encode(r));
}

bool verify_authority_receipt(const PublicKey& authority, const AuthorityReceipt& r, const Digest& data_hash,
                              Timestamp t) {
    return verify_authority_receipt(authority, r) && r.payload == payload_for(data_hash, t, r.variant);
}

Digest chain_step(const Digest& prev_chained, const Digest& interval_root) {
    Bytes buf;
    codec::put(buf, prev_chained);
    codec::put(buf, interval_root);
    return crypto::hash(buf);
}

LinkedRoundResult linked_round(std::uint64_t round, const std::vector<Bytes>& requests, const Digest& prev_chained,
                               Timestamp t) {
    if (requests.empty()) throw Error(ErrorCode::EmptyRound, "round " + std::to_string(round));
    std::vector<Digest> leaves;
    leaves.reserve(requests.size());
    for (const auto& q : requests) leaves.push_back(merkle::leaf_digest(q));
    auto tree = merkle::MerkleTree::build(leaves);

    LinkedRoundResult out;
    out.round = {round, requests, tree.root(), chain_step(prev_chained, tree.root())};
    for (std::size_t i = 0; i < leaves.size(); ++i) {
        out.receipts.push_back({round, t, leaves[i], tree.path(i), tree.root()});
    }
    return out;
}

const Digest& Repository::at(std::uint64_t round) const {
    if (round >= roots_.size()) throw Error(ErrorCode::UnknownRound, std::to_string(round));
    return roots_[round];
}

Digest& Repository::mutable_at(std::uint64_t round) {
    if (round >= roots_.size()) throw Error(ErrorCode::UnknownRound, std::to_string(round));
    return roots_[round];
}

Bytes Repository::serialize() const {
    Bytes out;
    for (const auto& d : roots_) codec::put(out, d);
    return out;
}

Repository Repository::deserialize(ByteView bytes) {
    if (bytes.empty() || bytes.size() % Digest::size != 0) {
        throw Error(ErrorCode::MalformedEncoding, "repository must be a non-empty list of 32-byte digests");
    }
    Repository repo;
    repo.roots_.clear();
    codec::Reader in(bytes);
    while (!in.done()) repo.roots_.push_back(in.fixed<Digest>());
    return repo;
}

bool verify_linked_receipt(const LinkedReceipt& receipt, const Repository& repository) {
    if (receipt.round == 0) throw Error(ErrorCode::UnknownRound, "round 0 holds no requests");
    const auto& chained = repository.at(receipt.round);
    const auto& prev = repository.at(receipt.round - 1);
    if (!merkle::verify_path(receipt.leaf, receipt.path, receipt.interval_root)) return false;
    return chain_step(prev, receipt.interval_root) == chained;
}

bool replay_chain(const std::vector<LinkedRound>& rounds, const Repository& repository) {
    if (repository.roots().size() != rounds.size() + 1 || !repository.at(0).is_zero()) return false;
    Digest acc{};
    for (std::size_t i = 0; i < rounds.size(); ++i) {
        std::vector<Digest> leaves;
        for (const auto& q : rounds[i].requests) leaves.push_back(merkle::leaf_digest(q));
        if (leaves.empty()) return false;
        acc = chain_step(acc, merkle::MerkleTree::build(std::move(leaves)).root());
        if (acc != repository.at(i + 1)) return false;
    }
    return true;
}

}  // namespace notaria::baselines
