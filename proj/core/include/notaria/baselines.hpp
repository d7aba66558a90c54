#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "notaria/crypto.hpp"
#include "notaria/merkle.hpp"
#include "notaria/model.hpp"

// Classic timestamping schemes kept as reference implementations: the
// trusted-authority scheme (plain and RFC 3161-style) and tree-linked
// timestamping with a chained repository of round roots.
namespace notaria::baselines {

enum class AuthorityVariant : std::uint8_t { Plain = 0, Rfc3161 = 1 };

/// variant || payload || sig. Payload is H(d) || t (plain, 40 bytes) or
/// H(H(d) || t) (RFC 3161-style, 32 bytes).
struct AuthorityReceipt {
    AuthorityVariant variant = AuthorityVariant::Plain;
    Bytes payload;
    Signature sig;

    friend bool operator==(const AuthorityReceipt&, const AuthorityReceipt&) = default;
};

Bytes encode(const AuthorityReceipt& r);
/// Throws MalformedEncoding.
AuthorityReceipt decode_authority_receipt(ByteView bytes);

AuthorityReceipt authority_timestamp(const crypto::KeyPair& authority, const Digest& data_hash, Timestamp t,
                                     AuthorityVariant variant);
/// Signature check, plus (when given) that the payload binds `data_hash` and `t`.
bool verify_authority_receipt(const PublicKey& authority, const AuthorityReceipt& r);
bool verify_authority_receipt(const PublicKey& authority, const AuthorityReceipt& r, const Digest& data_hash,
                              Timestamp t);

struct LinkedRound {
    std::uint64_t round = 0;
    std::vector<Bytes> requests;
    Digest interval_root;
    Digest chained_root;
};

struct LinkedReceipt {
    std::uint64_t round = 0;
    Timestamp time;
    Digest leaf;              // leaf_digest(request)
    merkle::MerklePath path;  // leaf -> interval root
    Digest interval_root;
};

struct LinkedRoundResult {
    LinkedRound round;
    std::vector<LinkedReceipt> receipts;  // one per request, same order
};

/// R_l = H(R_{l-1} || r_l) where r_l is the Merkle root over leaf digests of
/// the round's requests. Throws EmptyRound.
LinkedRoundResult linked_round(std::uint64_t round, const std::vector<Bytes>& requests, const Digest& prev_chained,
                               Timestamp t);

Digest chain_step(const Digest& prev_chained, const Digest& interval_root);

/// Repository holds R_0 = 0^32 at index 0 followed by R_1, R_2, ...
class Repository {
public:
    Repository() : roots_{Digest{}} {}

    void push(const Digest& chained_root) { roots_.push_back(chained_root); }
    const std::vector<Digest>& roots() const { return roots_; }
    std::uint64_t latest_round() const { return roots_.size() - 1; }
    /// Throws UnknownRound.
    const Digest& at(std::uint64_t round) const;
    Digest& mutable_at(std::uint64_t round);

    /// Append-only list of 32-byte digests.
    Bytes serialize() const;
    static Repository deserialize(ByteView bytes);

private:
    std::vector<Digest> roots_;
};

/// True iff the path reaches r_l and H(R_{l-1} || r_l) = R_l.
/// Throws UnknownRound.
bool verify_linked_receipt(const LinkedReceipt& receipt, const Repository& repository);

/// Recomputes every R_l from round data; true iff it reproduces the repository.
bool replay_chain(const std::vector<LinkedRound>& rounds, const Repository& repository);

}  // namespace notaria::baselines
