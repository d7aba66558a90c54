#pragma once

#include <cstddef>
#include <optional>

#include "notaria/bytes.hpp"

// Signature, hash and public-key encryption primitives.
//
// Reference configuration: Ed25519 signatures (64 bytes, deterministic),
// SHA-256 digests, and X25519 sealed boxes for encryption to a signing key
// (the Ed25519 key is mapped to its Curve25519 counterpart).
namespace notaria::crypto {

inline constexpr std::size_t kSignatureSize = Signature::size;
inline constexpr std::size_t kSealOverhead = 48;

using Seed = FixedBytes<32, struct SeedTag>;

struct KeyPair {
    PublicKey public_key;
    SecretKey secret_key;
    Identity identity;
};

/// Deterministic key generation; the same seed always yields the same keys.
KeyPair keygen(const Seed& seed);
/// Key generation from OS entropy.
KeyPair keygen_random();

Identity identity_of(const PublicKey& pk);

Digest hash(ByteView msg);
Digest hash(std::string_view msg);

Signature sign(const SecretKey& sk, ByteView msg);
bool verify_sig(const PublicKey& pk, ByteView msg, const Signature& sig);

/// Signs a container whose signature slot holds 64 zero bytes: the signature
/// is computed over the body with the zeroed slot and then written into the
/// slot. Throws SlotOutOfBounds / SlotNotZeroed.
Bytes sign_container(const SecretKey& sk, Bytes body, std::size_t slot_offset);
/// Trailing-slot form used by every protocol message.
Bytes sign_container(const SecretKey& sk, Bytes body);

/// True iff the signature in the slot verifies over the container with the
/// slot zeroed. Throws SlotOutOfBounds.
bool verify_container(const PublicKey& pk, ByteView container, std::size_t slot_offset);
bool verify_container(const PublicKey& pk, ByteView container);

/// Randomized public-key encryption to the holder of `pk`.
Bytes encrypt(const PublicKey& pk, ByteView msg);
/// Same construction with caller-supplied ephemeral entropy, for reproducible
/// simulation runs. Distinct seeds give unlinkable ciphertexts.
Bytes encrypt(const PublicKey& pk, ByteView msg, const Seed& ephemeral);
/// Throws DecryptionFailure on a wrong key or tampered ciphertext.
Bytes decrypt(const KeyPair& kp, ByteView ciphertext);

Seed random_seed();
/// Seed derived by hashing a label and arbitrary parts.
Seed derive_seed(std::string_view label, ByteView material);

}  // namespace notaria::crypto
