#include "notaria/crypto.hpp"

#include <sodium.h>

#include <algorithm>
#include <stdexcept>

#include "notaria/error.hpp"

namespace notaria::crypto {

namespace {

void ensure_init() {
    static const bool ok = [] {
        if (sodium_init() < 0) throw std::runtime_error("libsodium initialisation failed");
        return true;
    }();
    (void)ok;
}

void check_slot(std::size_t size, std::size_t slot_offset) {
    if (slot_offset > size || size - slot_offset < kSignatureSize) {
        throw Error(ErrorCode::SlotOutOfBounds,
                    "slot at " + std::to_string(slot_offset) + " in " + std::to_string(size) + " bytes");
    }
}

}  // namespace

KeyPair keygen(const Seed& seed) {
    ensure_init();
    KeyPair kp;
    crypto_sign_seed_keypair(kp.public_key.bytes.data(), kp.secret_key.bytes.data(), seed.bytes.data());
    kp.identity = identity_of(kp.public_key);
    return kp;
}

KeyPair keygen_random() { return keygen(random_seed()); }

Identity identity_of(const PublicKey& pk) { return Identity::from(hash(pk.view()).view()); }

Digest hash(ByteView msg) {
    ensure_init();
    Digest d;
    crypto_hash_sha256(d.bytes.data(), msg.data(), msg.size());
    return d;
}

Digest hash(std::string_view msg) {
    return hash(ByteView(reinterpret_cast<const std::uint8_t*>(msg.data()), msg.size()));
}

Signature sign(const SecretKey& sk, ByteView msg) {
    ensure_init();
    Signature sig;
    crypto_sign_detached(sig.bytes.data(), nullptr, msg.data(), msg.size(), sk.bytes.data());
    return sig;
}

bool verify_sig(const PublicKey& pk, ByteView msg, const Signature& sig) {
    ensure_init();
    return crypto_sign_verify_detached(sig.bytes.data(), msg.data(), msg.size(), pk.bytes.data()) == 0;
}

Bytes sign_container(const SecretKey& sk, Bytes body, std::size_t slot_offset) {
    check_slot(body.size(), slot_offset);
    auto slot = body.begin() + static_cast<std::ptrdiff_t>(slot_offset);
    if (!std::all_of(slot, slot + kSignatureSize, [](std::uint8_t b) { return b == 0; })) {
        throw Error(ErrorCode::SlotNotZeroed);
    }
    auto sig = sign(sk, body);
    std::copy(sig.bytes.begin(), sig.bytes.end(), slot);
    return body;
}

Bytes sign_container(const SecretKey& sk, Bytes body) {
    if (body.size() < kSignatureSize) throw Error(ErrorCode::SlotOutOfBounds);
    auto offset = body.size() - kSignatureSize;
    return sign_container(sk, std::move(body), offset);
}

bool verify_container(const PublicKey& pk, ByteView container, std::size_t slot_offset) {
    check_slot(container.size(), slot_offset);
    auto sig = Signature::from(container.subspan(slot_offset, kSignatureSize));
    Bytes zeroed(container.begin(), container.end());
    std::fill_n(zeroed.begin() + static_cast<std::ptrdiff_t>(slot_offset), kSignatureSize, 0);
    return verify_sig(pk, zeroed, sig);
}

bool verify_container(const PublicKey& pk, ByteView container) {
    if (container.size() < kSignatureSize) throw Error(ErrorCode::SlotOutOfBounds);
    return verify_container(pk, container, container.size() - kSignatureSize);
}

Bytes encrypt(const PublicKey& pk, ByteView msg) { return encrypt(pk, msg, random_seed()); }

// Sealed-box layout (compatible with crypto_box_seal_open):
//   ephemeral_pk(32) || crypto_box(msg, nonce = blake2b24(ephemeral_pk || recipient_pk))
Bytes encrypt(const PublicKey& pk, ByteView msg, const Seed& ephemeral) {
    ensure_init();
    std::array<std::uint8_t, crypto_box_PUBLICKEYBYTES> recipient{};
    if (crypto_sign_ed25519_pk_to_curve25519(recipient.data(), pk.bytes.data()) != 0) {
        throw Error(ErrorCode::DecryptionFailure, "public key not convertible for encryption");
    }
    std::array<std::uint8_t, crypto_box_PUBLICKEYBYTES> epk{};
    std::array<std::uint8_t, crypto_box_SECRETKEYBYTES> esk{};
    crypto_box_seed_keypair(epk.data(), esk.data(), ephemeral.bytes.data());

    std::array<std::uint8_t, crypto_box_NONCEBYTES> nonce{};
    crypto_generichash_state st;
    crypto_generichash_init(&st, nullptr, 0, nonce.size());
    crypto_generichash_update(&st, epk.data(), epk.size());
    crypto_generichash_update(&st, recipient.data(), recipient.size());
    crypto_generichash_final(&st, nonce.data(), nonce.size());

    Bytes out(epk.size() + crypto_box_MACBYTES + msg.size());
    std::copy(epk.begin(), epk.end(), out.begin());
    int rc = crypto_box_easy(out.data() + epk.size(), msg.data(), msg.size(), nonce.data(), recipient.data(),
                             esk.data());
    sodium_memzero(esk.data(), esk.size());
    if (rc != 0) throw Error(ErrorCode::DecryptionFailure, "encryption failed");
    return out;
}

Bytes decrypt(const KeyPair& kp, ByteView ciphertext) {
    ensure_init();
    if (ciphertext.size() < crypto_box_SEALBYTES) throw Error(ErrorCode::DecryptionFailure, "ciphertext too short");
    std::array<std::uint8_t, crypto_box_PUBLICKEYBYTES> cpk{};
    std::array<std::uint8_t, crypto_box_SECRETKEYBYTES> csk{};
    if (crypto_sign_ed25519_pk_to_curve25519(cpk.data(), kp.public_key.bytes.data()) != 0 ||
        crypto_sign_ed25519_sk_to_curve25519(csk.data(), kp.secret_key.bytes.data()) != 0) {
        throw Error(ErrorCode::DecryptionFailure, "key not convertible");
    }
    Bytes out(ciphertext.size() - crypto_box_SEALBYTES);
    int rc = crypto_box_seal_open(out.data(), ciphertext.data(), ciphertext.size(), cpk.data(), csk.data());
    sodium_memzero(csk.data(), csk.size());
    if (rc != 0) throw Error(ErrorCode::DecryptionFailure);
    return out;
}

Seed random_seed() {
    ensure_init();
    Seed s;
    randombytes_buf(s.bytes.data(), s.bytes.size());
    return s;
}

Seed derive_seed(std::string_view label, ByteView material) {
    Bytes buf(label.begin(), label.end());
    buf.push_back(0);
    append(buf, material);
    return Seed::from(hash(buf).view());
}

}  // namespace notaria::crypto
