#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "notaria/bytes.hpp"
#include "notaria/crypto.hpp"

namespace notaria {

enum class Role : std::uint8_t { Client = 0, Node = 1, Auxiliary = 2 };

std::string_view to_string(Role role);
Role role_from_string(std::string_view s);

struct RegistryEntry {
    PublicKey public_key;
    Role role = Role::Client;

    friend bool operator==(const RegistryEntry&, const RegistryEntry&) = default;
};

/// Static key registry standing in for the certificate authority. Revocation
/// is removal of an entry. Read-only once loaded.
///
/// File format (CA-signed container):
///   u32 count || count * (public_key[32] || role u8) || ca_public_key[32] || sig[64]
/// Entries are written in identity order.
class Registry {
public:
    /// Throws DuplicateIdentity.
    Identity add(const PublicKey& pk, Role role);
    void remove(const Identity& id);

    /// Throws UnknownIdentity.
    const RegistryEntry& lookup(const Identity& id) const;
    std::optional<RegistryEntry> find(const Identity& id) const;
    bool contains(const Identity& id) const { return entries_.contains(id); }
    /// Key for `id` only if it is registered under `role`.
    std::optional<PublicKey> key_for(const Identity& id, Role role) const;

    std::vector<Identity> identities(Role role) const;
    const std::map<Identity, RegistryEntry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }

    Bytes encode_signed(const crypto::KeyPair& ca) const;
    /// Verifies the CA signature; when `expected_ca` is set the signing key
    /// must hash to it. Throws MalformedEncoding / BadSignature.
    static Registry decode_signed(ByteView bytes, std::optional<Identity> expected_ca = std::nullopt);

    void save(const std::filesystem::path& file, const crypto::KeyPair& ca) const;
    static Registry load(const std::filesystem::path& file, std::optional<Identity> expected_ca = std::nullopt);

    /// Identity of the CA key that signed the loaded file, if any.
    const std::optional<Identity>& signer() const { return signer_; }

    friend bool operator==(const Registry& a, const Registry& b) { return a.entries_ == b.entries_; }

private:
    std::map<Identity, RegistryEntry> entries_;
    std::optional<Identity> signer_;
};

}  // namespace notaria
