#include "notaria/registry.hpp"

#include "notaria/codec.hpp"
#include "notaria/error.hpp"
#include "notaria/io.hpp"

namespace notaria {

std::string_view to_string(Role role) {
    switch (role) {
        case Role::Client: return "client";
        case Role::Node: return "node";
        case Role::Auxiliary: return "auxiliary";
    }
    return "unknown";
}

Role role_from_string(std::string_view s) {
    if (s == "client") return Role::Client;
    if (s == "node") return Role::Node;
    if (s == "auxiliary" || s == "aux") return Role::Auxiliary;
    throw Error(ErrorCode::InvalidConfig, "unknown role '" + std::string(s) + "'");
}

Identity Registry::add(const PublicKey& pk, Role role) {
    auto id = crypto::identity_of(pk);
    if (!entries_.emplace(id, RegistryEntry{pk, role}).second) {
        throw Error(ErrorCode::DuplicateIdentity, to_hex(id));
    }
    return id;
}

void Registry::remove(const Identity& id) { entries_.erase(id); }

const RegistryEntry& Registry::lookup(const Identity& id) const {
    auto it = entries_.find(id);
    if (it == entries_.end()) throw Error(ErrorCode::UnknownIdentity, to_hex(id));
    return it->second;
}

std::optional<RegistryEntry> Registry::find(const Identity& id) const {
    auto it = entries_.find(id);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

std::optional<PublicKey> Registry::key_for(const Identity& id, Role role) const {
    auto it = entries_.find(id);
    if (it == entries_.end() || it->second.role != role) return std::nullopt;
    return it->second.public_key;
}

std::vector<Identity> Registry::identities(Role role) const {
    std::vector<Identity> out;
    for (const auto& [id, e] : entries_) {
        if (e.role == role) out.push_back(id);
    }
    return out;
}

Bytes Registry::encode_signed(const crypto::KeyPair& ca) const {
    Bytes out;
    codec::put_u32(out, static_cast<std::uint32_t>(entries_.size()));
    for (const auto& [id, e] : entries_) {
        codec::put(out, e.public_key);
        codec::put_u8(out, static_cast<std::uint8_t>(e.role));
    }
    codec::put(out, ca.public_key);
    out.resize(out.size() + Signature::size, 0);
    return crypto::sign_container(ca.secret_key, std::move(out));
}

Registry Registry::decode_signed(ByteView bytes, std::optional<Identity> expected_ca) {
    codec::Reader in(bytes);
    Registry reg;
    auto n = in.count(PublicKey::size + 1);
    for (std::uint32_t i = 0; i < n; ++i) {
        auto pk = in.fixed<PublicKey>();
        auto role = in.u8();
        if (role > 2) throw Error(ErrorCode::MalformedEncoding, "registry role byte " + std::to_string(role));
        try {
            reg.add(pk, static_cast<Role>(role));
        } catch (const Error&) {
            throw Error(ErrorCode::MalformedEncoding, "duplicate registry entry");
        }
    }
    auto ca_pk = in.fixed<PublicKey>();
    in.take(Signature::size);
    in.expect_done();
    if (!crypto::verify_container(ca_pk, bytes)) throw Error(ErrorCode::BadSignature, "registry signature");
    auto ca_id = crypto::identity_of(ca_pk);
    if (expected_ca && *expected_ca != ca_id) throw Error(ErrorCode::BadSignature, "registry signed by unexpected CA");
    reg.signer_ = ca_id;
    return reg;
}

void Registry::save(const std::filesystem::path& file, const crypto::KeyPair& ca) const {
    io::write_file(file, encode_signed(ca));
}

Registry Registry::load(const std::filesystem::path& file, std::optional<Identity> expected_ca) {
    return decode_signed(io::read_file(file), expected_ca);
}

}  // namespace notaria
