#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace notaria {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

/// Fixed-width byte string. The tag keeps digests, keys and signatures from
/// being mixed up even though they share a width.
template <std::size_t N, typename Tag>
struct FixedBytes {
    static constexpr std::size_t size = N;
    std::array<std::uint8_t, N> bytes{};

    ByteView view() const { return {bytes.data(), bytes.size()}; }

    static FixedBytes from(ByteView src) {
        FixedBytes out;
        std::copy_n(src.begin(), N, out.bytes.begin());
        return out;
    }

    bool is_zero() const {
        return std::all_of(bytes.begin(), bytes.end(), [](std::uint8_t b) { return b == 0; });
    }

    friend bool operator==(const FixedBytes&, const FixedBytes&) = default;
    friend auto operator<=>(const FixedBytes&, const FixedBytes&) = default;
};

struct DigestTag {};
struct SignatureTag {};
struct PublicKeyTag {};
struct SecretKeyTag {};
struct IdentityTag {};

using Digest = FixedBytes<32, DigestTag>;
using Signature = FixedBytes<64, SignatureTag>;
using PublicKey = FixedBytes<32, PublicKeyTag>;
using SecretKey = FixedBytes<64, SecretKeyTag>;
/// Key fingerprint: the full 32-byte hash of a public key.
using Identity = FixedBytes<32, IdentityTag>;

std::string to_hex(ByteView data);
Bytes from_hex(std::string_view hex);

template <std::size_t N, typename Tag>
std::string to_hex(const FixedBytes<N, Tag>& v) {
    return to_hex(v.view());
}

template <typename T>
T fixed_from_hex(std::string_view hex);

inline Bytes to_bytes(std::string_view s) { return Bytes(s.begin(), s.end()); }

inline void append(Bytes& out, ByteView src) { out.insert(out.end(), src.begin(), src.end()); }

}  // namespace notaria
