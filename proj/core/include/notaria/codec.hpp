#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "notaria/bytes.hpp"
#include "notaria/error.hpp"

// Big-endian fixed-width primitives shared by every wire format.
namespace notaria::codec {

inline void put_u8(Bytes& out, std::uint8_t v) { out.push_back(v); }

inline void put_u32(Bytes& out, std::uint32_t v) {
    for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

inline void put_u64(Bytes& out, std::uint64_t v) {
    for (int shift = 56; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

template <std::size_t N, typename Tag>
void put(Bytes& out, const FixedBytes<N, Tag>& v) {
    out.insert(out.end(), v.bytes.begin(), v.bytes.end());
}

/// Bounds-checked cursor. Every read past the end throws MalformedEncoding.
class Reader {
public:
    explicit Reader(ByteView data) : data_(data) {}

    std::size_t remaining() const { return data_.size() - pos_; }
    std::size_t position() const { return pos_; }
    bool done() const { return pos_ == data_.size(); }

    ByteView take(std::size_t n) {
        if (remaining() < n) {
            throw Error(ErrorCode::MalformedEncoding,
                        "need " + std::to_string(n) + " bytes at offset " + std::to_string(pos_) + ", have " +
                            std::to_string(remaining()));
        }
        auto out = data_.subspan(pos_, n);
        pos_ += n;
        return out;
    }

    std::uint8_t u8() { return take(1)[0]; }

    std::uint32_t u32() {
        auto b = take(4);
        std::uint32_t v = 0;
        for (auto x : b) v = (v << 8) | x;
        return v;
    }

    std::uint64_t u64() {
        auto b = take(8);
        std::uint64_t v = 0;
        for (auto x : b) v = (v << 8) | x;
        return v;
    }

    template <typename T>
    T fixed() {
        return T::from(take(T::size));
    }

    /// Reads a u32 element count and rejects counts that cannot fit in the
    /// remaining input given a minimum element size.
    std::uint32_t count(std::size_t min_element_size) {
        auto n = u32();
        if (min_element_size > 0 && n > remaining() / min_element_size) {
            throw Error(ErrorCode::MalformedEncoding, "element count " + std::to_string(n) + " exceeds input");
        }
        return n;
    }

    void expect_done() const {
        if (!done()) {
            throw Error(ErrorCode::MalformedEncoding, std::to_string(remaining()) + " trailing bytes");
        }
    }

private:
    ByteView data_;
    std::size_t pos_ = 0;
};

}  // namespace notaria::codec
