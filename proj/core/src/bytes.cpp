#include "notaria/bytes.hpp"

#include "notaria/error.hpp"

namespace notaria {

namespace {

int nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

std::string to_hex(ByteView data) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(data.size() * 2);
    for (auto b : data) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0x0f]);
    }
    return out;
}

Bytes from_hex(std::string_view hex) {
    if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
    if (hex.size() % 2 != 0) throw Error(ErrorCode::MalformedEncoding, "odd-length hex string");
    Bytes out;
    out.reserve(hex.size() / 2);
    for (std::size_t i = 0; i < hex.size(); i += 2) {
        int hi = nibble(hex[i]);
        int lo = nibble(hex[i + 1]);
        if (hi < 0 || lo < 0) throw Error(ErrorCode::MalformedEncoding, "invalid hex digit");
        out.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
    }
    return out;
}

template <typename T>
T fixed_from_hex(std::string_view hex) {
    auto raw = from_hex(hex);
    if (raw.size() != T::size) {
        throw Error(ErrorCode::MalformedEncoding,
                    "expected " + std::to_string(T::size) + " bytes, got " + std::to_string(raw.size()));
    }
    return T::from(raw);
}

template Digest fixed_from_hex<Digest>(std::string_view);
template Signature fixed_from_hex<Signature>(std::string_view);
template PublicKey fixed_from_hex<PublicKey>(std::string_view);
template Identity fixed_from_hex<Identity>(std::string_view);

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::SlotNotZeroed: return "SlotNotZeroed";
        case ErrorCode::SlotOutOfBounds: return "SlotOutOfBounds";
        case ErrorCode::DecryptionFailure: return "DecryptionFailure";
        case ErrorCode::EmptyLeaves: return "EmptyLeaves";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::MalformedEncoding: return "MalformedEncoding";
        case ErrorCode::UnknownIdentity: return "UnknownIdentity";
        case ErrorCode::DuplicateIdentity: return "DuplicateIdentity";
        case ErrorCode::BadSignature: return "BadSignature";
        case ErrorCode::UnknownClient: return "UnknownClient";
        case ErrorCode::StaleTime: return "StaleTime";
        case ErrorCode::FutureTime: return "FutureTime";
        case ErrorCode::EmptyTransactionSet: return "EmptyTransactionSet";
        case ErrorCode::EmptyMempool: return "EmptyMempool";
        case ErrorCode::ClockRegression: return "ClockRegression";
        case ErrorCode::CAUnavailable: return "CAUnavailable";
        case ErrorCode::MissingHeader: return "MissingHeader";
        case ErrorCode::LedgerUnavailable: return "LedgerUnavailable";
        case ErrorCode::ClientNotInEpoch: return "ClientNotInEpoch";
        case ErrorCode::AddressUnresolvable: return "AddressUnresolvable";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
        case ErrorCode::EmptyRound: return "EmptyRound";
        case ErrorCode::UnknownRound: return "UnknownRound";
        case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

}  // namespace notaria
