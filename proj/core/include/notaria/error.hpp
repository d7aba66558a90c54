#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace notaria {

enum class ErrorCode {
    // crypto
    SlotNotZeroed,
    SlotOutOfBounds,
    DecryptionFailure,
    // merkle
    EmptyLeaves,
    IndexOutOfRange,
    // model
    MalformedEncoding,
    UnknownIdentity,
    DuplicateIdentity,
    // nodes
    BadSignature,
    UnknownClient,
    StaleTime,
    FutureTime,
    EmptyTransactionSet,
    EmptyMempool,
    ClockRegression,
    CAUnavailable,
    // anchor
    MissingHeader,
    LedgerUnavailable,
    ClientNotInEpoch,
    AddressUnresolvable,
    // sim / cli
    InvalidConfig,
    // baselines
    EmptyRound,
    UnknownRound,
    Io,
};

std::string_view to_string(ErrorCode code);

/// Exception carrying a protocol error code. Every recoverable failure in
/// the library surfaces as one of these.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail)
        : std::runtime_error(std::string(to_string(code)) + (detail.empty() ? "" : ": " + detail)),
          code_(code) {}
    explicit Error(ErrorCode code) : Error(code, "") {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace notaria
