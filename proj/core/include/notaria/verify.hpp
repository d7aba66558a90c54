#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "notaria/ledger.hpp"
#include "notaria/model.hpp"
#include "notaria/registry.hpp"

// Offline verification of the three evidence levels by a third party.
//
//   level 1: transaction + first receipt, trusting the validator
//   level 2: receipt + block header, trusting the proxy-chain consensus
//   level 3: receipt + auxiliary receipt + public ledger, trusting only the
//            public ledger
//
// Level-2 and level-3 checks never see a phantom part or another client's
// transactions: those are not inputs.
namespace notaria::verify {

enum class Reason {
    None,
    BadClientSig,
    BadValidatorSig,
    UntrustedValidator,
    BadHeaderSig,
    BadReceiptSig,
    BadTxSig,
    RootMismatch,
    PathMismatch,
    TimeInconsistent,
    ConsensusUntrusted,
    BadAuxSig,
    LedgerMismatch,
    AuxPathMismatch,
    ProxyPathMismatch,
    AddressUnresolvable,
    MalformedEvidence,
};

std::string_view to_string(Reason r);

struct Verdict {
    bool accepted = false;
    int level = 0;
    /// Time up to which existence is proven: t (level 1), t_k (level 2),
    /// or the public block time (level 3). Zero when rejected.
    Timestamp established_time;
    Reason reason = Reason::None;

    static Verdict accept(int level, Timestamp t) { return {true, level, t, Reason::None}; }
    static Verdict reject(int level, Reason r) { return {false, level, {}, r}; }
};

struct TrustAssumptions {
    std::set<Identity> trusted_validators;
    bool trust_proxy_consensus = false;
    /// When set, level-3 evidence must come from this auxiliary identity.
    std::optional<Identity> trusted_anchorer;
};

/// The document being claimed. When supplied, the evidence must contain a
/// transaction whose data signature covers hash(d) under that
/// transaction's client key.
struct Claim {
    Digest data_hash;
};

Verdict verify_level1(const Transaction& tx, const FirstReceipt& first_receipt, const Registry& registry,
                      const TrustAssumptions& trust, const std::optional<Claim>& claim = std::nullopt);

Verdict verify_level2(const Receipt& receipt, const BlockHeader& header, const Registry& registry,
                      const TrustAssumptions& trust, const std::optional<Claim>& claim = std::nullopt);

Verdict verify_level3(const Receipt& receipt, const AuxReceipt& aux_receipt, const anchor::PublicLedger& ledger,
                      const Registry& registry, const TrustAssumptions& trust,
                      const std::optional<Claim>& claim = std::nullopt);

/// Serialized verdict: {"level", "accepted", "established_time", "reason"}.
std::string verdict_json(const Verdict& v);

}  // namespace notaria::verify
