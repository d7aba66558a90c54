#include "notaria/verify.hpp"

#include <json.hpp>

#include "notaria/error.hpp"
#include "notaria/merkle.hpp"
#include "notaria/nodes.hpp"

namespace notaria::verify {

namespace {

// Deepest proxy path we accept: a block tree cannot exceed 2^32 clients.
constexpr std::size_t kMaxProxyPath = 32;

enum class TxCheck { Ok, BadSig, NoTransactions };

/// All transactions signed by one registered client, and (when a claim is
/// given) at least one of them covers the claimed document.
TxCheck check_transactions(const std::vector<Transaction>& txs, const Registry& registry,
                           const std::optional<Claim>& claim) {
    if (txs.empty()) return TxCheck::NoTransactions;
    bool claim_found = !claim.has_value();
    for (const auto& tx : txs) {
        if (tx.client != txs.front().client) return TxCheck::BadSig;
        auto pk = registry.key_for(tx.client, Role::Client);
        if (!pk || !verify_transaction_sig(*pk, tx)) return TxCheck::BadSig;
        if (claim && verify_data_sig(*pk, tx, claim->data_hash)) claim_found = true;
    }
    return claim_found ? TxCheck::Ok : TxCheck::BadSig;
}

bool receipt_sig_ok(const Receipt& r, const Registry& registry) {
    auto pk = registry.key_for(r.committer, Role::Node);
    return pk && verify_receipt_sig(*pk, r);
}

}  // namespace

std::string_view to_string(Reason r) {
    switch (r) {
        case Reason::None: return "None";
        case Reason::BadClientSig: return "BadClientSig";
        case Reason::BadValidatorSig: return "BadValidatorSig";
        case Reason::UntrustedValidator: return "UntrustedValidator";
        case Reason::BadHeaderSig: return "BadHeaderSig";
        case Reason::BadReceiptSig: return "BadReceiptSig";
        case Reason::BadTxSig: return "BadTxSig";
        case Reason::RootMismatch: return "RootMismatch";
        case Reason::PathMismatch: return "PathMismatch";
        case Reason::TimeInconsistent: return "TimeInconsistent";
        case Reason::ConsensusUntrusted: return "ConsensusUntrusted";
        case Reason::BadAuxSig: return "BadAuxSig";
        case Reason::LedgerMismatch: return "LedgerMismatch";
        case Reason::AuxPathMismatch: return "AuxPathMismatch";
        case Reason::ProxyPathMismatch: return "ProxyPathMismatch";
        case Reason::AddressUnresolvable: return "AddressUnresolvable";
        case Reason::MalformedEvidence: return "MalformedEvidence";
    }
    return "Unknown";
}

Verdict verify_level1(const Transaction& tx, const FirstReceipt& first_receipt, const Registry& registry,
                      const TrustAssumptions& trust, const std::optional<Claim>& claim) {
    constexpr int level = 1;
    auto client_pk = registry.key_for(tx.client, Role::Client);
    if (!client_pk || !verify_transaction_sig(*client_pk, tx)) return Verdict::reject(level, Reason::BadClientSig);
    if (claim && !verify_data_sig(*client_pk, tx, claim->data_hash)) {
        return Verdict::reject(level, Reason::BadClientSig);
    }
    if (!trust.trusted_validators.contains(first_receipt.validator)) {
        return Verdict::reject(level, Reason::UntrustedValidator);
    }
    auto validator_pk = registry.key_for(first_receipt.validator, Role::Node);
    if (!validator_pk || !verify_first_receipt_sig(*validator_pk, first_receipt, tx)) {
        return Verdict::reject(level, Reason::BadValidatorSig);
    }
    return Verdict::accept(level, tx.claimed_time);
}

Verdict verify_level2(const Receipt& receipt, const BlockHeader& header, const Registry& registry,
                      const TrustAssumptions& trust, const std::optional<Claim>& claim) {
    constexpr int level = 2;
    if (!trust.trust_proxy_consensus) return Verdict::reject(level, Reason::ConsensusUntrusted);

    auto committer_pk = registry.key_for(header.committer, Role::Node);
    if (!committer_pk || !verify_header_sig(*committer_pk, header)) return Verdict::reject(level, Reason::BadHeaderSig);
    if (receipt.committer != header.committer || !verify_receipt_sig(*committer_pk, receipt)) {
        return Verdict::reject(level, Reason::BadReceiptSig);
    }
    switch (check_transactions(receipt.transactions, registry, claim)) {
        case TxCheck::Ok: break;
        case TxCheck::BadSig: return Verdict::reject(level, Reason::BadTxSig);
        case TxCheck::NoTransactions: return Verdict::reject(level, Reason::RootMismatch);
    }
    if (nodes::client_root(receipt.transactions) != receipt.client_root) {
        return Verdict::reject(level, Reason::RootMismatch);
    }
    if (!merkle::verify_path(receipt.client_root, receipt.path, header.block_root)) {
        return Verdict::reject(level, Reason::PathMismatch);
    }
    for (const auto& tx : receipt.transactions) {
        if (tx.claimed_time >= header.created_at) return Verdict::reject(level, Reason::TimeInconsistent);
    }
    return Verdict::accept(level, header.created_at);
}

Verdict verify_level3(const Receipt& receipt, const AuxReceipt& aux, const anchor::PublicLedger& ledger,
                      const Registry& registry, const TrustAssumptions& trust, const std::optional<Claim>& claim) {
    constexpr int level = 3;
    const auto& pub = aux.pub_data;

    if (trust.trusted_anchorer && *trust.trusted_anchorer != pub.anchorer) {
        return Verdict::reject(level, Reason::BadAuxSig);
    }
    auto aux_pk = registry.key_for(pub.anchorer, Role::Auxiliary);
    if (!aux_pk || !verify_aux_receipt_sig(*aux_pk, aux)) return Verdict::reject(level, Reason::BadAuxSig);

    anchor::LedgerEntry entry;
    try {
        entry = ledger.get(aux.address);
    } catch (const Error&) {
        return Verdict::reject(level, Reason::AddressUnresolvable);
    }
    if (entry.payload != encode(pub)) return Verdict::reject(level, Reason::LedgerMismatch);
    if (pub.epoch_length < 2 || aux.first_k != pub.last_anchor_index + 1 ||
        aux.last_k != pub.last_anchor_index + pub.epoch_length) {
        return Verdict::reject(level, Reason::LedgerMismatch);
    }

    if (!receipt_sig_ok(receipt, registry)) return Verdict::reject(level, Reason::BadReceiptSig);
    switch (check_transactions(receipt.transactions, registry, claim)) {
        case TxCheck::Ok: break;
        case TxCheck::BadSig: return Verdict::reject(level, Reason::BadTxSig);
        case TxCheck::NoTransactions: return Verdict::reject(level, Reason::RootMismatch);
    }
    if (nodes::client_root(receipt.transactions) != receipt.client_root) {
        return Verdict::reject(level, Reason::RootMismatch);
    }
    if (receipt.path.size() > kMaxProxyPath) return Verdict::reject(level, Reason::ProxyPathMismatch);
    auto block_root = merkle::fold_path(receipt.client_root, receipt.path);

    // The block root sits at an even leaf of a 2m-leaf tree, so its first
    // sibling is the matching header hash on the right.
    const auto& steps = aux.path.steps;
    if (steps.empty() || steps.front().side != merkle::Side::Right ||
        steps.size() > merkle::max_path_length(2 * pub.epoch_length)) {
        return Verdict::reject(level, Reason::AuxPathMismatch);
    }
    if (!merkle::verify_path(block_root, aux.path, pub.aux_root)) {
        return Verdict::reject(level, Reason::AuxPathMismatch);
    }
    for (const auto& tx : receipt.transactions) {
        if (tx.claimed_time >= entry.block_time) return Verdict::reject(level, Reason::TimeInconsistent);
    }
    return Verdict::accept(level, entry.block_time);
}

std::string verdict_json(const Verdict& v) {
    nlohmann::ordered_json j;
    j["level"] = v.level;
    j["accepted"] = v.accepted;
    j["established_time"] = v.established_time.millis;
    if (v.accepted) {
        j["reason"] = nullptr;
    } else {
        j["reason"] = std::string(to_string(v.reason));
    }
    return j.dump();
}

}  // namespace notaria::verify
