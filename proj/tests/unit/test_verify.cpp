#include <gtest/gtest.h>

#include "notaria/verify.hpp"
#include "oracles.hpp"
#include "pipeline.hpp"

using namespace notaria;
using namespace notaria::verify;

namespace {

struct VerifyTest : ::testing::Test {
    fixture::Pipeline p{3, 3};
    TrustAssumptions trust = p.pop.trust_all();
    const fixture::Pipeline::Item& item = p.items.at(4);  // k = 2, client 1

    const crypto::KeyPair& committer() const { return p.pop.nodes[0]; }
    Claim claim(const fixture::Pipeline::Item& it) const { return {crypto::hash(it.document)}; }

    /// Ledger holding the given payload at the same address as the real record.
    anchor::MockLedger ledger_with(const Bytes& payload) const {
        anchor::MockLedger copy(600'000, {0});
        copy.set_now({p.m * 1'000 + 10});
        copy.append(payload);
        return copy;
    }
};

}  // namespace

TEST_F(VerifyTest, HonestEvidenceAcceptedAtAllLevels) {
    for (const auto& it : p.items) {
        auto v1 = verify_level1(it.tx, it.first, *p.pop.registry, trust, claim(it));
        auto v2 = verify_level2(p.receipt(it), p.header(it.k), *p.pop.registry, trust, claim(it));
        auto v3 = verify_level3(p.receipt(it), p.aux_receipt(it), p.ledger, *p.pop.registry, trust, claim(it));
        ASSERT_TRUE(v1.accepted) << to_string(v1.reason);
        ASSERT_TRUE(v2.accepted) << to_string(v2.reason);
        ASSERT_TRUE(v3.accepted) << to_string(v3.reason);
        EXPECT_EQ(v1.established_time, it.tx.claimed_time);
        EXPECT_EQ(v2.established_time, p.header(it.k).created_at);
        EXPECT_EQ(v3.established_time, p.ledger.get(p.aux_receipt(it).address).block_time);
        EXPECT_LT(v1.established_time, v2.established_time);
        EXPECT_LT(v2.established_time, v3.established_time);
    }
}

TEST_F(VerifyTest, Level1Trust) {
    TrustAssumptions none;
    EXPECT_EQ(verify_level1(item.tx, item.first, *p.pop.registry, none).reason, Reason::UntrustedValidator);
    auto other = p.items.at(0);
    EXPECT_EQ(verify_level1(item.tx, other.first, *p.pop.registry, trust).reason, Reason::BadValidatorSig);
    auto tx = item.tx;
    tx.claimed_time = tx.claimed_time + 1;
    EXPECT_EQ(verify_level1(tx, item.first, *p.pop.registry, trust).reason, Reason::BadClientSig);
    EXPECT_EQ(verify_level1(item.tx, item.first, *p.pop.registry, trust, claim(other)).reason, Reason::BadClientSig);
}

TEST_F(VerifyTest, Level2Failures) {
    const auto& r = p.receipt(item);
    const auto& h = p.header(item.k);
    TrustAssumptions no_consensus = trust;
    no_consensus.trust_proxy_consensus = false;
    EXPECT_EQ(verify_level2(r, h, *p.pop.registry, no_consensus).reason, Reason::ConsensusUntrusted);

    auto bad_h = h;
    bad_h.block_root.bytes[3] ^= 1;
    EXPECT_EQ(verify_level2(r, bad_h, *p.pop.registry, trust).reason, Reason::BadHeaderSig);

    auto bad_r = r;
    bad_r.client_root.bytes[0] ^= 1;
    EXPECT_EQ(verify_level2(bad_r, h, *p.pop.registry, trust).reason, Reason::BadReceiptSig);

    // Committer re-signs a receipt carrying a transaction altered after signing.
    bad_r = r;
    bad_r.transactions.push_back(p.items.at(1).tx);
    bad_r.transactions.back().claimed_time = bad_r.transactions.back().claimed_time + 1;
    bad_r = sign_receipt(committer(), bad_r);
    EXPECT_EQ(verify_level2(bad_r, h, *p.pop.registry, trust).reason, Reason::BadTxSig);

    bad_r = r;
    bad_r.transactions.push_back(make_transaction(p.pop.clients[item.client], to_bytes("extra"), {1'500}));
    bad_r = sign_receipt(committer(), bad_r);
    EXPECT_EQ(verify_level2(bad_r, h, *p.pop.registry, trust).reason, Reason::RootMismatch);

    // Genuine receipt paired with another block's header.
    EXPECT_EQ(verify_level2(r, p.header(item.k + 1), *p.pop.registry, trust).reason, Reason::PathMismatch);

    EXPECT_EQ(verify_level2(r, h, *p.pop.registry, trust, claim(p.items.at(0))).reason, Reason::BadTxSig);
}

TEST_F(VerifyTest, Level2TimeConsistency) {
    // A header dated before the claim is rejected even if correctly signed.
    auto h = p.header(item.k);
    h.created_at = item.tx.claimed_time;
    h = sign_header(committer(), h);
    EXPECT_EQ(verify_level2(p.receipt(item), h, *p.pop.registry, trust).reason, Reason::TimeInconsistent);
}

TEST_F(VerifyTest, Level3Failures) {
    const auto& r = p.receipt(item);
    auto a = p.aux_receipt(item);

    auto bad_a = a;
    bad_a.first_k = 2;
    EXPECT_EQ(verify_level3(r, bad_a, p.ledger, *p.pop.registry, trust).reason, Reason::BadAuxSig);

    TrustAssumptions other_anchor = trust;
    other_anchor.trusted_anchorer = p.pop.nodes[0].identity;
    EXPECT_EQ(verify_level3(r, a, p.ledger, *p.pop.registry, other_anchor).reason, Reason::BadAuxSig);

    bad_a = a;
    bad_a.address.block_height = 7;
    bad_a = sign_aux_receipt(p.pop.aux, bad_a);
    EXPECT_EQ(verify_level3(r, bad_a, p.ledger, *p.pop.registry, trust).reason, Reason::AddressUnresolvable);

    auto payload = encode(a.pub_data);
    payload.back() ^= 1;
    EXPECT_EQ(verify_level3(r, a, ledger_with(payload), *p.pop.registry, trust).reason, Reason::LedgerMismatch);

    bad_a = a;
    bad_a.path.steps.back().sibling.bytes[0] ^= 1;
    bad_a = sign_aux_receipt(p.pop.aux, bad_a);
    EXPECT_EQ(verify_level3(r, bad_a, p.ledger, *p.pop.registry, trust).reason, Reason::AuxPathMismatch);

    // Starting from the header-hash leaf: first step would have to go left.
    bad_a = a;
    bad_a.path.steps.front() = {p.header(item.k).block_root, merkle::Side::Left};
    bad_a = sign_aux_receipt(p.pop.aux, bad_a);
    EXPECT_EQ(verify_level3(r, bad_a, p.ledger, *p.pop.registry, trust).reason, Reason::AuxPathMismatch);

    auto bad_r = r;
    bad_r.path.steps.assign(33, {Digest{}, merkle::Side::Right});
    bad_r = sign_receipt(committer(), bad_r);
    EXPECT_EQ(verify_level3(bad_r, a, p.ledger, *p.pop.registry, trust).reason, Reason::ProxyPathMismatch);

    // Receipt for another block with this block's aux receipt.
    const auto& other = p.items.at(1);
    EXPECT_EQ(verify_level3(p.receipt(other), a, p.ledger, *p.pop.registry, trust).reason, Reason::AuxPathMismatch);

    EXPECT_EQ(verify_level3(r, a, p.ledger, *p.pop.registry, trust, claim(other)).reason, Reason::BadTxSig);
}

TEST_F(VerifyTest, Level3NeedsNoConsensusTrust) {
    TrustAssumptions minimal;
    auto v = verify_level3(p.receipt(item), p.aux_receipt(item), p.ledger, *p.pop.registry, minimal, claim(item));
    EXPECT_TRUE(v.accepted) << to_string(v.reason);
}

TEST_F(VerifyTest, MoreTrustNeverRejectsMore) {
    TrustAssumptions none;
    TrustAssumptions validators_only;
    validators_only.trusted_validators = trust.trusted_validators;
    for (const auto* t : {&none, &validators_only, &trust}) {
        bool l1 = verify_level1(item.tx, item.first, *p.pop.registry, *t).accepted;
        bool l2 = verify_level2(p.receipt(item), p.header(item.k), *p.pop.registry, *t).accepted;
        EXPECT_EQ(l1, !t->trusted_validators.empty());
        EXPECT_EQ(l2, t->trust_proxy_consensus);
    }
}

TEST_F(VerifyTest, VerdictJson) {
    auto v = verify_level2(p.receipt(item), p.header(item.k), *p.pop.registry, trust);
    EXPECT_EQ(verdict_json(v), "{\"level\":2,\"accepted\":true,\"established_time\":2000,\"reason\":null}");
    auto r = Verdict::reject(3, Reason::LedgerMismatch);
    EXPECT_EQ(verdict_json(r), "{\"level\":3,\"accepted\":false,\"established_time\":0,\"reason\":\"LedgerMismatch\"}");
}
