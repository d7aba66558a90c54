#include <gtest/gtest.h>

#include <random>

#include "fixture.hpp"
#include "notaria/baselines.hpp"
#include "notaria/error.hpp"
#include "oracles.hpp"

using namespace notaria;
using namespace notaria::baselines;

TEST(Authority, PayloadLayouts) {
    auto ts = fixture::keys("tsa", 0);
    auto d = crypto::hash(std::string_view("doc"));
    auto plain = authority_timestamp(ts, d, {1234}, AuthorityVariant::Plain);
    EXPECT_EQ(plain.payload, oracle::cat({oracle::raw(d), oracle::be64(1234)}));
    auto rfc = authority_timestamp(ts, d, {1234}, AuthorityVariant::Rfc3161);
    EXPECT_EQ(rfc.payload, oracle::raw(oracle::sha256(oracle::cat({oracle::raw(d), oracle::be64(1234)}))));
    EXPECT_EQ(decode_authority_receipt(encode(plain)), plain);
    EXPECT_EQ(decode_authority_receipt(encode(rfc)), rfc);
    auto bytes = encode(plain);
    bytes.pop_back();
    EXPECT_THROW(decode_authority_receipt(bytes), Error);
}

TEST(Authority, VerifyAndRejectMutations) {
    auto ts = fixture::keys("tsa", 0);
    auto other = fixture::keys("tsa", 1);
    auto d = crypto::hash(std::string_view("doc"));
    for (auto variant : {AuthorityVariant::Plain, AuthorityVariant::Rfc3161}) {
        auto r = authority_timestamp(ts, d, {99}, variant);
        EXPECT_TRUE(verify_authority_receipt(ts.public_key, r));
        EXPECT_TRUE(verify_authority_receipt(ts.public_key, r, d, {99}));
        EXPECT_FALSE(verify_authority_receipt(ts.public_key, r, d, {100}));
        EXPECT_FALSE(verify_authority_receipt(ts.public_key, r, crypto::hash(std::string_view("x")), {99}));
        EXPECT_FALSE(verify_authority_receipt(other.public_key, r));
        auto bytes = encode(r);
        for (std::size_t i = 0; i < bytes.size(); ++i) {
            auto m = bytes;
            m[i] ^= 0x01;
            bool accepted = false;
            try {
                accepted = verify_authority_receipt(ts.public_key, decode_authority_receipt(m), d, {99});
            } catch (const Error&) {
            }
            EXPECT_FALSE(accepted) << "byte " << i;
        }
    }
}

TEST(Linked, SingleRoundByHand) {
    std::vector<Bytes> requests{to_bytes("only")};
    auto result = linked_round(1, requests, Digest{}, {10});
    auto leaf = oracle::leaf(requests[0]);
    EXPECT_EQ(result.round.interval_root, leaf);
    EXPECT_EQ(result.round.chained_root, oracle::sha256(oracle::cat({Bytes(32, 0), oracle::raw(leaf)})));
    EXPECT_THROW(linked_round(2, {}, Digest{}, {10}), Error);
}

TEST(Linked, ReplayAndReceipts) {
    std::mt19937_64 rng(3);
    Repository repo;
    std::vector<LinkedRound> rounds;
    std::vector<LinkedReceipt> receipts;
    for (std::uint64_t l = 1; l <= 5; ++l) {
        std::vector<Bytes> requests;
        for (std::size_t i = 0; i < 1 + rng() % 16; ++i) requests.push_back(fixture::random_bytes(rng, 32));
        auto result = linked_round(l, requests, repo.roots().back(), {l * 100});
        repo.push(result.round.chained_root);
        rounds.push_back(result.round);
        receipts.insert(receipts.end(), result.receipts.begin(), result.receipts.end());
    }
    EXPECT_EQ(repo.latest_round(), 5u);
    EXPECT_TRUE(replay_chain(rounds, repo));
    for (const auto& r : receipts) EXPECT_TRUE(verify_linked_receipt(r, repo));

    auto moved = receipts.front();
    moved.round = 2;
    EXPECT_FALSE(verify_linked_receipt(moved, repo));
    moved.round = 0;
    EXPECT_THROW(verify_linked_receipt(moved, repo), Error);
    moved.round = 9;
    EXPECT_THROW(verify_linked_receipt(moved, repo), Error);

    auto tampered = repo;
    tampered.mutable_at(3).bytes[0] ^= 1;
    EXPECT_FALSE(replay_chain(rounds, tampered));
    auto altered = rounds;
    altered[1].requests[0][0] ^= 1;
    EXPECT_FALSE(replay_chain(altered, repo));
}

TEST(Linked, RepositoryPersistence) {
    Repository repo;
    repo.push(crypto::hash(std::string_view("a")));
    repo.push(crypto::hash(std::string_view("b")));
    auto bytes = repo.serialize();
    EXPECT_EQ(bytes.size(), 96u);
    EXPECT_EQ(Repository::deserialize(bytes).roots(), repo.roots());
    bytes.pop_back();
    EXPECT_THROW(Repository::deserialize(bytes), Error);
}
