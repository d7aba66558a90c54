#include <gtest/gtest.h>

#include <random>

#include "fixture.hpp"
#include "notaria/error.hpp"
#include "notaria/model.hpp"
#include "oracles.hpp"

using namespace notaria;

namespace {

template <typename T>
void expect_malformed(const Bytes& bytes) {
    try {
        (void)decode<T>(bytes);
        FAIL() << "decoded " << bytes.size() << " bytes";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::MalformedEncoding);
    }
}

struct Sample {
    crypto::KeyPair client = fixture::keys("client", 0);
    crypto::KeyPair node = fixture::keys("node", 0);
    crypto::KeyPair aux = fixture::keys("aux", 0);
    Transaction tx = make_transaction(client, to_bytes("doc"), {1'000});
    Transaction tx2 = make_transaction(client, to_bytes("doc2"), {1'001});

    BlockHeader header() const {
        BlockHeader h;
        h.prev_hash = crypto::hash(std::string_view("prev"));
        h.index = 4;
        h.created_at = {5'000};
        h.block_root = crypto::hash(std::string_view("root"));
        return sign_header(node, h);
    }

    Receipt receipt() const {
        Receipt r;
        r.transactions = {tx, tx2};
        r.client_root = crypto::hash(std::string_view("cr"));
        r.path.steps = {{crypto::hash(std::string_view("s0")), merkle::Side::Left},
                        {crypto::hash(std::string_view("s1")), merkle::Side::Right}};
        return sign_receipt(node, r);
    }

    AuxReceipt aux_receipt() const {
        AuxReceipt r;
        r.first_k = 3;
        r.last_k = 6;
        r.pub_data = {aux.identity, 3, 3, crypto::hash(std::string_view("aux"))};
        r.address = {9, 2};
        r.path.steps = {{crypto::hash(std::string_view("h")), merkle::Side::Right}};
        return sign_aux_receipt(aux, r);
    }
};

}  // namespace

TEST(Model, FixedSizes) {
    Sample s;
    EXPECT_EQ(encode(s.tx).size(), 168u);
    EXPECT_EQ(encode(make_first_receipt(s.node, s.tx)).size(), 128u);
    EXPECT_EQ(encode(s.header()).size(), 176u);
    EXPECT_EQ(encode(s.aux_receipt().pub_data).size(), 80u);
    EXPECT_EQ(encode(LedgerAddress{1, 2}).size(), 12u);
}

TEST(Model, EncodingsMatchHandLayout) {
    Sample s;
    EXPECT_EQ(encode(s.tx), oracle::encode_tx(s.tx));
    auto h = s.header();
    EXPECT_EQ(encode(h), oracle::encode_header(h));
    EXPECT_EQ(header_hash(h), oracle::sha256(oracle::encode_header(h)));
    EXPECT_EQ(tx_digest(s.tx), oracle::sha256(oracle::encode_tx(s.tx)));
    auto p = s.aux_receipt().pub_data;
    EXPECT_EQ(encode(p), oracle::encode_pub(p));
}

TEST(Model, RoundTrips) {
    Sample s;
    EXPECT_EQ(decode<Transaction>(encode(s.tx)), s.tx);
    auto fr = make_first_receipt(s.node, s.tx);
    EXPECT_EQ(decode<FirstReceipt>(encode(fr)), fr);
    EXPECT_EQ(decode<BlockHeader>(encode(s.header())), s.header());
    EXPECT_EQ(decode<Receipt>(encode(s.receipt())), s.receipt());
    EXPECT_EQ(decode<AuxReceipt>(encode(s.aux_receipt())), s.aux_receipt());
    EXPECT_EQ(decode<PubData>(encode(s.aux_receipt().pub_data)), s.aux_receipt().pub_data);
    EXPECT_EQ(decode<LedgerAddress>(encode(LedgerAddress{7, 3})), (LedgerAddress{7, 3}));

    SummaryTransaction sum{crypto::encrypt(s.aux.public_key, s.client.identity.view()), crypto::hash(std::string_view("r"))};
    EXPECT_EQ(decode<SummaryTransaction>(encode(sum)), sum);

    Block b;
    b.header = s.header();
    b.summaries = {sum};
    b.phantom.transactions[s.client.identity] = {s.tx};
    auto decoded = decode<Block>(encode(b));
    EXPECT_EQ(decoded.header, b.header);
    EXPECT_EQ(decoded.summaries, b.summaries);
    EXPECT_TRUE(decoded.phantom.transactions.empty());
    EXPECT_EQ(decode<PhantomPart>(encode(b.phantom)), b.phantom);
    EXPECT_EQ(b.phantom.transaction_count(), 1u);
}

TEST(Model, DecodeRejectsWrongLengths) {
    Sample s;
    auto tx = encode(s.tx);
    expect_malformed<Transaction>(Bytes(tx.begin(), tx.end() - 1));
    auto longer = tx;
    longer.push_back(0);
    expect_malformed<Transaction>(longer);
    auto r = encode(s.receipt());
    expect_malformed<Receipt>(Bytes(r.begin(), r.end() - 1));
    r.push_back(0);
    expect_malformed<Receipt>(r);
    auto a = encode(s.aux_receipt());
    expect_malformed<AuxReceipt>(Bytes(a.begin(), a.begin() + 50));
    expect_malformed<BlockHeader>(Bytes(10, 0));
    // Absurd element count.
    Bytes huge{0xff, 0xff, 0xff, 0xff};
    huge.resize(200, 0);
    expect_malformed<Receipt>(huge);
}

TEST(Model, ContainerSignaturesPerType) {
    Sample s;
    EXPECT_TRUE(verify_transaction_sig(s.client.public_key, s.tx));
    EXPECT_TRUE(crypto::verify_container(s.client.public_key, encode(s.tx)));
    EXPECT_TRUE(verify_header_sig(s.node.public_key, s.header()));
    EXPECT_TRUE(verify_receipt_sig(s.node.public_key, s.receipt()));
    EXPECT_TRUE(verify_aux_receipt_sig(s.aux.public_key, s.aux_receipt()));
    EXPECT_FALSE(verify_header_sig(s.client.public_key, s.header()));

    auto h = s.header();
    h.created_at = h.created_at + 1;
    EXPECT_FALSE(verify_header_sig(s.node.public_key, h));
    auto r = s.receipt();
    r.transactions.pop_back();
    EXPECT_FALSE(verify_receipt_sig(s.node.public_key, r));
    auto a = s.aux_receipt();
    a.address.tx_index++;
    EXPECT_FALSE(verify_aux_receipt_sig(s.aux.public_key, a));
}

TEST(Model, FirstReceiptBindsTransaction) {
    Sample s;
    auto fr = make_first_receipt(s.node, s.tx);
    EXPECT_TRUE(verify_first_receipt_sig(s.node.public_key, fr, s.tx));
    EXPECT_FALSE(verify_first_receipt_sig(s.node.public_key, fr, s.tx2));
    EXPECT_FALSE(verify_first_receipt_sig(s.client.public_key, fr, s.tx));
}

TEST(Model, DataSignatureCoversDocumentHash) {
    Sample s;
    EXPECT_TRUE(verify_data_sig(s.client.public_key, s.tx, crypto::hash(to_bytes("doc"))));
    EXPECT_FALSE(verify_data_sig(s.client.public_key, s.tx, crypto::hash(to_bytes("other"))));
    auto via_digest = make_transaction_for_digest(s.client, crypto::hash(to_bytes("doc")), {1'000});
    EXPECT_EQ(via_digest, s.tx);
}

TEST(Model, TransactionOrder) {
    Sample s;
    std::vector<Transaction> txs{s.tx, s.tx2};
    std::sort(txs.begin(), txs.end(), tx_order);
    EXPECT_LT(txs[0].data_sig.bytes, txs[1].data_sig.bytes);
    auto same_sig = s.tx;
    same_sig.claimed_time = same_sig.claimed_time + 5;
    EXPECT_NE(tx_order(s.tx, same_sig), tx_order(same_sig, s.tx));
    EXPECT_FALSE(tx_order(s.tx, s.tx));
}
