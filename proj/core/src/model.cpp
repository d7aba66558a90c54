#include "notaria/model.hpp"

#include <algorithm>

#include "notaria/error.hpp"

namespace notaria {

using codec::put;
using codec::put_u32;
using codec::put_u64;
using codec::Reader;

namespace {

constexpr std::size_t kSig = Signature::size;

template <typename T, typename Fn>
T decode_exact(ByteView bytes, Fn&& read) {
    Reader in(bytes);
    T out = read(in);
    in.expect_done();
    return out;
}

void check_fixed(ByteView bytes, std::size_t expected, const char* what) {
    if (bytes.size() != expected) {
        throw Error(ErrorCode::MalformedEncoding, std::string(what) + " must be " + std::to_string(expected) +
                                                      " bytes, got " + std::to_string(bytes.size()));
    }
}

Signature trailing_sig(const Bytes& container) {
    return Signature::from(ByteView(container).subspan(container.size() - kSig));
}

void write_header(Bytes& out, const BlockHeader& h) {
    put(out, h.prev_hash);
    put_u64(out, h.index);
    put_u64(out, h.created_at.millis);
    put(out, h.block_root);
    put(out, h.committer);
    put(out, h.sig);
}

void write_tx(Bytes& out, const Transaction& t) {
    put(out, t.data_sig);
    put_u64(out, t.claimed_time.millis);
    put(out, t.client);
    put(out, t.self_sig);
}

void write_summary(Bytes& out, const SummaryTransaction& s) {
    put_u32(out, static_cast<std::uint32_t>(s.enc_identity.size()));
    append(out, s.enc_identity);
    put(out, s.client_root);
}

SummaryTransaction read_summary(Reader& in) {
    SummaryTransaction s;
    auto n = in.u32();
    auto ct = in.take(n);
    s.enc_identity.assign(ct.begin(), ct.end());
    s.client_root = in.fixed<Digest>();
    return s;
}

void write_pub_data(Bytes& out, const PubData& p) {
    put(out, p.anchorer);
    put_u64(out, p.last_anchor_index);
    put_u64(out, p.epoch_length);
    put(out, p.aux_root);
}

PubData read_pub_data(Reader& in) {
    PubData p;
    p.anchorer = in.fixed<Identity>();
    p.last_anchor_index = in.u64();
    p.epoch_length = in.u64();
    p.aux_root = in.fixed<Digest>();
    return p;
}

void write_address(Bytes& out, const LedgerAddress& a) {
    put_u64(out, a.block_height);
    put_u32(out, a.tx_index);
}

LedgerAddress read_address(Reader& in) {
    LedgerAddress a;
    a.block_height = in.u64();
    a.tx_index = in.u32();
    return a;
}

}  // namespace

std::size_t PhantomPart::transaction_count() const {
    std::size_t n = 0;
    for (const auto& [id, txs] : transactions) n += txs.size();
    return n;
}

Transaction read_transaction(Reader& in) {
    Transaction t;
    t.data_sig = in.fixed<Signature>();
    t.claimed_time.millis = in.u64();
    t.client = in.fixed<Identity>();
    t.self_sig = in.fixed<Signature>();
    return t;
}

BlockHeader read_header(Reader& in) {
    BlockHeader h;
    h.prev_hash = in.fixed<Digest>();
    h.index = in.u64();
    h.created_at.millis = in.u64();
    h.block_root = in.fixed<Digest>();
    h.committer = in.fixed<Identity>();
    h.sig = in.fixed<Signature>();
    return h;
}

Bytes encode(const Transaction& v) {
    Bytes out;
    out.reserve(Transaction::kEncodedSize);
    write_tx(out, v);
    return out;
}

Bytes encode(const FirstReceipt& v) {
    Bytes out;
    out.reserve(FirstReceipt::kEncodedSize);
    put(out, v.tx_digest);
    put(out, v.validator);
    put(out, v.sig);
    return out;
}

Bytes encode(const BlockHeader& v) {
    Bytes out;
    out.reserve(BlockHeader::kEncodedSize);
    write_header(out, v);
    return out;
}

Bytes encode(const SummaryTransaction& v) {
    Bytes out;
    write_summary(out, v);
    return out;
}

Bytes encode(const Block& v) {
    Bytes out;
    write_header(out, v.header);
    put_u32(out, static_cast<std::uint32_t>(v.summaries.size()));
    for (const auto& s : v.summaries) write_summary(out, s);
    return out;
}

Bytes encode(const PhantomPart& v) {
    Bytes out;
    put_u32(out, static_cast<std::uint32_t>(v.transactions.size()));
    for (const auto& [client, txs] : v.transactions) {
        put(out, client);
        put_u32(out, static_cast<std::uint32_t>(txs.size()));
        for (const auto& t : txs) write_tx(out, t);
    }
    return out;
}

Bytes encode(const Receipt& v) {
    Bytes out;
    put_u32(out, static_cast<std::uint32_t>(v.transactions.size()));
    for (const auto& t : v.transactions) write_tx(out, t);
    put(out, v.client_root);
    merkle::encode_path(out, v.path);
    put(out, v.committer);
    put(out, v.sig);
    return out;
}

Bytes encode(const PubData& v) {
    Bytes out;
    out.reserve(PubData::kEncodedSize);
    write_pub_data(out, v);
    return out;
}

Bytes encode(const LedgerAddress& v) {
    Bytes out;
    write_address(out, v);
    return out;
}

Bytes encode(const AuxReceipt& v) {
    Bytes out;
    put_u64(out, v.first_k);
    put_u64(out, v.last_k);
    write_pub_data(out, v.pub_data);
    write_address(out, v.address);
    merkle::encode_path(out, v.path);
    put(out, v.sig);
    return out;
}

template <>
Transaction decode<Transaction>(ByteView bytes) {
    check_fixed(bytes, Transaction::kEncodedSize, "Transaction");
    return decode_exact<Transaction>(bytes, read_transaction);
}

template <>
FirstReceipt decode<FirstReceipt>(ByteView bytes) {
    check_fixed(bytes, FirstReceipt::kEncodedSize, "FirstReceipt");
    return decode_exact<FirstReceipt>(bytes, [](Reader& in) {
        FirstReceipt r;
        r.tx_digest = in.fixed<Digest>();
        r.validator = in.fixed<Identity>();
        r.sig = in.fixed<Signature>();
        return r;
    });
}

template <>
BlockHeader decode<BlockHeader>(ByteView bytes) {
    check_fixed(bytes, BlockHeader::kEncodedSize, "BlockHeader");
    return decode_exact<BlockHeader>(bytes, read_header);
}

template <>
SummaryTransaction decode<SummaryTransaction>(ByteView bytes) {
    return decode_exact<SummaryTransaction>(bytes, read_summary);
}

template <>
Block decode<Block>(ByteView bytes) {
    return decode_exact<Block>(bytes, [](Reader& in) {
        Block b;
        b.header = read_header(in);
        auto n = in.count(4 + Digest::size);
        b.summaries.reserve(n);
        for (std::uint32_t i = 0; i < n; ++i) b.summaries.push_back(read_summary(in));
        return b;
    });
}

template <>
PhantomPart decode<PhantomPart>(ByteView bytes) {
    return decode_exact<PhantomPart>(bytes, [](Reader& in) {
        PhantomPart p;
        auto clients = in.count(Identity::size + 4);
        for (std::uint32_t i = 0; i < clients; ++i) {
            auto id = in.fixed<Identity>();
            auto n = in.count(Transaction::kEncodedSize);
            std::vector<Transaction> txs;
            txs.reserve(n);
            for (std::uint32_t j = 0; j < n; ++j) txs.push_back(read_transaction(in));
            if (!p.transactions.emplace(id, std::move(txs)).second) {
                throw Error(ErrorCode::MalformedEncoding, "duplicate client in phantom part");
            }
        }
        return p;
    });
}

template <>
Receipt decode<Receipt>(ByteView bytes) {
    return decode_exact<Receipt>(bytes, [](Reader& in) {
        Receipt r;
        auto n = in.count(Transaction::kEncodedSize);
        r.transactions.reserve(n);
        for (std::uint32_t i = 0; i < n; ++i) r.transactions.push_back(read_transaction(in));
        r.client_root = in.fixed<Digest>();
        r.path = merkle::read_path(in);
        r.committer = in.fixed<Identity>();
        r.sig = in.fixed<Signature>();
        return r;
    });
}

template <>
PubData decode<PubData>(ByteView bytes) {
    check_fixed(bytes, PubData::kEncodedSize, "PubData");
    return decode_exact<PubData>(bytes, read_pub_data);
}

template <>
LedgerAddress decode<LedgerAddress>(ByteView bytes) {
    check_fixed(bytes, LedgerAddress::kEncodedSize, "LedgerAddress");
    return decode_exact<LedgerAddress>(bytes, read_address);
}

template <>
AuxReceipt decode<AuxReceipt>(ByteView bytes) {
    return decode_exact<AuxReceipt>(bytes, [](Reader& in) {
        AuxReceipt r;
        r.first_k = in.u64();
        r.last_k = in.u64();
        r.pub_data = read_pub_data(in);
        r.address = read_address(in);
        r.path = merkle::read_path(in);
        r.sig = in.fixed<Signature>();
        return r;
    });
}

Digest header_hash(const BlockHeader& h) { return crypto::hash(encode(h)); }

Digest tx_digest(const Transaction& tx) { return crypto::hash(encode(tx)); }

bool tx_order(const Transaction& a, const Transaction& b) {
    if (a.data_sig != b.data_sig) return a.data_sig < b.data_sig;
    return encode(a) < encode(b);
}

Transaction sign_transaction(const crypto::KeyPair& signer, Transaction tx) {
    tx.self_sig = {};
    tx.self_sig = trailing_sig(crypto::sign_container(signer.secret_key, encode(tx)));
    return tx;
}

Transaction make_transaction_for_digest(const crypto::KeyPair& client, const Digest& data_hash,
                                        Timestamp claimed_time) {
    Transaction tx;
    tx.data_sig = crypto::sign(client.secret_key, data_hash.view());
    tx.claimed_time = claimed_time;
    tx.client = client.identity;
    return sign_transaction(client, tx);
}

Transaction make_transaction(const crypto::KeyPair& client, ByteView data, Timestamp claimed_time) {
    return make_transaction_for_digest(client, crypto::hash(data), claimed_time);
}

FirstReceipt make_first_receipt(const crypto::KeyPair& validator, const Transaction& tx) {
    auto bytes = encode(tx);
    return {crypto::hash(bytes), validator.identity, crypto::sign(validator.secret_key, bytes)};
}

BlockHeader sign_header(const crypto::KeyPair& committer, BlockHeader h) {
    h.committer = committer.identity;
    h.sig = {};
    h.sig = trailing_sig(crypto::sign_container(committer.secret_key, encode(h)));
    return h;
}

Receipt sign_receipt(const crypto::KeyPair& committer, Receipt r) {
    r.committer = committer.identity;
    r.sig = {};
    r.sig = trailing_sig(crypto::sign_container(committer.secret_key, encode(r)));
    return r;
}

AuxReceipt sign_aux_receipt(const crypto::KeyPair& anchorer, AuxReceipt r) {
    r.sig = {};
    r.sig = trailing_sig(crypto::sign_container(anchorer.secret_key, encode(r)));
    return r;
}

bool verify_transaction_sig(const PublicKey& pk, const Transaction& tx) {
    return crypto::verify_container(pk, encode(tx));
}

bool verify_first_receipt_sig(const PublicKey& pk, const FirstReceipt& fr, const Transaction& tx) {
    auto bytes = encode(tx);
    return fr.tx_digest == crypto::hash(bytes) && crypto::verify_sig(pk, bytes, fr.sig);
}

bool verify_header_sig(const PublicKey& pk, const BlockHeader& h) { return crypto::verify_container(pk, encode(h)); }

bool verify_receipt_sig(const PublicKey& pk, const Receipt& r) { return crypto::verify_container(pk, encode(r)); }

bool verify_aux_receipt_sig(const PublicKey& pk, const AuxReceipt& r) {
    return crypto::verify_container(pk, encode(r));
}

bool verify_data_sig(const PublicKey& pk, const Transaction& tx, const Digest& data_hash) {
    return crypto::verify_sig(pk, data_hash.view(), tx.data_sig);
}

}  // namespace notaria
