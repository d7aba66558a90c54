#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "notaria/bytes.hpp"
#include "notaria/codec.hpp"
#include "notaria/crypto.hpp"
#include "notaria/merkle.hpp"

// Protocol messages and their canonical binary encodings. All integers are
// big-endian fixed width, variable-length lists carry a u32 count, and every
// signed container ends in its 64-byte signature slot. These encodings are
// exactly the bytes that get hashed and signed.
namespace notaria {

/// Milliseconds since the Unix epoch.
struct Timestamp {
    std::uint64_t millis = 0;

    friend bool operator==(const Timestamp&, const Timestamp&) = default;
    friend auto operator<=>(const Timestamp&, const Timestamp&) = default;
};

inline Timestamp operator+(Timestamp t, std::uint64_t ms) { return {t.millis + ms}; }

/// A client's self-signed existence claim: data_sig || t || client || self_sig.
struct Transaction {
    static constexpr std::size_t kEncodedSize = 64 + 8 + 32 + 64;

    Signature data_sig;  // client's signature over hash(d)
    Timestamp claimed_time;
    Identity client;
    Signature self_sig;

    friend bool operator==(const Transaction&, const Transaction&) = default;
};

/// Level-1 evidence: the validator's signature over the full transaction.
struct FirstReceipt {
    static constexpr std::size_t kEncodedSize = 32 + 32 + 64;

    Digest tx_digest;
    Identity validator;
    Signature sig;

    friend bool operator==(const FirstReceipt&, const FirstReceipt&) = default;
};

struct BlockHeader {
    static constexpr std::size_t kEncodedSize = 32 + 8 + 8 + 32 + 32 + 64;

    Digest prev_hash;
    std::uint64_t index = 0;
    Timestamp created_at;
    Digest block_root;
    Identity committer;
    Signature sig;

    friend bool operator==(const BlockHeader&, const BlockHeader&) = default;
};

/// Per-client block entry: the client identity encrypted to the auxiliary
/// node, and the client root.
struct SummaryTransaction {
    Bytes enc_identity;
    Digest client_root;

    friend bool operator==(const SummaryTransaction&, const SummaryTransaction&) = default;
};

/// Node-only part of a block: every client's ordered transaction list.
struct PhantomPart {
    std::map<Identity, std::vector<Transaction>> transactions;

    std::size_t transaction_count() const;
    friend bool operator==(const PhantomPart&, const PhantomPart&) = default;
};

struct Block {
    BlockHeader header;
    std::vector<SummaryTransaction> summaries;  // sorted by client_root bytes
    PhantomPart phantom;

    friend bool operator==(const Block&, const Block&) = default;
};

/// Level-2 evidence issued by the committing node.
struct Receipt {
    std::vector<Transaction> transactions;
    Digest client_root;
    merkle::MerklePath path;  // client_root -> block root
    Identity committer;
    Signature sig;

    friend bool operator==(const Receipt&, const Receipt&) = default;
};

/// Record committed to the public ledger: anchorer || k0 || m || aux_root.
struct PubData {
    static constexpr std::size_t kEncodedSize = 32 + 8 + 8 + 32;

    Identity anchorer;
    std::uint64_t last_anchor_index = 0;
    std::uint64_t epoch_length = 0;
    Digest aux_root;

    friend bool operator==(const PubData&, const PubData&) = default;
};

struct LedgerAddress {
    static constexpr std::size_t kEncodedSize = 8 + 4;

    std::uint64_t block_height = 0;
    std::uint32_t tx_index = 0;

    friend bool operator==(const LedgerAddress&, const LedgerAddress&) = default;
    friend auto operator<=>(const LedgerAddress&, const LedgerAddress&) = default;
};

/// Level-3 evidence issued by the auxiliary node.
struct AuxReceipt {
    std::uint64_t first_k = 0;
    std::uint64_t last_k = 0;
    PubData pub_data;
    LedgerAddress address;
    merkle::MerklePath path;  // block root leaf -> auxiliary root
    Signature sig;

    friend bool operator==(const AuxReceipt&, const AuxReceipt&) = default;
};

// Encoding. Phantom parts are deliberately not covered by encode(Block):
// the block encoding is the client-visible part (header and summaries).
Bytes encode(const Transaction& v);
Bytes encode(const FirstReceipt& v);
Bytes encode(const BlockHeader& v);
Bytes encode(const SummaryTransaction& v);
Bytes encode(const Block& v);
Bytes encode(const PhantomPart& v);
Bytes encode(const Receipt& v);
Bytes encode(const PubData& v);
Bytes encode(const LedgerAddress& v);
Bytes encode(const AuxReceipt& v);

/// Decoders require the exact encoded length; anything else is
/// MalformedEncoding. Block decoding yields an empty phantom part.
template <typename T>
T decode(ByteView bytes);

template <> Transaction decode<Transaction>(ByteView);
template <> FirstReceipt decode<FirstReceipt>(ByteView);
template <> BlockHeader decode<BlockHeader>(ByteView);
template <> SummaryTransaction decode<SummaryTransaction>(ByteView);
template <> Block decode<Block>(ByteView);
template <> PhantomPart decode<PhantomPart>(ByteView);
template <> Receipt decode<Receipt>(ByteView);
template <> PubData decode<PubData>(ByteView);
template <> LedgerAddress decode<LedgerAddress>(ByteView);
template <> AuxReceipt decode<AuxReceipt>(ByteView);

Transaction read_transaction(codec::Reader& in);
BlockHeader read_header(codec::Reader& in);

Digest header_hash(const BlockHeader& h);
Digest tx_digest(const Transaction& tx);

/// Ordering rule for a client's transaction list: big-endian integer value of
/// data_sig, ties broken by the full encoding.
bool tx_order(const Transaction& a, const Transaction& b);

// Message construction.
Transaction make_transaction(const crypto::KeyPair& client, ByteView data, Timestamp claimed_time);
/// Same, starting from hash(d) so large documents never enter the protocol.
Transaction make_transaction_for_digest(const crypto::KeyPair& client, const Digest& data_hash,
                                        Timestamp claimed_time);
Transaction sign_transaction(const crypto::KeyPair& signer, Transaction unsigned_tx);
FirstReceipt make_first_receipt(const crypto::KeyPair& validator, const Transaction& tx);
BlockHeader sign_header(const crypto::KeyPair& committer, BlockHeader h);
Receipt sign_receipt(const crypto::KeyPair& committer, Receipt r);
AuxReceipt sign_aux_receipt(const crypto::KeyPair& anchorer, AuxReceipt r);

// Container signature checks against a given key.
bool verify_transaction_sig(const PublicKey& pk, const Transaction& tx);
bool verify_first_receipt_sig(const PublicKey& pk, const FirstReceipt& fr, const Transaction& tx);
bool verify_header_sig(const PublicKey& pk, const BlockHeader& h);
bool verify_receipt_sig(const PublicKey& pk, const Receipt& r);
bool verify_aux_receipt_sig(const PublicKey& pk, const AuxReceipt& r);
/// data_sig must be a signature over hash(d) by the transaction's client.
bool verify_data_sig(const PublicKey& pk, const Transaction& tx, const Digest& data_hash);

}  // namespace notaria
