#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "notaria/crypto.hpp"
#include "notaria/model.hpp"
#include "notaria/registry.hpp"

// Service-node behaviour on the proxy chain: transaction validation and first
// receipts, block construction, receipt issuance, block acceptance.
namespace notaria::nodes {

struct NodeConfig {
    /// Claimed times further than this beyond the node clock are rejected.
    std::uint64_t max_future_skew_ms = 2000;
    /// t_0 of the chain; the first interval accepts claims after this time.
    Timestamp genesis_time{0};
};

/// Ack-quorum stand-in for the (unspecified) consensus protocol.
struct ConsensusStub {
    double quorum = 1.0;

    /// Throws InvalidConfig unless 0 < quorum <= 1.
    void validate() const;
    bool reached(std::size_t acks, std::size_t total) const;
};

enum class BlockReject {
    None,
    UnknownCommitter,
    BadHeaderSig,
    PrevHashMismatch,
    IndexMismatch,
    ClockRegression,
    SummaryMismatch,
    RootMismatch,
    InvalidTransaction,
};

std::string_view to_string(BlockReject r);

struct AcceptResult {
    bool accepted = false;
    BlockReject reason = BlockReject::None;

    explicit operator bool() const { return accepted; }
};

struct BuildResult {
    Block block;
    std::map<Identity, Receipt> receipts;
};

/// Merkle root over leaf_digest(encode(tx)) of a client's transactions, in
/// canonical order (the input is re-sorted). Throws EmptyTransactionSet.
Digest client_root(std::vector<Transaction> txs);

/// Root of the block tree over client roots in sorted order. Empty input
/// yields the all-zero digest (an empty interval block).
Digest block_root(std::vector<Digest> client_roots);

/// Round-robin committer for block k over node identities in sorted order.
Identity select_committer(std::vector<Identity> nodes, std::uint64_t k);

/// Hash links, strictly increasing indices and times.
bool chain_is_consistent(std::span<const BlockHeader> headers);

/// One service node. Single-owner: callers process one message at a time.
class ServiceNode {
public:
    ServiceNode(crypto::KeyPair keys, std::shared_ptr<const Registry> registry, NodeConfig config = {});

    const Identity& identity() const { return keys_.identity; }
    const crypto::KeyPair& keys() const { return keys_; }
    const std::vector<Block>& chain() const { return chain_; }
    const std::map<Identity, std::vector<Transaction>>& mempool() const { return mempool_; }
    std::size_t mempool_size() const;
    std::optional<BlockHeader> tip() const;
    /// t_{k-1}: creation time of the last block, or the genesis time.
    Timestamp interval_start() const;
    std::uint64_t next_index() const;

    /// Checks signature, registration and claimed time, queues the
    /// transaction and returns the first receipt.
    /// Throws BadSignature, UnknownClient, StaleTime, FutureTime, CAUnavailable.
    FirstReceipt validate_transaction(const Transaction& tx, Timestamp now);

    /// Inserts a transaction relayed by another validator. Same checks as
    /// validate_transaction; an identical transaction is ignored.
    void accept_broadcast(const Transaction& tx, Timestamp now);

    /// Builds, signs and appends block k = next_index() at time t_k from the
    /// mempool, issuing one receipt per transacting client. With
    /// `allow_empty` an empty mempool yields a block with a zero root.
    /// Throws EmptyMempool, ClockRegression.
    BuildResult build_block(Timestamp t_k, const PublicKey& aux_pk, bool allow_empty = false);

    /// Validates a block proposed by another node against the local tip and
    /// appends it on success.
    AcceptResult accept_block(const Block& block);
    /// Same checks without mutating state.
    AcceptResult check_block(const Block& block) const;

    // Capabilities used by adversarial scenarios.
    void insert_unchecked(const Transaction& tx);
    bool remove_from_mempool(const Transaction& tx);
    /// Drops blocks with index >= k and returns them.
    std::vector<Block> truncate_from(std::uint64_t k);
    void replace_registry(std::shared_ptr<const Registry> registry) { registry_ = std::move(registry); }
    /// While the CA is unreachable no revocation status is available, so new
    /// transactions are refused with CAUnavailable.
    void set_ca_available(bool available) { ca_available_ = available; }

private:
    void check_transaction(const Transaction& tx, Timestamp now) const;
    void insert(const Transaction& tx);
    Digest prev_hash() const;

    crypto::KeyPair keys_;
    std::shared_ptr<const Registry> registry_;
    NodeConfig config_;
    std::vector<Block> chain_;
    std::map<Identity, std::vector<Transaction>> mempool_;
    bool ca_available_ = true;
};

// Append-only persistence. The chain log holds client-visible blocks
// (header and summaries); phantom parts go to a separate node-local log.
//   chain log record:   u32 length || encode(Block)
//   phantom log record: u64 k || u32 length || encode(PhantomPart)
void append_chain_log(const std::filesystem::path& file, const Block& block);
void append_phantom_log(const std::filesystem::path& file, std::uint64_t k, const PhantomPart& phantom);
std::vector<Block> read_chain_log(const std::filesystem::path& file);
std::map<std::uint64_t, PhantomPart> read_phantom_log(const std::filesystem::path& file);
std::vector<Block> read_chain_log_bytes(ByteView bytes);

}  // namespace notaria::nodes
