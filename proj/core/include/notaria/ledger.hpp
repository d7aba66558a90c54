#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "notaria/bytes.hpp"
#include "notaria/model.hpp"

namespace notaria::anchor {

struct LedgerEntry {
    Bytes payload;
    Timestamp block_time;  // t-bar of the containing public block
};

/// Public ledger used as reference clock and timestamping service.
class PublicLedger {
public:
    virtual ~PublicLedger() = default;

    /// Throws LedgerUnavailable.
    virtual LedgerAddress append(ByteView payload) = 0;
    /// Throws AddressUnresolvable.
    virtual LedgerEntry get(const LedgerAddress& address) const = 0;
    virtual Timestamp tip_time() const = 0;
};

/// In-memory append-only ledger. A payload appended at simulated time `now`
/// lands in the public block sealed at the next multiple of the block
/// interval, so t-bar >= submission time.
///
/// Persistence, one record per block:
///   u64 timestamp || u32 payload count || count * (u32 length || payload)
class MockLedger : public PublicLedger {
public:
    struct PublicBlock {
        Timestamp time;
        std::vector<Bytes> payloads;

        friend bool operator==(const PublicBlock&, const PublicBlock&) = default;
    };

    explicit MockLedger(std::uint64_t block_interval_ms = 600'000, Timestamp origin = {});

    void set_now(Timestamp now) { now_ = now; }
    Timestamp now() const { return now_; }
    /// Appends fail with LedgerUnavailable while the outage is active.
    void set_outage(bool down) { outage_ = down; }
    std::uint64_t block_interval_ms() const { return interval_ms_; }

    LedgerAddress append(ByteView payload) override;
    LedgerEntry get(const LedgerAddress& address) const override;
    Timestamp tip_time() const override;

    const std::vector<PublicBlock>& blocks() const { return blocks_; }

    Bytes serialize() const;
    static MockLedger deserialize(ByteView bytes, std::uint64_t block_interval_ms = 600'000);
    void save(const std::filesystem::path& file) const;
    static MockLedger load(const std::filesystem::path& file);

private:
    std::uint64_t interval_ms_;
    Timestamp origin_;
    Timestamp now_;
    bool outage_ = false;
    std::vector<PublicBlock> blocks_;
};

}  // namespace notaria::anchor
