#include "notaria/ledger.hpp"

#include "notaria/codec.hpp"
#include "notaria/error.hpp"
#include "notaria/io.hpp"

namespace notaria::anchor {

MockLedger::MockLedger(std::uint64_t block_interval_ms, Timestamp origin)
    : interval_ms_(block_interval_ms), origin_(origin), now_(origin) {
    if (interval_ms_ == 0) throw Error(ErrorCode::InvalidConfig, "public block interval must be positive");
}

LedgerAddress MockLedger::append(ByteView payload) {
    if (outage_) throw Error(ErrorCode::LedgerUnavailable);
    auto elapsed = now_.millis >= origin_.millis ? now_.millis - origin_.millis : 0;
    Timestamp sealed{origin_.millis + (elapsed / interval_ms_ + 1) * interval_ms_};
    if (blocks_.empty() || blocks_.back().time < sealed) blocks_.push_back({sealed, {}});
    auto& block = blocks_.back();
    block.payloads.emplace_back(payload.begin(), payload.end());
    return {blocks_.size() - 1, static_cast<std::uint32_t>(block.payloads.size() - 1)};
}

LedgerEntry MockLedger::get(const LedgerAddress& address) const {
    if (address.block_height >= blocks_.size()) {
        throw Error(ErrorCode::AddressUnresolvable, "height " + std::to_string(address.block_height));
    }
    const auto& block = blocks_[address.block_height];
    if (address.tx_index >= block.payloads.size()) {
        throw Error(ErrorCode::AddressUnresolvable, "tx index " + std::to_string(address.tx_index));
    }
    return {block.payloads[address.tx_index], block.time};
}

Timestamp MockLedger::tip_time() const { return blocks_.empty() ? origin_ : blocks_.back().time; }

Bytes MockLedger::serialize() const {
    Bytes out;
    for (const auto& block : blocks_) {
        codec::put_u64(out, block.time.millis);
        codec::put_u32(out, static_cast<std::uint32_t>(block.payloads.size()));
        for (const auto& p : block.payloads) {
            codec::put_u32(out, static_cast<std::uint32_t>(p.size()));
            notaria::append(out, p);
        }
    }
    return out;
}

MockLedger MockLedger::deserialize(ByteView bytes, std::uint64_t block_interval_ms) {
    codec::Reader in(bytes);
    MockLedger ledger(block_interval_ms);
    while (!in.done()) {
        PublicBlock block;
        block.time.millis = in.u64();
        auto n = in.count(4);
        for (std::uint32_t i = 0; i < n; ++i) {
            auto len = in.u32();
            auto p = in.take(len);
            block.payloads.emplace_back(p.begin(), p.end());
        }
        if (!ledger.blocks_.empty() && block.time <= ledger.blocks_.back().time) {
            throw Error(ErrorCode::MalformedEncoding, "ledger block times not increasing");
        }
        ledger.blocks_.push_back(std::move(block));
    }
    if (!ledger.blocks_.empty()) ledger.now_ = ledger.blocks_.back().time;
    return ledger;
}

void MockLedger::save(const std::filesystem::path& file) const { io::write_file(file, serialize()); }

MockLedger MockLedger::load(const std::filesystem::path& file) { return deserialize(io::read_file(file)); }

}  // namespace notaria::anchor
