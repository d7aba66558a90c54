#include "notaria/merkle.hpp"

#include "notaria/crypto.hpp"
#include "notaria/error.hpp"

namespace notaria::merkle {

Digest leaf_digest(ByteView item) {
    Bytes buf;
    buf.reserve(item.size() + 1);
    buf.push_back(0x00);
    append(buf, item);
    return crypto::hash(buf);
}

Digest node_hash(const Digest& left, const Digest& right) {
    Bytes buf;
    buf.reserve(1 + 2 * Digest::size);
    buf.push_back(0x01);
    append(buf, left.view());
    append(buf, right.view());
    return crypto::hash(buf);
}

MerkleTree MerkleTree::build(std::vector<Digest> leaves) {
    if (leaves.empty()) throw Error(ErrorCode::EmptyLeaves);
    std::vector<std::vector<Digest>> levels;
    levels.push_back(std::move(leaves));
    while (levels.back().size() > 1) {
        const auto& cur = levels.back();
        std::vector<Digest> next;
        next.reserve((cur.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < cur.size(); i += 2) next.push_back(node_hash(cur[i], cur[i + 1]));
        if (cur.size() % 2 == 1) next.push_back(cur.back());
        levels.push_back(std::move(next));
    }
    return MerkleTree(std::move(levels));
}

MerklePath MerkleTree::path(std::size_t index) const {
    if (index >= leaf_count()) {
        throw Error(ErrorCode::IndexOutOfRange,
                    std::to_string(index) + " >= " + std::to_string(leaf_count()));
    }
    MerklePath out;
    for (std::size_t lvl = 0; lvl + 1 < levels_.size(); ++lvl) {
        const auto& cur = levels_[lvl];
        std::size_t sibling = index ^ 1U;
        if (sibling < cur.size()) {
            out.steps.push_back({cur[sibling], (index & 1U) ? Side::Left : Side::Right});
        }
        // promoted nodes contribute no step
        index /= 2;
    }
    return out;
}

Digest fold_path(const Digest& leaf, const MerklePath& path) {
    Digest acc = leaf;
    for (const auto& step : path.steps) {
        acc = step.side == Side::Left ? node_hash(step.sibling, acc) : node_hash(acc, step.sibling);
    }
    return acc;
}

bool verify_path(const Digest& leaf, const MerklePath& path, const Digest& root) {
    return fold_path(leaf, path) == root;
}

std::size_t max_path_length(std::size_t leaf_count) {
    std::size_t depth = 0;
    while ((std::size_t{1} << depth) < leaf_count) ++depth;
    return depth;
}

void encode_path(Bytes& out, const MerklePath& path) {
    codec::put_u32(out, static_cast<std::uint32_t>(path.steps.size()));
    for (const auto& step : path.steps) {
        codec::put_u8(out, static_cast<std::uint8_t>(step.side));
        codec::put(out, step.sibling);
    }
}

std::size_t encoded_path_size(const MerklePath& path) { return 4 + path.steps.size() * (1 + Digest::size); }

MerklePath read_path(codec::Reader& in) {
    MerklePath path;
    auto n = in.count(1 + Digest::size);
    path.steps.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        auto side = in.u8();
        if (side > 1) throw Error(ErrorCode::MalformedEncoding, "path side byte " + std::to_string(side));
        path.steps.push_back({in.fixed<Digest>(), static_cast<Side>(side)});
    }
    return path;
}

}  // namespace notaria::merkle
