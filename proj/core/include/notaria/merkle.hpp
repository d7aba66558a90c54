#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "notaria/bytes.hpp"
#include "notaria/codec.hpp"

// Binary Merkle trees with domain-separated hashing:
//   leaf     = H(0x00 || item)
//   internal = H(0x01 || left || right)
// An unpaired node at the end of a level is promoted unchanged.
namespace notaria::merkle {

enum class Side : std::uint8_t {
    Left = 0,   // sibling sits to the left of the running hash
    Right = 1,  // sibling sits to the right
};

struct PathStep {
    Digest sibling;
    Side side = Side::Right;

    friend bool operator==(const PathStep&, const PathStep&) = default;
};

struct MerklePath {
    std::vector<PathStep> steps;

    std::size_t size() const { return steps.size(); }
    bool empty() const { return steps.empty(); }

    friend bool operator==(const MerklePath&, const MerklePath&) = default;
};

Digest leaf_digest(ByteView item);
Digest node_hash(const Digest& left, const Digest& right);

class MerkleTree {
public:
    /// Throws EmptyLeaves.
    static MerkleTree build(std::vector<Digest> leaves);

    const Digest& root() const { return levels_.back().front(); }
    const std::vector<Digest>& leaves() const { return levels_.front(); }
    const std::vector<std::vector<Digest>>& levels() const { return levels_; }
    std::size_t leaf_count() const { return levels_.front().size(); }

    /// Audit path from leaf `index` to the root. Throws IndexOutOfRange.
    MerklePath path(std::size_t index) const;

private:
    explicit MerkleTree(std::vector<std::vector<Digest>> levels) : levels_(std::move(levels)) {}

    std::vector<std::vector<Digest>> levels_;
};

/// Folds `leaf` through the path and returns the resulting root.
Digest fold_path(const Digest& leaf, const MerklePath& path);
bool verify_path(const Digest& leaf, const MerklePath& path, const Digest& root);

/// Upper bound on path length for an n-leaf tree: ceil(log2 n).
std::size_t max_path_length(std::size_t leaf_count);

// Wire format: u32 BE step count, then per step side byte (0 left, 1 right)
// followed by the 32-byte sibling.
void encode_path(Bytes& out, const MerklePath& path);
std::size_t encoded_path_size(const MerklePath& path);
/// Throws MalformedEncoding on truncation or a side byte other than 0/1.
MerklePath read_path(codec::Reader& in);

}  // namespace notaria::merkle
