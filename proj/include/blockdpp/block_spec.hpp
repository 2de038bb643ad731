// Copyright 2026 The blockdpp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace blockdpp {

/// Block type of the level set: `even` (B equal-width blocks away from the
/// origin), `odd` (half-width block at the origin plus B-1 equal blocks),
/// or `custom` (anything disjoint).
enum class Parity { even, odd, custom };

/// One block of occupied levels: the integer interval [a^2 M, (a+w)^2 M).
struct Block {
    double a;
    double w;
};

/// A union of disjoint level blocks scaled by M. Immutable after
/// construction; construction validates disjointness (after flooring the
/// endpoints) and the parity pattern.
class BlockSpec {
 public:
    BlockSpec(std::vector<Block> blocks, std::int64_t m, Parity parity = Parity::custom);

    const std::vector<Block>& blocks() const { return blocks_; }
    std::int64_t m() const { return m_; }
    Parity parity() const { return parity_; }

    /// Floored [lo, hi) level interval per block.
    const std::vector<std::pair<std::int64_t, std::int64_t>>& boundaries() const {
        return boundaries_;
    }

    std::int64_t num_levels() const { return num_levels_; }      // N
    int num_blocks() const { return static_cast<int>(blocks_.size()); }  // B
    double total_width() const { return total_width_; }          // R = sum w_j

    /// The explicit sorted level set J.
    std::vector<std::int64_t> levels() const;

    /// Largest occupied level + 1.
    std::int64_t top_level() const { return boundaries_.back().second; }

    /// Outer edge of the classically allowed region, 2 (a_max + w_max) sqrt(M).
    double support_edge() const;

 private:
    std::vector<Block> blocks_;
    std::int64_t m_;
    Parity parity_;
    std::vector<std::pair<std::int64_t, std::int64_t>> boundaries_;
    std::int64_t num_levels_;
    double total_width_;
};

std::string to_string(Parity p);

}  // namespace blockdpp
