#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ors/core.hpp"
#include "ors/succinct.hpp"

namespace ors {

enum class SkipMode { FastQuery, LowSpace };

const char* to_string(SkipMode m);

/// Which jumps are stored and which jump a chase takes from each level.
struct SkipPlan {
  SkipMode mode = SkipMode::FastQuery;
  unsigned B = 2;
  unsigned height = 0;
  /// Logical jumps (source level, target level); each source has exactly one.
  std::vector<std::pair<unsigned, unsigned>> jumps;

  static SkipPlan make(SkipMode mode, unsigned B, unsigned height);
  unsigned target(unsigned level) const { return jumps[level].second; }
  /// Upper bound on logical hops for any chase under this plan.
  unsigned hop_bound() const;
};

/// Largest stored jump length; longer logical jumps are split in two.
inline constexpr unsigned kMaxJump = 16;

struct ChaseStats {
  std::uint64_t hops = 0;           // logical jumps taken
  std::uint64_t physical_hops = 0;  // rank probes actually issued
};

/// Ball identity packed as level (6 bits) and level-wide position (58 bits).
struct BallId {
  unsigned level = 0;
  std::uint64_t node = 0;
  std::uint64_t index = 0;
};

struct BallTreeOptions {
  SkipMode mode = SkipMode::FastQuery;
  unsigned B = 2;
  /// Test fixture: flip the routing bit at (level, level-wide position).
  std::optional<std::pair<unsigned, std::size_t>> flip_routing_bit;
};

/// Perfect binary tree over x-rank leaves. Every node lists its balls in root
/// (y) order; a ball's routing symbol at a level says which child it enters.
class BallTree {
 public:
  BallTree() = default;
  /// points: 2-d rank space (x and y are permutations of 0..n-1).
  BallTree(std::span<const PointD> points, const BallTreeOptions& opt = {});

  std::size_t size() const { return n_; }
  std::size_t padded_size() const { return N_; }
  unsigned height() const { return h_; }
  const SkipPlan& plan() const { return plan_; }
  std::size_t node_size(unsigned level) const { return N_ >> level; }

  std::uint64_t pack(const BallId& b) const;
  BallId unpack(std::uint64_t packed) const;

  /// Routing bit (0 = left) of a ball.
  unsigned routing_bit(unsigned level, std::uint64_t node, std::uint64_t index) const;
  /// Same ball one level below.
  BallId step_down(const BallId& b) const;
  /// Number of balls with routing bit 1 among the first `prefix` balls of a node.
  std::size_t count_right(unsigned level, std::uint64_t node, std::size_t prefix) const;

  /// Leaf (x-rank) the ball eventually reaches, following the skip plan.
  std::size_t query_leaf(const BallId& b, ChaseStats* stats = nullptr) const;
  /// Leaf reached by iterating step_down.
  std::size_t naive_leaf(const BallId& b) const;

  /// The rank-space point stored at a leaf; nullopt for padding leaves.
  std::optional<PointD> leaf_point(std::size_t leaf) const;
  bool is_padding(std::size_t leaf) const { return leaf >= n_; }
  /// y-rank of the point at a leaf (padding leaves have y >= n).
  Coord leaf_y(std::size_t leaf) const { return leaf < n_ ? points_[leaf].c[1] : static_cast<Coord>(leaf); }

  /// Bits of routing plus skip indexes (excludes the leaf table).
  std::size_t bit_size() const;
  std::size_t leaf_table_bytes() const { return points_.size() * sizeof(PointD); }

 private:
  struct Jump {
    unsigned from = 0, to = 0;
    AlphabetRankIndex index;
  };
  void check(const BallId& b) const;
  BallId jump(const BallId& b, unsigned to, ChaseStats* stats) const;
  BallId physical(const BallId& b, unsigned to) const;

  std::size_t n_ = 0;
  std::size_t N_ = 1;
  unsigned h_ = 0;
  SkipPlan plan_;
  std::vector<AlphabetRankIndex> routing_;  // per level 0..h-1, binary
  std::vector<Jump> jumps_;                 // physical jumps with length >= 2
  std::vector<std::vector<std::int32_t>> jump_at_;  // [from][to - from] -> jumps_ index
  std::vector<PointD> points_;              // by x-rank
};

}  // namespace ors
