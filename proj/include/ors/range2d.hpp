#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ors/ball_inheritance.hpp"
#include "ors/core.hpp"
#include "ors/succinct.hpp"

namespace ors {

struct Query2DStats {
  std::uint64_t ball_queries = 0;   // step-3 leaf lookups
  std::uint64_t oracle_calls = 0;   // predecessor-oracle lookups (also leaf lookups)
  std::uint64_t skip_hops = 0;
  std::uint64_t rmq_queries = 0;
};

struct Report2DResult {
  std::vector<PointD> points;
  bool truncated = false;
  Query2DStats stats;
};

/// y-interval of a query translated into the children of the LCA, as half-open
/// ranges of ball indexes.
struct Translated2D {
  unsigned child_level = 0;
  std::uint64_t left_node = 0;
  std::size_t left_lo = 0, left_hi = 0;
  std::size_t right_lo = 0, right_hi = 0;
};

class RangeReport2D {
 public:
  RangeReport2D() = default;
  /// points: 2-d rank space.
  explicit RangeReport2D(std::span<const PointD> points, const BallTreeOptions& opt = {});

  std::size_t size() const { return n_; }
  const BallTree& tree() const { return tree_; }
  unsigned predecessor_stride() const { return g_; }

  Report2DResult report(const QueryBox& box, std::optional<std::size_t> limit = std::nullopt) const;
  bool empty(const QueryBox& box, Query2DStats* stats = nullptr) const;

  /// (level, node) of the lowest common ancestor of two distinct leaves.
  static std::pair<unsigned, std::uint64_t> lca_of_leaves(unsigned height, std::size_t x1, std::size_t x2);
  /// Step-2 translation for x1 < x2 (rank space, y1 <= y2).
  Translated2D translate_y(std::size_t x1, std::size_t x2, std::uint64_t y1, std::uint64_t y2,
                           Query2DStats* stats = nullptr) const;

  std::size_t space_bytes() const;
  std::size_t tree_bits() const { return tree_.bit_size(); }

 private:
  void report_child(unsigned level, std::uint64_t node, std::size_t lo, std::size_t hi, bool right,
                    std::uint64_t x_bound, std::size_t limit, Report2DResult& out) const;

  std::size_t n_ = 0;
  unsigned g_ = 1;
  BallTree tree_;
  std::vector<RMQIndex> rmq_;                 // per level; empty where unused
  std::vector<PredecessorIndex> pred_;        // per level; built at multiples of g_
};

RangeReport2D build_2d(std::span<const PointD> points, unsigned B = 2, SkipMode mode = SkipMode::FastQuery);
Report2DResult report_2d(const RangeReport2D& s, const QueryBox& box, std::optional<std::size_t> limit = std::nullopt);
bool empty_2d(const RangeReport2D& s, const QueryBox& box);

}  // namespace ors
