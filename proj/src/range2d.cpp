#include "ors/range2d.hpp"

#include <algorithm>
#include <utility>

namespace ors {

RangeReport2D::RangeReport2D(std::span<const PointD> points, const BallTreeOptions& opt)
    : n_(points.size()), tree_(points, opt) {
  const unsigned h = tree_.height();
  const std::size_t N = tree_.padded_size();
  g_ = std::max(1u, ceil_log2(std::max(1u, ceil_log2(std::max<std::size_t>(n_, 2)))));
  rmq_.resize(h + 1);
  pred_.resize(h + 1);
  if (n_ == 0) return;

  std::vector<std::uint32_t> cur(N), next(N), ys(N), xs(N);
  for (const auto& p : points) cur[p.c[1]] = p.c[0];
  for (std::size_t i = n_; i < N; ++i) cur[i] = static_cast<std::uint32_t>(i);
  const unsigned key_bits = bits_for(N);
  for (unsigned l = 0; l <= h; ++l) {
    const std::size_t S = N >> l;
    if (l % g_ == 0) {
      std::vector<std::uint64_t> keys(N);
      for (std::size_t p = 0; p < N; ++p) keys[p] = tree_.leaf_y(cur[p]);
      pred_[l] = PredecessorIndex(keys, key_bits, S);
    }
    if (l >= 1 && S > 1) {
      std::vector<bool> want_max(std::size_t{1} << l);
      for (std::size_t v = 0; v < want_max.size(); ++v) want_max[v] = (v % 2) == 0;
      rmq_[l] = RMQIndex(cur, S, want_max);
    }
    if (l == h) break;
    const std::size_t half = S / 2;
    for (std::size_t v = 0; v < (std::size_t{1} << l); ++v) {
      std::size_t lo = v * S, hi = v * S + half;
      for (std::size_t p = v * S; p < (v + 1) * S; ++p) {
        if ((cur[p] >> (h - 1 - l)) & 1u) next[hi++] = cur[p]; else next[lo++] = cur[p];
      }
    }
    cur.swap(next);
  }
}

std::pair<unsigned, std::uint64_t> RangeReport2D::lca_of_leaves(unsigned height, std::size_t x1, std::size_t x2) {
  require(x1 != x2, "lca_of_leaves: leaves must differ");
  const unsigned b = 63 - std::countl_zero(static_cast<std::uint64_t>(x1 ^ x2));
  return {height - 1 - b, x1 >> (b + 1)};
}

Translated2D RangeReport2D::translate_y(std::size_t x1, std::size_t x2, std::uint64_t y1, std::uint64_t y2,
                                        Query2DStats* stats) const {
  const unsigned h = tree_.height();
  auto [lca_level, lca_node] = lca_of_leaves(h, x1, x2);
  const unsigned a = lca_level / g_ * g_;
  std::uint64_t node = x1 >> (h - a);
  const std::size_t S = tree_.node_size(a);
  const std::size_t seg = node * S;
  auto oracle = [&](std::size_t pos) {
    ChaseStats cs;
    const std::size_t leaf = tree_.query_leaf(BallId{a, pos / S, pos % S}, &cs);
    if (stats) {
      ++stats->oracle_calls;
      stats->skip_hops += cs.hops;
    }
    return static_cast<std::uint64_t>(tree_.leaf_y(leaf));
  };
  auto s1 = pred_[a].successor(seg, y1, oracle);
  auto p2 = pred_[a].predecessor(seg, y2, oracle);
  std::size_t lo = s1 ? *s1 - seg : S;
  std::size_t hi = p2 ? *p2 - seg + 1 : 0;
  // Walk down to the LCA, one routing level at a time.
  for (unsigned l = a; l < lca_level; ++l) {
    const unsigned bit = (x1 >> (h - 1 - l)) & 1u;
    const std::size_t r_lo = tree_.count_right(l, node, lo), r_hi = tree_.count_right(l, node, hi);
    lo = bit ? r_lo : lo - r_lo;
    hi = bit ? r_hi : hi - r_hi;
    node = node * 2 + bit;
  }
  Translated2D t;
  t.child_level = lca_level + 1;
  t.left_node = lca_node * 2;
  const std::size_t r_lo = tree_.count_right(lca_level, lca_node, lo);
  const std::size_t r_hi = tree_.count_right(lca_level, lca_node, hi);
  t.left_lo = lo - r_lo;
  t.left_hi = hi - r_hi;
  t.right_lo = r_lo;
  t.right_hi = r_hi;
  return t;
}

void RangeReport2D::report_child(unsigned level, std::uint64_t node, std::size_t lo, std::size_t hi, bool right,
                                 std::uint64_t x_bound, std::size_t limit, Report2DResult& out) const {
  if (lo >= hi) return;
  const std::size_t S = tree_.node_size(level);
  const std::size_t seg = node * S;
  std::vector<std::pair<std::size_t, std::size_t>> stack{{lo, hi - 1}};
  while (!stack.empty()) {
    if (out.points.size() >= limit) {
      out.truncated = true;
      return;
    }
    auto [i, j] = stack.back();
    stack.pop_back();
    std::size_t m = i;
    if (i != j) {
      m = rmq_[level].query(seg + i, seg + j) - seg;
      ++out.stats.rmq_queries;
    }
    ChaseStats cs;
    const std::size_t x = tree_.query_leaf(BallId{level, node, m}, &cs);
    ++out.stats.ball_queries;
    out.stats.skip_hops += cs.hops;
    if (right ? x > x_bound : x < x_bound) continue;
    out.points.push_back(*tree_.leaf_point(x));
    if (m + 1 <= j) stack.emplace_back(m + 1, j);
    if (m > i) stack.emplace_back(i, m - 1);
  }
}

Report2DResult RangeReport2D::report(const QueryBox& box, std::optional<std::size_t> limit) const {
  require(box.dim() == 2, "report_2d: box must be 2-d");
  require(box.well_formed(), "report_2d: malformed box");
  Report2DResult out;
  const std::size_t cap = limit.value_or(static_cast<std::size_t>(-1));
  if (n_ == 0 || cap == 0) {
    out.truncated = n_ != 0 && cap == 0;
    return out;
  }
  const std::uint64_t top = n_ - 1;
  const std::uint64_t x1 = box.lower(0), x2 = std::min(box.upper(0), top);
  const std::uint64_t y1 = box.lower(1), y2 = std::min(box.upper(1), top);
  if (x1 > x2 || y1 > y2) return out;
  if (x1 == x2) {
    const PointD p = *tree_.leaf_point(x1);
    if (p.c[1] >= y1 && p.c[1] <= y2) out.points.push_back(p);
    return out;
  }
  Translated2D t = translate_y(x1, x2, y1, y2, &out.stats);
  report_child(t.child_level, t.left_node + 1, t.right_lo, t.right_hi, true, x2, cap, out);
  if (out.points.size() >= cap) {
    out.truncated = out.truncated || t.left_lo < t.left_hi;
    return out;
  }
  report_child(t.child_level, t.left_node, t.left_lo, t.left_hi, false, x1, cap, out);
  return out;
}

bool RangeReport2D::empty(const QueryBox& box, Query2DStats* stats) const {
  auto r = report(box, 1);
  if (stats) *stats = r.stats;
  return r.points.empty();
}

std::size_t RangeReport2D::space_bytes() const {
  std::size_t bits = tree_.bit_size();
  for (const auto& r : rmq_) bits += r.bit_size();
  for (const auto& p : pred_) bits += p.bit_size();
  return bits / 8 + tree_.leaf_table_bytes();
}

RangeReport2D build_2d(std::span<const PointD> points, unsigned B, SkipMode mode) {
  return RangeReport2D(points, BallTreeOptions{mode, B, {}});
}

Report2DResult report_2d(const RangeReport2D& s, const QueryBox& box, std::optional<std::size_t> limit) {
  return s.report(box, limit);
}

bool empty_2d(const RangeReport2D& s, const QueryBox& box) { return s.empty(box); }

}  // namespace ors
