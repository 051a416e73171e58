#include <algorithm>
#include <string>

#include "ors/harness.hpp"

namespace ors::oracle {

namespace {

void guard(std::size_t a, std::size_t b, const OracleLimits& lim, const char* what) {
  const std::size_t cap = lim.quadratic_cap;
  if (a > cap || b > cap)
    throw OracleRefusal(std::string(what) + ": instance of size " + std::to_string(std::max(a, b)) +
                        " exceeds the oracle cap " + std::to_string(cap));
}

}  // namespace

std::vector<PointId> range_report(std::span<const PointD> pts, const QueryBox& box) {
  std::vector<PointId> out;
  for (const auto& p : pts)
    if (box.contains(p)) out.push_back(p.id);
  std::sort(out.begin(), out.end());
  return out;
}

DominancePairs dominance_pairs(std::span<const PointD> inputs, std::span<const PointD> queries,
                               const OracleLimits& lim) {
  guard(inputs.size(), queries.size(), lim, "dominance_pairs");
  DominancePairs out;
  for (std::uint32_t i = 0; i < inputs.size(); ++i)
    for (std::uint32_t j = 0; j < queries.size(); ++j)
      if (dominates(inputs[i], queries[j])) out.emplace_back(i, j);
  return out;
}

std::vector<std::uint8_t> dominance_emptiness(std::span<const PointD> inputs, std::span<const PointD> queries,
                                              const OracleLimits& lim) {
  guard(inputs.size(), queries.size(), lim, "dominance_emptiness");
  std::vector<std::uint8_t> out(queries.size(), 0);
  for (std::size_t j = 0; j < queries.size(); ++j)
    for (const auto& p : inputs)
      if (dominates(p, queries[j])) {
        out[j] = 1;
        break;
      }
  return out;
}

std::optional<std::size_t> argmin(std::span<const PointD> pts, std::span<const std::uint64_t> priority,
                                  const QueryBox& box) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!box.contains(pts[i])) continue;
    if (!best || priority[i] < priority[*best] || (priority[i] == priority[*best] && pts[i].id < pts[*best].id))
      best = i;
  }
  return best;
}

DominancePairs enclosure(std::span<const Rect2> rects, const OracleLimits& lim) {
  guard(rects.size(), rects.size(), lim, "enclosure");
  DominancePairs out;
  for (std::uint32_t i = 0; i < rects.size(); ++i)
    for (std::uint32_t j = 0; j < rects.size(); ++j) {
      if (i == j) continue;
      const Rect2 &a = rects[i], &b = rects[j];
      if (a.x1 <= b.x1 && b.x2 <= a.x2 && a.y1 <= b.y1 && b.y2 <= a.y2) out.emplace_back(i, j);
    }
  return out;
}

std::vector<std::uint32_t> maxima(std::span<const PointD> pts, const OracleLimits& lim) {
  guard(pts.size(), pts.size(), lim, "maxima");
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < pts.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < pts.size() && !dominated; ++j)
      dominated = dominates(pts[i], pts[j]) && !std::equal(pts[i].c.begin(), pts[i].c.end(), pts[j].c.begin());
    if (!dominated) out.push_back(i);
  }
  return out;
}

std::vector<std::uint32_t> point_location(std::span<const Rect2> rects, std::span<const PointD> queries,
                                          const OracleLimits& lim) {
  guard(rects.size(), queries.size(), lim, "point_location");
  std::vector<std::uint32_t> out(queries.size(), kNoRect);
  for (std::size_t j = 0; j < queries.size(); ++j)
    for (std::uint32_t i = 0; i < rects.size(); ++i)
      if (rects[i].contains(queries[j][0], queries[j][1])) {
        out[j] = i;
        break;
      }
  return out;
}

bool linfty_decision(std::span<const PointD> red, std::span<const PointD> blue, std::uint64_t r,
                     const OracleLimits& lim) {
  guard(red.size(), blue.size(), lim, "linfty_decision");
  for (const auto& p : red)
    for (const auto& q : blue) {
      std::uint64_t dist = 0;
      for (std::size_t a = 0; a < p.dim; ++a)
        dist = std::max<std::uint64_t>(dist, p[a] > q[a] ? p[a] - q[a] : q[a] - p[a]);
      if (dist <= r) return true;
    }
  return false;
}

std::vector<std::uint8_t> envelope_voxels(std::span<const PointD> R, std::uint64_t U, const OracleLimits& lim) {
  const std::uint64_t cap = lim.quadratic_cap;
  if (U > 1024 || U * U * U * std::max<std::size_t>(R.size(), 1) > cap * cap)
    throw OracleRefusal("envelope_voxels: U^3 * |R| exceeds the oracle cap");
  std::vector<std::uint8_t> out(U * U * U, 0);
  for (std::uint64_t x = 0; x < U; ++x)
    for (std::uint64_t y = 0; y < U; ++y)
      for (std::uint64_t z = 0; z < U; ++z)
        for (const auto& s : R)
          if (s[0] <= x && s[1] <= y && s[2] <= z) {
            out[(x * U + y) * U + z] = 1;
            break;
          }
  return out;
}

std::size_t alphabet_rank(std::span<const std::uint32_t> a, std::size_t k) {
  require(k >= 1 && k <= a.size(), "oracle::alphabet_rank: k out of range");
  return static_cast<std::size_t>(std::count(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(k), a[k - 1]));
}

std::size_t rmq(std::span<const std::uint32_t> a, std::size_t i, std::size_t j, bool maximum) {
  require(i <= j && j < a.size(), "oracle::rmq: bad range");
  std::size_t best = i;
  for (std::size_t t = i + 1; t <= j; ++t)
    if (maximum ? a[t] > a[best] : a[t] < a[best]) best = t;
  return best;
}

}  // namespace ors::oracle
