#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "ors/offline.hpp"

namespace ors {

DominancePairs rectangle_enclosure(std::span<const Rect2> rects, const OfflineOptions& opt, OfflineStats* stats) {
  Coord M = 0;
  for (const auto& r : rects) {
    require(r.x1 <= r.x2 && r.y1 <= r.y2, "rectangle_enclosure: malformed rectangle");
    M = std::max({M, r.x2, r.y2});
  }
  std::vector<PointD> pts(rects.size());
  for (std::size_t i = 0; i < rects.size(); ++i)
    pts[i] = PointD({M - rects[i].x1, rects[i].x2, M - rects[i].y1, rects[i].y2}, static_cast<PointId>(i));
  const auto inst = OfflineInstance::make(pts, pts);
  auto found = offline_dominance_4d(inst, opt, stats);
  DominancePairs out;
  out.reserve(found.size());
  for (auto [inner, outer] : found)
    if (inner != outer) out.emplace_back(outer, inner);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

bool lex_less(const PointD& a, const PointD& b) {
  return std::lexicographical_compare(a.c.begin(), a.c.begin() + a.dim, b.c.begin(), b.c.begin() + b.dim);
}

/// Distinct points in descending lexicographic order; a dominating point always comes first.
std::vector<std::uint32_t> maximal_distinct_low(const std::vector<PointD>& d) {
  std::vector<std::uint32_t> out;
  if (d.empty()) return out;
  const std::size_t dim = d[0].dim;
  if (dim == 1) {
    out.push_back(0);
    return out;
  }
  if (dim == 2) {
    std::int64_t best = -1;
    for (std::uint32_t i = 0; i < d.size(); ++i) {
      if (static_cast<std::int64_t>(d[i][1]) > best) out.push_back(i);
      best = std::max<std::int64_t>(best, d[i][1]);
    }
    return out;
  }
  // Staircase of (y, z) over processed points: y ascending, z descending.
  std::map<Coord, Coord> stair;
  for (std::uint32_t i = 0; i < d.size(); ++i) {
    const Coord y = d[i][1], z = d[i][2];
    auto it = stair.lower_bound(y);
    if (it != stair.end() && it->second >= z) continue;
    out.push_back(i);
    auto lo = stair.upper_bound(y);
    auto first = lo;
    while (first != stair.begin() && std::prev(first)->second <= z) --first;
    stair.erase(first, lo);
    stair[y] = z;
  }
  return out;
}

}  // namespace

std::vector<std::uint32_t> maxima(std::span<const PointD> points, const OfflineOptions& opt) {
  if (points.empty()) return {};
  const std::size_t dim = points[0].dim;
  for (const auto& p : points) require(p.dim == dim && dim >= 1, "maxima: mixed dimensions");

  std::vector<std::uint32_t> ord(points.size());
  std::iota(ord.begin(), ord.end(), 0u);
  std::sort(ord.begin(), ord.end(), [&](auto a, auto b) { return lex_less(points[b], points[a]); });
  std::vector<PointD> reps;  // distinct points, descending lexicographic order
  std::vector<std::uint32_t> group(ord.size());
  for (std::size_t k = 0; k < ord.size(); ++k) {
    const PointD& p = points[ord[k]];
    if (k == 0 || !std::equal(p.c.begin(), p.c.begin() + dim, points[ord[k - 1]].c.begin())) reps.push_back(p);
    group[k] = static_cast<std::uint32_t>(reps.size() - 1);
  }

  std::vector<std::uint8_t> keep(reps.size(), 0);
  if (dim <= 3) {
    for (auto r : maximal_distinct_low(reps)) keep[r] = 1;
  } else {
    // Reflect so the dominators become dominated; axis 0 carries the lexicographic
    // rank, with the input copy one step above its query copy to exclude self.
    Coord M = 0;
    for (const auto& p : reps)
      for (std::size_t a = 0; a < dim; ++a) M = std::max(M, p[a]);
    const auto m = static_cast<std::uint32_t>(reps.size());
    std::vector<PointD> in(m), qs(m);
    for (std::uint32_t r = 0; r < m; ++r) {
      PointD p = reps[r];
      for (std::size_t a = 0; a < dim; ++a) p[a] = M - p[a];
      p.id = r;
      in[r] = p, qs[r] = p;
      in[r][0] = 2 * r + 1;
      qs[r][0] = 2 * r;
    }
    const auto hit = offline_dominance_emptiness(OfflineInstance::make(std::move(in), std::move(qs)), opt);
    for (std::uint32_t r = 0; r < m; ++r) keep[r] = !hit[r];
  }
  std::vector<std::uint32_t> out;
  for (std::size_t k = 0; k < ord.size(); ++k)
    if (keep[group[k]]) out.push_back(ord[k]);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

struct KeyHash {
  std::size_t operator()(const std::vector<std::uint64_t>& v) const {
    std::uint64_t h = 0x84222325CBF29CE4ull;
    for (auto x : v) h = (h ^ x) * 0x100000001B3ull;
    return static_cast<std::size_t>(h);
  }
};

}  // namespace

bool linfty_closest_pair_decision(std::span<const PointD> red, std::span<const PointD> blue, std::uint64_t r,
                                  const OfflineOptions& opt) {
  if (red.empty() || blue.empty()) return false;
  const std::size_t d = red[0].dim;
  for (const auto& p : red) require(p.dim == d, "linfty_closest_pair_decision: mixed dimensions");
  for (const auto& p : blue) require(p.dim == d, "linfty_closest_pair_decision: mixed dimensions");
  if (r >= 0xFFFFFFFFull) return true;
  using Key = std::vector<std::uint64_t>;
  if (r == 0) {
    std::unordered_set<Key, KeyHash> seen;
    for (const auto& p : red) seen.insert(Key(p.c.begin(), p.c.begin() + d));
    for (const auto& q : blue)
      if (seen.count(Key(q.c.begin(), q.c.begin() + d))) return true;
    return false;
  }

  std::unordered_map<Key, std::vector<std::uint32_t>, KeyHash> cells;
  Key key(d);
  for (std::uint32_t i = 0; i < red.size(); ++i) {
    for (std::size_t a = 0; a < d; ++a) key[a] = red[i][a] / r;
    cells[key].push_back(i);
  }

  // A cube of side 2r around a blue point meets the 3^d cells around its own cell.
  // Inside the cell at offset s it is bounded only on the axes where s != 0, from
  // above when s = +1 and from below when s = -1.
  struct Group {
    std::vector<std::uint32_t> blues;
  };
  std::map<std::pair<Key, std::uint32_t>, Group> groups;
  std::uint32_t patterns = 1;
  for (std::size_t a = 0; a < d; ++a) patterns *= 3;
  Key home(d), at(d);
  for (std::uint32_t j = 0; j < blue.size(); ++j) {
    for (std::size_t a = 0; a < d; ++a) home[a] = blue[j][a] / r;
    for (std::uint32_t s = 0; s < patterns; ++s) {
      bool ok = true;
      std::uint32_t t = s;
      for (std::size_t a = 0; a < d; ++a, t /= 3) {
        const int off = static_cast<int>(t % 3) - 1;
        if (off < 0 && home[a] == 0) ok = false;
        at[a] = home[a] + off;
      }
      if (!ok || !cells.count(at)) continue;
      groups[{at, s}].blues.push_back(j);
    }
  }

  for (const auto& [gk, g] : groups) {
    const auto& [cell, s] = gk;
    std::vector<int> off(d);
    std::uint32_t t = s;
    std::vector<std::size_t> axes;
    for (std::size_t a = 0; a < d; ++a, t /= 3) {
      off[a] = static_cast<int>(t % 3) - 1;
      if (off[a] != 0) axes.push_back(a);
    }
    if (axes.empty()) return true;
    const auto& reds = cells.at(cell);
    // Local coordinates in [0, r); lower bounds are reflected into upper bounds.
    std::vector<PointD> in, qs;
    for (auto i : reds) {
      PointD p;
      p.dim = static_cast<std::uint8_t>(axes.size());
      for (std::size_t k = 0; k < axes.size(); ++k) {
        const std::size_t a = axes[k];
        const std::uint64_t v = red[i][a] - cell[a] * r;
        p.c[k] = static_cast<Coord>(off[a] > 0 ? v : r - 1 - v);
      }
      in.push_back(p);
    }
    for (auto j : g.blues) {
      PointD q;
      q.dim = static_cast<std::uint8_t>(axes.size());
      for (std::size_t k = 0; k < axes.size(); ++k) {
        const std::size_t a = axes[k];
        const std::int64_t lo = static_cast<std::int64_t>(cell[a] * r);
        if (off[a] > 0) {
          const std::int64_t bound = static_cast<std::int64_t>(blue[j][a]) + static_cast<std::int64_t>(r) - lo;
          q.c[k] = static_cast<Coord>(std::min<std::int64_t>(bound, static_cast<std::int64_t>(r) - 1));
        } else {
          const std::int64_t bound = static_cast<std::int64_t>(blue[j][a]) - static_cast<std::int64_t>(r) - lo;
          q.c[k] = static_cast<Coord>(static_cast<std::int64_t>(r) - 1 - std::max<std::int64_t>(bound, 0));
        }
      }
      qs.push_back(q);
    }
    const auto hit = offline_dominance_emptiness(OfflineInstance::make(std::move(in), std::move(qs)), opt);
    if (std::find(hit.begin(), hit.end(), 1) != hit.end()) return true;
  }
  return false;
}

}  // namespace ors
