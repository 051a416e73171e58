#include "ors/cuttings.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <random>

namespace ors {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();

/// Batch evaluation of min z over sample points with s.x <= a, s.y <= b.
class PrefixMin {
 public:
  explicit PrefixMin(std::span<const PointD> R) : pts_(R.begin(), R.end()) {
    std::sort(pts_.begin(), pts_.end(), [](const PointD& p, const PointD& q) { return p.c[0] < q.c[0]; });
    for (const auto& p : pts_) ys_.push_back(p.c[1]);
    std::sort(ys_.begin(), ys_.end());
    ys_.erase(std::unique(ys_.begin(), ys_.end()), ys_.end());
  }

  /// Answers in place; entries are (a, b) and come back as heights (kNone if no point).
  std::vector<std::uint64_t> run(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& q) const {
    std::vector<std::uint32_t> order(q.size());
    for (std::uint32_t i = 0; i < q.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::uint32_t i, std::uint32_t j) { return q[i].first < q[j].first; });
    std::vector<std::uint64_t> fen(ys_.size() + 1, kNone), out(q.size(), kNone);
    std::size_t next = 0;
    for (auto qi : order) {
      const auto [a, b] = q[qi];
      for (; next < pts_.size() && pts_[next].c[0] <= a; ++next) {
        std::size_t pos = std::lower_bound(ys_.begin(), ys_.end(), pts_[next].c[1]) - ys_.begin() + 1;
        for (; pos <= ys_.size(); pos += pos & (~pos + 1)) fen[pos] = std::min<std::uint64_t>(fen[pos], pts_[next].c[2]);
      }
      std::size_t pos = std::upper_bound(ys_.begin(), ys_.end(), b) - ys_.begin();
      std::uint64_t best = kNone;
      for (; pos > 0; pos -= pos & (~pos + 1)) best = std::min(best, fen[pos]);
      out[qi] = best;
    }
    return out;
  }

 private:
  std::vector<PointD> pts_;
  std::vector<Coord> ys_;
};

/// Occupancy of the unit cube [a,a+1) x [b,b+1) x [c,c+1) given h(a, b).
bool filled(std::int64_t a, std::int64_t b, std::int64_t c, std::uint64_t h, std::uint64_t U) {
  const auto u = static_cast<std::int64_t>(U);
  if (a < 0 || b < 0 || c < 0 || a >= u || b >= u || c >= u) return false;
  return h != kNone && static_cast<std::uint64_t>(c) >= h;
}

}  // namespace

std::vector<std::uint32_t> sample(std::span<const PointD> S, std::uint64_t K, std::uint64_t seed,
                                  std::uint64_t stream) {
  require(K >= 1, "sample: K must be at least 1");
  std::mt19937_64 rng(splitmix64(seed ^ splitmix64(stream + 0x51ED270B27A1CEull)));
  const double p = 1.0 / static_cast<double>(K);
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < S.size(); ++i) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    if (u < p) out.push_back(i);
  }
  return out;
}

std::uint64_t StaircasePolyhedron::height(std::uint64_t x, std::uint64_t y) const {
  std::uint64_t h = U;
  for (const auto& s : sample)
    if (s.c[0] <= x && s.c[1] <= y) h = std::min<std::uint64_t>(h, s.c[2]);
  return h;
}

bool StaircasePolyhedron::above(const PointD& q) const {
  for (const auto& s : sample)
    if (dominates(s, q)) return true;
  return false;
}

namespace {

std::vector<StairPiece> sweep_pieces(std::vector<PointD> R, std::uint64_t U) {
  std::sort(R.begin(), R.end(), [](const PointD& p, const PointD& q) {
    if (p.c[0] != q.c[0]) return p.c[0] < q.c[0];
    if (p.c[1] != q.c[1]) return p.c[1] < q.c[1];
    return p.c[2] < q.c[2];
  });
  struct Run {
    std::uint64_t z, x_start;
  };
  std::map<std::uint64_t, Run> runs{{0, Run{U, 0}}};
  std::vector<StairPiece> out;
  auto close = [&](std::map<std::uint64_t, Run>::iterator it, std::uint64_t x) {
    auto nx = std::next(it);
    const std::uint64_t y2 = nx == runs.end() ? U : nx->first;
    if (x > it->second.x_start) out.push_back(StairPiece{it->second.x_start, x, it->first, y2, it->second.z});
  };
  for (const auto& s : R) {
    const std::uint64_t x = s.c[0], y = s.c[1], z = s.c[2];
    auto it = std::prev(runs.upper_bound(y));
    if (it->second.z <= z) continue;
    close(it, x);
    if (it->first == y) {
      it = runs.erase(it);
    } else {
      it->second.x_start = x;
      ++it;
    }
    while (it != runs.end() && it->second.z >= z) {
      close(it, x);
      it = runs.erase(it);
    }
    runs.emplace(y, Run{z, x});
  }
  for (auto it = runs.begin(); it != runs.end(); ++it) close(it, U);
  return out;
}

}  // namespace

StaircasePolyhedron build_staircase(std::span<const PointD> R, std::uint64_t U, bool skeleton) {
  StaircasePolyhedron p;
  p.U = U != 0 ? U : universe_of(R);
  for (const auto& s : R) {
    require(s.dim == 3, "build_staircase: points must be 3-d");
    require(s.c[0] < p.U && s.c[1] < p.U && s.c[2] < p.U, "build_staircase: coordinate outside the clip cube");
  }
  p.sample.assign(R.begin(), R.end());
  p.pieces = sweep_pieces(p.sample, p.U);
  if (!skeleton) return p;

  // Vertices lie over piece corners, at heights where one of the four
  // surrounding columns changes, or on the clip planes.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> corners;
  for (const auto& pc : p.pieces)
    for (auto x : {pc.x1, pc.x2})
      for (auto y : {pc.y1, pc.y2}) corners.emplace_back(x, y);
  std::sort(corners.begin(), corners.end());
  corners.erase(std::unique(corners.begin(), corners.end()), corners.end());
  std::vector<std::pair<std::uint64_t, std::uint64_t>> hq;
  for (auto [x, y] : corners)
    for (int da = 0; da < 2; ++da)
      for (int db = 0; db < 2; ++db) hq.emplace_back(x - 1 + da, y - 1 + db);  // wraps below 0; never read
  const auto h = PrefixMin(R).run(hq);

  auto column = [&](std::size_t ci, int da, int db) { return h[ci * 4 + da * 2 + db]; };
  auto pattern = [&](std::size_t ci, std::uint64_t z) {
    const auto [x, y] = corners[ci];
    unsigned bits = 0;
    for (int da = 0; da < 2; ++da)
      for (int db = 0; db < 2; ++db)
        for (int dc = 0; dc < 2; ++dc) {
          const std::int64_t a = static_cast<std::int64_t>(x) - 1 + da, b = static_cast<std::int64_t>(y) - 1 + db;
          const std::int64_t c = static_cast<std::int64_t>(z) - 1 + dc;
          if (filled(a, b, c, column(ci, da, db), p.U)) bits |= 1u << (da * 4 + db * 2 + dc);
        }
    return bits;
  };
  auto symmetric = [](unsigned bits, int axis) {
    const int shift = axis == 0 ? 4 : axis == 1 ? 2 : 1;
    for (unsigned i = 0; i < 8; ++i) {
      const unsigned j = i ^ shift;
      if (((bits >> i) & 1u) != ((bits >> j) & 1u)) return false;
    }
    return true;
  };

  struct VInfo {
    Vertex3 v;
    unsigned bits;
  };
  std::vector<VInfo> vs;
  for (std::size_t ci = 0; ci < corners.size(); ++ci) {
    std::vector<std::uint64_t> zs{0, p.U};
    for (int k = 0; k < 4; ++k)
      if (h[ci * 4 + k] != kNone) zs.push_back(h[ci * 4 + k]);
    std::sort(zs.begin(), zs.end());
    zs.erase(std::unique(zs.begin(), zs.end()), zs.end());
    for (auto z : zs) {
      const unsigned bits = pattern(ci, z);
      if (!symmetric(bits, 0) && !symmetric(bits, 1) && !symmetric(bits, 2))
        vs.push_back(VInfo{{corners[ci].first, corners[ci].second, z}, bits});
    }
  }
  std::sort(vs.begin(), vs.end(), [](const VInfo& a, const VInfo& b) { return a.v < b.v; });
  for (const auto& v : vs) p.vertices.push_back(v.v);
  p.adjacency.assign(vs.size(), {});

  // An edge leaves v along +axis when the four unit cubes just past v around
  // that axis form an edge pattern; it ends at the next vertex on the line.
  for (int axis = 0; axis < 3; ++axis) {
    const int o1 = axis == 0 ? 1 : 0, o2 = axis == 2 ? 1 : 2;
    std::vector<std::uint32_t> order(vs.size());
    for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
      const auto& va = vs[a].v;
      const auto& vb = vs[b].v;
      if (va[o1] != vb[o1]) return va[o1] < vb[o1];
      if (va[o2] != vb[o2]) return va[o2] < vb[o2];
      return va[axis] < vb[axis];
    });
    for (std::size_t k = 0; k + 1 < order.size(); ++k) {
      const auto& a = vs[order[k]];
      const auto& b = vs[order[k + 1]];
      if (a.v[o1] != b.v[o1] || a.v[o2] != b.v[o2]) continue;
      // The cubes past a along the axis are the "+" half of its 8-pattern.
      unsigned quad = 0;
      int q = 0;
      for (int d1 = 0; d1 < 2; ++d1)
        for (int d2 = 0; d2 < 2; ++d2, ++q) {
          int idx[3];
          idx[axis] = 1;
          idx[o1] = d1;
          idx[o2] = d2;
          if ((a.bits >> (idx[0] * 4 + idx[1] * 2 + idx[2])) & 1u) quad |= 1u << q;
        }
      const bool sym1 = ((quad >> 0) & 1u) == ((quad >> 2) & 1u) && ((quad >> 1) & 1u) == ((quad >> 3) & 1u);
      const bool sym2 = ((quad >> 0) & 1u) == ((quad >> 1) & 1u) && ((quad >> 2) & 1u) == ((quad >> 3) & 1u);
      if (sym1 || sym2) continue;
      p.adjacency[order[k]].push_back(order[k + 1]);
      p.adjacency[order[k + 1]].push_back(order[k]);
    }
  }
  for (auto& adj : p.adjacency) {
    std::sort(adj.begin(), adj.end());
    p.max_degree = std::max(p.max_degree, adj.size());
    if (adj.size() > 3) ++p.degree_violations;
  }
  return p;
}

VerticalDecomposition build_vd(const StaircasePolyhedron& p) {
  VerticalDecomposition vd;
  vd.U = p.U;
  for (const auto& pc : p.pieces) vd.cells.push_back(VDCell{pc.x1, pc.x2, pc.y1, pc.y2, pc.z});
  vd.neighbors.assign(vd.cells.size(), {});
  // For each axis, match cells ending at a line with cells starting there.
  for (int axis = 0; axis < 2; ++axis) {
    struct Side {
      std::uint64_t line, lo, hi;
      std::uint32_t cell;
    };
    std::vector<Side> ends, starts;
    for (std::uint32_t i = 0; i < vd.cells.size(); ++i) {
      const auto& c = vd.cells[i];
      if (axis == 0) {
        ends.push_back({c.x2, c.y1, c.y2, i});
        starts.push_back({c.x1, c.y1, c.y2, i});
      } else {
        ends.push_back({c.y2, c.x1, c.x2, i});
        starts.push_back({c.y1, c.x1, c.x2, i});
      }
    }
    auto by_line = [](const Side& a, const Side& b) { return a.line != b.line ? a.line < b.line : a.lo < b.lo; };
    std::sort(ends.begin(), ends.end(), by_line);
    std::sort(starts.begin(), starts.end(), by_line);
    std::size_t i = 0, j = 0;
    while (i < ends.size() && j < starts.size()) {
      if (ends[i].line != starts[j].line) {
        (ends[i].line < starts[j].line ? i : j)++;
        continue;
      }
      const std::uint64_t line = ends[i].line;
      std::size_t ie = i, je = j;
      while (ie < ends.size() && ends[ie].line == line) ++ie;
      while (je < starts.size() && starts[je].line == line) ++je;
      while (i < ie && j < je) {
        const auto& e = ends[i];
        const auto& s = starts[j];
        if (std::min(e.hi, s.hi) > std::max(e.lo, s.lo)) {
          vd.neighbors[e.cell].push_back(s.cell);
          vd.neighbors[s.cell].push_back(e.cell);
        }
        if (e.hi < s.hi) {
          ++i;
        } else if (s.hi < e.hi) {
          ++j;
        } else {
          ++i;
          ++j;
        }
      }
      i = ie;
      j = je;
    }
  }
  return vd;
}

std::vector<std::uint32_t> locate_xy(const VerticalDecomposition& vd, std::span<const PointD> queries) {
  std::vector<std::uint32_t> out(queries.size(), kNoCell);
  std::vector<std::uint32_t> qord(queries.size()), by_x1(vd.cells.size()), by_x2(vd.cells.size());
  for (std::uint32_t i = 0; i < qord.size(); ++i) qord[i] = i;
  for (std::uint32_t i = 0; i < by_x1.size(); ++i) by_x1[i] = by_x2[i] = i;
  auto qx = [&](std::uint32_t i) { return queries[i].c[0]; };
  if (!std::is_sorted(qord.begin(), qord.end(), [&](auto a, auto b) { return qx(a) < qx(b); }))
    std::stable_sort(qord.begin(), qord.end(), [&](auto a, auto b) { return qx(a) < qx(b); });
  std::sort(by_x1.begin(), by_x1.end(), [&](auto a, auto b) { return vd.cells[a].x1 < vd.cells[b].x1; });
  std::sort(by_x2.begin(), by_x2.end(), [&](auto a, auto b) { return vd.cells[a].x2 < vd.cells[b].x2; });
  std::map<std::uint64_t, std::uint32_t> active;
  std::size_t ins = 0, del = 0;
  for (auto qi : qord) {
    const std::uint64_t x = queries[qi].c[0], y = queries[qi].c[1];
    if (x > vd.U || y > vd.U) continue;
    for (; del < by_x2.size() && vd.cells[by_x2[del]].x2 <= x && vd.cells[by_x2[del]].x2 < vd.U; ++del) {
      const auto& c = vd.cells[by_x2[del]];
      auto it = active.find(c.y1);
      if (it != active.end() && it->second == by_x2[del]) active.erase(it);
    }
    for (; ins < by_x1.size() && vd.cells[by_x1[ins]].x1 <= x; ++ins) {
      const auto& c = vd.cells[by_x1[ins]];
      if (c.x2 > x || c.x2 == vd.U) active[c.y1] = by_x1[ins];
    }
    auto it = active.upper_bound(y);
    if (it == active.begin()) continue;
    --it;
    const auto& c = vd.cells[it->second];
    if (y < c.y2 || (c.y2 == vd.U && y == vd.U)) out[qi] = it->second;
  }
  return out;
}

std::vector<std::uint32_t> locate(const VerticalDecomposition& vd, std::span<const PointD> queries) {
  auto out = locate_xy(vd, queries);
  for (std::size_t i = 0; i < out.size(); ++i)
    if (out[i] != kNoCell && queries[i].c[2] >= vd.cells[out[i]].z) out[i] = kNoCell;
  return out;
}

std::size_t ConflictLists::max_size() const {
  std::size_t m = 0;
  for (std::size_t c = 0; c + 1 < offsets.size(); ++c) m = std::max<std::size_t>(m, offsets[c + 1] - offsets[c]);
  return m;
}

ConflictLists conflict_lists(const VerticalDecomposition& vd, const StaircasePolyhedron& p,
                             std::span<const PointD> S, std::span<const std::uint32_t> locations) {
  (void)p;
  ConflictLists out;
  std::vector<std::uint32_t> seeds;
  if (locations.empty()) {
    std::vector<PointD> shifted(S.begin(), S.end());
    for (auto& s : shifted) {
      s.c[0] = s.c[0] > 0 ? s.c[0] - 1 : 0;
      s.c[1] = s.c[1] > 0 ? s.c[1] - 1 : 0;
    }
    seeds = locate_xy(vd, shifted);
    locations = seeds;
  }
  require(locations.size() == S.size(), "conflict_lists: one location per point");
  const auto own = locate(vd, S);
  for (std::uint32_t i = 0; i < S.size(); ++i)
    if (own[i] == kNoCell) out.above.push_back(i);

  std::vector<std::uint32_t> stamp(vd.cells.size(), 0), queue;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;  // (cell, point)
  for (std::uint32_t i = 0; i < S.size(); ++i) {
    const auto& s = S[i];
    const std::uint32_t seed = locations[i];
    if (seed == kNoCell) continue;
    auto accepts = [&](std::uint32_t c) {
      const auto& cell = vd.cells[c];
      return cell.x2 >= s.c[0] && cell.y2 >= s.c[1] && cell.z >= s.c[2];
    };
    stamp[seed] = i + 1;
    if (!accepts(seed)) continue;
    queue.assign(1, seed);
    for (std::size_t h = 0; h < queue.size(); ++h) {
      const std::uint32_t c = queue[h];
      pairs.emplace_back(c, i);
      ++out.bfs_visits;
      for (auto nb : vd.neighbors[c]) {
        if (stamp[nb] == i + 1) continue;
        stamp[nb] = i + 1;
        ++out.bfs_probes;
        if (accepts(nb)) queue.push_back(nb);
      }
    }
  }
  out.offsets.assign(vd.cells.size() + 1, 0);
  for (const auto& [c, i] : pairs) ++out.offsets[c + 1];
  for (std::size_t c = 0; c < vd.cells.size(); ++c) out.offsets[c + 1] += out.offsets[c];
  out.items.resize(pairs.size());
  std::vector<std::uint32_t> fill(out.offsets.begin(), out.offsets.end() - 1);
  for (const auto& [c, i] : pairs) out.items[fill[c]++] = i;
  out.total = pairs.size();
  return out;
}

ShallowCutting build_cutting(std::span<const PointD> S, std::uint64_t K, std::uint64_t seed, std::uint64_t stream,
                             std::uint64_t U) {
  ShallowCutting cut;
  const std::uint64_t clip = U != 0 ? U : universe_of(S);
  std::vector<PointD> R;
  for (auto i : sample(S, K, seed, stream)) R.push_back(S[i]);
  cut.stair = build_staircase(R, clip);
  cut.vd = build_vd(cut.stair);
  cut.lists = conflict_lists(cut.vd, cut.stair, S);
  return cut;
}

}  // namespace ors
