#include <algorithm>
#include <numeric>

#include "acceptance.hpp"
#include "ors/harness.hpp"
#include "ors/range2d.hpp"
#include "ors/range3d.hpp"
#include "ors/succinct.hpp"

namespace acc {

using namespace ors;

namespace {

struct Interval {
  bool has_lo = false, has_hi = false;
  Coord lo = 0, hi = 0;
};

/// Every interval over [0, g): unbounded, one-sided and closed with lo <= hi.
std::vector<Interval> intervals(Coord g) {
  std::vector<Interval> out{{}};
  for (Coord v = 0; v < g; ++v) {
    out.push_back({true, false, v, 0});
    out.push_back({false, true, 0, v});
  }
  for (Coord a = 0; a < g; ++a)
    for (Coord b = a; b < g; ++b) out.push_back({true, true, a, b});
  return out;
}

std::vector<Interval> closed_intervals(Coord g) {
  std::vector<Interval> out;
  for (Coord a = 0; a < g; ++a)
    for (Coord b = a; b < g; ++b) out.push_back({true, true, a, b});
  return out;
}

std::vector<Interval> upper_only(Coord g) {
  std::vector<Interval> out;
  for (Coord v = 0; v < g; ++v) out.push_back({false, true, 0, v});
  return out;
}

/// Calls f on every box in the product of per-axis interval lists.
template <class F>
void for_each_box(const std::vector<std::vector<Interval>>& axes, F&& f) {
  const std::size_t d = axes.size();
  std::vector<std::size_t> at(d, 0);
  while (true) {
    QueryBox b(d);
    for (std::size_t a = 0; a < d; ++a) {
      const auto& iv = axes[a][at[a]];
      if (iv.has_lo) b.set_lower(a, iv.lo);
      if (iv.has_hi) b.set_upper(a, iv.hi);
    }
    f(b);
    std::size_t a = 0;
    while (a < d && ++at[a] == axes[a].size()) at[a++] = 0;
    if (a == d) return;
  }
}

std::string box_str(const QueryBox& b) {
  std::string s;
  for (std::size_t a = 0; a < b.dim(); ++a) {
    s += a ? " x " : "";
    s += b.has_lower(a) ? "[" + std::to_string(b.lower(a)) : "(-inf";
    s += ",";
    s += b.has_upper(a) ? std::to_string(b.upper(a)) + "]" : "+inf)";
  }
  return s;
}

std::string pts_str(const std::vector<PointD>& pts) {
  std::string s;
  for (const auto& p : pts) s += to_string(p) + " ";
  return s;
}

std::vector<PointId> ids(const std::vector<PointD>& v) {
  std::vector<PointId> out;
  for (const auto& p : v) out.push_back(p.id);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PointD> random_grid(std::size_t n, std::size_t d, Coord g, Rng& rng) {
  std::vector<PointD> pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    pts[i].dim = static_cast<std::uint8_t>(d);
    pts[i].id = static_cast<PointId>(i);
    for (std::size_t a = 0; a < d; ++a) pts[i].c[a] = static_cast<Coord>(rng() % g);
  }
  return pts;
}

std::vector<PointD> perm_points(const std::vector<Coord>& ys) {
  std::vector<PointD> pts;
  for (std::size_t x = 0; x < ys.size(); ++x) pts.push_back(PointD({static_cast<Coord>(x), ys[x]}, static_cast<PointId>(x)));
  return pts;
}

unsigned floor_log(unsigned v, unsigned B) {
  unsigned k = 0;
  for (std::uint64_t p = B; p <= v; p *= B) ++k;
  return k;
}

/// log_B lg n + 1, times B in low-space mode.
std::uint64_t hop_limit(SkipMode mode, unsigned B, unsigned height) {
  if (height == 0) return 0;
  const unsigned digits = floor_log(height, B) + 1;
  return mode == SkipMode::FastQuery ? digits : std::uint64_t{B} * digits;
}

void check_range2d(Tally& t, Tally& e, const std::vector<PointD>& pts, Coord g, SkipMode mode, unsigned B) {
  const RangeReport2D st(pts, BallTreeOptions{mode, B, std::nullopt});
  for_each_box({intervals(g), intervals(g)}, [&](const QueryBox& box) {
    const auto res = report_2d(st, box);
    const auto want = oracle::range_report(pts, box);
    t.check(ids(res.points) == want, [&] { return "box " + box_str(box) + " on " + pts_str(pts); });
    e.check(empty_2d(st, box) == want.empty(), [&] { return "box " + box_str(box) + " on " + pts_str(pts); });
    ++budget.range2d_queries;
    if (res.stats.ball_queries > 2 + 2 * res.points.size()) ++budget.range2d_over;
    if (res.stats.ball_queries > budget.worst_calls) budget.worst_calls = res.stats.ball_queries, budget.worst_k = res.points.size();
  });
}

void range2d_suite(std::vector<Tally>& out, Rng& rng) {
  Tally rep{"range2d report"}, emp{"range2d emptiness"};
  const SkipMode modes[] = {SkipMode::FastQuery, SkipMode::LowSpace};
  for (std::size_t n = 1; n <= 5; ++n) {
    std::vector<Coord> ys(n);
    std::iota(ys.begin(), ys.end(), 0u);
    do {
      for (auto m : modes)
        for (unsigned B : {2u, 3u}) check_range2d(rep, emp, perm_points(ys), static_cast<Coord>(n), m, B);
    } while (std::next_permutation(ys.begin(), ys.end()));
  }
  for (std::size_t n : {8u, 16u, 31u, 32u}) {
    std::vector<Coord> ys(n);
    std::iota(ys.begin(), ys.end(), 0u);
    std::shuffle(ys.begin(), ys.end(), rng);
    for (auto m : modes)
      for (unsigned B : {2u, 4u}) check_range2d(rep, emp, perm_points(ys), static_cast<Coord>(n), m, B);
  }
  // Arbitrary coordinates with ties go through rank-space reduction.
  for (int inst = 0; inst < 200; ++inst) {
    const auto pts = random_grid(1 + rng() % 32, 2, 5, rng);
    RankSpaceMap map;
    const auto ranked = rank_space_reduce(pts, map);
    const auto st = build_2d(ranked, 2, inst % 2 ? SkipMode::LowSpace : SkipMode::FastQuery);
    for_each_box({intervals(5), intervals(5)}, [&](const QueryBox& box) {
      QueryBox rb;
      std::vector<PointId> got;
      if (map.to_rank_box(box, rb)) got = ids(report_2d(st, rb).points);
      rep.check(got == oracle::range_report(pts, box), [&] { return "box " + box_str(box) + " on " + pts_str(pts); });
    });
  }
  out.push_back(rep);
  out.push_back(emp);
}

void ball_suite(std::vector<Tally>& out, Rng& rng) {
  Tally t{"ball-inheritance query"};
  auto run = [&](const std::vector<Coord>& ys) {
    const auto pts = perm_points(ys);
    for (SkipMode m : {SkipMode::FastQuery, SkipMode::LowSpace})
      for (unsigned B : {2u, 3u, 4u}) {
        const BallTree tree(pts, BallTreeOptions{m, B, std::nullopt});
        const unsigned h = tree.height();
        const std::size_t N = tree.padded_size();
        for (unsigned level = 0; level <= h; ++level) {
          const std::size_t S = N >> level;
          for (std::uint64_t node = 0; node < (std::uint64_t{1} << level); ++node) {
            std::vector<std::pair<Coord, std::size_t>> by_y;
            for (std::size_t x = node * S; x < (node + 1) * S; ++x)
              by_y.emplace_back(x < ys.size() ? ys[x] : static_cast<Coord>(x), x);
            std::sort(by_y.begin(), by_y.end());
            for (std::size_t i = 0; i < S; ++i) {
              ChaseStats st;
              const std::size_t leaf = tree.query_leaf(BallId{level, node, i}, &st);
              t.check(leaf == by_y[i].second, [&] {
                return "ball (" + std::to_string(level) + "," + std::to_string(node) + "," + std::to_string(i) +
                       ") n=" + std::to_string(ys.size()) + " B=" + std::to_string(B);
              });
              ++budget.chases;
              if (st.hops > hop_limit(m, B, h)) ++budget.hop_over;
            }
          }
        }
      }
  };
  for (std::size_t n = 1; n <= 6; ++n) {
    std::vector<Coord> ys(n);
    std::iota(ys.begin(), ys.end(), 0u);
    do run(ys);
    while (std::next_permutation(ys.begin(), ys.end()));
  }
  for (std::size_t n : {17u, 32u}) {
    std::vector<Coord> ys(n);
    std::iota(ys.begin(), ys.end(), 0u);
    for (int r = 0; r < 8; ++r) {
      std::shuffle(ys.begin(), ys.end(), rng);
      run(ys);
    }
  }
  out.push_back(t);
}

void range3d_suite(std::vector<Tally>& out, Rng& rng) {
  const Range3DParams grid{0.5, 0.0, 2}, plain{};
  const Coord g = 4;
  struct Case {
    const char* name;
    Shape3D shape;
    std::vector<std::vector<Interval>> axes;
  };
  const Case cases[] = {
      {"range3d 4-sided", Shape3D::FourSided, {closed_intervals(g), upper_only(g), upper_only(g)}},
      {"range3d 5-sided", Shape3D::FiveSided, {closed_intervals(g), closed_intervals(g), upper_only(g)}},
      {"range3d 6-sided", Shape3D::SixSided, {intervals(g), intervals(g), intervals(g)}},
  };
  for (const auto& c : cases) {
    Tally t{c.name};
    for (std::size_t n : {1u, 2u, 5u, 13u, 32u})
      for (int inst = 0; inst < 8; ++inst) {
        const auto pts = random_grid(n, 3, g, rng);
        for (const auto& params : {grid, plain}) {
          const Range3D s(pts, c.shape, params);
          for_each_box(c.axes, [&](const QueryBox& box) {
            t.check(ids(s.query(box)) == oracle::range_report(pts, box),
                    [&] { return "box " + box_str(box) + " on " + pts_str(pts); });
          });
        }
      }
    out.push_back(t);
  }

  Tally dom{"range3d dominance"};
  for (int inst = 0; inst < 40; ++inst) {
    const auto pts = random_grid(1 + rng() % 32, 3, g, rng);
    for (unsigned mask = 0; mask < 8; ++mask) {
      const std::array<bool, 3> rev{bool(mask & 1), bool(mask & 2), bool(mask & 4)};
      const Dominance3D d(pts, rev);
      for (Coord x = 0; x < g; ++x)
        for (Coord y = 0; y < g; ++y)
          for (Coord z = 0; z < g; ++z) {
            const PointD c({x, y, z});
            QueryBox box(3);
            for (std::size_t a = 0; a < 3; ++a) rev[a] ? box.set_lower(a, c[a]) : box.set_upper(a, c[a]);
            dom.check(ids(d.query(c)) == oracle::range_report(pts, box),
                      [&] { return "corner " + to_string(c) + " mask " + std::to_string(mask) + " on " + pts_str(pts); });
          }
    }
  }
  out.push_back(dom);

  Tally kd{"range kd (d=4)"};
  for (int inst = 0; inst < 6; ++inst) {
    const auto pts = random_grid(1 + rng() % 32, 4, 3, rng);
    const RangeKD s(pts, 0, grid);
    const auto iv = intervals(3);
    for_each_box({iv, iv, iv, iv}, [&](const QueryBox& box) {
      kd.check(ids(s.query(box)) == oracle::range_report(pts, box), [&] { return "box " + box_str(box); });
    });
  }
  out.push_back(kd);

  Tally rm{"rmq_2d"};
  for (int inst = 0; inst < 60; ++inst) {
    const auto pts = random_grid(1 + rng() % 32, 2, 6, rng);
    std::vector<std::uint64_t> pr(pts.size());
    for (auto& v : pr) v = rng() % 4;
    const RangeMin2D s(pts, pr, inst % 2 ? grid : plain);
    for_each_box({intervals(6), intervals(6)}, [&](const QueryBox& box) {
      const auto got = s.query(box);
      const auto want = oracle::argmin(pts, pr, box);
      rm.check(got == want, [&] { return "box " + box_str(box) + " on " + pts_str(pts); });
    });
  }
  out.push_back(rm);
}

std::vector<PointD> cube_points(std::size_t d, Coord g) {
  std::vector<PointD> out;
  std::size_t total = 1;
  for (std::size_t a = 0; a < d; ++a) total *= g;
  for (std::size_t i = 0; i < total; ++i) {
    PointD p;
    p.dim = static_cast<std::uint8_t>(d);
    p.id = static_cast<PointId>(i);
    std::size_t r = i;
    for (std::size_t a = 0; a < d; ++a, r /= g) p.c[a] = static_cast<Coord>(r % g);
    out.push_back(p);
  }
  return out;
}

void dominance_check(Tally& t, Tally& e, const std::vector<PointD>& in, const std::vector<PointD>& qs,
                     std::uint64_t seed) {
  const auto want = oracle::dominance_pairs(in, qs);
  const auto want_e = oracle::dominance_emptiness(in, qs);
  const auto inst = OfflineInstance::make(in, qs);
  OfflineOptions base;
  base.seed = seed;
  OfflineOptions forced = base;
  forced.small = 1;
  forced.n0 = 1;
  for (const auto& opt : {base, forced}) {
    t.check(offline_pairs(inst, opt) == want, [&] { return "inputs " + pts_str(in); });
    e.check(offline_empty(inst, opt) == want_e, [&] { return "inputs " + pts_str(in); });
  }
}

void offline_suite(std::vector<Tally>& out, Rng& rng) {
  for (std::size_t d : {3u, 4u, 5u}) {
    Tally t{"offline dominance d=" + std::to_string(d)}, e{"offline emptiness d=" + std::to_string(d)};
    const auto cube = cube_points(d, 2);
    const std::uint64_t subsets = d <= 4 ? (std::uint64_t{1} << cube.size()) : 3000;
    for (std::uint64_t s = 1; s < subsets; ++s) {
      const std::uint64_t mask = d <= 4 ? s : rng();
      std::vector<PointD> in;
      for (std::size_t i = 0; i < cube.size(); ++i)
        if ((mask >> i) & 1) in.push_back(cube[i]);
      if (in.empty()) continue;
      dominance_check(t, e, in, cube, s);
    }
    const auto grid = cube_points(d, 3);
    for (int inst = 0; inst < 100; ++inst) dominance_check(t, e, random_grid(1 + rng() % 32, d, 3, rng), grid, rng());
    out.push_back(t);
    out.push_back(e);
  }

  Tally enc{"rectangle enclosure"};
  std::vector<Rect2> all;
  for (Coord x1 = 0; x1 < 3; ++x1)
    for (Coord x2 = x1; x2 < 3; ++x2)
      for (Coord y1 = 0; y1 < 3; ++y1)
        for (Coord y2 = y1; y2 < 3; ++y2) all.push_back({x1, x2, y1, y2});
  auto enc_check = [&](const std::vector<Rect2>& rs) {
    enc.check(rectangle_enclosure(rs) == oracle::enclosure(rs), [&] {
      std::string s;
      for (const auto& r : rs)
        s += "[" + std::to_string(r.x1) + "," + std::to_string(r.x2) + "]x[" + std::to_string(r.y1) + "," +
             std::to_string(r.y2) + "] ";
      return s;
    });
  };
  for (const auto& a : all)
    for (const auto& b : all)
      for (const auto& c : all) enc_check({a, b, c});
  for (int inst = 0; inst < 300; ++inst) {
    std::vector<Rect2> rs(1 + rng() % 32);
    for (auto& r : rs) {
      r.x1 = rng() % 5, r.x2 = rng() % 5, r.y1 = rng() % 5, r.y2 = rng() % 5;
      if (r.x1 > r.x2) std::swap(r.x1, r.x2);
      if (r.y1 > r.y2) std::swap(r.y1, r.y2);
    }
    enc_check(rs);
  }
  out.push_back(enc);

  Tally mx{"maxima"};
  auto mx_check = [&](const std::vector<PointD>& pts) {
    mx.check(maxima(pts) == oracle::maxima(pts), [&] { return pts_str(pts); });
  };
  for (auto [d, g] : std::initializer_list<std::pair<std::size_t, Coord>>{{2, 3}, {3, 2}, {4, 2}}) {
    const auto cube = cube_points(d, g);
    for (std::uint64_t s = 1; s < (std::uint64_t{1} << cube.size()); ++s) {
      std::vector<PointD> pts;
      for (std::size_t i = 0; i < cube.size(); ++i)
        if ((s >> i) & 1) pts.push_back(cube[i]);
      mx_check(pts);
    }
  }
  for (std::size_t d = 1; d <= 5; ++d)
    for (int inst = 0; inst < 300; ++inst) mx_check(random_grid(1 + rng() % 32, d, 3, rng));
  out.push_back(mx);

  Tally pl{"offline point location"};
  std::vector<PointD> probes;
  for (Coord x = 0; x < 4; ++x)
    for (Coord y = 0; y < 4; ++y) probes.push_back(PointD({x, y}, x * 4 + y));
  std::vector<Rect2> fam;
  auto disjoint = [](const Rect2& a, const Rect2& b) { return a.x2 < b.x1 || b.x2 < a.x1 || a.y2 < b.y1 || b.y2 < a.y1; };
  auto pl_check = [&](const std::vector<Rect2>& rs, const std::vector<PointD>& qs) {
    pl.check(offline_pl_2d(rs, qs) == oracle::point_location(rs, qs), [&] { return std::to_string(rs.size()) + " rects"; });
  };
  // Every family of pairwise disjoint rectangles on the 3 x 3 grid, in index order.
  auto dfs = [&](auto&& self, std::size_t from) -> void {
    pl_check(fam, probes);
    for (std::size_t i = from; i < all.size(); ++i) {
      if (!std::all_of(fam.begin(), fam.end(), [&](const Rect2& r) { return disjoint(r, all[i]); })) continue;
      fam.push_back(all[i]);
      self(self, i + 1);
      fam.pop_back();
    }
  };
  dfs(dfs, 0);
  for (int inst = 0; inst < 300; ++inst) {
    std::vector<Rect2> rs;
    for (int k = 0; k < 32; ++k) {
      Rect2 r{Coord(rng() % 8), 0, Coord(rng() % 8), 0};
      r.x2 = std::min<Coord>(7, r.x1 + rng() % 3);
      r.y2 = std::min<Coord>(7, r.y1 + rng() % 3);
      if (std::all_of(rs.begin(), rs.end(), [&](const Rect2& o) { return disjoint(o, r); })) rs.push_back(r);
    }
    std::vector<PointD> qs;
    for (Coord x = 0; x < 9; ++x)
      for (Coord y = 0; y < 9; ++y) qs.push_back(PointD({x, y}, x * 9 + y));
    pl_check(rs, qs);
  }
  out.push_back(pl);
}

void succinct_suite(std::vector<Tally>& out) {
  Tally ar{"alphabet_rank"};
  for (auto [sigma, maxlen] : std::initializer_list<std::pair<std::uint32_t, std::size_t>>{{2, 12}, {3, 7}, {5, 5}})
    for (std::size_t len = 1; len <= maxlen; ++len) {
      std::size_t total = 1;
      for (std::size_t i = 0; i < len; ++i) total *= sigma;
      std::vector<std::uint32_t> a(len);
      for (std::size_t code = 0; code < total; ++code) {
        std::size_t r = code;
        for (auto& v : a) v = static_cast<std::uint32_t>(r % sigma), r /= sigma;
        const AlphabetRankIndex idx(a, sigma);
        for (std::size_t k = 1; k <= len; ++k)
          ar.check(alphabet_rank(idx, k) == oracle::alphabet_rank(a, k), [&] {
            return "sigma " + std::to_string(sigma) + " code " + std::to_string(code) + " k " + std::to_string(k);
          });
      }
    }
  out.push_back(ar);

  Tally rq{"rmq"};
  for (std::size_t len = 1; len <= 7; ++len) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < len; ++i) total *= 3;
    std::vector<std::uint32_t> a(len);
    for (std::size_t code = 0; code < total; ++code) {
      std::size_t r = code;
      for (auto& v : a) v = static_cast<std::uint32_t>(r % 3), r /= 3;
      for (bool mx : {false, true}) {
        const RMQIndex idx(a, mx);
        for (std::size_t i = 0; i < len; ++i)
          for (std::size_t j = i; j < len; ++j)
            rq.check(idx.query(i, j) == oracle::rmq(a, i, j, mx), [&] {
              return std::string(mx ? "max" : "min") + " code " + std::to_string(code) + " [" + std::to_string(i) +
                     "," + std::to_string(j) + "]";
            });
      }
    }
  }
  out.push_back(rq);
}

}  // namespace

Result criterion1() {
  Rng rng(1);
  std::vector<Tally> t;
  succinct_suite(t);
  ball_suite(t, rng);
  range2d_suite(t, rng);
  range3d_suite(t, rng);
  offline_suite(t, rng);
  return {all_clean(t), summarize(t)};
}

}  // namespace acc
