#include "doctest.h"
#include "ors/cuttings.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

using namespace ors;

namespace {

std::vector<PointD> random_points(std::size_t n, Coord lo, Coord hi, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Coord> u(lo, hi);
  std::vector<PointD> pts;
  for (std::size_t i = 0; i < n; ++i) pts.push_back(PointD({u(rng), u(rng), u(rng)}, static_cast<PointId>(i)));
  return pts;
}

std::uint64_t brute_h(const std::vector<PointD>& R, std::int64_t x, std::int64_t y, std::uint64_t U) {
  std::uint64_t h = U;
  for (const auto& s : R)
    if (static_cast<std::int64_t>(s.c[0]) <= x && static_cast<std::int64_t>(s.c[1]) <= y) h = std::min<std::uint64_t>(h, s.c[2]);
  return h;
}

/// Vertices of (union of orthants) clipped to [0,U]^3, by enumerating every
/// grid point and its eight surrounding unit cubes.
std::set<Vertex3> brute_vertices(const std::vector<PointD>& R, std::uint64_t U) {
  const auto u = static_cast<std::int64_t>(U);
  auto in = [&](std::int64_t a, std::int64_t b, std::int64_t c) {
    if (a < 0 || b < 0 || c < 0 || a >= u || b >= u || c >= u) return false;
    for (const auto& s : R)
      if (s.c[0] <= a && s.c[1] <= b && s.c[2] <= c) return true;
    return false;
  };
  std::set<Vertex3> out;
  for (std::int64_t x = 0; x <= u; ++x)
    for (std::int64_t y = 0; y <= u; ++y)
      for (std::int64_t z = 0; z <= u; ++z) {
        bool cube[2][2][2];
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) cube[i][j][k] = in(x - 1 + i, y - 1 + j, z - 1 + k);
        bool sym[3] = {true, true, true};
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
              sym[0] = sym[0] && cube[i][j][k] == cube[1 - i][j][k];
              sym[1] = sym[1] && cube[i][j][k] == cube[i][1 - j][k];
              sym[2] = sym[2] && cube[i][j][k] == cube[i][j][1 - k];
            }
        if (!sym[0] && !sym[1] && !sym[2])
          out.insert({static_cast<std::uint64_t>(x), static_cast<std::uint64_t>(y), static_cast<std::uint64_t>(z)});
      }
  return out;
}

}  // namespace

TEST_CASE("sample") {
  auto S = random_points(1000, 0, 100, 1);
  CHECK(sample(S, 1, 7).size() == S.size());
  CHECK(sample(std::span<const PointD>{}, 5, 7).empty());
  CHECK(sample(S, 10, 3) == sample(S, 10, 3));
  CHECK(sample(S, 10, 3) != sample(S, 10, 3, 1));
  CHECK_THROWS_AS(sample(S, 0, 1), ContractViolation);

  // K = n: |R| ~ Binomial(n, 1/n); the mean of 1000 trials has sd sqrt(p(1-p)n/1000).
  const std::size_t n = 100000;
  std::vector<PointD> big(n, PointD({0, 0, 0}));
  double total = 0;
  for (std::uint64_t t = 0; t < 1000; ++t) total += static_cast<double>(sample(big, n, t).size());
  const double mean = total / 1000.0, p = 1.0 / n;
  const double sd = std::sqrt(n * p * (1 - p) / 1000.0);
  CHECK(std::abs(mean - 1.0) <= 3 * sd);
}

TEST_CASE("build_staircase examples") {
  std::vector<PointD> one{PointD({0, 0, 0})};
  auto p = build_staircase(one);
  CHECK(p.vertices.size() == 8);
  CHECK(std::find(p.vertices.begin(), p.vertices.end(), Vertex3{0, 0, 0}) != p.vertices.end());

  std::vector<PointD> two{PointD({0, 2, 1}), PointD({2, 0, 0})};
  auto q = build_staircase(two, 4);
  CHECK(std::find(q.vertices.begin(), q.vertices.end(), Vertex3{0, 2, 1}) != q.vertices.end());
  CHECK(std::find(q.vertices.begin(), q.vertices.end(), Vertex3{2, 0, 0}) != q.vertices.end());

  std::vector<PointD> dom{PointD({1, 1, 1}), PointD({2, 2, 2})};
  auto r = build_staircase(dom, 4);
  CHECK(std::find(r.vertices.begin(), r.vertices.end(), Vertex3{2, 2, 2}) == r.vertices.end());
  CHECK(std::find(r.vertices.begin(), r.vertices.end(), Vertex3{1, 1, 1}) != r.vertices.end());
}

TEST_CASE("staircase vertices match the envelope oracle") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const std::uint64_t U = 3 + seed % 6;
    auto R = random_points(1 + seed % 7, 0, static_cast<Coord>(U - 1), 100 + seed);
    auto p = build_staircase(R, U);
    std::set<Vertex3> got(p.vertices.begin(), p.vertices.end());
    CHECK(got == brute_vertices(R, U));
    // Minimal sample points are vertices.
    for (const auto& s : R) {
      bool minimal = true;
      for (const auto& t : R)
        if (!(t == s) && dominates(t, s) && !(t.c == s.c)) minimal = false;
      if (minimal) CHECK(got.count({s.c[0], s.c[1], s.c[2]}) == 1);
    }
  }
}

TEST_CASE("staircase skeleton degree and size on distinct coordinates") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::mt19937_64 rng(seed);
    const std::size_t m = 50;
    std::vector<Coord> xs(m), ys(m), zs(m);
    for (std::size_t i = 0; i < m; ++i) xs[i] = ys[i] = zs[i] = static_cast<Coord>(i + 1);
    std::shuffle(xs.begin(), xs.end(), rng);
    std::shuffle(ys.begin(), ys.end(), rng);
    std::shuffle(zs.begin(), zs.end(), rng);
    std::vector<PointD> R;
    for (std::size_t i = 0; i < m; ++i) R.push_back(PointD({xs[i], ys[i], zs[i]}));
    auto p = build_staircase(R, m + 1);
    CHECK(p.degree_violations == 0);
    CHECK(p.max_degree <= 3);
    CHECK(p.vertices.size() <= 8 * m + 8);
    CHECK(p.pieces.size() <= 2 * m + 1);
  }
}

TEST_CASE("build_vd coverage, disjointness and corners") {
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    const std::uint64_t U = 2 + seed % 7;
    auto R = random_points(seed % 9, 0, static_cast<Coord>(U - 1), 300 + seed);
    auto vd = build_vd(build_staircase(R, U));
    for (std::uint64_t x = 0; x < U; ++x)
      for (std::uint64_t y = 0; y < U; ++y) {
        int owners = 0;
        std::uint64_t top = 0;
        for (const auto& c : vd.cells)
          if (c.x1 <= x && x < c.x2 && c.y1 <= y && y < c.y2) {
            ++owners;
            top = c.z;
          }
        REQUIRE(owners == 1);
        CHECK(top == brute_h(R, static_cast<std::int64_t>(x), static_cast<std::int64_t>(y), U));
      }
    for (const auto& c : vd.cells) {
      const auto v = c.corner();
      CHECK(brute_h(R, v[0], v[1], U) <= v[2]);
      CHECK(brute_h(R, static_cast<std::int64_t>(v[0]) - 1, static_cast<std::int64_t>(v[1]) - 1, U) >= v[2]);
    }
    CHECK(vd.cells.size() <= 2 * R.size() + 1);
  }
  auto empty = build_vd(build_staircase(std::vector<PointD>{}, 10));
  REQUIRE(empty.cells.size() == 1);
  CHECK(empty.cells[0].x1 == 0);
  CHECK(empty.cells[0].x2 == 10);
  CHECK(empty.cells[0].z == 10);
}

TEST_CASE("locate") {
  std::vector<PointD> R{PointD({5, 5, 5})};
  auto vd = build_vd(build_staircase(R, 10));
  std::vector<PointD> qs{PointD({0, 0, 0}), PointD({6, 6, 6}), PointD({5, 5, 4}), PointD({5, 5, 5})};
  auto loc = locate(vd, qs);
  CHECK(loc[0] != kNoCell);
  CHECK(loc[1] == kNoCell);
  CHECK(loc[2] != kNoCell);
  CHECK(loc[3] == kNoCell);

  // Closed-left/open-right ownership, closed at the clip boundary.
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::uint64_t U = 3 + seed % 6;
    auto S = random_points(5, 0, static_cast<Coord>(U - 1), 500 + seed);
    auto v = build_vd(build_staircase(S, U));
    std::vector<PointD> grid;
    for (Coord x = 0; x <= U; ++x)
      for (Coord y = 0; y <= U; ++y) grid.push_back(PointD({x, y, 0}));
    std::shuffle(grid.begin(), grid.end(), std::mt19937_64(seed));
    auto where = locate_xy(v, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      REQUIRE(where[i] != kNoCell);
      const auto& c = v.cells[where[i]];
      const std::uint64_t x = grid[i].c[0], y = grid[i].c[1];
      CHECK(c.x1 <= x);
      CHECK((x < c.x2 || (x == U && c.x2 == U)));
      CHECK(c.y1 <= y);
      CHECK((y < c.y2 || (y == U && c.y2 == U)));
    }
    // A point is located iff it dominates no sample point.
    auto probes = random_points(200, 0, static_cast<Coord>(U - 1), 600 + seed);
    auto l = locate(v, probes);
    for (std::size_t i = 0; i < probes.size(); ++i) {
      bool dom = false;
      for (const auto& s : S) dom = dom || dominates(s, probes[i]);
      CHECK((l[i] == kNoCell) == dom);
    }
  }
}

TEST_CASE("conflict lists equal the dominance filter") {
  {
    std::vector<PointD> R{PointD({0, 0, 2}), PointD({2, 0, 0}), PointD({0, 2, 0})};
    auto p = build_staircase(R, 4);
    auto vd = build_vd(p);
    std::vector<PointD> S{PointD({1, 1, 1}, 0), PointD({3, 0, 0}, 1)};
    auto cl = conflict_lists(vd, p, S);
    bool found = false;
    for (std::size_t c = 0; c < vd.cells.size(); ++c) {
      if (vd.cells[c].corner() == Vertex3{2, 2, 2}) {
        found = true;
        auto l = cl.list(c);
        CHECK(std::vector<std::uint32_t>(l.begin(), l.end()) == std::vector<std::uint32_t>{0});
      }
    }
    CHECK(found);
    auto none = conflict_lists(vd, p, std::vector<PointD>{});
    CHECK(none.total == 0);
  }
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::uint64_t U = 2 + seed % 15;
    auto S = random_points(1 + seed % 64, 0, static_cast<Coord>(U - 1), 700 + seed);
    const std::uint64_t K = 1 + seed % 4;
    auto cut = build_cutting(S, K, seed, 0, U);
    std::uint64_t total = 0;
    for (std::size_t c = 0; c < cut.vd.cells.size(); ++c) {
      const auto v = cut.vd.cells[c].corner();
      std::vector<std::uint32_t> want;
      for (std::uint32_t i = 0; i < S.size(); ++i)
        if (S[i].c[0] <= v[0] && S[i].c[1] <= v[1] && S[i].c[2] <= v[2]) want.push_back(i);
      auto l = cut.lists.list(c);
      CHECK(std::vector<std::uint32_t>(l.begin(), l.end()) == want);
      total += want.size();
    }
    CHECK(cut.lists.total == total);
    CHECK(cut.lists.bfs_visits == total);
    std::size_t above = 0;
    for (const auto& s : S) above += cut.stair.above(s) ? 1 : 0;
    CHECK(cut.lists.above.size() == above);
  }
}

TEST_CASE("S = R with K = 1") {
  auto S = random_points(40, 0, 15, 9);
  auto cut = build_cutting(S, 1, 5, 0, 16);
  CHECK(cut.stair.sample.size() == S.size());
  for (std::uint32_t i = 0; i < S.size(); ++i) {
    std::size_t want = 0, got = 0;
    for (std::size_t c = 0; c < cut.vd.cells.size(); ++c) {
      const auto v = cut.vd.cells[c].corner();
      if (S[i].c[0] <= v[0] && S[i].c[1] <= v[1] && S[i].c[2] <= v[2]) ++want;
      auto l = cut.lists.list(c);
      got += std::count(l.begin(), l.end(), i);
    }
    CHECK(got == want);
  }
}

TEST_CASE("build_cutting is deterministic") {
  auto S = random_points(5000, 0, 1u << 20, 4);
  auto a = build_cutting(S, 16, 99);
  auto b = build_cutting(S, 16, 99);
  CHECK(a.stair.vertices == b.stair.vertices);
  CHECK(a.lists.items == b.lists.items);
  CHECK(a.lists.offsets == b.lists.offsets);
  CHECK(a.lists.total < 20 * S.size());
}
