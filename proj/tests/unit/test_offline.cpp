#include "doctest.h"
#include "ors/offline.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

using namespace ors;

namespace {

std::vector<PointD> random_points(std::size_t n, std::size_t d, Coord hi, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Coord> u(0, hi);
  std::vector<PointD> pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    pts[i].dim = static_cast<std::uint8_t>(d);
    pts[i].id = static_cast<PointId>(i);
    for (std::size_t a = 0; a < d; ++a) pts[i][a] = u(rng);
  }
  return pts;
}

/// Queries scaled toward the origin so each dominates few inputs on average.
std::vector<PointD> shrunk(std::vector<PointD> q, double f) {
  for (auto& p : q)
    for (std::size_t a = 0; a < p.dim; ++a) p[a] = static_cast<Coord>(p[a] * f);
  return q;
}

DominancePairs oracle(const std::vector<PointD>& I, const std::vector<PointD>& Q) {
  DominancePairs out;
  for (std::uint32_t j = 0; j < Q.size(); ++j)
    for (std::uint32_t i = 0; i < I.size(); ++i)
      if (dominates(I[i], Q[j])) out.emplace_back(i, j);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint8_t> oracle_empty(const std::vector<PointD>& I, const std::vector<PointD>& Q) {
  std::vector<std::uint8_t> hit(Q.size(), 0);
  for (std::uint32_t j = 0; j < Q.size(); ++j)
    for (const auto& p : I)
      if (dominates(p, Q[j])) {
        hit[j] = 1;
        break;
      }
  return hit;
}

DominancePairs sorted(DominancePairs v) {
  std::sort(v.begin(), v.end());
  return v;
}

bool no_duplicates(DominancePairs v) {
  std::sort(v.begin(), v.end());
  return std::adjacent_find(v.begin(), v.end()) == v.end();
}

DominancePairs run(const std::vector<PointD>& I, const std::vector<PointD>& Q, const OfflineOptions& opt = {},
                   OfflineStats* st = nullptr) {
  return offline_dominance(OfflineInstance::make(I, Q), opt, st);
}

}  // namespace

TEST_CASE("packed lists round-trip") {
  std::mt19937_64 rng(5);
  for (unsigned f : {1u, 3u, 7u, 13u, 20u, 32u}) {
    const std::uint64_t lim = f == 32 ? 0xFFFFFFFFull : (std::uint64_t{1} << f) - 1;
    std::vector<std::uint32_t> v(1000);
    for (auto& x : v) x = static_cast<std::uint32_t>(rng() % (lim + 1));
    const auto p = PackedList::pack(v, f);
    CHECK(p.per_word() == 64 / f);
    CHECK(p.words().size() == (v.size() + p.per_word() - 1) / p.per_word());
    CHECK(p.unpack() == v);
    for (std::size_t i = 0; i < v.size(); i += 97) CHECK(p.get(i) == v[i]);
  }
  CHECK(PackedList::pack({}, 5).unpack().empty());
}

TEST_CASE("offline_pl_2d examples") {
  const std::vector<Rect2> rects = {{0, 1, 0, 1}, {2, 3, 2, 3}};
  const std::vector<PointD> qs = {PointD({0, 0}), PointD({2, 3}), PointD({5, 5})};
  CHECK(offline_pl_2d(rects, qs) == std::vector<std::uint32_t>{0, 1, kNoRect});
  const std::vector<Rect2> all = {{0, 100, 0, 100}};
  CHECK(offline_pl_2d(all, qs) == std::vector<std::uint32_t>{0, 0, 0});
  CHECK(offline_pl_2d({}, qs) == std::vector<std::uint32_t>(3, kNoRect));
}

TEST_CASE("offline_pl_2d random disjoint sets on an 8x8 grid, every query cell") {
  std::mt19937_64 rng(11);
  std::vector<PointD> qs;
  for (Coord x = 0; x < 8; ++x)
    for (Coord y = 0; y < 8; ++y) qs.push_back(PointD({x, y}));
  for (int trial = 0; trial < 3000; ++trial) {
    std::vector<Rect2> rects;
    const std::size_t want = 1 + rng() % 8;
    for (int tries = 0; tries < 50 && rects.size() < want; ++tries) {
      Rect2 r;
      r.x1 = rng() % 8, r.y1 = rng() % 8;
      r.x2 = r.x1 + rng() % (8 - r.x1), r.y2 = r.y1 + rng() % (8 - r.y1);
      bool clash = false;
      for (const auto& s : rects)
        clash = clash || !(r.x2 < s.x1 || s.x2 < r.x1 || r.y2 < s.y1 || s.y2 < r.y1);
      if (!clash) rects.push_back(r);
    }
    const auto got = offline_pl_2d(rects, qs);
    for (std::size_t j = 0; j < qs.size(); ++j) {
      std::uint32_t want_id = kNoRect;
      for (std::uint32_t i = 0; i < rects.size(); ++i)
        if (rects[i].contains(qs[j][0], qs[j][1])) want_id = i;
      REQUIRE(got[j] == want_id);
    }
  }
}

TEST_CASE("offline_pl_2d at n = 10^4") {
  // One random rectangle inside each cell of a 100 x 100 grid of 1000-wide cells.
  std::mt19937_64 rng(3);
  std::vector<Rect2> rects;
  for (Coord gx = 0; gx < 100; ++gx)
    for (Coord gy = 0; gy < 100; ++gy) {
      Rect2 r;
      r.x1 = gx * 1000 + rng() % 500, r.x2 = r.x1 + rng() % 500;
      r.y1 = gy * 1000 + rng() % 500, r.y2 = r.y1 + rng() % 500;
      rects.push_back(r);
    }
  const auto qs = random_points(10000, 2, 99999, 4);
  const auto got = offline_pl_2d(rects, qs);
  std::size_t found = 0;
  for (std::size_t j = 0; j < qs.size(); ++j) {
    const std::uint32_t cell = (qs[j][0] / 1000) * 100 + qs[j][1] / 1000;
    const std::uint32_t want = rects[cell].contains(qs[j][0], qs[j][1]) ? cell : kNoRect;
    REQUIRE(got[j] == want);
    found += want != kNoRect;
  }
  CHECK(found > 500);
}

TEST_CASE("offline_report_bary") {
  const std::vector<PointD> pts = {PointD({0, 0}), PointD({2, 2})};
  std::vector<QueryBox> boxes;
  const Coord a0[2] = {0, 0}, a1[2] = {1, 1}, b0[2] = {1, 1}, b1[2] = {3, 3};
  boxes.push_back(QueryBox::closed(a0, a1));
  boxes.push_back(QueryBox::closed(b0, b1));
  CHECK(sorted(offline_report_bary(pts, boxes, 2)) == DominancePairs{{0, 0}, {1, 1}});
  CHECK(sorted(offline_report_bary(pts, boxes, 64)) == DominancePairs{{0, 0}, {1, 1}});
  CHECK(offline_report_bary(pts, {}, 2).empty());
  CHECK_THROWS_AS(offline_report_bary(pts, boxes, 1), ContractViolation);

  std::mt19937_64 rng(9);
  for (std::size_t d : {1u, 2u, 3u}) {
    const auto P = random_points(600, d, 200, 40 + d);
    std::vector<QueryBox> B;
    for (int k = 0; k < 300; ++k) {
      QueryBox q(d);
      for (std::size_t a = 0; a < d; ++a) {
        const Coord lo = rng() % 200, hi = lo + rng() % 120;
        if (rng() % 5) q.set_lower(a, lo);
        if (rng() % 5) q.set_upper(a, hi);
      }
      B.push_back(q);
    }
    DominancePairs want;
    for (std::uint32_t i = 0; i < P.size(); ++i)
      for (std::uint32_t j = 0; j < B.size(); ++j)
        if (B[j].contains(P[i])) want.emplace_back(i, j);
    std::sort(want.begin(), want.end());
    for (std::uint64_t b : {2u, 3u, 8u, 1000u}) {
      const auto got = offline_report_bary(P, B, b);
      CHECK(no_duplicates(got));
      CHECK(sorted(got) == want);
    }
  }
}

TEST_CASE("offline_report_bary touch count follows n log_b n + b m log_b n") {
  const std::size_t n = 1 << 12, m = 1 << 11;
  const auto P = random_points(n, 2, 1 << 20, 71);
  std::mt19937_64 rng(72);
  std::vector<QueryBox> B;
  for (std::size_t k = 0; k < m; ++k) {
    const Coord x = rng() % (1 << 20), y = rng() % (1 << 20);
    const Coord lo[2] = {x, y}, hi[2] = {x + (1 << 14), y + (1 << 14)};
    B.push_back(QueryBox::closed(lo, hi));
  }
  std::vector<double> ratio;
  for (std::uint64_t b : {2u, 4u, 8u}) {
    OfflineStats st;
    offline_report_bary(P, B, b, &st);
    const double L = std::log(double(n)) / std::log(double(b));
    ratio.push_back(double(st.touches) / (n * L + double(b) * m * L));
  }
  const auto [lo, hi] = std::minmax_element(ratio.begin(), ratio.end());
  CHECK(*hi / *lo < 4.0);
}

TEST_CASE("offline dominance examples") {
  CHECK(run({PointD({0, 0, 0})}, {PointD({1, 1, 1})}) == DominancePairs{{0, 0}});
  CHECK(run({PointD({1, 1, 1})}, {PointD({0, 0, 0})}).empty());
  CHECK(run({PointD({0, 0, 0, 0})}, {PointD({1, 1, 1, 1})}) == DominancePairs{{0, 0}});
  CHECK(run({PointD({3, 3, 3, 3, 3})}, {PointD({3, 3, 3, 3, 3})}) == DominancePairs{{0, 0}});
  CHECK(run({PointD({3, 3, 3, 3, 4})}, {PointD({3, 3, 3, 3, 3})}).empty());
  CHECK(run({}, {PointD({1, 1, 1})}).empty());
}

TEST_CASE("queries below all inputs: no output, no recursion") {
  auto I = random_points(3000, 4, 1000, 1);
  for (auto& p : I)
    for (std::size_t a = 0; a < 4; ++a) p[a] += 2000;
  const auto Q = random_points(3000, 4, 1999, 2);
  OfflineStats st;
  CHECK(offline_dominance_4d(OfflineInstance::make(I, Q), {}, &st).empty());
  CHECK(st.bad_queries[0] == 0);
  CHECK(st.max_depth == 0);

  // Above every input on the last axis only: every node does work, none of it reports.
  auto Q2 = Q;
  for (auto& q : Q2) q[3] += 4000;
  OfflineStats st2;
  CHECK(offline_dominance_4d(OfflineInstance::make(I, Q2), {}, &st2).empty());
  CHECK(st2.cutting_nodes > 0);
  CHECK(st2.bad_queries[0] == 0);
}

TEST_CASE("small instances on the {0,1}^d grid") {
  std::mt19937_64 rng(17);
  for (std::size_t d : {3u, 4u, 5u}) {
    for (int trial = 0; trial < 1500; ++trial) {
      const auto I = random_points(rng() % 7, d, 1, rng());
      const auto Q = random_points(rng() % 7, d, 1, rng());
      const auto want = oracle(I, Q);
      REQUIRE(sorted(run(I, Q)) == want);
      OfflineOptions eager;
      eager.small = 1;
      REQUIRE(sorted(run(I, Q, eager)) == want);
      REQUIRE(offline_dominance_emptiness(OfflineInstance::make(I, Q), eager) == oracle_empty(I, Q));
    }
  }
}

TEST_CASE("random instances against the quadratic oracle") {
  for (std::size_t d : {3u, 4u, 5u}) {
    for (std::size_t n : {100u, 1000u, 2000u}) {
      const auto I = random_points(n, d, 1 << 20, 100 * d + n);
      const auto Q = shrunk(random_points(n, d, 1 << 20, 200 * d + n), d == 3 ? 0.4 : 0.6);
      OfflineStats st;
      const auto got = run(I, Q, {}, &st);
      CHECK(no_duplicates(got));
      CHECK(sorted(got) == oracle(I, Q));
      CHECK(st.max_depth <= 2);
    }
  }
}

TEST_CASE("clustered and duplicate-heavy inputs") {
  std::mt19937_64 rng(23);
  for (std::size_t d : {3u, 4u}) {
    auto I = random_points(2000, d, 15, 300 + d);  // many repeated coordinates
    auto Q = random_points(1500, d, 12, 400 + d);
    CHECK(sorted(run(I, Q)) == oracle(I, Q));
    std::vector<PointD> same(1200, PointD(d == 3 ? PointD({5, 5, 5}) : PointD({5, 5, 5, 5})));
    CHECK(run(same, same).size() == same.size() * same.size());
  }
}

TEST_CASE("forced bad queries recurse twice, then fall back") {
  const auto I = random_points(3000, 4, 1 << 16, 51);
  const auto Q = random_points(600, 4, 1 << 16, 52);
  const auto want = oracle(I, Q);
  OfflineOptions opt;
  opt.K = 2;  // dense samples: most queries lie above the staircase somewhere
  OfflineStats st;
  const auto got = run(I, Q, opt, &st);
  CHECK(sorted(got) == want);
  CHECK(no_duplicates(got));
  CHECK(st.bad_queries[0] > 0);
  CHECK(st.max_depth == 2);

  const auto I3 = random_points(3000, 3, 1 << 16, 53);
  const auto Q3 = random_points(600, 3, 1 << 16, 54);
  OfflineStats st3;
  CHECK(sorted(run(I3, Q3, opt, &st3)) == oracle(I3, Q3));
  CHECK(st3.bad_queries[0] > 0);
  CHECK(st3.max_depth <= 2);
}

TEST_CASE("batched location agrees with the sweep") {
  const auto I = random_points(2000, 4, 1 << 20, 61);
  const auto Q = shrunk(random_points(2000, 4, 1 << 20, 62), 0.6);
  OfflineOptions opt;
  opt.location = Location::Batched;
  OfflineStats st;
  const auto got = run(I, Q, opt, &st);
  CHECK(sorted(got) == oracle(I, Q));
  CHECK(st.touches > 0);
  opt.b = 2;
  CHECK(sorted(run(I, Q, opt)) == sorted(got));
}

TEST_CASE("determinism under a fixed seed") {
  const auto I = random_points(4000, 4, 1 << 20, 81);
  const auto Q = shrunk(random_points(4000, 4, 1 << 20, 82), 0.5);
  OfflineOptions opt;
  opt.seed = 1234;
  OfflineStats a, b;
  const auto ra = run(I, Q, opt, &a), rb = run(I, Q, opt, &b);
  CHECK(ra == rb);
  CHECK(a.cutting_nodes == b.cutting_nodes);
  CHECK(a.conflict_total == b.conflict_total);
  CHECK(a.bad_queries[0] == b.bad_queries[0]);
  CHECK(a.bad_queries[1] == b.bad_queries[1]);
  CHECK(a.max_depth == b.max_depth);
  opt.seed = 99;
  CHECK(sorted(run(I, Q, opt)) == sorted(ra));
}

TEST_CASE("emptiness") {
  const std::vector<PointD> origin = {PointD({0, 0, 0, 0})};
  const auto Q = random_points(50, 4, 100, 3);
  const auto hit = offline_dominance_emptiness(OfflineInstance::make(origin, Q));
  CHECK(std::all_of(hit.begin(), hit.end(), [](auto h) { return h == 1; }));
  auto I = random_points(50, 4, 100, 4);
  for (auto& p : I) p[0] = std::max<Coord>(p[0], 1);
  CHECK(offline_dominance_emptiness(OfflineInstance::make(I, origin)) == std::vector<std::uint8_t>{0});

  for (std::size_t d : {1u, 2u, 3u, 4u, 5u}) {
    const std::size_t n = d == 4 ? 5000 : 1500;
    const auto In = random_points(n, d, 1 << 20, 500 + d);
    const auto Qn = shrunk(random_points(n, d, 1 << 20, 600 + d), std::pow(1.0 / n, 1.0 / double(d)) * 1.2);
    OfflineStats st;
    const auto got = offline_dominance_emptiness(OfflineInstance::make(In, Qn), {}, &st);
    CHECK(got == oracle_empty(In, Qn));
    CHECK(st.max_depth == 0);
  }
}

TEST_CASE("higher_d_dominance") {
  CHECK(higher_d_dominance(OfflineInstance::make({PointD({1, 2, 3, 4, 5})}, {PointD({1, 2, 3, 4, 5})})).size() == 1);
  CHECK(higher_d_dominance(OfflineInstance::make({PointD({1, 2, 3, 4, 6})}, {PointD({1, 2, 3, 4, 5})})).empty());
  CHECK_THROWS_AS(higher_d_dominance(OfflineInstance::make({PointD({1, 2, 3, 4})}, {PointD({1, 2, 3, 4})})),
                  ContractViolation);

  const auto I = random_points(500, 5, 1000, 91);
  const auto Q = random_points(500, 5, 1000, 92);
  CHECK(sorted(higher_d_dominance(OfflineInstance::make(I, Q))) == oracle(I, Q));
  const auto I6 = random_points(800, 6, 1000, 93);
  const auto Q6 = random_points(800, 6, 1000, 94);
  CHECK(sorted(higher_d_dominance(OfflineInstance::make(I6, Q6))) == oracle(I6, Q6));

  auto Ie = random_points(400, 5, 1000, 95), Qe = random_points(300, 5, 1000, 96);
  for (auto& p : Ie) p[4] = 7;
  for (auto& q : Qe) q[4] = 7;
  OfflineStats st;
  CHECK(sorted(higher_d_dominance(OfflineInstance::make(Ie, Qe), {}, &st)) == oracle(Ie, Qe));
  CHECK(st.calls_4d == 1);
}

TEST_CASE("rectangle_enclosure") {
  const std::vector<Rect2> r = {{0, 3, 0, 3}, {1, 2, 1, 2}, {1, 2, 4, 5}};
  CHECK(rectangle_enclosure(r) == DominancePairs{{0, 1}});
  const std::vector<Rect2> chain = {{0, 10, 0, 10}, {1, 9, 1, 9}, {2, 8, 2, 8}};
  CHECK(rectangle_enclosure(chain) == DominancePairs{{0, 1}, {0, 2}, {1, 2}});
  const std::vector<Rect2> twins = {{1, 4, 2, 6}, {1, 4, 2, 6}};
  CHECK(rectangle_enclosure(twins) == DominancePairs{{0, 1}, {1, 0}});

  std::mt19937_64 rng(31);
  std::vector<Rect2> rs;
  for (int i = 0; i < 2500; ++i) {
    Rect2 q;
    q.x1 = rng() % 10000, q.y1 = rng() % 10000;
    q.x2 = q.x1 + rng() % 3000, q.y2 = q.y1 + rng() % 3000;
    rs.push_back(q);
  }
  DominancePairs want;
  for (std::uint32_t a = 0; a < rs.size(); ++a)
    for (std::uint32_t b = 0; b < rs.size(); ++b)
      if (a != b && rs[a].x1 <= rs[b].x1 && rs[b].x2 <= rs[a].x2 && rs[a].y1 <= rs[b].y1 && rs[b].y2 <= rs[a].y2)
        want.emplace_back(a, b);
  CHECK(rectangle_enclosure(rs) == want);
}

TEST_CASE("maxima") {
  const std::vector<PointD> two = {PointD({0, 0, 0, 0}), PointD({1, 1, 1, 1})};
  CHECK(maxima(two) == std::vector<std::uint32_t>{1});
  const std::vector<PointD> anti = {PointD({0, 1, 1, 1}), PointD({1, 0, 1, 1})};
  CHECK(maxima(anti) == std::vector<std::uint32_t>{0, 1});
  const std::vector<PointD> dup = {PointD({2, 2}), PointD({2, 2}), PointD({1, 1}), PointD({2, 1})};
  CHECK(maxima(dup) == std::vector<std::uint32_t>{0, 1});

  for (std::size_t d : {1u, 2u, 3u, 4u, 5u}) {
    const std::size_t n = d == 4 ? 5000 : 2000;
    auto P = random_points(n, d, d <= 2 ? 50 : 1 << 20, 700 + d);
    for (std::size_t i = 0; i < n; i += 50) P[i + 1] = P[i];  // duplicates
    // Push points toward an antichain so the maximal set is not tiny.
    if (d >= 3) {
      const std::int64_t C = std::int64_t(d - 1) << 19;
      for (auto& p : P) {
        std::int64_t s = 0;
        for (std::size_t a = 0; a + 1 < d; ++a) s += p[a];
        p[d - 1] = static_cast<Coord>(std::max<std::int64_t>(0, C - s) + p[d - 1] % 1024);
      }
    }
    std::vector<std::uint32_t> want;
    for (std::uint32_t i = 0; i < n; ++i) {
      bool dominated = false;
      for (std::uint32_t j = 0; j < n && !dominated; ++j)
        dominated = dominates(P[i], P[j]) && !std::equal(P[i].c.begin(), P[i].c.begin() + d, P[j].c.begin());
      if (!dominated) want.push_back(i);
    }
    CHECK(maxima(P) == want);
  }
}

TEST_CASE("linfty_closest_pair_decision") {
  const std::vector<PointD> red = {PointD({0, 0, 0, 0})}, blue = {PointD({1, 1, 1, 1})};
  CHECK(linfty_closest_pair_decision(red, blue, 1));
  CHECK_FALSE(linfty_closest_pair_decision(red, blue, 0));
  CHECK(linfty_closest_pair_decision(red, red, 0));
  CHECK_FALSE(linfty_closest_pair_decision({}, blue, 5));

  std::mt19937_64 rng(41);
  for (std::size_t d : {1u, 2u, 3u, 4u}) {
    for (int trial = 0; trial < 30; ++trial) {
      const auto R = random_points(1 + rng() % 300, d, 5000, rng());
      const auto B = random_points(1 + rng() % 300, d, 5000, rng());
      std::uint64_t best = ~0ull;
      for (const auto& p : R)
        for (const auto& q : B) {
          std::uint64_t m = 0;
          for (std::size_t a = 0; a < d; ++a) m = std::max<std::uint64_t>(m, p[a] > q[a] ? p[a] - q[a] : q[a] - p[a]);
          best = std::min(best, m);
        }
      for (std::uint64_t r : {best, best > 0 ? best - 1 : 0, best + 3, std::uint64_t{1}, std::uint64_t{0}})
        REQUIRE(linfty_closest_pair_decision(R, B, r) == (best <= r));
    }
  }
}
