#include <algorithm>
#include <chrono>
#include <functional>
#include <numeric>
#include <random>
#include <cmath>
#include <set>
#include <sstream>

#include "json.hpp"
#include "ors/cuttings.hpp"
#include "ors/harness.hpp"
#include "ors/range2d.hpp"
#include "ors/range3d.hpp"
#include "ors/succinct.hpp"

namespace ors {

namespace {

using Rng = std::mt19937_64;

std::string describe(const QueryBox& b) {
  std::ostringstream os;
  for (std::size_t a = 0; a < b.dim(); ++a) {
    if (a) os << " x ";
    os << (b.has_lower(a) ? "[" + std::to_string(b.lower(a)) : std::string("(-inf")) << ", "
       << (b.has_upper(a) ? std::to_string(b.upper(a)) + "]" : std::string("+inf)"));
  }
  return os.str();
}

void expect(SuiteResult& s, bool ok, const std::function<std::string()>& what) {
  ++s.checks;
  if (ok) return;
  if (s.failures++ == 0) s.first_failure = what();
}

std::vector<PointD> rank_points2(std::size_t n, Rng& rng) {
  std::vector<Coord> ys(n);
  std::iota(ys.begin(), ys.end(), 0u);
  std::shuffle(ys.begin(), ys.end(), rng);
  std::vector<PointD> pts;
  for (std::size_t i = 0; i < n; ++i) pts.push_back(PointD({static_cast<Coord>(i), ys[i]}, static_cast<PointId>(i)));
  std::shuffle(pts.begin(), pts.end(), rng);
  return pts;
}

/// Random box over [0, U); each side bounded when its bit in mask is set
/// (bit 2a: lower of axis a, bit 2a+1: upper), or with probability 1/2 when
/// mask is 0.
QueryBox random_box(std::size_t dim, std::uint64_t U, Rng& rng, std::uint32_t mask = 0) {
  QueryBox b(dim);
  for (std::size_t a = 0; a < dim; ++a) {
    Coord lo = static_cast<Coord>(rng() % U), hi = static_cast<Coord>(rng() % U);
    if (lo > hi) std::swap(lo, hi);
    const bool bl = mask ? (mask >> (2 * a)) & 1u : rng() & 1u;
    const bool bu = mask ? (mask >> (2 * a + 1)) & 1u : rng() & 1u;
    if (bl) b.set_lower(a, lo);
    if (bu) b.set_upper(a, hi);
  }
  return b;
}

std::vector<PointId> ids_of(const std::vector<PointD>& pts) {
  std::vector<PointId> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(p.id);
  std::sort(out.begin(), out.end());
  return out;
}

/// x-ranks of a ball tree node in y order, from the input points alone.
std::vector<std::size_t> node_list(const std::vector<Coord>& y_of_x, std::size_t N, unsigned level,
                                   std::uint64_t node) {
  const std::size_t S = N >> level;
  std::vector<std::pair<Coord, std::size_t>> by_y;
  for (std::size_t x = node * S; x < (node + 1) * S; ++x)
    by_y.emplace_back(x < y_of_x.size() ? y_of_x[x] : static_cast<Coord>(x), x);
  std::sort(by_y.begin(), by_y.end());
  std::vector<std::size_t> out;
  for (auto [y, x] : by_y) out.push_back(x);
  return out;
}

class Runner {
 public:
  Runner(const VerifyConfig& cfg, VerifyReport& rep) : cfg_(cfg), rep_(rep) {}

  template <class F>
  void suite(const char* module, const char* name, F&& body) {
    if (!cfg_.modules.empty() && !cfg_.modules.count(module)) return;
    SuiteResult s;
    s.module = module;
    s.name = name;
    Rng rng(cfg_.seed * 0x9E3779B97F4A7C15ull + std::hash<std::string>{}(s.module + "/" + s.name) % 1000003);
    const auto t0 = std::chrono::steady_clock::now();
    try {
      body(s, rng);
    } catch (const std::exception& e) {
      ++s.failures;
      if (s.first_failure.empty()) s.first_failure = std::string("exception: ") + e.what();
    }
    s.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    rep_.suites.push_back(std::move(s));
  }

 private:
  const VerifyConfig& cfg_;
  VerifyReport& rep_;
};

}  // namespace

bool VerifyReport::ok() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.failures == 0; });
}

std::string VerifyReport::to_json() const {
  nlohmann::json j;
  j["ok"] = ok();
  j["suites"] = nlohmann::json::array();
  for (const auto& s : suites) {
    j["suites"].push_back({{"module", s.module},
                           {"name", s.name},
                           {"checks", s.checks},
                           {"failures", s.failures},
                           {"first_failure", s.first_failure},
                           {"wall_ms", s.wall_ms}});
  }
  return j.dump(2);
}

namespace {

void verify_succinct(Runner& run, const VerifyConfig& cfg) {
  const std::size_t m = std::min(cfg.n, cfg.limits.quadratic_cap);
  run.suite("succinct", "alphabet_rank", [&](SuiteResult& s, Rng& rng) {
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      for (std::uint32_t sigma : {2u, 3u, 7u, 16u}) {
        std::vector<std::uint32_t> a(m);
        for (auto& v : a) v = static_cast<std::uint32_t>(rng() % sigma);
        AlphabetRankIndex idx(a, sigma);
        for (std::size_t k = 1; k <= m; ++k) {
          const std::size_t got = alphabet_rank(idx, k);
          const std::size_t want = oracle::alphabet_rank(a, k);
          expect(s, got == want, [&] {
            return "sigma=" + std::to_string(sigma) + " n=" + std::to_string(m) + " k=" + std::to_string(k) +
                   " got " + std::to_string(got) + " want " + std::to_string(want);
          });
        }
      }
    }
  });
  run.suite("succinct", "rmq", [&](SuiteResult& s, Rng& rng) {
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      for (bool maximum : {false, true}) {
        std::vector<std::uint32_t> a(m);
        const std::uint32_t range = t % 2 ? 8 : 1u << 20;
        for (auto& v : a) v = static_cast<std::uint32_t>(rng() % range);
        RMQIndex idx(a, maximum);
        for (std::size_t q = 0; q < cfg.queries; ++q) {
          std::size_t i = rng() % m, j = rng() % m;
          if (i > j) std::swap(i, j);
          const std::size_t got = idx.query(i, j), want = oracle::rmq(a, i, j, maximum);
          expect(s, got == want, [&] {
            return std::string(maximum ? "max" : "min") + " [" + std::to_string(i) + ", " + std::to_string(j) +
                   "] got " + std::to_string(got) + " want " + std::to_string(want);
          });
        }
      }
    }
  });
}

std::optional<std::pair<unsigned, std::size_t>> fault_site(const VerifyConfig& cfg, unsigned height, std::size_t n) {
  if (!cfg.flip_routing_bit || height == 0) return std::nullopt;
  // The last level always reaches the leaves through its own routing bit.
  return std::make_pair(height - 1, n / 3);
}

void verify_ball(Runner& run, const VerifyConfig& cfg) {
  run.suite("ball_inheritance", "query_leaf", [&](SuiteResult& s, Rng& rng) {
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      for (SkipMode mode : {SkipMode::FastQuery, SkipMode::LowSpace}) {
        for (unsigned B : {2u, 4u}) {
          const auto pts = rank_points2(cfg.n, rng);
          std::vector<Coord> y_of_x(cfg.n);
          for (const auto& p : pts) y_of_x[p[0]] = p[1];
          BallTreeOptions opt{mode, B, std::nullopt};
          opt.flip_routing_bit = fault_site(cfg, BallTree(pts, opt).height(), cfg.n);
          const BallTree tree(pts, opt);
          const unsigned h = tree.height();
          const std::size_t N = tree.padded_size();
          auto check = [&](unsigned level, std::uint64_t node, const std::vector<std::size_t>& list) {
            for (std::size_t i = 0; i < list.size(); ++i) {
              ChaseStats st;
              const std::size_t got = tree.query_leaf(BallId{level, node, i}, &st);
              expect(s, got == list[i], [&] {
                return std::string(to_string(mode)) + " B=" + std::to_string(B) + " n=" + std::to_string(cfg.n) +
                       " ball (level " + std::to_string(level) + ", node " + std::to_string(node) + ", index " +
                       std::to_string(i) + ") reached leaf " + std::to_string(got) + ", expected " +
                       std::to_string(list[i]);
              });
              expect(s, st.hops <= tree.plan().hop_bound(), [&] {
                return "skip hops " + std::to_string(st.hops) + " above bound " +
                       std::to_string(tree.plan().hop_bound());
              });
            }
          };
          if (h > 0)
            for (std::uint64_t v = 0; v < (std::uint64_t{1} << (h - 1)); ++v) check(h - 1, v, node_list(y_of_x, N, h - 1, v));
          for (std::size_t q = 0; q < std::min<std::size_t>(cfg.queries, 64); ++q) {
            const unsigned level = static_cast<unsigned>(rng() % (h + 1));
            const std::uint64_t node = rng() % (std::uint64_t{1} << level);
            check(level, node, node_list(y_of_x, N, level, node));
          }
        }
      }
    }
  });
}

void verify_range2d(Runner& run, const VerifyConfig& cfg) {
  run.suite("range2d", "report_and_empty", [&](SuiteResult& s, Rng& rng) {
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      const Dist dist = t % 2 ? Dist::AdversarialDuplicates : Dist::Uniform;
      const auto data = generate(dist, cfg.n, 2, rng(), 1u << 16);
      RankSpaceMap map;
      const auto pts = rank_space_reduce(data.points, map);
      for (SkipMode mode : {SkipMode::FastQuery, SkipMode::LowSpace}) {
        for (unsigned B : {2u, 4u}) {
          BallTreeOptions opt{mode, B, std::nullopt};
          opt.flip_routing_bit = fault_site(cfg, RangeReport2D(pts, opt).tree().height(), cfg.n);
          const RangeReport2D st(pts, opt);
          for (std::size_t q = 0; q <= cfg.queries; ++q) {
            const QueryBox box = q == 0 ? QueryBox(2) : random_box(2, cfg.n, rng);
            const auto res = report_2d(st, box);
            const auto want = oracle::range_report(pts, box);
            const auto got = ids_of(res.points);
            auto where = [&] {
              return std::string(to_string(mode)) + " B=" + std::to_string(B) + " n=" + std::to_string(cfg.n) +
                     " dist=" + to_string(dist) + " box " + describe(box);
            };
            expect(s, got == want, [&] {
              return where() + ": reported " + std::to_string(got.size()) + " points, expected " +
                     std::to_string(want.size());
            });
            expect(s, empty_2d(st, box) == want.empty(), [&] { return where() + ": emptiness disagrees"; });
            expect(s, res.stats.ball_queries <= 2 + 2 * res.points.size(), [&] {
              return where() + ": " + std::to_string(res.stats.ball_queries) + " ball-inheritance calls for k=" +
                     std::to_string(res.points.size());
            });
          }
        }
      }
    }
  });
}

}  // namespace

namespace {

void verify_range3d(Runner& run, const VerifyConfig& cfg) {
  const Range3DParams params{0.5, 0.0, 4};
  struct ShapeCase {
    const char* name;
    Shape3D shape;
    std::uint32_t mask;
  };
  // Bounded sides: 4-sided is [x1,x2] x (-inf,y] x (-inf,z]; 5-sided adds y1.
  const ShapeCase shapes[] = {{"4sided", Shape3D::FourSided, 0b101011},
                              {"5sided", Shape3D::FiveSided, 0b101111},
                              {"6sided", Shape3D::SixSided, 0}};
  for (const auto& sc : shapes) {
    run.suite("range3d", sc.name, [&](SuiteResult& s, Rng& rng) {
      for (std::size_t t = 0; t < cfg.trials; ++t) {
        const Dist dist = t % 2 ? Dist::AdversarialDuplicates : Dist::Uniform;
        const Coord U = 1u << 12;
        const auto data = generate(dist, cfg.n, 3, rng(), U);
        const Range3D g(data.points, sc.shape, params);
        for (std::size_t q = 0; q < cfg.queries; ++q) {
          const QueryBox box = random_box(3, U, rng, sc.mask);
          const auto got = ids_of(g.query(box));
          const auto want = oracle::range_report(data.points, box);
          expect(s, got == want, [&] {
            return std::string(sc.name) + " n=" + std::to_string(cfg.n) + " dist=" + to_string(dist) + " box " +
                   describe(box) + ": reported " + std::to_string(got.size()) + ", expected " +
                   std::to_string(want.size());
          });
        }
      }
    });
  }
  run.suite("range3d", "dominance3d", [&](SuiteResult& s, Rng& rng) {
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      const auto data = generate(Dist::Uniform, cfg.n, 3, rng(), 1u << 12);
      const std::array<bool, 3> rev{bool(t & 1), bool(t & 2), false};
      const Dominance3D d(data.points, rev);
      for (std::size_t q = 0; q < cfg.queries; ++q) {
        const PointD c({Coord(rng() % 4096), Coord(rng() % 4096), Coord(rng() % 4096)});
        QueryBox box(3);
        for (std::size_t a = 0; a < 3; ++a) rev[a] ? box.set_lower(a, c[a]) : box.set_upper(a, c[a]);
        const auto got = ids_of(d.query(c));
        expect(s, got == oracle::range_report(data.points, box),
               [&] { return "corner " + to_string(c) + " reversed " + std::to_string(t & 3); });
      }
    }
  });
  run.suite("range3d", "range_kd", [&](SuiteResult& s, Rng& rng) {
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      const std::size_t dim = 4 + t % 2;
      const auto data = generate(Dist::Uniform, cfg.n, dim, rng(), 1u << 10);
      const RangeKD kd(data.points, 0, params);
      for (std::size_t q = 0; q < cfg.queries; ++q) {
        const QueryBox box = random_box(dim, 1u << 10, rng);
        expect(s, ids_of(kd.query(box)) == oracle::range_report(data.points, box),
               [&] { return "d=" + std::to_string(dim) + " box " + describe(box); });
      }
    }
  });
  run.suite("range3d", "rmq_2d", [&](SuiteResult& s, Rng& rng) {
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      const auto data = generate(t % 2 ? Dist::AdversarialDuplicates : Dist::Uniform, cfg.n, 2, rng(), 1u << 12);
      std::vector<std::uint64_t> pr(data.points.size());
      for (auto& v : pr) v = rng() % (t % 2 ? 16 : 1u << 30);
      const RangeMin2D st(data.points, pr, params);
      for (std::size_t q = 0; q < cfg.queries; ++q) {
        const QueryBox box = random_box(2, 1u << 12, rng);
        const auto got = st.query(box);
        const auto want = oracle::argmin(data.points, pr, box);
        expect(s, got == want, [&] {
          return "box " + describe(box) + ": got " + (got ? std::to_string(*got) : "none") + ", expected " +
                 (want ? std::to_string(*want) : "none");
        });
      }
    }
  });
}

void verify_cuttings(Runner& run, const VerifyConfig& cfg) {
  run.suite("cuttings", "envelope_voxels", [&](SuiteResult& s, Rng& rng) {
    const std::uint64_t U = 4;
    for (std::size_t t = 0; t < 50 * std::max<std::size_t>(cfg.trials, 1); ++t) {
      std::vector<PointD> R(1 + rng() % 6);
      for (std::uint32_t i = 0; i < R.size(); ++i)
        R[i] = PointD({Coord(rng() % U), Coord(rng() % U), Coord(rng() % U)}, i);
      const auto stair = build_staircase(R, U);
      const auto vox = oracle::envelope_voxels(R, U, cfg.limits);
      for (Coord x = 0; x < U; ++x)
        for (Coord y = 0; y < U; ++y)
          for (Coord z = 0; z < U; ++z) {
            const bool in = vox[(x * U + y) * U + z];
            expect(s, in == stair.above(PointD({x, y, z})) && in == (stair.height(x, y) <= z), [&] {
              std::string r = "voxel (" + std::to_string(x) + "," + std::to_string(y) + "," + std::to_string(z) +
                              ") sample";
              for (const auto& p : R) r += " " + to_string(p);
              return r;
            });
          }
    }
  });
  run.suite("cuttings", "conflict_lists", [&](SuiteResult& s, Rng& rng) {
    const std::size_t m = std::min(cfg.n, cfg.limits.quadratic_cap);
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      const auto data = generate(t % 2 ? Dist::Clustered : Dist::Uniform, m, 3, rng(), 1u << 16);
      const std::uint64_t K = 8;
      const auto cut = build_cutting(data.points, K, cfg.seed + t, 0, 1u << 16);
      std::vector<std::uint8_t> covered(m, 0);
      for (auto i : cut.lists.above) covered[i] = 1;
      for (std::size_t c = 0; c < cut.vd.cells.size(); ++c) {
        const auto corner = cut.vd.cells[c].corner();
        std::vector<std::uint32_t> want;
        for (std::uint32_t i = 0; i < m; ++i) {
          const auto& p = data.points[i];
          if (p[0] <= corner[0] && p[1] <= corner[1] && p[2] <= corner[2]) want.push_back(i);
        }
        auto got = std::vector<std::uint32_t>(cut.lists.list(c).begin(), cut.lists.list(c).end());
        std::sort(got.begin(), got.end());
        for (auto i : got) covered[i] = 1;
        expect(s, got == want, [&] {
          return "cell " + std::to_string(c) + " corner (" + std::to_string(corner[0]) + "," +
                 std::to_string(corner[1]) + "," + std::to_string(corner[2]) + "): list of " +
                 std::to_string(got.size()) + ", expected " + std::to_string(want.size());
        });
      }
      for (std::uint32_t i = 0; i < m; ++i)
        expect(s, covered[i], [&] { return "point " + to_string(data.points[i]) + " in no list"; });
      const auto qs = generate(Dist::Uniform, cfg.queries, 3, rng(), 1u << 16).points;
      const auto loc = locate(cut.vd, qs);
      for (std::size_t j = 0; j < qs.size(); ++j) {
        if (loc[j] == kNoCell) {
          expect(s, cut.stair.above(qs[j]), [&] { return "query " + to_string(qs[j]) + " unlocated but below"; });
          continue;
        }
        const auto list = cut.lists.list(loc[j]);
        const std::set<std::uint32_t> in(list.begin(), list.end());
        bool ok = true;
        for (std::uint32_t i = 0; i < m && ok; ++i)
          if (dominates(data.points[i], qs[j]) && !in.count(i)) ok = false;
        expect(s, ok, [&] { return "query " + to_string(qs[j]) + " has output outside its conflict list"; });
      }
    }
  });
}

}  // namespace
namespace {

std::vector<Rect2> disjoint_rects(std::size_t g, Coord U, Rng& rng) {
  // One optional rectangle inside each cell of a g x g grid.
  std::vector<Rect2> out;
  const Coord w = U / static_cast<Coord>(g);
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j) {
      if (rng() % 3 == 0) continue;
      Coord x1 = static_cast<Coord>(i * w + rng() % w), x2 = static_cast<Coord>(i * w + rng() % w);
      Coord y1 = static_cast<Coord>(j * w + rng() % w), y2 = static_cast<Coord>(j * w + rng() % w);
      if (x1 > x2) std::swap(x1, x2);
      if (y1 > y2) std::swap(y1, y2);
      out.push_back({x1, x2, y1, y2});
    }
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

void verify_offline(Runner& run, const VerifyConfig& cfg) {
  const std::size_t m = std::min(cfg.n, cfg.limits.quadratic_cap);
  run.suite("offline", "dominance", [&](SuiteResult& s, Rng& rng) {
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      for (std::size_t d : {3u, 4u, 5u}) {
        const Dist dist = t % 2 ? Dist::AdversarialDuplicates : Dist::Uniform;
        const Coord U = 1u << 10;
        auto in = generate(dist, m, d, rng(), U).points;
        auto qs = dominance_queries(m, d, rng(), 3.0, U);
        auto want = oracle::dominance_pairs(in, qs, cfg.limits);
        OfflineOptions opt;
        opt.seed = rng();
        opt.small = 16;
        OfflineStats st;
        auto got = offline_dominance(OfflineInstance::make(in, qs), opt, &st);
        std::sort(got.begin(), got.end());
        expect(s, got == want, [&] {
          return "d=" + std::to_string(d) + " n=" + std::to_string(m) + " dist=" + to_string(dist) + " seed=" +
                 std::to_string(opt.seed) + ": " + std::to_string(got.size()) + " pairs, expected " +
                 std::to_string(want.size());
        });
        expect(s, st.max_depth <= 2, [&] { return "recursion depth " + std::to_string(st.max_depth); });
        const auto empty = offline_dominance_emptiness(OfflineInstance::make(in, qs), opt);
        expect(s, empty == oracle::dominance_emptiness(in, qs, cfg.limits),
               [&] { return "emptiness d=" + std::to_string(d) + " seed=" + std::to_string(opt.seed); });
      }
    }
  });
  run.suite("offline", "enclosure", [&](SuiteResult& s, Rng& rng) {
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      const auto rects = generate(Dist::NestedRects, m, 2, rng(), 1u << 12).rects;
      OfflineOptions opt;
      opt.seed = rng();
      const auto got = rectangle_enclosure(rects, opt);
      const auto want = oracle::enclosure(rects, cfg.limits);
      expect(s, got == want, [&] {
        return "n=" + std::to_string(m) + " seed=" + std::to_string(opt.seed) + ": " + std::to_string(got.size()) +
               " pairs, expected " + std::to_string(want.size());
      });
    }
  });
  run.suite("offline", "maxima", [&](SuiteResult& s, Rng& rng) {
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      for (std::size_t d : {2u, 3u, 4u, 5u}) {
        const Dist dist = t % 2 ? Dist::AdversarialDuplicates : Dist::Antichain;
        const auto pts = generate(dist, m, d, rng(), 1u << 8).points;
        OfflineOptions opt;
        opt.seed = rng();
        const auto got = maxima(pts, opt);
        const auto want = oracle::maxima(pts, cfg.limits);
        expect(s, got == want, [&] {
          return "d=" + std::to_string(d) + " dist=" + to_string(dist) + ": " + std::to_string(got.size()) +
                 " maxima, expected " + std::to_string(want.size());
        });
      }
    }
  });
  run.suite("offline", "point_location", [&](SuiteResult& s, Rng& rng) {
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      const Coord U = 1u << 12;
      const auto rects = disjoint_rects(std::max<std::size_t>(2, static_cast<std::size_t>(std::sqrt(double(m)))), U, rng);
      const auto qs = generate(Dist::Uniform, m, 2, rng(), U).points;
      const auto got = offline_pl_2d(rects, qs);
      const auto want = oracle::point_location(rects, qs, cfg.limits);
      for (std::size_t j = 0; j < qs.size(); ++j)
        expect(s, got[j] == want[j], [&] {
          return "query " + to_string(qs[j]) + ": got " + std::to_string(got[j]) + ", expected " +
                 std::to_string(want[j]);
        });
    }
  });
  run.suite("offline", "linfty_decision", [&](SuiteResult& s, Rng& rng) {
    for (std::size_t t = 0; t < 10 * std::max<std::size_t>(cfg.trials, 1); ++t) {
      const std::size_t d = 1 + t % 4;
      const Coord U = 1u << 12;
      const auto red = generate(Dist::Uniform, m / 4 + 1, d, rng(), U).points;
      const auto blue = generate(Dist::Uniform, m / 4 + 1, d, rng(), U).points;
      const std::uint64_t r = rng() % (U / 8);
      const bool got = linfty_closest_pair_decision(red, blue, r);
      const bool want = oracle::linfty_decision(red, blue, r, cfg.limits);
      expect(s, got == want, [&] { return "d=" + std::to_string(d) + " r=" + std::to_string(r); });
    }
  });
  run.suite("offline", "report_bary", [&](SuiteResult& s, Rng& rng) {
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      const std::size_t d = 1 + t % 3;
      const Coord U = 1u << 10;
      const auto pts = generate(Dist::Uniform, m, d, rng(), U).points;
      std::vector<QueryBox> boxes;
      for (std::size_t q = 0; q < std::min<std::size_t>(cfg.queries, 200); ++q) {
        QueryBox b = random_box(d, U, rng, 0xFFFF);
        boxes.push_back(b);
      }
      auto got = offline_report_bary(pts, boxes, 2 + t % 7);
      std::sort(got.begin(), got.end());
      DominancePairs want;
      for (std::uint32_t i = 0; i < pts.size(); ++i)
        for (std::uint32_t j = 0; j < boxes.size(); ++j)
          if (boxes[j].contains(pts[i])) want.emplace_back(i, j);
      expect(s, got == want, [&] {
        return "d=" + std::to_string(d) + ": " + std::to_string(got.size()) + " pairs, expected " +
               std::to_string(want.size());
      });
    }
  });
}

}  // namespace

VerifyReport run_verify(const VerifyConfig& cfg) {
  require(cfg.n >= 2, "run_verify: n must be at least 2");
  VerifyReport rep;
  Runner run(cfg, rep);
  verify_succinct(run, cfg);
  verify_ball(run, cfg);
  verify_range2d(run, cfg);
  verify_range3d(run, cfg);
  verify_cuttings(run, cfg);
  verify_offline(run, cfg);
  return rep;
}

}  // namespace ors
