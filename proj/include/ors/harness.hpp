#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ors/ball_inheritance.hpp"
#include "ors/core.hpp"
#include "ors/offline.hpp"

namespace ors {

enum class Dist { Uniform, Clustered, Antichain, NestedRects, AdversarialDuplicates };

const char* to_string(Dist d);
std::optional<Dist> parse_dist(std::string_view s);

/// Generated input. NestedRects fills rects; every other distribution fills points.
struct Dataset {
  Dist dist = Dist::Uniform;
  std::uint64_t seed = 0;
  std::size_t count = 0;
  std::size_t dim = 0;
  std::vector<PointD> points;
  std::vector<Rect2> rects;
};

inline constexpr Coord kDefaultUniverse = Coord{1} << 30;

/// Deterministic in (dist, count, dim, seed, universe). Point ids are 0..count-1.
Dataset generate(Dist dist, std::size_t count, std::size_t dim, std::uint64_t seed,
                 Coord universe = kDefaultUniverse);

/// Uniform query corners scaled toward the origin by scale * count^(-1/dim), so a
/// query dominates O(1) of count uniform inputs on average.
std::vector<PointD> dominance_queries(std::size_t count, std::size_t dim, std::uint64_t seed, double scale = 2.0,
                                      Coord universe = kDefaultUniverse);

// ---- files ----

enum class FileFormat { Text, Binary };

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Text: one point per line, coordinates then the id. Binary: "ORSP", u8 dim,
/// u64 count, then u32 coordinates row-major, little-endian; ids are the row index.
void write_points(std::ostream& os, std::span<const PointD> pts, FileFormat f, bool with_ids = true);
/// Text files with dim = 0 take the column count of the first line as the
/// dimension; with dim given, one extra column is read as the id.
std::vector<PointD> read_points(std::istream& is, FileFormat f, std::size_t dim = 0);
/// Rectangles as two corner points (x1 y1 x2 y2) per line or record.
void write_rects(std::ostream& os, std::span<const Rect2> rects, FileFormat f);
std::vector<Rect2> read_rects(std::istream& is, FileFormat f);

// ---- oracles ----

class OracleRefusal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleLimits {
  std::size_t quadratic_cap = 5000;
};

namespace oracle {

/// Ids of points inside the box, sorted.
std::vector<PointId> range_report(std::span<const PointD> pts, const QueryBox& box);
/// Sorted (input, query) pairs with input dominated by query.
DominancePairs dominance_pairs(std::span<const PointD> inputs, std::span<const PointD> queries,
                               const OracleLimits& lim = {});
std::vector<std::uint8_t> dominance_emptiness(std::span<const PointD> inputs, std::span<const PointD> queries,
                                              const OracleLimits& lim = {});
/// Index of the in-box point with least (priority, id).
std::optional<std::size_t> argmin(std::span<const PointD> pts, std::span<const std::uint64_t> priority,
                                  const QueryBox& box);
/// Sorted (encloser, enclosed) pairs.
DominancePairs enclosure(std::span<const Rect2> rects, const OracleLimits& lim = {});
std::vector<std::uint32_t> maxima(std::span<const PointD> pts, const OracleLimits& lim = {});
std::vector<std::uint32_t> point_location(std::span<const Rect2> rects, std::span<const PointD> queries,
                                          const OracleLimits& lim = {});
bool linfty_decision(std::span<const PointD> red, std::span<const PointD> blue, std::uint64_t r,
                     const OracleLimits& lim = {});
/// Unit voxel [x,x+1) x [y,y+1) x [z,z+1) of [0,U)^3 lies in the union of the
/// upward orthants of R. Index x*U*U + y*U + z. Refuses U^3 * |R| above cap^2.
std::vector<std::uint8_t> envelope_voxels(std::span<const PointD> R, std::uint64_t U, const OracleLimits& lim = {});
/// Occurrences of a[k-1] in a[0..k-1], k 1-based.
std::size_t alphabet_rank(std::span<const std::uint32_t> a, std::size_t k);
/// Leftmost position of the minimum (or maximum) in [i, j].
std::size_t rmq(std::span<const std::uint32_t> a, std::size_t i, std::size_t j, bool maximum = false);

}  // namespace oracle

// ---- configuration ----

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::size_t line, const std::string& msg);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Lines of key = value; '#' starts a comment.
struct ConfigEntry {
  std::size_t line = 0;
  std::string key, value;
};
std::vector<ConfigEntry> parse_config(std::string_view text);

inline const std::vector<std::string> kVerifyModules = {"succinct", "ball_inheritance", "range2d", "range3d",
                                                        "cuttings", "offline"};

struct VerifyConfig {
  std::set<std::string> modules;  // empty: all
  std::uint64_t seed = 1;
  std::size_t n = 1000;
  std::size_t queries = 300;
  std::size_t trials = 2;
  OracleLimits limits;
  bool flip_routing_bit = false;  // fault fixture
};

/// Keys: module (comma list or "all"), seed, n, queries, trials, quadratic_cap,
/// fault (none | flip_routing_bit).
VerifyConfig parse_verify_config(std::string_view text);

struct SuiteResult {
  std::string module, name;
  std::uint64_t checks = 0, failures = 0;
  std::string first_failure;  // the failing instance, printed
  double wall_ms = 0;
};

struct VerifyReport {
  std::vector<SuiteResult> suites;
  bool ok() const;
  std::string to_json() const;
};

VerifyReport run_verify(const VerifyConfig& cfg);

// ---- benchmarks ----

struct BenchRecord {
  std::string structure, operation;
  std::uint64_t n = 0;
  unsigned B = 0;
  std::string mode;
  double eps = 0;
  std::uint64_t b = 0, K = 0;
  unsigned rep = 0;
  double wall_ms = 0;
  std::uint64_t space_bytes = 0;
  std::uint64_t k = 0;
  std::uint64_t oracle_calls = 0, skip_hops = 0, recursion_depth = 0, conflict_total = 0;
};

inline const std::vector<std::string> kBenchStructures = {"range2d",   "range3d4", "range3d5", "range3d6",
                                                          "rmq2d",     "offline3d", "offline4d", "enclosure",
                                                          "maxima",    "pl2d",      "cutting"};

struct BenchConfig {
  std::vector<std::string> structures = {"range2d"};
  std::vector<std::size_t> ns = {10000};
  unsigned reps = 1;
  std::uint64_t seed = 1;
  Dist dist = Dist::Uniform;
  std::size_t dim = 0;  // 0: the structure's natural dimension (offline: 4 for maxima)
  std::size_t queries = 1000;
  unsigned B = 2;
  SkipMode mode = SkipMode::FastQuery;
  double eps = 0.5;
  std::uint64_t b = 0, K = 0;
};

/// Keys: structure, n (comma lists), reps, seed, dist, dim, queries, B, mode
/// (fast-query | low-space), eps, b, K.
BenchConfig parse_bench_config(std::string_view text);

std::vector<BenchRecord> run_bench(const BenchConfig& cfg);
std::string bench_csv_header();
void write_bench_csv(std::ostream& os, std::span<const BenchRecord> rows, bool header = true);

}  // namespace ors
