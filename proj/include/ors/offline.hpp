#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ors/core.hpp"

namespace ors {

/// Input and query sets of one dimension with their per-axis sorted orders.
struct OfflineInstance {
  std::size_t dim = 0;
  std::uint64_t U = 1;
  std::vector<PointD> inputs;
  std::vector<PointD> queries;
  std::vector<std::vector<std::uint32_t>> input_order;  // presort(inputs)
  std::vector<std::vector<std::uint32_t>> query_order;  // presort(queries)

  static OfflineInstance make(std::vector<PointD> inputs, std::vector<PointD> queries);
};

/// (input index, query index).
using DominancePairs = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

enum class Location { Sweep, Batched };

struct OfflineOptions {
  std::uint64_t seed = 0;
  std::uint64_t K = 0;              // 0: max(2, ceil(lg n)) in 3-d, 2^ceil(sqrt(lg n)) in 4-d
  std::size_t n0 = 256;             // few-points threshold
  std::size_t small = 64;           // below this the fallback runs directly
  double list_factor = 16.0;        // resample when a conflict list exceeds list_factor * K * ln n
  Location location = Location::Sweep;
  std::uint64_t b = 0;              // fan-out for batched location; 0: max(2, K^0.5)
};

struct OfflineStats {
  unsigned max_depth = 0;
  std::uint64_t fallback_calls = 0;
  std::uint64_t bad_queries[3] = {0, 0, 0};  // per recursion depth
  std::uint64_t cutting_nodes = 0;
  std::uint64_t resamples = 0;
  std::uint64_t conflict_total = 0;
  std::uint64_t cells = 0;
  std::uint64_t tiny_calls = 0;
  std::uint64_t calls_4d = 0;
  std::uint64_t touches = 0;  // b-ary range tree: point and box placements over all sub-instances
};

inline constexpr std::uint32_t kNoRect = 0xFFFFFFFFu;

/// Closed rectangle [x1,x2] x [y1,y2].
struct Rect2 {
  Coord x1 = 0, x2 = 0, y1 = 0, y2 = 0;
  bool contains(Coord x, Coord y) const { return x1 <= x && x <= x2 && y1 <= y && y <= y2; }
};

/// Fixed-width unsigned fields packed floor(64/f) to a word.
class PackedList {
 public:
  explicit PackedList(unsigned f = 1);
  void push(std::uint32_t v);
  std::uint32_t get(std::size_t i) const;
  std::size_t size() const { return n_; }
  unsigned width() const { return f_; }
  unsigned per_word() const { return per_; }
  const std::vector<std::uint64_t>& words() const { return words_; }
  std::vector<std::uint32_t> unpack() const;
  static PackedList pack(std::span<const std::uint32_t> v, unsigned f);

 private:
  unsigned f_ = 1, per_ = 64;
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Containing rectangle per query, or kNoRect. Rectangles must be disjoint.
std::vector<std::uint32_t> offline_pl_2d(std::span<const Rect2> rects, std::span<const PointD> queries);

/// (point index, box index) for every closed box containing a point; b-ary range tree.
DominancePairs offline_report_bary(std::span<const PointD> points, std::span<const QueryBox> boxes, std::uint64_t b,
                                   OfflineStats* stats = nullptr);

DominancePairs offline_dominance_3d(const OfflineInstance& inst, const OfflineOptions& opt = {},
                                    OfflineStats* stats = nullptr);
DominancePairs offline_dominance_4d(const OfflineInstance& inst, const OfflineOptions& opt = {},
                                    OfflineStats* stats = nullptr);
/// d >= 5: divide and conquer on the last axis down to four dimensions.
DominancePairs higher_d_dominance(const OfflineInstance& inst, const OfflineOptions& opt = {},
                                  OfflineStats* stats = nullptr);
/// Any dimension >= 1. Entry i: some input is dominated by query i.
std::vector<std::uint8_t> offline_dominance_emptiness(const OfflineInstance& inst, const OfflineOptions& opt = {},
                                                      OfflineStats* stats = nullptr);

/// Dispatch on dimension: brute force below 3, then 3d, 4d, higher_d.
DominancePairs offline_dominance(const OfflineInstance& inst, const OfflineOptions& opt = {},
                                 OfflineStats* stats = nullptr);

/// (encloser, enclosed) index pairs, non-strict containment, self-pairs excluded.
DominancePairs rectangle_enclosure(std::span<const Rect2> rects, const OfflineOptions& opt = {},
                                   OfflineStats* stats = nullptr);

/// Sorted indexes of points not dominated by a different point. Duplicates are all maximal.
std::vector<std::uint32_t> maxima(std::span<const PointD> points, const OfflineOptions& opt = {});

/// Some red/blue pair at L-infinity distance <= r.
bool linfty_closest_pair_decision(std::span<const PointD> red, std::span<const PointD> blue, std::uint64_t r,
                                  const OfflineOptions& opt = {});

}  // namespace ors
