#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ors {

using Coord = std::uint32_t;
using PointId = std::uint32_t;

inline constexpr std::size_t kMaxDim = 8;

/// Raised when a caller breaks a documented precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void require(bool ok, const char* what) {
  if (!ok) throw ContractViolation(what);
}

/// Integer point with a stable id. Dimension is a runtime value in [1, kMaxDim].
struct PointD {
  std::array<Coord, kMaxDim> c{};
  std::uint8_t dim = 0;
  PointId id = 0;

  PointD() = default;
  PointD(std::initializer_list<Coord> coords, PointId pid = 0);
  static PointD of(std::span<const Coord> coords, PointId pid);

  Coord operator[](std::size_t i) const { return c[i]; }
  Coord& operator[](std::size_t i) { return c[i]; }
  std::span<const Coord> coords() const { return {c.data(), dim}; }

  friend bool operator==(const PointD& a, const PointD& b);
};

/// p is dominated by q: every coordinate of p is <= the matching coordinate of q.
bool dominates(const PointD& p, const PointD& q);

/// Closed per-axis intervals. An unbounded side is a sentinel: -inf reads as 0,
/// +inf reads as the universe bound U.
class QueryBox {
 public:
  static constexpr std::uint64_t kInfinity = ~std::uint64_t{0};

  QueryBox() = default;
  explicit QueryBox(std::size_t dim);

  /// Fully bounded box from two corners.
  static QueryBox closed(std::span<const Coord> lo, std::span<const Coord> hi);
  /// Orthant (-inf, corner_i] on every axis.
  static QueryBox orthant(std::span<const Coord> corner);

  QueryBox& set_lower(std::size_t axis, Coord v);
  QueryBox& set_upper(std::size_t axis, Coord v);
  QueryBox& clear_lower(std::size_t axis);
  QueryBox& clear_upper(std::size_t axis);

  std::size_t dim() const { return dim_; }
  bool has_lower(std::size_t axis) const { return (bounded_ >> (2 * axis)) & 1u; }
  bool has_upper(std::size_t axis) const { return (bounded_ >> (2 * axis + 1)) & 1u; }
  /// Sentinel-substituted endpoints.
  std::uint64_t lower(std::size_t axis) const { return has_lower(axis) ? lo_[axis] : 0; }
  std::uint64_t upper(std::size_t axis, std::uint64_t universe = kInfinity) const {
    return has_upper(axis) ? hi_[axis] : universe;
  }
  /// Number of bounded endpoints.
  int sidedness() const;
  /// lo_i <= hi_i on every axis after sentinel substitution.
  bool well_formed() const;
  bool contains(const PointD& p) const;

 private:
  std::size_t dim_ = 0;
  std::array<Coord, kMaxDim> lo_{};
  std::array<Coord, kMaxDim> hi_{};
  std::uint32_t bounded_ = 0;
};

/// Per-axis sorted values and rank permutations produced by rank_space_reduce.
/// Ranks on every axis are a permutation of 0..n-1, ties broken by ascending id.
class RankSpaceMap {
 public:
  std::size_t size() const { return n_; }
  std::size_t dim() const { return values_.size(); }

  /// Original coordinate at a given rank.
  Coord value_at(std::size_t axis, std::size_t rank) const { return values_[axis][rank]; }
  /// Rank of the i-th input point on an axis.
  std::uint32_t rank_of(std::size_t axis, std::size_t index) const { return to_rank_[axis][index]; }
  /// Input index holding a given rank on an axis.
  std::uint32_t index_at(std::size_t axis, std::size_t rank) const { return to_index_[axis][rank]; }

  /// Smallest rank whose value is >= v (size() when none).
  std::size_t lower_rank(std::size_t axis, std::uint64_t v) const;
  /// Largest rank whose value is <= v, or -1 when none.
  std::int64_t upper_rank(std::size_t axis, std::uint64_t v) const;

  /// Recover original coordinates of a rank-space point.
  PointD inverse(const PointD& ranked) const;

  /// Convert a box over original values into a box over ranks. Returns false when
  /// the box is empty on some axis after conversion.
  bool to_rank_box(const QueryBox& box, QueryBox& out) const;

 private:
  friend std::vector<PointD> rank_space_reduce(std::span<const PointD>, RankSpaceMap&);
  std::size_t n_ = 0;
  std::vector<std::vector<Coord>> values_;
  std::vector<std::vector<std::uint32_t>> to_rank_;
  std::vector<std::vector<std::uint32_t>> to_index_;
};

/// Replace each coordinate by its rank on that axis; order is (value, id).
std::vector<PointD> rank_space_reduce(std::span<const PointD> points, RankSpaceMap& map);

/// Per-axis index lists sorted by (coordinate, id).
std::vector<std::vector<std::uint32_t>> presort(std::span<const PointD> points);

/// True when every axis of the sequence is a permutation of 0..n-1.
bool is_rank_space(std::span<const PointD> points);

/// Universe bound: max coordinate + 1 over all axes (1 for an empty set).
std::uint64_t universe_of(std::span<const PointD> points);

std::string to_string(const PointD& p);

}  // namespace ors
