#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "ors/core.hpp"

namespace ors {

/// Query-path counters. Region tags: 1 = top row, 2 = bottom row, 3 = left
/// column, 4 = right column, 5 = interior cells; 0 = answered below any split.
struct Range3DStats {
  std::uint64_t base_queries = 0;
  std::uint64_t grid_nodes = 0;
  std::uint64_t g_points = 0;
  std::uint64_t cell_scans = 0;
  std::array<std::uint64_t, 6> region{};
};

struct Range3DParams {
  double eps = 0.5;
  /// C = max(c_min, ceil(lg^c_exponent n)).
  double c_exponent = 3.0;
  unsigned c_min = 16;
};

enum class Shape3D { FourSided, FiveSided, SixSided };

/// 3-d orthogonal range reporting on arbitrary integer points (rank-space
/// reduction is applied internally). FourSided answers [x1,x2] x (-inf,y0] x
/// (-inf,z0]; FiveSided answers [x1,x2] x [y1,y2] x (-inf,z0]; SixSided answers
/// any box.
class Range3D {
 public:
  Range3D(std::span<const PointD> points, Shape3D shape, const Range3DParams& params = {});
  ~Range3D();
  Range3D(Range3D&&) noexcept;
  Range3D& operator=(Range3D&&) noexcept;

  Shape3D shape() const;
  std::size_t size() const;
  unsigned rounds() const;
  std::vector<PointD> query(const QueryBox& box, Range3DStats* stats = nullptr,
                            std::vector<std::uint8_t>* region_tags = nullptr) const;
  std::size_t space_bytes() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

Range3D build_4sided(std::span<const PointD> points, double eps = 0.5, const Range3DParams& params = {});
Range3D build_5sided(std::span<const PointD> points, double eps = 0.5, const Range3DParams& params = {});
Range3D build_6sided(std::span<const PointD> points, double eps = 0.5, const Range3DParams& params = {});
/// Requires sidedness 4 with y and z unbounded below.
std::vector<PointD> query_4sided(const Range3D& g, const QueryBox& box, Range3DStats* stats = nullptr);
/// Requires z unbounded below.
std::vector<PointD> query_5sided(const Range3D& g, const QueryBox& box, Range3DStats* stats = nullptr);
std::vector<PointD> query_6sided(const Range3D& g, const QueryBox& box, Range3DStats* stats = nullptr);

/// 3-d dominance reporting. reversed[a] flips axis a to (>= corner_a).
class Dominance3D {
 public:
  explicit Dominance3D(std::span<const PointD> points, std::array<bool, 3> reversed = {false, false, false});
  ~Dominance3D();
  Dominance3D(Dominance3D&&) noexcept;
  std::vector<PointD> query(const PointD& corner) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::vector<PointD> query_dominance3d(const Dominance3D& b, const PointD& corner);

/// d >= 4 reporting: fan-out b range tree over the last coordinate with
/// (d-1)-dimensional structures at the nodes. b = 0 picks max(2, ceil(lg^eps n)).
class RangeKD {
 public:
  RangeKD(std::span<const PointD> points, unsigned b = 0, const Range3DParams& params = {});
  ~RangeKD();
  RangeKD(RangeKD&&) noexcept;
  std::vector<PointD> query(const QueryBox& box) const;
  unsigned fanout() const;
  std::size_t space_bytes() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::vector<std::vector<PointD>> report_kd(std::span<const PointD> points, std::span<const QueryBox> boxes,
                                           unsigned b = 0);

/// 2-d range minimum over per-point priorities; ties go to the lowest id.
class RangeMin2D {
 public:
  RangeMin2D(std::span<const PointD> points, std::span<const std::uint64_t> priority,
             const Range3DParams& params = {});
  ~RangeMin2D();
  RangeMin2D(RangeMin2D&&) noexcept;
  /// Index into the input of the in-box point with least (priority, id).
  std::optional<std::size_t> query(const QueryBox& box) const;
  std::size_t space_bytes() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::optional<PointD> rmq_2d(const RangeMin2D& s, std::span<const PointD> points, const QueryBox& box);

}  // namespace ors
