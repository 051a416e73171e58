#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "ors/core.hpp"

namespace ors {

/// Independent inclusion with probability 1/K. The generator is seeded from
/// (seed, stream), so distinct recursion nodes draw independent samples.
std::vector<std::uint32_t> sample(std::span<const PointD> S, std::uint64_t K, std::uint64_t seed,
                                  std::uint64_t stream = 0);

using Vertex3 = std::array<std::uint64_t, 3>;

/// A rectangle of the xy-plane with constant envelope height z, half-open
/// [x1,x2) x [y1,y2); the pieces tile [0,U)^2. z == U means nothing below the
/// clip top is dominated there.
struct StairPiece {
  std::uint64_t x1 = 0, x2 = 0, y1 = 0, y2 = 0, z = 0;
};

/// Union of the orthants [x,inf) x [y,inf) x [z,inf) over the sample, clipped
/// to [0,U]^3.
struct StaircasePolyhedron {
  std::uint64_t U = 1;
  std::vector<PointD> sample;
  std::vector<StairPiece> pieces;  // x-sweep decomposition of the horizontal faces
  std::vector<Vertex3> vertices;   // sorted
  std::vector<std::vector<std::uint32_t>> adjacency;
  std::size_t max_degree = 0;
  std::size_t degree_violations = 0;  // vertices of degree > 3

  /// Envelope height at (x, y): min z over sample points with s.x <= x, s.y <= y, or U.
  std::uint64_t height(std::uint64_t x, std::uint64_t y) const;
  /// q dominates some sample point.
  bool above(const PointD& q) const;
};

/// U = 0 picks universe_of(R). Without the skeleton only sample and pieces are filled.
StaircasePolyhedron build_staircase(std::span<const PointD> R, std::uint64_t U = 0, bool skeleton = true);

struct VDCell {
  std::uint64_t x1 = 0, x2 = 0, y1 = 0, y2 = 0;
  std::uint64_t z = 0;  // top; the cell is [x1,x2] x [y1,y2] x (-inf, z]
  Vertex3 corner() const { return {x2, y2, z}; }
};

struct VerticalDecomposition {
  std::uint64_t U = 1;
  std::vector<VDCell> cells;
  /// Cells sharing a boundary segment of positive length in the xy-projection.
  std::vector<std::vector<std::uint32_t>> neighbors;
};

VerticalDecomposition build_vd(const StaircasePolyhedron& p);

inline constexpr std::uint32_t kNoCell = 0xFFFFFFFFu;

/// Cell whose projection contains (q.x, q.y) with q.z below its top; kNoCell
/// when q is above the staircase. Projections are closed on low edges and open
/// on high edges, except at the clip boundary U.
std::vector<std::uint32_t> locate(const VerticalDecomposition& vd, std::span<const PointD> queries);
/// Projection-only location (ignores z); every point of [0,U]^2 has a cell.
std::vector<std::uint32_t> locate_xy(const VerticalDecomposition& vd, std::span<const PointD> queries);

struct ConflictLists {
  std::vector<std::uint32_t> offsets;  // CSR over cells
  std::vector<std::uint32_t> items;    // indexes into S
  std::vector<std::uint32_t> above;    // input points strictly above the staircase
  std::uint64_t total = 0;
  std::uint64_t bfs_visits = 0;  // cells accepted (== total)
  std::uint64_t bfs_probes = 0;  // neighbor checks, accepted or not

  std::span<const std::uint32_t> list(std::size_t cell) const {
    return {items.data() + offsets[cell], items.data() + offsets[cell + 1]};
  }
  std::size_t max_size() const;
};

/// locations: locate_xy of the points (s.x-1, s.y-1), clamped at 0, or empty to compute them here.
ConflictLists conflict_lists(const VerticalDecomposition& vd, const StaircasePolyhedron& p,
                             std::span<const PointD> S, std::span<const std::uint32_t> locations = {});

struct ShallowCutting {
  StaircasePolyhedron stair;
  VerticalDecomposition vd;
  ConflictLists lists;
};

ShallowCutting build_cutting(std::span<const PointD> S, std::uint64_t K, std::uint64_t seed,
                             std::uint64_t stream = 0, std::uint64_t U = 0);

}  // namespace ors
