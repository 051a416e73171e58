#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "ors/range3d.hpp"
#include "ors/succinct.hpp"

namespace ors::detail {

using P3 = std::array<std::uint32_t, 3>;
inline constexpr std::uint32_t kPad = 0xFFFFFFFFu;
inline constexpr std::uint32_t kTop = 0xFFFFFFFFu;

/// Axis permutation plus per-axis reflection (v -> ~v) over a shared point array.
struct View3 {
  const std::vector<P3>* pts = nullptr;
  std::array<std::uint8_t, 3> perm{0, 1, 2};
  std::array<bool, 3> flip{false, false, false};

  std::uint32_t get(std::uint32_t i, int axis) const {
    const std::uint32_t v = (*pts)[i][perm[axis]];
    return flip[axis] ? ~v : v;
  }
};

/// Closed box in view coordinates.
struct Box3 {
  std::array<std::uint32_t, 3> lo{0, 0, 0};
  std::array<std::uint32_t, 3> hi{kTop, kTop, kTop};
  bool contains(const View3& v, std::uint32_t i) const {
    for (int a = 0; a < 3; ++a) {
      const std::uint32_t c = v.get(i, a);
      if (c < lo[a] || c > hi[a]) return false;
    }
    return true;
  }
};

struct Sink {
  std::vector<std::uint32_t>* out = nullptr;
  std::vector<std::uint8_t>* tags = nullptr;
  std::uint8_t tag = 0;
  Range3DStats* stats = nullptr;
  void emit(std::uint32_t i) const {
    out->push_back(i);
    if (tags) tags->push_back(tag);
  }
};

class Reporter3 {
 public:
  virtual ~Reporter3() = default;
  /// Report points in box; box.lo[2] must be 0 (unbounded below in the last axis).
  virtual void query(const Box3& box, const Sink& sink) const = 0;
  virtual std::size_t bytes() const = 0;
};

/// Range tree over view-x; every node keeps its points y-sorted with a min-z RMQ.
/// Handles [x1,x2] x [y1,y2] x (-inf, z0]. Also answers range-minimum over z.
class BaseTree final : public Reporter3 {
 public:
  BaseTree(const View3& v, std::vector<std::uint32_t> idx);
  void query(const Box3& box, const Sink& sink) const override;
  /// Point index of least z in box (ignoring box.hi[2]), or kPad.
  std::uint32_t min_in(const Box3& box) const;
  std::size_t bytes() const override;
  std::size_t size() const { return m_; }

 private:
  template <class F>
  void blocks(const Box3& box, F&& f) const;
  std::uint32_t y_of(std::uint32_t i) const { return i == kPad ? kTop : view_.get(i, 1); }
  std::uint32_t z_of(std::uint32_t i) const { return i == kPad ? kTop : view_.get(i, 2); }
  std::uint64_t y_key(std::uint32_t i) const { return i == kPad ? std::uint64_t{1} << 32 : view_.get(i, 1); }

  View3 view_;
  std::size_t m_ = 0;
  unsigned L_ = 0;
  std::vector<std::vector<std::uint32_t>> lvl_;  // lvl_[0] is x-sorted
  std::vector<RMQIndex> rmq_;
};

struct GridConfig {
  double eps = 0.5;
  double c_exponent = 3.0;
  unsigned c_min = 16;
  std::size_t n_top = 0;  // size used for t and C at this round
};

struct GridShape {
  std::size_t t = 2;
  std::size_t C = 16;
};
GridShape grid_shape(std::size_t n, unsigned round, const GridConfig& cfg);
unsigned rounds_for(double eps);

enum class GridKind { Four, Five };

/// (n/t) x t grid recursion. Four answers [x1,x2] x (-inf,y0] x (-inf,z0];
/// Five answers [x1,x2] x [y1,y2] x (-inf,z0].
class Grid final : public Reporter3 {
 public:
  Grid(const View3& v, std::vector<std::uint32_t> idx, GridKind kind, unsigned round, const GridConfig& cfg);
  void query(const Box3& box, const Sink& sink) const override;
  std::size_t bytes() const override;

 private:
  View3 view_;
  GridKind kind_;
  std::size_t m_ = 0;
  std::unique_ptr<Reporter3> base_;  // set when the node is a base case
  std::vector<std::uint32_t> col_first_x_, col_last_x_;
  std::vector<std::uint32_t> row_first_y_, row_last_y_;
  std::vector<std::unique_ptr<Reporter3>> children_;
  std::vector<std::unique_ptr<Reporter3>> rows_;
  std::vector<std::unique_ptr<BaseTree>> col_side_;             // Four
  std::vector<std::unique_ptr<Reporter3>> col_left_, col_right_;  // Five
  std::unique_ptr<BaseTree> g_;
  std::vector<std::uint32_t> cell_off_;
  std::vector<std::uint32_t> cell_pts_;
};

std::unique_ptr<Reporter3> make_reporter(const View3& v, std::vector<std::uint32_t> idx, GridKind kind,
                                         unsigned round, const GridConfig& cfg);

}  // namespace ors::detail
