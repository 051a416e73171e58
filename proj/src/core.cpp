#include "ors/core.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

namespace ors {

PointD::PointD(std::initializer_list<Coord> coords, PointId pid) : id(pid) {
  require(coords.size() >= 1 && coords.size() <= kMaxDim, "PointD: dimension out of range");
  dim = static_cast<std::uint8_t>(coords.size());
  std::copy(coords.begin(), coords.end(), c.begin());
}

PointD PointD::of(std::span<const Coord> coords, PointId pid) {
  require(coords.size() >= 1 && coords.size() <= kMaxDim, "PointD: dimension out of range");
  PointD p;
  p.dim = static_cast<std::uint8_t>(coords.size());
  p.id = pid;
  std::copy(coords.begin(), coords.end(), p.c.begin());
  return p;
}

bool operator==(const PointD& a, const PointD& b) {
  if (a.dim != b.dim || a.id != b.id) return false;
  return std::equal(a.c.begin(), a.c.begin() + a.dim, b.c.begin());
}

bool dominates(const PointD& p, const PointD& q) {
  require(p.dim == q.dim, "dominates: dimension mismatch");
  for (std::size_t i = 0; i < p.dim; ++i)
    if (p.c[i] > q.c[i]) return false;
  return true;
}

QueryBox::QueryBox(std::size_t dim) : dim_(dim) {
  require(dim >= 1 && dim <= kMaxDim, "QueryBox: dimension out of range");
}

QueryBox QueryBox::closed(std::span<const Coord> lo, std::span<const Coord> hi) {
  require(lo.size() == hi.size(), "QueryBox: corner dimension mismatch");
  QueryBox b(lo.size());
  for (std::size_t i = 0; i < lo.size(); ++i) b.set_lower(i, lo[i]).set_upper(i, hi[i]);
  return b;
}

QueryBox QueryBox::orthant(std::span<const Coord> corner) {
  QueryBox b(corner.size());
  for (std::size_t i = 0; i < corner.size(); ++i) b.set_upper(i, corner[i]);
  return b;
}

QueryBox& QueryBox::set_lower(std::size_t axis, Coord v) {
  require(axis < dim_, "QueryBox: axis out of range");
  lo_[axis] = v;
  bounded_ |= 1u << (2 * axis);
  return *this;
}

QueryBox& QueryBox::set_upper(std::size_t axis, Coord v) {
  require(axis < dim_, "QueryBox: axis out of range");
  hi_[axis] = v;
  bounded_ |= 1u << (2 * axis + 1);
  return *this;
}

QueryBox& QueryBox::clear_lower(std::size_t axis) {
  require(axis < dim_, "QueryBox: axis out of range");
  bounded_ &= ~(1u << (2 * axis));
  return *this;
}

QueryBox& QueryBox::clear_upper(std::size_t axis) {
  require(axis < dim_, "QueryBox: axis out of range");
  bounded_ &= ~(1u << (2 * axis + 1));
  return *this;
}

int QueryBox::sidedness() const { return std::popcount(bounded_); }

bool QueryBox::well_formed() const {
  for (std::size_t i = 0; i < dim_; ++i)
    if (lower(i) > upper(i)) return false;
  return true;
}

bool QueryBox::contains(const PointD& p) const {
  require(p.dim == dim_, "QueryBox::contains: dimension mismatch");
  for (std::size_t i = 0; i < dim_; ++i) {
    if (p.c[i] < lower(i) || p.c[i] > upper(i)) return false;
  }
  return true;
}

std::size_t RankSpaceMap::lower_rank(std::size_t axis, std::uint64_t v) const {
  const auto& vals = values_[axis];
  return static_cast<std::size_t>(
      std::lower_bound(vals.begin(), vals.end(), v,
                       [](Coord a, std::uint64_t b) { return a < b; }) -
      vals.begin());
}

std::int64_t RankSpaceMap::upper_rank(std::size_t axis, std::uint64_t v) const {
  const auto& vals = values_[axis];
  auto it = std::upper_bound(vals.begin(), vals.end(), v,
                             [](std::uint64_t a, Coord b) { return a < b; });
  return static_cast<std::int64_t>(it - vals.begin()) - 1;
}

PointD RankSpaceMap::inverse(const PointD& ranked) const {
  require(ranked.dim == dim(), "RankSpaceMap::inverse: dimension mismatch");
  PointD p = ranked;
  for (std::size_t a = 0; a < dim(); ++a) {
    require(ranked.c[a] < n_, "RankSpaceMap::inverse: rank out of range");
    p.c[a] = values_[a][ranked.c[a]];
  }
  return p;
}

bool RankSpaceMap::to_rank_box(const QueryBox& box, QueryBox& out) const {
  require(box.dim() == dim(), "to_rank_box: dimension mismatch");
  out = QueryBox(dim());
  for (std::size_t a = 0; a < dim(); ++a) {
    std::size_t lo = box.has_lower(a) ? lower_rank(a, box.lower(a)) : 0;
    std::int64_t hi = box.has_upper(a) ? upper_rank(a, box.upper(a))
                                       : static_cast<std::int64_t>(n_) - 1;
    if (hi < 0 || static_cast<std::int64_t>(lo) > hi) return false;
    if (box.has_lower(a)) out.set_lower(a, static_cast<Coord>(lo));
    if (box.has_upper(a)) out.set_upper(a, static_cast<Coord>(hi));
  }
  return true;
}

std::vector<std::vector<std::uint32_t>> presort(std::span<const PointD> points) {
  std::vector<std::vector<std::uint32_t>> order;
  if (points.empty()) return order;
  const std::size_t d = points[0].dim;
  order.resize(d);
  for (std::size_t a = 0; a < d; ++a) {
    auto& idx = order[a];
    idx.resize(points.size());
    std::iota(idx.begin(), idx.end(), 0u);
    std::sort(idx.begin(), idx.end(), [&](std::uint32_t i, std::uint32_t j) {
      if (points[i].c[a] != points[j].c[a]) return points[i].c[a] < points[j].c[a];
      if (points[i].id != points[j].id) return points[i].id < points[j].id;
      return i < j;
    });
  }
  return order;
}

std::vector<PointD> rank_space_reduce(std::span<const PointD> points, RankSpaceMap& map) {
  map = RankSpaceMap{};
  map.n_ = points.size();
  std::vector<PointD> out(points.begin(), points.end());
  if (points.empty()) return out;
  const std::size_t d = points[0].dim;
  for (const auto& p : points) require(p.dim == d, "rank_space_reduce: mixed dimensions");
  auto order = presort(points);
  map.values_.resize(d);
  map.to_rank_.resize(d);
  map.to_index_.resize(d);
  for (std::size_t a = 0; a < d; ++a) {
    map.to_index_[a] = std::move(order[a]);
    map.to_rank_[a].resize(points.size());
    map.values_[a].resize(points.size());
    for (std::size_t r = 0; r < points.size(); ++r) {
      const auto i = map.to_index_[a][r];
      map.to_rank_[a][i] = static_cast<std::uint32_t>(r);
      map.values_[a][r] = points[i].c[a];
      out[i].c[a] = static_cast<Coord>(r);
    }
  }
  return out;
}

bool is_rank_space(std::span<const PointD> points) {
  if (points.empty()) return true;
  const std::size_t n = points.size();
  const std::size_t d = points[0].dim;
  std::vector<char> seen(n);
  for (std::size_t a = 0; a < d; ++a) {
    std::fill(seen.begin(), seen.end(), 0);
    for (const auto& p : points) {
      if (p.dim != d || p.c[a] >= n || seen[p.c[a]]) return false;
      seen[p.c[a]] = 1;
    }
  }
  return true;
}

std::uint64_t universe_of(std::span<const PointD> points) {
  std::uint64_t u = 0;
  for (const auto& p : points)
    for (std::size_t a = 0; a < p.dim; ++a) u = std::max<std::uint64_t>(u, p.c[a]);
  return points.empty() ? 1 : u + 1;
}

std::string to_string(const PointD& p) {
  std::ostringstream os;
  os << '(';
  for (std::size_t a = 0; a < p.dim; ++a) os << (a ? "," : "") << p.c[a];
  os << ")#" << p.id;
  return os.str();
}

}  // namespace ors
