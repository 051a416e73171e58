#include "ors/range3d.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "range3d_internal.hpp"

namespace ors {

using detail::BaseTree;
using detail::Box3;
using detail::GridConfig;
using detail::GridKind;
using detail::kTop;
using detail::P3;
using detail::Reporter3;
using detail::Sink;
using detail::View3;

namespace {

constexpr std::size_t kSixLeaf = 8;

std::vector<P3> to_p3(std::span<const PointD> ranked) {
  std::vector<P3> out(ranked.size());
  for (std::size_t i = 0; i < ranked.size(); ++i) out[i] = {ranked[i].c[0], ranked[i].c[1], ranked[i].c[2]};
  return out;
}

Box3 to_box3(const QueryBox& ranked) {
  Box3 b;
  for (int a = 0; a < 3; ++a) {
    b.lo[a] = static_cast<std::uint32_t>(ranked.lower(a));
    b.hi[a] = static_cast<std::uint32_t>(std::min<std::uint64_t>(ranked.upper(a), kTop));
  }
  return b;
}

}  // namespace

struct Range3D::Impl {
  Shape3D shape;
  Range3DParams params;
  unsigned rounds = 1;
  std::vector<PointD> orig;
  RankSpaceMap map;
  std::vector<P3> pts;
  std::unique_ptr<Reporter3> root;  // four- and five-sided

  // Six-sided: binary tree over z-rank ranges.
  struct ZNode {
    std::uint32_t lo = 0, hi = 0;  // [lo, hi)
    std::int32_t left = -1, right = -1;
    std::unique_ptr<Reporter3> low, high;  // low is z-flipped
  };
  std::vector<ZNode> znodes;
  std::vector<std::uint32_t> by_z;

  GridConfig config(std::size_t n) const {
    return GridConfig{params.eps, params.c_exponent, params.c_min, n};
  }

  std::int32_t build_z(std::uint32_t lo, std::uint32_t hi) {
    const auto id = static_cast<std::int32_t>(znodes.size());
    znodes.emplace_back();
    znodes[id].lo = lo;
    znodes[id].hi = hi;
    if (hi - lo <= kSixLeaf) return id;
    const std::uint32_t mid = lo + (hi - lo) / 2;
    View3 v{&pts};
    View3 flipped = v;
    flipped.flip[2] = true;
    auto cfg = config(pts.size());
    auto low = detail::make_reporter(flipped, {by_z.begin() + lo, by_z.begin() + mid}, GridKind::Five, rounds, cfg);
    auto high = detail::make_reporter(v, {by_z.begin() + mid, by_z.begin() + hi}, GridKind::Five, rounds, cfg);
    const auto l = build_z(lo, mid);
    const auto r = build_z(mid, hi);
    znodes[id].low = std::move(low);
    znodes[id].high = std::move(high);
    znodes[id].left = l;
    znodes[id].right = r;
    return id;
  }

  void query_six(const Box3& box, const Sink& sink) const {
    if (box.lo[2] > box.hi[2] || znodes.empty()) return;
    const std::uint32_t z1 = box.lo[2], z2 = std::min<std::uint32_t>(box.hi[2], pts.size() - 1);
    std::int32_t id = 0;
    View3 v{&pts};
    while (true) {
      const ZNode& nd = znodes[id];
      if (nd.left < 0 || z1 == z2) {
        for (std::uint32_t z = std::max(z1, nd.lo); z <= z2 && z < nd.hi; ++z) {
          if (box.contains(v, by_z[z])) sink.emit(by_z[z]);
        }
        return;
      }
      const std::uint32_t mid = znodes[nd.right].lo;
      if (z2 < mid) {
        id = nd.left;
      } else if (z1 >= mid) {
        id = nd.right;
      } else {
        Box3 b = box;
        b.lo[2] = 0;
        b.hi[2] = ~z1;
        nd.low->query(b, sink);
        b.hi[2] = z2;
        nd.high->query(b, sink);
        return;
      }
    }
  }
};

Range3D::Range3D(std::span<const PointD> points, Shape3D shape, const Range3DParams& params)
    : impl_(std::make_unique<Impl>()) {
  for (const auto& p : points) require(p.dim == 3, "range3d: points must be 3-d");
  require(points.size() < kTop, "range3d: too many points");
  auto& m = *impl_;
  m.shape = shape;
  m.params = params;
  m.rounds = detail::rounds_for(params.eps);
  m.orig.assign(points.begin(), points.end());
  m.pts = to_p3(rank_space_reduce(points, m.map));
  if (points.empty()) return;
  std::vector<std::uint32_t> idx(points.size());
  std::iota(idx.begin(), idx.end(), 0u);
  if (shape == Shape3D::SixSided) {
    m.by_z.resize(points.size());
    for (std::uint32_t i = 0; i < points.size(); ++i) m.by_z[m.pts[i][2]] = i;
    m.znodes.reserve(4 * points.size() / kSixLeaf + 1);
    m.build_z(0, static_cast<std::uint32_t>(points.size()));
    return;
  }
  const GridKind kind = shape == Shape3D::FourSided ? GridKind::Four : GridKind::Five;
  m.root = detail::make_reporter(View3{&m.pts}, std::move(idx), kind, m.rounds, m.config(points.size()));
}

Range3D::~Range3D() = default;
Range3D::Range3D(Range3D&&) noexcept = default;
Range3D& Range3D::operator=(Range3D&&) noexcept = default;

Shape3D Range3D::shape() const { return impl_->shape; }
std::size_t Range3D::size() const { return impl_->orig.size(); }
unsigned Range3D::rounds() const { return impl_->rounds; }

std::vector<PointD> Range3D::query(const QueryBox& box, Range3DStats* stats,
                                   std::vector<std::uint8_t>* region_tags) const {
  const auto& m = *impl_;
  require(box.dim() == 3, "range3d: box must be 3-d");
  require(box.well_formed(), "range3d: malformed box");
  if (m.shape == Shape3D::FourSided) {
    require(!box.has_lower(1) && !box.has_lower(2), "query_4sided: y and z must be unbounded below");
  } else if (m.shape == Shape3D::FiveSided) {
    require(!box.has_lower(2), "query_5sided: z must be unbounded below");
  }
  if (region_tags) region_tags->clear();
  std::vector<PointD> out;
  QueryBox ranked;
  if (m.orig.empty() || !m.map.to_rank_box(box, ranked)) return out;
  std::vector<std::uint32_t> hits;
  Sink sink{&hits, region_tags, 0, stats};
  const Box3 b = to_box3(ranked);
  if (m.shape == Shape3D::SixSided) {
    m.query_six(b, sink);
  } else {
    m.root->query(b, sink);
  }
  out.reserve(hits.size());
  for (auto i : hits) out.push_back(m.orig[i]);
  return out;
}

std::size_t Range3D::space_bytes() const {
  const auto& m = *impl_;
  std::size_t b = sizeof(Impl) + m.pts.size() * sizeof(P3) + m.by_z.size() * 4;
  if (m.root) b += m.root->bytes();
  for (const auto& nd : m.znodes) {
    b += sizeof(Impl::ZNode);
    if (nd.low) b += nd.low->bytes();
    if (nd.high) b += nd.high->bytes();
  }
  return b;
}

namespace {

Range3D build_with(std::span<const PointD> points, Shape3D shape, double eps, Range3DParams params) {
  params.eps = eps;
  return Range3D(points, shape, params);
}

}  // namespace

Range3D build_4sided(std::span<const PointD> points, double eps, const Range3DParams& params) {
  return build_with(points, Shape3D::FourSided, eps, params);
}
Range3D build_5sided(std::span<const PointD> points, double eps, const Range3DParams& params) {
  return build_with(points, Shape3D::FiveSided, eps, params);
}
Range3D build_6sided(std::span<const PointD> points, double eps, const Range3DParams& params) {
  return build_with(points, Shape3D::SixSided, eps, params);
}

std::vector<PointD> query_4sided(const Range3D& g, const QueryBox& box, Range3DStats* stats) {
  require(g.shape() == Shape3D::FourSided, "query_4sided: structure is not four-sided");
  require(box.dim() == 3 && box.sidedness() <= 4, "query_4sided: box must be at most 4-sided");
  return g.query(box, stats);
}
std::vector<PointD> query_5sided(const Range3D& g, const QueryBox& box, Range3DStats* stats) {
  require(g.shape() == Shape3D::FiveSided, "query_5sided: structure is not five-sided");
  return g.query(box, stats);
}
std::vector<PointD> query_6sided(const Range3D& g, const QueryBox& box, Range3DStats* stats) {
  require(g.shape() == Shape3D::SixSided, "query_6sided: structure is not six-sided");
  return g.query(box, stats);
}

// ---------------------------------------------------------------------------

struct Dominance3D::Impl {
  std::array<bool, 3> reversed{};
  std::vector<PointD> orig;
  RankSpaceMap map;
  std::vector<P3> pts;
  std::unique_ptr<BaseTree> tree;
};

Dominance3D::Dominance3D(std::span<const PointD> points, std::array<bool, 3> reversed)
    : impl_(std::make_unique<Impl>()) {
  for (const auto& p : points) require(p.dim == 3, "dominance3d: points must be 3-d");
  auto& m = *impl_;
  m.reversed = reversed;
  m.orig.assign(points.begin(), points.end());
  m.pts = to_p3(rank_space_reduce(points, m.map));
  View3 v{&m.pts};
  v.flip = reversed;
  std::vector<std::uint32_t> idx(points.size());
  std::iota(idx.begin(), idx.end(), 0u);
  m.tree = std::make_unique<BaseTree>(v, std::move(idx));
}

Dominance3D::~Dominance3D() = default;
Dominance3D::Dominance3D(Dominance3D&&) noexcept = default;

std::vector<PointD> Dominance3D::query(const PointD& corner) const {
  const auto& m = *impl_;
  require(corner.dim == 3, "dominance3d: corner must be 3-d");
  std::vector<PointD> out;
  if (m.orig.empty()) return out;
  Box3 b;
  for (int a = 0; a < 3; ++a) {
    if (m.reversed[a]) {
      const std::size_t r = m.map.lower_rank(a, corner.c[a]);
      if (r >= m.orig.size()) return out;
      b.hi[a] = ~static_cast<std::uint32_t>(r);
    } else {
      const std::int64_t r = m.map.upper_rank(a, corner.c[a]);
      if (r < 0) return out;
      b.hi[a] = static_cast<std::uint32_t>(r);
    }
  }
  std::vector<std::uint32_t> hits;
  m.tree->query(b, Sink{&hits, nullptr, 0, nullptr});
  out.reserve(hits.size());
  for (auto i : hits) out.push_back(m.orig[i]);
  return out;
}

std::vector<PointD> query_dominance3d(const Dominance3D& b, const PointD& corner) { return b.query(corner); }

// ---------------------------------------------------------------------------

struct RangeKD::Impl {
  struct Node {
    std::uint32_t lo = 0, hi = 0;  // last-coordinate rank range [lo, hi)
    std::vector<std::int32_t> children;
    std::unique_ptr<Range3D> r3;
    std::unique_ptr<RangeKD> rk;
  };
  unsigned d = 0, b = 2;
  Range3DParams params;
  std::vector<PointD> orig;
  RankSpaceMap map;
  std::vector<std::uint32_t> by_last;  // point index by last-coordinate rank
  std::vector<Node> nodes;

  static constexpr std::size_t kLeaf = 8;

  std::int32_t build(std::uint32_t lo, std::uint32_t hi, bool with_structure) {
    const auto id = static_cast<std::int32_t>(nodes.size());
    nodes.emplace_back();
    nodes[id].lo = lo;
    nodes[id].hi = hi;
    if (hi - lo <= kLeaf) return id;
    if (with_structure) {
      // Projection drops the last axis; ids index into orig.
      std::vector<PointD> proj;
      proj.reserve(hi - lo);
      for (std::uint32_t r = lo; r < hi; ++r) {
        const PointD& p = orig[by_last[r]];
        proj.push_back(PointD::of(std::span<const Coord>(p.c.data(), d - 1), by_last[r]));
      }
      if (d - 1 == 3) {
        nodes[id].r3 = std::make_unique<Range3D>(proj, Shape3D::SixSided, params);
      } else {
        nodes[id].rk = std::make_unique<RangeKD>(proj, b, params);
      }
    }
    const std::uint32_t span = hi - lo;
    std::vector<std::int32_t> kids;
    for (unsigned c = 0; c < b; ++c) {
      const std::uint32_t a = lo + static_cast<std::uint32_t>(std::uint64_t{span} * c / b);
      const std::uint32_t e = lo + static_cast<std::uint32_t>(std::uint64_t{span} * (c + 1) / b);
      if (a < e) kids.push_back(build(a, e, true));
    }
    nodes[id].children = std::move(kids);
    return id;
  }

  void query(std::int32_t id, std::uint32_t z1, std::uint32_t z2, const QueryBox& sub, const QueryBox& full,
             std::vector<PointD>& out) const {
    const Node& nd = nodes[id];
    if (z2 < nd.lo || z1 >= nd.hi) return;
    if ((nd.r3 || nd.rk) && z1 <= nd.lo && z2 + 1 >= nd.hi) {
      auto hits = nd.r3 ? nd.r3->query(sub) : nd.rk->query(sub);
      for (const auto& h : hits) out.push_back(orig[h.id]);
      return;
    }
    if (nd.children.empty()) {
      for (std::uint32_t r = std::max(z1, nd.lo); r < nd.hi && r <= z2; ++r) {
        if (full.contains(orig[by_last[r]])) out.push_back(orig[by_last[r]]);
      }
      return;
    }
    for (auto c : nd.children) query(c, z1, z2, sub, full, out);
  }
};

RangeKD::RangeKD(std::span<const PointD> points, unsigned b, const Range3DParams& params)
    : impl_(std::make_unique<Impl>()) {
  auto& m = *impl_;
  m.d = points.empty() ? 4 : points[0].dim;
  require(m.d >= 4, "report_kd: dimension must be at least 4");
  for (const auto& p : points) require(p.dim == m.d, "report_kd: mixed dimensions");
  const double lgn = std::max(1.0, std::log2(static_cast<double>(std::max<std::size_t>(points.size(), 2))));
  m.b = b != 0 ? b : std::max(2u, static_cast<unsigned>(std::ceil(std::pow(lgn, params.eps))));
  require(m.b >= 2, "report_kd: fan-out must be at least 2");
  m.params = params;
  m.orig.assign(points.begin(), points.end());
  rank_space_reduce(points, m.map);
  if (points.empty()) return;
  m.by_last.resize(points.size());
  for (std::uint32_t r = 0; r < points.size(); ++r) m.by_last[r] = m.map.index_at(m.d - 1, r);
  m.build(0, static_cast<std::uint32_t>(points.size()), false);
}

RangeKD::~RangeKD() = default;
RangeKD::RangeKD(RangeKD&&) noexcept = default;

std::vector<PointD> RangeKD::query(const QueryBox& box) const {
  const auto& m = *impl_;
  require(box.dim() == m.d, "report_kd: box dimension mismatch");
  require(box.well_formed(), "report_kd: malformed box");
  std::vector<PointD> out;
  QueryBox ranked;
  if (m.orig.empty() || !m.map.to_rank_box(box, ranked)) return out;
  const auto z1 = static_cast<std::uint32_t>(ranked.lower(m.d - 1));
  const auto z2 = static_cast<std::uint32_t>(std::min<std::uint64_t>(ranked.upper(m.d - 1), m.orig.size() - 1));
  QueryBox sub(m.d - 1);
  for (std::size_t a = 0; a + 1 < m.d; ++a) {
    if (box.has_lower(a)) sub.set_lower(a, static_cast<Coord>(box.lower(a)));
    if (box.has_upper(a)) sub.set_upper(a, static_cast<Coord>(box.upper(a)));
  }
  m.query(0, z1, z2, sub, box, out);
  return out;
}

unsigned RangeKD::fanout() const { return impl_->b; }

std::size_t RangeKD::space_bytes() const {
  const auto& m = *impl_;
  std::size_t s = sizeof(Impl) + m.orig.size() * sizeof(PointD) + m.by_last.size() * 4;
  for (const auto& nd : m.nodes) {
    s += sizeof(Impl::Node) + nd.children.size() * 4;
    if (nd.r3) s += nd.r3->space_bytes();
    if (nd.rk) s += nd.rk->space_bytes();
  }
  return s;
}

std::vector<std::vector<PointD>> report_kd(std::span<const PointD> points, std::span<const QueryBox> boxes,
                                           unsigned b) {
  RangeKD s(points, b);
  std::vector<std::vector<PointD>> out;
  out.reserve(boxes.size());
  for (const auto& q : boxes) out.push_back(s.query(q));
  return out;
}

// ---------------------------------------------------------------------------

struct RangeMin2D::Impl {
  RankSpaceMap map;
  std::vector<P3> pts;  // (x rank, y rank, (priority, id) rank)
  std::unique_ptr<BaseTree> tree;
};

RangeMin2D::RangeMin2D(std::span<const PointD> points, std::span<const std::uint64_t> priority,
                       const Range3DParams&)
    : impl_(std::make_unique<Impl>()) {
  require(points.size() == priority.size(), "rmq_2d: one priority per point");
  for (const auto& p : points) require(p.dim == 2, "rmq_2d: points must be 2-d");
  auto& m = *impl_;
  auto ranked = rank_space_reduce(points, m.map);
  std::vector<std::uint32_t> order(points.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (priority[a] != priority[b]) return priority[a] < priority[b];
    if (points[a].id != points[b].id) return points[a].id < points[b].id;
    return a < b;
  });
  m.pts.resize(points.size());
  for (std::uint32_t r = 0; r < order.size(); ++r) {
    const auto i = order[r];
    m.pts[i] = {ranked[i].c[0], ranked[i].c[1], r};
  }
  std::vector<std::uint32_t> idx(points.size());
  std::iota(idx.begin(), idx.end(), 0u);
  m.tree = std::make_unique<BaseTree>(View3{&m.pts}, std::move(idx));
}

RangeMin2D::~RangeMin2D() = default;
RangeMin2D::RangeMin2D(RangeMin2D&&) noexcept = default;

std::optional<std::size_t> RangeMin2D::query(const QueryBox& box) const {
  const auto& m = *impl_;
  require(box.dim() == 2, "rmq_2d: box must be 2-d");
  require(box.well_formed(), "rmq_2d: malformed box");
  QueryBox ranked;
  if (m.pts.empty() || !m.map.to_rank_box(box, ranked)) return std::nullopt;
  Box3 b;
  for (int a = 0; a < 2; ++a) {
    b.lo[a] = static_cast<std::uint32_t>(ranked.lower(a));
    b.hi[a] = static_cast<std::uint32_t>(std::min<std::uint64_t>(ranked.upper(a), kTop));
  }
  const std::uint32_t i = m.tree->min_in(b);
  if (i == detail::kPad) return std::nullopt;
  return i;
}

std::size_t RangeMin2D::space_bytes() const {
  return sizeof(Impl) + impl_->pts.size() * sizeof(P3) + impl_->tree->bytes();
}

std::optional<PointD> rmq_2d(const RangeMin2D& s, std::span<const PointD> points, const QueryBox& box) {
  auto i = s.query(box);
  if (!i) return std::nullopt;
  return points[*i];
}

}  // namespace ors
