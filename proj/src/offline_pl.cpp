#include <algorithm>

#include "ors/offline.hpp"
#include "ors/succinct.hpp"

namespace ors {

OfflineInstance OfflineInstance::make(std::vector<PointD> inputs, std::vector<PointD> queries) {
  OfflineInstance inst;
  inst.dim = !inputs.empty() ? inputs[0].dim : !queries.empty() ? queries[0].dim : 0;
  for (const auto& p : inputs) require(p.dim == inst.dim, "offline: mixed dimensions");
  for (const auto& q : queries) require(q.dim == inst.dim, "offline: mixed dimensions");
  inst.U = std::max(universe_of(inputs), universe_of(queries));
  inst.input_order = presort(inputs);
  inst.query_order = presort(queries);
  inst.inputs = std::move(inputs);
  inst.queries = std::move(queries);
  return inst;
}

PackedList::PackedList(unsigned f) : f_(f), per_(64 / f) { require(f >= 1 && f <= 32, "PackedList: width"); }

void PackedList::push(std::uint32_t v) {
  const std::size_t w = n_ / per_, s = (n_ % per_) * f_;
  if (w == words_.size()) words_.push_back(0);
  words_[w] |= std::uint64_t{v} << s;
  ++n_;
}

std::uint32_t PackedList::get(std::size_t i) const {
  const std::uint64_t mask = (std::uint64_t{1} << f_) - 1;
  return static_cast<std::uint32_t>((words_[i / per_] >> ((i % per_) * f_)) & mask);
}

std::vector<std::uint32_t> PackedList::unpack() const {
  std::vector<std::uint32_t> out;
  out.reserve(n_);
  const std::uint64_t mask = (std::uint64_t{1} << f_) - 1;
  std::size_t left = n_;
  for (std::uint64_t w : words_) {
    for (unsigned j = 0; j < per_ && left > 0; ++j, --left, w >>= f_) out.push_back(static_cast<std::uint32_t>(w & mask));
  }
  return out;
}

PackedList PackedList::pack(std::span<const std::uint32_t> v, unsigned f) {
  PackedList p(f);
  p.words_.reserve((v.size() + p.per_ - 1) / p.per_);
  for (std::uint32_t x : v) p.push(x);
  return p;
}

namespace {

void compress(std::vector<Coord>& vals) {
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
}

std::uint32_t rank_in(const std::vector<Coord>& vals, Coord v) {
  return static_cast<std::uint32_t>(std::lower_bound(vals.begin(), vals.end(), v) - vals.begin());
}

struct PlState {
  std::vector<std::uint32_t> a, b, y1, y2;  // rect x-ranks and y-ranks
  std::vector<std::uint32_t> qx, qy;
  std::vector<std::uint32_t>* ans = nullptr;
  unsigned f = 1;

  // canon: y-sorted disjoint intervals covering the node; qs: y-sorted queries.
  void stab(const PackedList& canon, const PackedList& qs) const {
    std::size_t j = 0;
    for (std::size_t i = 0; i < qs.size(); ++i) {
      const std::uint32_t q = qs.get(i);
      while (j < canon.size() && y2[canon.get(j)] < qy[q]) ++j;
      if (j < canon.size() && y1[canon.get(j)] <= qy[q]) (*ans)[q] = canon.get(j);
    }
  }

  void process(std::uint64_t lo, std::uint64_t len, const PackedList& pass, const PackedList& canon,
               const PackedList& qs) const {
    if (qs.size() == 0) return;
    stab(canon, qs);
    if (pass.size() == 0 || len == 1) return;
    const std::uint64_t half = len / 2;
    for (int side = 0; side < 2; ++side) {
      const std::uint64_t clo = lo + side * half, chi = clo + half - 1;
      PackedList cp(f), cc(f), cq(f);
      for (std::size_t i = 0; i < pass.size(); ++i) {
        const std::uint32_t r = pass.get(i);
        if (b[r] < clo || a[r] > chi) continue;
        if (a[r] <= clo && b[r] >= chi)
          cc.push(r);
        else
          cp.push(r);
      }
      for (std::size_t i = 0; i < qs.size(); ++i) {
        const std::uint32_t q = qs.get(i);
        if (qx[q] >= clo && qx[q] <= chi) cq.push(q);
      }
      process(clo, half, cp, cc, cq);
    }
  }
};

}  // namespace

std::vector<std::uint32_t> offline_pl_2d(std::span<const Rect2> rects, std::span<const PointD> queries) {
  std::vector<std::uint32_t> ans(queries.size(), kNoRect);
  if (rects.empty() || queries.empty()) return ans;
  for (const auto& r : rects) require(r.x1 <= r.x2 && r.y1 <= r.y2, "offline_pl_2d: malformed rectangle");
  for (const auto& q : queries) require(q.dim >= 2, "offline_pl_2d: queries need two coordinates");

  std::vector<Coord> xs, ys;
  for (const auto& r : rects) {
    xs.insert(xs.end(), {r.x1, r.x2});
    ys.insert(ys.end(), {r.y1, r.y2});
  }
  for (const auto& q : queries) {
    xs.push_back(q[0]);
    ys.push_back(q[1]);
  }
  compress(xs);
  compress(ys);

  PlState st;
  st.ans = &ans;
  const std::size_t n = rects.size(), m = queries.size();
  st.f = std::max(1u, ceil_log2(4 * (n + m)));
  st.a.resize(n), st.b.resize(n), st.y1.resize(n), st.y2.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    st.a[i] = rank_in(xs, rects[i].x1), st.b[i] = rank_in(xs, rects[i].x2);
    st.y1[i] = rank_in(ys, rects[i].y1), st.y2[i] = rank_in(ys, rects[i].y2);
  }
  st.qx.resize(m), st.qy.resize(m);
  for (std::size_t i = 0; i < m; ++i) st.qx[i] = rank_in(xs, queries[i][0]), st.qy[i] = rank_in(ys, queries[i][1]);

  std::vector<std::uint32_t> ro(n), qo(m);
  for (std::uint32_t i = 0; i < n; ++i) ro[i] = i;
  for (std::uint32_t i = 0; i < m; ++i) qo[i] = i;
  std::sort(ro.begin(), ro.end(), [&](std::uint32_t u, std::uint32_t v) { return st.y1[u] < st.y1[v]; });
  std::sort(qo.begin(), qo.end(), [&](std::uint32_t u, std::uint32_t v) { return st.qy[u] < st.qy[v]; });

  const std::uint64_t len = std::uint64_t{1} << ceil_log2(xs.size());
  PackedList pass(st.f), canon(st.f);
  for (std::uint32_t r : ro) {
    if (st.a[r] == 0 && st.b[r] >= len - 1)
      canon.push(r);
    else
      pass.push(r);
  }
  st.process(0, len, pass, canon, PackedList::pack(qo, st.f));
  return ans;
}

namespace {

struct Bary {
  std::span<const PointD> pts;
  std::span<const QueryBox> boxes;
  std::uint64_t b;
  DominancePairs* out;
  std::uint64_t touches = 0;

  void base(std::vector<std::uint32_t>& p, const std::vector<std::uint32_t>& bx) {
    std::sort(p.begin(), p.end(), [&](std::uint32_t u, std::uint32_t v) { return pts[u][0] < pts[v][0]; });
    for (std::uint32_t j : bx) {
      const std::uint64_t lo = boxes[j].lower(0), hi = boxes[j].upper(0);
      auto it = std::partition_point(p.begin(), p.end(), [&](std::uint32_t u) { return pts[u][0] < lo; });
      for (; it != p.end() && pts[*it][0] <= hi; ++it) out->emplace_back(*it, j);
    }
  }

  void solve(std::vector<std::uint32_t>& p, const std::vector<std::uint32_t>& bx, std::size_t dim) {
    if (p.empty() || bx.empty()) return;
    touches += p.size() + bx.size();
    if (dim == 1) return base(p, bx);
    const std::size_t ax = dim - 1;
    std::sort(p.begin(), p.end(), [&](std::uint32_t u, std::uint32_t v) { return pts[u][ax] < pts[v][ax]; });
    const std::size_t g = std::min<std::size_t>(b, p.size()), gs = (p.size() + g - 1) / g;
    const std::size_t groups = (p.size() + gs - 1) / gs;
    std::vector<Coord> mn(groups), mx(groups);
    for (std::size_t i = 0; i < groups; ++i) {
      mn[i] = pts[p[i * gs]][ax];
      mx[i] = pts[p[std::min(p.size(), (i + 1) * gs) - 1]][ax];
    }
    std::vector<std::vector<std::uint32_t>> full(groups), part(groups);
    for (std::uint32_t j : bx) {
      const std::uint64_t lo = boxes[j].lower(ax), hi = boxes[j].upper(ax);
      const std::size_t first = std::lower_bound(mx.begin(), mx.end(), lo) - mx.begin();
      for (std::size_t i = first; i < groups && mn[i] <= hi; ++i) {
        if (lo <= mn[i] && mx[i] <= hi)
          full[i].push_back(j);
        else
          part[i].push_back(j);
      }
    }
    for (std::size_t i = 0; i < groups; ++i) {
      if (full[i].empty() && part[i].empty()) continue;
      std::vector<std::uint32_t> sub(p.begin() + i * gs, p.begin() + std::min(p.size(), (i + 1) * gs));
      solve(sub, full[i], dim - 1);
      solve(sub, part[i], dim);
    }
  }
};

}  // namespace

DominancePairs offline_report_bary(std::span<const PointD> points, std::span<const QueryBox> boxes, std::uint64_t b,
                                   OfflineStats* stats) {
  require(b >= 2, "offline_report_bary: b must be at least 2");
  DominancePairs out;
  if (points.empty() || boxes.empty()) return out;
  const std::size_t d = points[0].dim;
  for (const auto& p : points) require(p.dim == d, "offline_report_bary: mixed dimensions");
  for (const auto& q : boxes) require(q.dim() == d, "offline_report_bary: box dimension");
  Bary t{points, boxes, b, &out};
  std::vector<std::uint32_t> p(points.size()), bx(boxes.size());
  for (std::uint32_t i = 0; i < p.size(); ++i) p[i] = i;
  for (std::uint32_t i = 0; i < bx.size(); ++i) bx[i] = i;
  t.solve(p, bx, d);
  if (stats) stats->touches += t.touches;
  return out;
}

}  // namespace ors
