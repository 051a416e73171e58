#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>

#include "offline_internal.hpp"
#include "ors/cuttings.hpp"
#include "ors/succinct.hpp"

namespace ors::offline_detail {

namespace {

template <std::size_t D>
std::uint32_t max_coord(const std::vector<std::array<std::uint32_t, D>>& a,
                        const std::vector<std::array<std::uint32_t, D>>& b) {
  std::uint32_t m = 0;
  for (const auto& p : a)
    for (auto v : p) m = std::max(m, v);
  for (const auto& p : b)
    for (auto v : p) m = std::max(m, v);
  return m;
}

std::vector<PointD> to_points(const std::vector<P3>& v) {
  std::vector<PointD> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i].dim = 3;
    out[i].id = static_cast<PointId>(i);
    out[i].c[0] = v[i][0], out[i].c[1] = v[i][1], out[i].c[2] = v[i][2];
  }
  return out;
}

template <std::size_t D>
std::vector<std::array<std::uint32_t, D>> reflect(const std::vector<std::array<std::uint32_t, D>>& v,
                                                  std::uint32_t M) {
  auto out = v;
  for (auto& p : out)
    for (auto& x : p) x = M - x;
  return out;
}

double list_threshold(const OfflineOptions& opt, std::uint64_t K, std::size_t n) {
  return opt.list_factor * static_cast<double>(K) * std::max(1.0, std::log(static_cast<double>(n)));
}

Out make_out(bool empty, std::size_t queries) {
  Out o;
  o.empty = empty;
  if (empty) o.hit.assign(queries, 0);
  return o;
}

/// tiny3 when the instance fits a packed word, fallback3 otherwise.
void direct3(const std::vector<P3>& I, const std::vector<P3>& Q, Ctx& c, Out& o) {
  if (I.size() <= c.opt.n0 && I.size() + Q.size() <= (std::size_t{1} << 20))
    tiny3(I, Q, c, o);
  else
    fallback3(I, Q, c, o);
}

/// Answers every located query from its cell's conflict list. Indexes of o are local to I and Q.
void solve_cells(const std::vector<P3>& I, const std::vector<P3>& Q, const ConflictLists& cl,
                 const std::vector<std::uint32_t>& loc, std::size_t cells, Ctx& c, Out& o) {
  std::vector<std::uint32_t> off(cells + 1, 0), qs(Q.size());
  for (auto l : loc)
    if (l != kNoCell) ++off[l + 1];
  for (std::size_t k = 0; k < cells; ++k) off[k + 1] += off[k];
  std::vector<std::uint32_t> fill(off.begin(), off.end() - 1);
  for (std::uint32_t j = 0; j < loc.size(); ++j)
    if (loc[j] != kNoCell) qs[fill[loc[j]]++] = j;
  std::vector<P3> Ic, Qc;
  for (std::size_t k = 0; k < cells; ++k) {
    if (off[k] == off[k + 1]) continue;
    const auto lst = cl.list(k);
    if (lst.empty()) continue;
    Ic.clear(), Qc.clear();
    for (auto i : lst) Ic.push_back(I[i]);
    for (auto t = off[k]; t < off[k + 1]; ++t) Qc.push_back(Q[qs[t]]);
    Out sub = make_out(o.empty, Qc.size());
    direct3(Ic, Qc, c, sub);
    if (o.empty) {
      for (std::size_t t = 0; t < Qc.size(); ++t)
        if (sub.hit[t]) o.hit[qs[off[k] + t]] = 1;
    } else {
      for (auto [a, b] : sub.pairs) o.pairs.emplace_back(lst[a], qs[off[k] + b]);
    }
  }
}

struct Cut {
  bool ok = false;
  VerticalDecomposition vd;
  ConflictLists cl;
};

/// Shallow cutting of S with up to three resamples when a conflict list is too long.
Cut cut_with_retry(const std::vector<PointD>& S, std::uint64_t K, std::uint64_t U, std::uint64_t stream, Ctx& c) {
  Cut cut;
  const double thr = list_threshold(c.opt, K, S.size());
  for (unsigned attempt = 0; attempt <= 3; ++attempt) {
    const auto idx = sample(S, K, c.opt.seed, stream_of(stream, attempt, 0x5A));
    std::vector<PointD> R;
    R.reserve(idx.size());
    for (auto i : idx) R.push_back(S[i]);
    const auto stair = build_staircase(R, U, false);
    cut.vd = build_vd(stair);
    cut.cl = conflict_lists(cut.vd, stair, S);
    if (static_cast<double>(cut.cl.max_size()) <= thr) {
      cut.ok = true;
      ++c.st.cutting_nodes;
      c.st.cells += cut.vd.cells.size();
      c.st.conflict_total += cut.cl.total;
      return cut;
    }
    ++c.st.resamples;
  }
  return cut;
}

}  // namespace

void solve3(const std::vector<P3>& I, const std::vector<P3>& Q, unsigned depth, std::uint64_t stream, Ctx& c,
            Out& o) {
  if (I.empty() || Q.empty()) return;
  if (depth > 2 || I.size() + Q.size() < c.opt.small) return fallback3(I, Q, c, o);
  c.st.max_depth = std::max(c.st.max_depth, depth);
  const std::size_t n = I.size();
  const std::uint64_t K = c.opt.K ? c.opt.K : std::max<std::uint64_t>(2, ceil_log2(n));
  const std::uint64_t U = std::uint64_t{max_coord(I, Q)} + 1;

  const auto S = to_points(I);
  const Cut cut = cut_with_retry(S, K, U, stream, c);
  if (!cut.ok) return fallback3(I, Q, c, o);
  const auto loc = locate(cut.vd, to_points(Q));
  solve_cells(I, Q, cut.cl, loc, cut.vd.cells.size(), c, o);

  std::vector<std::uint32_t> bad;
  for (std::uint32_t j = 0; j < loc.size(); ++j)
    if (loc[j] == kNoCell) bad.push_back(j);
  if (bad.empty()) return;
  c.st.bad_queries[depth] += bad.size();
  if (o.empty) {
    // Above the staircase means some sample point, hence some input, is dominated.
    for (auto j : bad) o.hit[j] = 1;
    return;
  }
  const auto M = static_cast<std::uint32_t>(U - 1);
  std::vector<P3> Qb;
  Qb.reserve(bad.size());
  for (auto j : bad) Qb.push_back(Q[j]);
  Out sub = make_out(false, 0);
  solve3(reflect(Qb, M), reflect(I, M), depth + 1, stream_of(stream, 0xBAD, depth), c, sub);
  for (auto [a, b] : sub.pairs) o.pairs.emplace_back(b, bad[a]);
}

namespace {

struct Tree4 {
  const std::vector<P4>& I;
  const std::vector<P4>& Q;
  unsigned depth;
  std::uint64_t stream;
  Ctx& c;
  Out& o;
  std::uint64_t K = 2, U = 1;
  std::vector<std::uint32_t> leaf, pos;
  std::vector<std::uint8_t> bad;

  struct Job {
    std::vector<std::uint32_t> ins, qs;
    std::size_t mid = 0, hi = 0;
    Cut cut;
  };
  std::vector<Job> jobs;  // batched location only

  P3 head(const P4& p) const { return {p[0], p[1], p[2]}; }

  void emit(const Out& sub, const std::vector<std::uint32_t>& ins, const std::vector<std::uint32_t>& qs) {
    if (o.empty) {
      for (std::size_t t = 0; t < qs.size(); ++t)
        if (sub.hit[t]) o.hit[qs[t]] = 1;
    } else {
      for (auto [a, b] : sub.pairs) o.pairs.emplace_back(ins[a], qs[b]);
    }
  }

  void mark_bad(std::uint32_t q) {
    if (o.empty)
      o.hit[q] = 1;
    else
      bad[q] = 1;
  }

  void gather(const std::vector<std::uint32_t>& ins, const std::vector<std::uint32_t>& qs, std::vector<P3>& I3,
              std::vector<P3>& Q3) const {
    I3.resize(ins.size()), Q3.resize(qs.size());
    for (std::size_t k = 0; k < ins.size(); ++k) I3[k] = head(I[ins[k]]);
    for (std::size_t k = 0; k < qs.size(); ++k) Q3[k] = head(Q[qs[k]]);
  }

  /// 3-d problem of one node: inputs of its left subtree against queries of its right subtree.
  void node(std::vector<std::uint32_t> ins, std::vector<std::uint32_t> qs, std::size_t mid, std::size_t hi,
            std::uint64_t id) {
    std::vector<P3> I3, Q3;
    gather(ins, qs, I3, Q3);
    Out sub = make_out(o.empty, qs.size());
    if (ins.size() < c.opt.small) {
      direct3(I3, Q3, c, sub);
      return emit(sub, ins, qs);
    }
    Cut cut = cut_with_retry(to_points(I3), K, U, stream_of(stream, id, 0x4D), c);
    if (!cut.ok) {
      fallback3(I3, Q3, c, sub);
      return emit(sub, ins, qs);
    }
    if (c.opt.location == Location::Batched) {
      jobs.push_back({std::move(ins), std::move(qs), mid, hi, std::move(cut)});
      return;
    }
    const auto loc = locate(cut.vd, to_points(Q3));
    for (std::size_t j = 0; j < loc.size(); ++j)
      if (loc[j] == kNoCell) mark_bad(qs[j]);
    solve_cells(I3, Q3, cut.cl, loc, cut.vd.cells.size(), c, sub);
    emit(sub, ins, qs);
  }

  void walk(std::size_t lo, std::size_t hi, std::uint64_t id, std::vector<std::uint32_t> ins,
            std::vector<std::uint32_t> qs) {
    if (hi - lo <= 1 || ins.empty() || qs.empty()) return;
    const std::size_t mid = lo + (hi - lo) / 2;
    std::vector<std::uint32_t> il, ir, ql, qr;
    for (auto i : ins) (leaf[i] < mid ? il : ir).push_back(i);
    for (auto q : qs) (pos[q] < mid ? ql : qr).push_back(q);
#ifndef NDEBUG
    auto by_x = [&](const std::vector<P4>& v) { return [&v](std::uint32_t a, std::uint32_t b) { return v[a][0] < v[b][0]; }; };
    assert(std::is_sorted(il.begin(), il.end(), by_x(I)) && std::is_sorted(qr.begin(), qr.end(), by_x(Q)));
#endif
    std::vector<std::uint32_t>().swap(ins);
    std::vector<std::uint32_t>().swap(qs);
    if (!il.empty() && !qr.empty()) node(il, qr, mid, hi, id);
    walk(lo, mid, 2 * id, std::move(il), std::move(ql));
    walk(mid, hi, 2 * id + 1, std::move(ir), std::move(qr));
  }

  /// Locates the queries of every deferred node with one 3-d offline reporting pass.
  void batched() {
    if (jobs.empty()) return;
    std::vector<QueryBox> boxes;
    std::vector<std::size_t> first(jobs.size() + 1, 0);
    auto close = [&](std::uint64_t v) { return static_cast<Coord>(v == U ? U : v - 1); };
    for (std::size_t j = 0; j < jobs.size(); ++j) {
      for (const auto& cell : jobs[j].cut.vd.cells) {
        const Coord lo[3] = {static_cast<Coord>(cell.x1), static_cast<Coord>(cell.y1), static_cast<Coord>(jobs[j].mid)};
        const Coord hi[3] = {close(cell.x2), close(cell.y2), static_cast<Coord>(jobs[j].hi - 1)};
        boxes.push_back(QueryBox::closed(lo, hi));
      }
      first[j + 1] = boxes.size();
    }
    std::vector<PointD> pts(Q.size());
    for (std::size_t q = 0; q < Q.size(); ++q) {
      pts[q].dim = 3;
      pts[q].c[0] = Q[q][0], pts[q].c[1] = Q[q][1], pts[q].c[2] = pos[q];
    }
    const std::uint64_t b =
        c.opt.b ? c.opt.b : std::max<std::uint64_t>(2, static_cast<std::uint64_t>(std::llround(std::sqrt(double(K)))));
    const auto hits = offline_report_bary(pts, boxes, b, &c.st);

    std::vector<std::uint32_t> off(jobs.size() + 1, 0);
    std::vector<std::uint32_t> owner(hits.size());
    for (std::size_t h = 0; h < hits.size(); ++h) {
      owner[h] = static_cast<std::uint32_t>(std::upper_bound(first.begin(), first.end(), hits[h].second) - first.begin() - 1);
      ++off[owner[h] + 1];
    }
    for (std::size_t j = 0; j < jobs.size(); ++j) off[j + 1] += off[j];
    std::vector<std::uint32_t> order(hits.size()), fill(off.begin(), off.end() - 1);
    for (std::uint32_t h = 0; h < hits.size(); ++h) order[fill[owner[h]]++] = h;

    std::vector<std::uint32_t> local(Q.size(), kNoCell);
    for (std::size_t j = 0; j < jobs.size(); ++j) {
      auto& job = jobs[j];
      for (std::uint32_t t = 0; t < job.qs.size(); ++t) local[job.qs[t]] = t;
      std::vector<std::uint32_t> loc(job.qs.size(), kNoCell);
      for (auto t = off[j]; t < off[j + 1]; ++t) {
        const auto [q, box] = hits[order[t]];
        const auto cell = static_cast<std::uint32_t>(box - first[j]);
        if (Q[q][2] < job.cut.vd.cells[cell].z) loc[local[q]] = cell;
      }
      for (std::size_t t = 0; t < loc.size(); ++t)
        if (loc[t] == kNoCell) mark_bad(job.qs[t]);
      std::vector<P3> I3, Q3;
      gather(job.ins, job.qs, I3, Q3);
      Out sub = make_out(o.empty, job.qs.size());
      solve_cells(I3, Q3, job.cut.cl, loc, job.cut.vd.cells.size(), c, sub);
      emit(sub, job.ins, job.qs);
      job = Job{};
    }
  }
};

}  // namespace

void solve4(const std::vector<P4>& I, const std::vector<P4>& Q, unsigned depth, std::uint64_t stream, Ctx& c,
            Out& o) {
  if (I.empty() || Q.empty()) return;
  if (depth > 2 || I.size() + Q.size() < c.opt.small) return fallback4(I, Q, c, o);
  c.st.max_depth = std::max(c.st.max_depth, depth);
  const std::size_t n = I.size();
  Tree4 t{I, Q, depth, stream, c, o, 2, 1, {}, {}, {}, {}};
  t.K = c.opt.K ? c.opt.K
                : std::uint64_t{1} << static_cast<unsigned>(std::ceil(std::sqrt(std::max(1.0, std::log2(double(n))))));
  t.U = std::uint64_t{max_coord(I, Q)} + 1;

  std::vector<std::uint32_t> byw(n);
  std::iota(byw.begin(), byw.end(), 0u);
  std::sort(byw.begin(), byw.end(), [&](auto a, auto b) { return I[a][3] < I[b][3]; });
  t.leaf.resize(n);
  std::vector<std::uint32_t> ws(n);
  for (std::uint32_t r = 0; r < n; ++r) t.leaf[byw[r]] = r, ws[r] = I[byw[r]][3];
  t.pos.resize(Q.size());
  for (std::size_t q = 0; q < Q.size(); ++q)
    t.pos[q] = static_cast<std::uint32_t>(std::lower_bound(ws.begin(), ws.end(), Q[q][3]) - ws.begin());
  if (!o.empty) t.bad.assign(Q.size(), 0);

  std::vector<std::uint32_t> ins(n), qs(Q.size());
  std::iota(ins.begin(), ins.end(), 0u);
  std::iota(qs.begin(), qs.end(), 0u);
  std::sort(ins.begin(), ins.end(), [&](auto a, auto b) { return I[a][0] < I[b][0]; });
  std::sort(qs.begin(), qs.end(), [&](auto a, auto b) { return Q[a][0] < Q[b][0]; });
  const std::size_t start = o.pairs.size();
  t.walk(0, n + 1, 1, std::move(ins), std::move(qs));
  t.batched();
  if (o.empty) return;

  std::vector<std::uint32_t> bad;
  for (std::uint32_t q = 0; q < Q.size(); ++q)
    if (t.bad[q]) bad.push_back(q);
  if (bad.empty()) return;
  c.st.bad_queries[depth] += bad.size();
  auto keep = std::remove_if(o.pairs.begin() + start, o.pairs.end(), [&](const auto& pr) { return t.bad[pr.second] != 0; });
  o.pairs.erase(keep, o.pairs.end());

  const auto M = static_cast<std::uint32_t>(t.U - 1);
  std::vector<P4> Qb;
  Qb.reserve(bad.size());
  for (auto q : bad) Qb.push_back(Q[q]);
  Out sub = make_out(false, 0);
  solve4(reflect(Qb, M), reflect(I, M), depth + 1, stream_of(stream, 0xBAD4, depth), c, sub);
  for (auto [a, b] : sub.pairs) o.pairs.emplace_back(b, bad[a]);
}

}  // namespace ors::offline_detail
