#include <algorithm>
#include <numeric>

#include "offline_internal.hpp"

namespace ors {

using namespace offline_detail;

namespace {

using PK = std::array<std::uint32_t, kMaxDim>;

/// Joint rank space of inputs and queries, merged from the presorted orders.
/// Equal values rank inputs first, so p <= q survives on every axis and all ranks are distinct.
void joint_rank(const OfflineInstance& inst, std::vector<PK>& I, std::vector<PK>& Q) {
  I.assign(inst.inputs.size(), PK{});
  Q.assign(inst.queries.size(), PK{});
  for (std::size_t a = 0; a < inst.dim; ++a) {
    const auto& io = inst.input_order[a];
    const auto& qo = inst.query_order[a];
    std::size_t i = 0, j = 0;
    std::uint32_t r = 0;
    while (i < io.size() || j < qo.size()) {
      if (j == qo.size() || (i < io.size() && inst.inputs[io[i]][a] <= inst.queries[qo[j]][a]))
        I[io[i++]][a] = r++;
      else
        Q[qo[j++]][a] = r++;
    }
  }
}

template <std::size_t D>
std::vector<std::array<std::uint32_t, D>> head(const std::vector<PK>& v, const std::vector<std::uint32_t>& idx) {
  std::vector<std::array<std::uint32_t, D>> out(idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k)
    for (std::size_t a = 0; a < D; ++a) out[k][a] = v[idx[k]][a];
  return out;
}

std::vector<std::uint32_t> iota_n(std::size_t n) {
  std::vector<std::uint32_t> v(n);
  std::iota(v.begin(), v.end(), 0u);
  return v;
}

bool le(const PK& p, const PK& q, std::size_t dim) {
  for (std::size_t a = 0; a < dim; ++a)
    if (p[a] > q[a]) return false;
  return true;
}

void merge_sub(Out& o, const Out& sub, const std::vector<std::uint32_t>& is, const std::vector<std::uint32_t>& qs) {
  if (o.empty) {
    for (std::size_t t = 0; t < qs.size(); ++t) o.hit[qs[t]] |= sub.hit[t];
  } else {
    for (auto [a, b] : sub.pairs) o.pairs.emplace_back(is[a], qs[b]);
  }
}

Out make_out(bool empty, std::size_t queries) {
  Out o;
  o.empty = empty;
  if (empty) o.hit.assign(queries, 0);
  return o;
}

void brute(const std::vector<PK>& I, const std::vector<PK>& Q, const std::vector<std::uint32_t>& is,
           const std::vector<std::uint32_t>& qs, std::size_t dim, Out& o) {
  for (auto q : qs) {
    if (o.empty && o.hit[q]) continue;
    for (auto i : is) {
      if (!le(I[i], Q[q], dim)) continue;
      if (o.empty) {
        o.hit[q] = 1;
        break;
      }
      o.pairs.emplace_back(i, q);
    }
  }
}

/// One or two axes: prefix minimum for emptiness, a padded 3-d fallback for reporting.
void low_dim(const std::vector<PK>& I, const std::vector<PK>& Q, const std::vector<std::uint32_t>& is,
             const std::vector<std::uint32_t>& qs, std::size_t dim, Ctx& c, Out& o) {
  if (!o.empty) {
    std::vector<P3> I3(is.size()), Q3(qs.size());
    for (std::size_t k = 0; k < is.size(); ++k) I3[k] = {I[is[k]][0], dim > 1 ? I[is[k]][1] : 0u, 0u};
    for (std::size_t k = 0; k < qs.size(); ++k) Q3[k] = {Q[qs[k]][0], dim > 1 ? Q[qs[k]][1] : 0u, 0u};
    Out sub = make_out(false, 0);
    fallback3(I3, Q3, c, sub);
    return merge_sub(o, sub, is, qs);
  }
  std::vector<std::pair<std::uint32_t, std::uint32_t>> xs(is.size());  // (x, prefix min of the second axis)
  for (std::size_t k = 0; k < is.size(); ++k) xs[k] = {I[is[k]][0], dim > 1 ? I[is[k]][1] : 0u};
  std::sort(xs.begin(), xs.end());
  for (std::size_t k = 1; k < xs.size(); ++k) xs[k].second = std::min(xs[k].second, xs[k - 1].second);
  for (auto q : qs) {
    auto it = std::upper_bound(xs.begin(), xs.end(), std::make_pair(Q[q][0], ~0u));
    if (it == xs.begin()) continue;
    if (dim == 1 || std::prev(it)->second <= Q[q][1]) o.hit[q] = 1;
  }
}

/// Any dimension over jointly ranked points; indexes in o are positions in I and Q.
void solve_dim(const std::vector<PK>& I, const std::vector<PK>& Q, std::vector<std::uint32_t> is,
               std::vector<std::uint32_t> qs, std::size_t dim, Ctx& c, Out& o) {
  if (is.empty() || qs.empty()) return;
  if (dim <= 2) return low_dim(I, Q, is, qs, dim, c, o);
  if (dim == 3) {
    Out sub = make_out(o.empty, qs.size());
    solve3(head<3>(I, is), head<3>(Q, qs), 0, stream_of(c.opt.seed, 3, c.st.cutting_nodes), c, sub);
    return merge_sub(o, sub, is, qs);
  }
  if (dim == 4) {
    Out sub = make_out(o.empty, qs.size());
    ++c.st.calls_4d;
    solve4(head<4>(I, is), head<4>(Q, qs), 0, stream_of(c.opt.seed, 4, c.st.calls_4d), c, sub);
    return merge_sub(o, sub, is, qs);
  }
  const std::size_t ax = dim - 1;
  std::sort(is.begin(), is.end(), [&](auto a, auto b) { return I[a][ax] < I[b][ax]; });
  std::sort(qs.begin(), qs.end(), [&](auto a, auto b) { return Q[a][ax] < Q[b][ax]; });
  if (I[is.front()][ax] > Q[qs.back()][ax]) return;
  if (I[is.back()][ax] <= Q[qs.front()][ax]) return solve_dim(I, Q, std::move(is), std::move(qs), dim - 1, c, o);
  if (is.size() * qs.size() <= 4096) return brute(I, Q, is, qs, dim, o);
  const std::size_t half = (is.size() + qs.size()) / 2;
  std::size_t a = 0, b = 0;
  while (a + b < half) {
    if (b == qs.size() || (a < is.size() && I[is[a]][ax] < Q[qs[b]][ax]))
      ++a;
    else
      ++b;
  }
  std::vector<std::uint32_t> il(is.begin(), is.begin() + a), ir(is.begin() + a, is.end());
  std::vector<std::uint32_t> ql(qs.begin(), qs.begin() + b), qr(qs.begin() + b, qs.end());
  solve_dim(I, Q, il, qr, dim - 1, c, o);
  solve_dim(I, Q, std::move(il), std::move(ql), dim, c, o);
  solve_dim(I, Q, std::move(ir), std::move(qr), dim, c, o);
}

Out run(const OfflineInstance& inst, bool empty, const OfflineOptions& opt, OfflineStats* stats) {
  OfflineStats local;
  OfflineStats& st = stats ? *stats : local;
  Ctx c{opt, st};
  Out o = make_out(empty, inst.queries.size());
  if (inst.inputs.empty() || inst.queries.empty()) return o;
  require(inst.input_order.size() == inst.dim && inst.query_order.size() == inst.dim,
          "offline: instance is missing its presorted orders");
  std::vector<PK> I, Q;
  joint_rank(inst, I, Q);
  solve_dim(I, Q, iota_n(I.size()), iota_n(Q.size()), inst.dim, c, o);
  return o;
}

}  // namespace

DominancePairs offline_dominance_3d(const OfflineInstance& inst, const OfflineOptions& opt, OfflineStats* stats) {
  require(inst.dim == 3 || (inst.inputs.empty() && inst.queries.empty()), "offline_dominance_3d: dimension must be 3");
  return run(inst, false, opt, stats).pairs;
}

DominancePairs offline_dominance_4d(const OfflineInstance& inst, const OfflineOptions& opt, OfflineStats* stats) {
  require(inst.dim == 4 || (inst.inputs.empty() && inst.queries.empty()), "offline_dominance_4d: dimension must be 4");
  return run(inst, false, opt, stats).pairs;
}

DominancePairs higher_d_dominance(const OfflineInstance& inst, const OfflineOptions& opt, OfflineStats* stats) {
  require(inst.dim >= 5 || (inst.inputs.empty() && inst.queries.empty()), "higher_d_dominance: dimension must be >= 5");
  return run(inst, false, opt, stats).pairs;
}

DominancePairs offline_dominance(const OfflineInstance& inst, const OfflineOptions& opt, OfflineStats* stats) {
  return run(inst, false, opt, stats).pairs;
}

std::vector<std::uint8_t> offline_dominance_emptiness(const OfflineInstance& inst, const OfflineOptions& opt,
                                                      OfflineStats* stats) {
  return run(inst, true, opt, stats).hit;
}

}  // namespace ors
