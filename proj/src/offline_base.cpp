#include <algorithm>
#include <numeric>

#include "offline_internal.hpp"
#include "ors/succinct.hpp"
#include "range3d_internal.hpp"

namespace ors::offline_detail {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

namespace {

template <std::size_t D>
bool le(const std::array<std::uint32_t, D>& p, const std::array<std::uint32_t, D>& q) {
  for (std::size_t a = 0; a < D; ++a)
    if (p[a] > q[a]) return false;
  return true;
}

template <std::size_t D>
void brute(const std::vector<std::array<std::uint32_t, D>>& I, const std::vector<std::array<std::uint32_t, D>>& Q,
           Out& o) {
  for (std::uint32_t j = 0; j < Q.size(); ++j) {
    if (o.empty && o.hit[j]) continue;
    for (std::uint32_t i = 0; i < I.size(); ++i) {
      if (!le(I[i], Q[j])) continue;
      if (o.empty) {
        o.hit[j] = 1;
        break;
      }
      o.pairs.emplace_back(i, j);
    }
  }
}

constexpr std::size_t kBruteWork = 4096;

}  // namespace

void fallback3(const std::vector<P3>& I, const std::vector<P3>& Q, Ctx& c, Out& o) {
  if (I.empty() || Q.empty()) return;
  ++c.st.fallback_calls;
  if (I.size() * Q.size() <= kBruteWork) return brute(I, Q, o);
  detail::View3 v;
  v.pts = &I;
  std::vector<std::uint32_t> idx(I.size());
  std::iota(idx.begin(), idx.end(), 0u);
  detail::BaseTree t(v, std::move(idx));
  std::vector<std::uint32_t> buf;
  detail::Sink sink{&buf, nullptr, 0, nullptr};
  for (std::uint32_t j = 0; j < Q.size(); ++j) {
    detail::Box3 box;
    box.hi = Q[j];
    if (o.empty) {
      if (o.hit[j]) continue;
      const std::uint32_t i = t.min_in(box);
      if (i != detail::kPad && I[i][2] <= Q[j][2]) o.hit[j] = 1;
      continue;
    }
    buf.clear();
    t.query(box, sink);
    for (std::uint32_t i : buf) o.pairs.emplace_back(i, j);
  }
}

void tiny3(const std::vector<P3>& I, const std::vector<P3>& Q, Ctx& c, Out& o) {
  if (I.empty() || Q.empty()) return;
  ++c.st.tiny_calls;
  const std::size_t m = I.size() + Q.size();
  require(m <= (std::size_t{1} << 20), "tiny3: instance too large");
  const unsigned f = bits_for(m - 1), s = f + 1;
  std::vector<std::uint64_t> pi(I.size(), 0), pq(Q.size(), 0);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> ord(m);  // (value, slot)
  for (unsigned a = 0; a < 3; ++a) {
    for (std::uint32_t i = 0; i < I.size(); ++i) ord[i] = {I[i][a], i};
    for (std::uint32_t j = 0; j < Q.size(); ++j) ord[I.size() + j] = {Q[j][a], static_cast<std::uint32_t>(I.size() + j)};
    std::sort(ord.begin(), ord.end());
    for (std::uint32_t r = 0; r < m; ++r) {
      const std::uint32_t slot = ord[r].second;
      auto& w = slot < I.size() ? pi[slot] : pq[slot - I.size()];
      w |= std::uint64_t{r} << (a * s);
    }
  }
  const std::uint64_t G = (std::uint64_t{1} << f) | (std::uint64_t{1} << (f + s)) | (std::uint64_t{1} << (f + 2 * s));
  for (std::uint32_t j = 0; j < Q.size(); ++j) {
    if (o.empty && o.hit[j]) continue;
    const std::uint64_t q = pq[j] | G;
    for (std::uint32_t i = 0; i < I.size(); ++i) {
      if (((q - pi[i]) & G) != G) continue;
      if (o.empty) {
        o.hit[j] = 1;
        break;
      }
      o.pairs.emplace_back(i, j);
    }
  }
}

void fallback4(const std::vector<P4>& I, const std::vector<P4>& Q, Ctx& c, Out& o) {
  if (I.empty() || Q.empty()) return;
  ++c.st.fallback_calls;
  std::vector<std::uint32_t> ii(I.size()), qq(Q.size());
  std::iota(ii.begin(), ii.end(), 0u);
  std::iota(qq.begin(), qq.end(), 0u);
  std::sort(ii.begin(), ii.end(), [&](auto a, auto b) { return I[a][3] < I[b][3]; });
  std::sort(qq.begin(), qq.end(), [&](auto a, auto b) { return Q[a][3] < Q[b][3]; });

  // Both index lists stay sorted by the last axis through the recursion.
  auto rec = [&](auto&& self, const std::vector<std::uint32_t>& is, const std::vector<std::uint32_t>& qs) -> void {
    if (is.empty() || qs.empty()) return;
    if (I[is.front()][3] > Q[qs.back()][3]) return;
    if (is.size() * qs.size() <= kBruteWork || I[is.back()][3] <= Q[qs.front()][3]) {
      std::vector<P3> I3(is.size()), Q3(qs.size());
      for (std::size_t k = 0; k < is.size(); ++k) I3[k] = {I[is[k]][0], I[is[k]][1], I[is[k]][2]};
      for (std::size_t k = 0; k < qs.size(); ++k) Q3[k] = {Q[qs[k]][0], Q[qs[k]][1], Q[qs[k]][2]};
      if (I[is.back()][3] <= Q[qs.front()][3]) {
        Out sub;
        sub.empty = o.empty;
        if (o.empty) sub.hit.assign(qs.size(), 0);
        fallback3(I3, Q3, c, sub);
        if (o.empty) {
          for (std::size_t k = 0; k < qs.size(); ++k) o.hit[qs[k]] |= sub.hit[k];
        } else {
          for (auto [a, b] : sub.pairs) o.pairs.emplace_back(is[a], qs[b]);
        }
        return;
      }
      for (std::uint32_t qj : qs) {
        if (o.empty && o.hit[qj]) continue;
        for (std::uint32_t ik : is) {
          if (!le(I[ik], Q[qj])) continue;
          if (o.empty) {
            o.hit[qj] = 1;
            break;
          }
          o.pairs.emplace_back(ik, qj);
        }
      }
      return;
    }
    // Median of the merged last-axis order.
    const std::size_t half = (is.size() + qs.size()) / 2;
    std::size_t a = 0, b = 0;
    while (a + b < half) {
      if (b == qs.size() || (a < is.size() && I[is[a]][3] < Q[qs[b]][3]))
        ++a;
      else
        ++b;
    }
    std::vector<std::uint32_t> il(is.begin(), is.begin() + a), ir(is.begin() + a, is.end());
    std::vector<std::uint32_t> ql(qs.begin(), qs.begin() + b), qr(qs.begin() + b, qs.end());
    if (!il.empty() && !qr.empty()) {
      std::vector<P3> I3(il.size()), Q3(qr.size());
      for (std::size_t k = 0; k < il.size(); ++k) I3[k] = {I[il[k]][0], I[il[k]][1], I[il[k]][2]};
      for (std::size_t k = 0; k < qr.size(); ++k) Q3[k] = {Q[qr[k]][0], Q[qr[k]][1], Q[qr[k]][2]};
      Out sub;
      sub.empty = o.empty;
      if (o.empty) sub.hit.assign(qr.size(), 0);
      fallback3(I3, Q3, c, sub);
      if (o.empty) {
        for (std::size_t k = 0; k < qr.size(); ++k) o.hit[qr[k]] |= sub.hit[k];
      } else {
        for (auto [x, y] : sub.pairs) o.pairs.emplace_back(il[x], qr[y]);
      }
    }
    self(self, il, ql);
    self(self, ir, qr);
  };
  rec(rec, ii, qq);
}

}  // namespace ors::offline_detail
