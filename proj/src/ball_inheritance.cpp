#include "ors/ball_inheritance.hpp"

#include <algorithm>

namespace ors {

const char* to_string(SkipMode m) { return m == SkipMode::FastQuery ? "fast" : "low"; }

namespace {

unsigned trailing_zeros_base(unsigned v, unsigned B) {
  unsigned z = 0;
  while (v % B == 0) {
    v /= B;
    ++z;
  }
  return z;
}

unsigned floor_log(unsigned x, unsigned B) {
  unsigned k = 0;
  for (std::uint64_t p = B; p <= x; p *= B) ++k;
  return k;
}

std::uint64_t ipow(unsigned B, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= B;
  return r;
}

}  // namespace

SkipPlan SkipPlan::make(SkipMode mode, unsigned B, unsigned height) {
  require(B >= 2, "SkipPlan: B must be at least 2");
  SkipPlan p;
  p.mode = mode;
  p.B = B;
  p.height = height;
  const unsigned imax = height ? floor_log(height, B) : 0;
  for (unsigned l = 0; l < height; ++l) {
    std::uint64_t t;
    if (mode == SkipMode::FastQuery) {
      if (l == 0) {
        t = height;
      } else {
        const std::uint64_t step = ipow(B, trailing_zeros_base(l, B) + 1);
        t = (l / step + 1) * step;
      }
    } else {
      const unsigned i = l == 0 ? imax : std::min(trailing_zeros_base(l, B), imax);
      t = l + ipow(B, i);
    }
    p.jumps.emplace_back(l, static_cast<unsigned>(std::min<std::uint64_t>(t, height)));
  }
  return p;
}

unsigned SkipPlan::hop_bound() const {
  if (height == 0) return 0;
  const unsigned digits = floor_log(height, B) + 1;
  return mode == SkipMode::FastQuery ? digits : B * digits;
}

BallTree::BallTree(std::span<const PointD> points, const BallTreeOptions& opt) : n_(points.size()) {
  require(is_rank_space(points), "BallTree: points must be in rank space");
  for (const auto& p : points) require(p.dim == 2, "BallTree: points must be 2-d");
  N_ = 1;
  h_ = 0;
  while (N_ < n_) {
    N_ <<= 1;
    ++h_;
  }
  require(h_ <= 2 * kMaxJump, "BallTree: too many points");
  plan_ = SkipPlan::make(opt.mode, opt.B, h_);

  points_.resize(n_);
  std::vector<std::uint32_t> cur(N_), next(N_);
  for (std::size_t i = 0; i < n_; ++i) {
    points_[points[i].c[0]] = points[i];
    cur[points[i].c[1]] = points[i].c[0];
  }
  // Padding balls sit after every real ball at the root and occupy the last leaves.
  for (std::size_t i = n_; i < N_; ++i) cur[i] = static_cast<std::uint32_t>(i);

  std::vector<std::pair<unsigned, unsigned>> physical;
  for (const auto& [from, to] : plan_.jumps) {
    const unsigned d = to - from;
    if (d <= 1) continue;
    if (d <= kMaxJump) {
      physical.emplace_back(from, to);
    } else {
      const unsigned a = (d + 1) / 2;
      physical.emplace_back(from, from + a);
      physical.emplace_back(from + a, to);
    }
  }
  std::sort(physical.begin(), physical.end());
  physical.erase(std::unique(physical.begin(), physical.end()), physical.end());
  jump_at_.assign(h_ + 1, {});
  for (unsigned l = 0; l <= h_; ++l) jump_at_[l].assign(h_ - l + 1, -1);

  routing_.resize(h_);
  std::vector<std::uint32_t> sym(N_);
  std::size_t next_phys = 0;
  for (unsigned l = 0; l < h_; ++l) {
    const std::size_t S = N_ >> l;
    for (std::size_t p = 0; p < N_; ++p) sym[p] = (cur[p] >> (h_ - 1 - l)) & 1u;
    if (opt.flip_routing_bit && opt.flip_routing_bit->first == l) sym[opt.flip_routing_bit->second] ^= 1u;
    routing_[l] = AlphabetRankIndex(sym, 2, S);
    for (; next_phys < physical.size() && physical[next_phys].first == l; ++next_phys) {
      const unsigned to = physical[next_phys].second, d = to - l;
      const std::uint32_t mask = (std::uint32_t{1} << d) - 1;
      for (std::size_t p = 0; p < N_; ++p) sym[p] = (cur[p] >> (h_ - to)) & mask;
      jump_at_[l][d] = static_cast<std::int32_t>(jumps_.size());
      jumps_.push_back(Jump{l, to, AlphabetRankIndex(sym, std::uint32_t{1} << d, S)});
    }
    // Stable partition of every node's list into its two children.
    const std::size_t half = S / 2;
    for (std::size_t v = 0; v < (std::size_t{1} << l); ++v) {
      std::size_t lo = v * S, hi = v * S + half;
      for (std::size_t p = v * S; p < (v + 1) * S; ++p) {
        if ((cur[p] >> (h_ - 1 - l)) & 1u) next[hi++] = cur[p]; else next[lo++] = cur[p];
      }
    }
    cur.swap(next);
  }
}

std::uint64_t BallTree::pack(const BallId& b) const {
  check(b);
  return (static_cast<std::uint64_t>(b.level) << 58) | (b.node * node_size(b.level) + b.index);
}

BallId BallTree::unpack(std::uint64_t packed) const {
  BallId b;
  b.level = static_cast<unsigned>(packed >> 58);
  require(b.level <= h_, "BallTree::unpack: bad level");
  const std::uint64_t pos = packed & ((std::uint64_t{1} << 58) - 1);
  b.node = pos / node_size(b.level);
  b.index = pos % node_size(b.level);
  check(b);
  return b;
}

void BallTree::check(const BallId& b) const {
  require(b.level <= h_, "BallTree: level out of range");
  require(b.node < (std::uint64_t{1} << b.level), "BallTree: node out of range");
  require(b.index < node_size(b.level), "BallTree: ball index out of range");
}

unsigned BallTree::routing_bit(unsigned level, std::uint64_t node, std::uint64_t index) const {
  check(BallId{level, node, index});
  require(level < h_, "BallTree: leaves have no routing bit");
  return routing_[level].symbol(node * node_size(level) + index);
}

BallId BallTree::step_down(const BallId& b) const {
  check(b);
  require(b.level < h_, "BallTree::step_down: ball is already at a leaf");
  return physical(b, b.level + 1);
}

std::size_t BallTree::count_right(unsigned level, std::uint64_t node, std::size_t prefix) const {
  const std::size_t S = node_size(level);
  return routing_[level].count(1, node * S, node * S + prefix);
}

BallId BallTree::physical(const BallId& b, unsigned to) const {
  const std::size_t pos = b.node * node_size(b.level) + b.index;
  const unsigned d = to - b.level;
  const AlphabetRankIndex& idx = d == 1 ? routing_[b.level] : jumps_[jump_at_[b.level][d]].index;
  const std::uint32_t sym = idx.symbol(pos);
  return BallId{to, (b.node << d) | sym, idx.rank(pos) - 1};
}

BallId BallTree::jump(const BallId& b, unsigned to, ChaseStats* stats) const {
  const unsigned d = to - b.level;
  BallId r;
  if (d <= kMaxJump) {
    r = physical(b, to);
    if (stats) ++stats->physical_hops;
  } else {
    const unsigned a = (d + 1) / 2;
    r = physical(physical(b, b.level + a), to);
    if (stats) stats->physical_hops += 2;
  }
  if (stats) ++stats->hops;
  return r;
}

std::size_t BallTree::query_leaf(const BallId& start, ChaseStats* stats) const {
  check(start);
  BallId b = start;
  while (b.level < h_) b = jump(b, plan_.target(b.level), stats);
  return b.node;
}

std::size_t BallTree::naive_leaf(const BallId& start) const {
  check(start);
  BallId b = start;
  while (b.level < h_) b = physical(b, b.level + 1);
  return b.node;
}

std::optional<PointD> BallTree::leaf_point(std::size_t leaf) const {
  require(leaf < N_, "BallTree::leaf_point: leaf out of range");
  if (leaf >= n_) return std::nullopt;
  return points_[leaf];
}

std::size_t BallTree::bit_size() const {
  std::size_t bits = 0;
  for (const auto& r : routing_) bits += r.bit_size();
  for (const auto& j : jumps_) bits += j.index.bit_size();
  return bits;
}

}  // namespace ors
