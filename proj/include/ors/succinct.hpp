#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ors/core.hpp"

namespace ors {

inline unsigned ceil_log2(std::uint64_t x) { return x <= 1 ? 0 : 64 - std::countl_zero(x - 1); }
inline unsigned bits_for(std::uint64_t max_value) { return max_value == 0 ? 1 : 64 - std::countl_zero(max_value); }

/// Fixed-width unsigned fields packed into 64-bit words. Fields may straddle words.
class PackedArray {
 public:
  PackedArray() = default;
  PackedArray(std::size_t n, unsigned width);

  std::size_t size() const { return n_; }
  unsigned width() const { return width_; }
  std::uint64_t get(std::size_t i) const;
  void set(std::size_t i, std::uint64_t v);
  std::size_t bit_size() const { return words_.size() * 64; }
  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  std::size_t n_ = 0;
  unsigned width_ = 1;
  std::uint64_t mask_ = 1;
  std::vector<std::uint64_t> words_;
};

/// Rank over a small alphabet. Positions are split into equal segments (one per
/// tree node when a whole tree level shares the index); counts restart at every
/// segment start.
class AlphabetRankIndex {
 public:
  AlphabetRankIndex() = default;
  /// segment_length 0 means a single segment.
  AlphabetRankIndex(std::span<const std::uint32_t> symbols, std::uint32_t sigma,
                    std::size_t segment_length = 0);

  std::size_t size() const { return n_; }
  std::uint32_t sigma() const { return sigma_; }
  bool two_level() const { return two_level_; }
  std::size_t segment_length() const { return seg_len_; }

  std::uint32_t symbol(std::size_t pos) const { return static_cast<std::uint32_t>(sym_.get(pos)); }
  /// Occurrences of symbol(pos) in [segment start, pos], 0-based pos.
  std::size_t rank(std::size_t pos) const;
  /// Occurrences of c in [seg_begin, pos); seg_begin must be the segment start
  /// and pos may equal the segment end.
  std::size_t count(std::uint32_t c, std::size_t seg_begin, std::size_t pos) const;

  std::size_t bit_size() const;
  std::size_t major_block() const { return major_; }
  std::size_t minor_block() const { return minor_; }

 private:
  std::size_t seg_start(std::size_t pos) const { return pos - pos % seg_len_; }
  std::size_t scan(std::uint32_t c, std::size_t from, std::size_t to) const;

  std::size_t n_ = 0;
  std::uint32_t sigma_ = 2;
  std::size_t seg_len_ = 1;
  bool two_level_ = false;
  std::size_t major_ = 1;
  std::size_t minor_ = 1;
  PackedArray sym_;
  PackedArray local_;
  PackedArray major_counts_;
  PackedArray minor_counts_;
};

/// 1-based inclusive rank: |{ i <= k : A[i] = A[k] }| within k's segment.
std::size_t alphabet_rank(const AlphabetRankIndex& idx, std::size_t k);

/// Range-minimum (or maximum) positions from a balanced-parentheses encoding of
/// the 2d-min-heap of the keys (parent = nearest earlier key that is not larger).
/// Keys are not retained. Ties go to the leftmost.
class RMQIndex {
 public:
  RMQIndex() = default;
  /// Single array, minimum queries.
  explicit RMQIndex(std::span<const std::uint32_t> keys, bool maximum = false);
  /// Concatenation of equal-length segments; want_max[s] picks max for segment s.
  RMQIndex(std::span<const std::uint32_t> keys, std::size_t segment_length,
           const std::vector<bool>& want_max);

  std::size_t size() const { return n_; }
  /// Leftmost extreme position in [i, j], 0-based global positions in one segment.
  std::size_t query(std::size_t i, std::size_t j) const;
  std::size_t bit_size() const;

 private:
  void build(std::span<const std::uint32_t> keys, std::size_t seg_len, const std::vector<bool>& want_max);
  std::size_t select_open(std::size_t k) const;
  std::size_t rank1(std::size_t pos) const;
  std::int64_t excess(std::size_t pos) const { return 2 * static_cast<std::int64_t>(rank1(pos + 1)) - static_cast<std::int64_t>(pos + 1); }
  /// Rightmost position of the minimum excess in [a, b]; the minimum goes to best.
  std::size_t min_excess_pos(std::size_t a, std::size_t b, std::int64_t& best) const;
  std::size_t word_min_pos(std::size_t w, std::size_t from, std::size_t to, std::int64_t& best) const;

  std::size_t n_ = 0;
  std::size_t seg_len_ = 1;
  std::size_t nbits_ = 0;
  std::vector<std::uint64_t> bits_;
  std::vector<std::uint32_t> word_rank_;
  std::vector<std::uint32_t> select_samples_;
  std::vector<std::int8_t> word_min_;
  std::vector<std::vector<std::uint32_t>> sparse_;
};

/// Fixed per-query oracle budget of PredecessorIndex.
inline constexpr int kPredecessorOracleBudget = 2;

/// Predecessor search over sorted segments whose keys live elsewhere and are read
/// through an oracle (global position -> key). Stores every s-th key in full plus,
/// for every key, the highest bit where it differs from its left neighbour.
class PredecessorIndex {
 public:
  PredecessorIndex() = default;
  PredecessorIndex(std::span<const std::uint64_t> sorted_keys, unsigned key_bits = 32,
                   std::size_t segment_length = 0);

  std::size_t size() const { return n_; }
  std::size_t sample_rate() const { return s_; }
  std::size_t bit_size() const { return samples_.bit_size() + diff_.bit_size(); }

  /// Global position of the largest key <= y within the segment starting at seg_begin.
  template <class Oracle>
  std::optional<std::size_t> predecessor(std::size_t seg_begin, std::uint64_t y, Oracle&& oracle) const;
  /// Global position of the smallest key >= y within the segment.
  template <class Oracle>
  std::optional<std::size_t> successor(std::size_t seg_begin, std::uint64_t y, Oracle&& oracle) const;

  template <class Oracle>
  std::optional<std::size_t> predecessor(std::uint64_t y, Oracle&& oracle) const {
    return predecessor(0, y, oracle);
  }
  template <class Oracle>
  std::optional<std::size_t> successor(std::uint64_t y, Oracle&& oracle) const {
    return successor(0, y, oracle);
  }

 private:
  static constexpr unsigned kEqual = 127;
  std::size_t seg_end(std::size_t seg_begin) const { return std::min(n_, seg_begin + seg_len_); }
  std::size_t sample_base(std::size_t seg_begin) const { return (seg_begin / seg_len_) * blocks_per_seg_; }
  unsigned diff(std::size_t i) const { return static_cast<unsigned>(diff_.get(i)); }

  std::size_t n_ = 0;
  std::size_t seg_len_ = 1;
  std::size_t s_ = 2;
  std::size_t blocks_per_seg_ = 1;
  unsigned key_bits_ = 32;
  PackedArray samples_;
  PackedArray diff_;
};

template <class Oracle>
std::optional<std::size_t> PredecessorIndex::predecessor(std::size_t seg_begin, std::uint64_t y,
                                                        Oracle&& oracle) const {
  require(seg_len_ > 0 && seg_begin % seg_len_ == 0 && seg_begin <= n_, "predecessor: bad segment");
  const std::size_t end = seg_end(seg_begin);
  if (seg_begin >= end) return std::nullopt;
  const std::size_t nblocks = (end - seg_begin + s_ - 1) / s_;
  const std::size_t base = sample_base(seg_begin);
  // Last block whose first key is <= y.
  std::size_t lo = 0, hi = nblocks;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (samples_.get(base + mid) <= y) lo = mid + 1; else hi = mid;
  }
  if (lo == 0) return std::nullopt;
  const std::size_t b = seg_begin + (lo - 1) * s_;
  const std::size_t e = std::min(end, b + s_);
  // Blind descent: follow y's bits at the branching positions only.
  std::size_t l = b, r = e - 1;
  while (l < r) {
    std::size_t split = 0;
    unsigned top = 0;
    bool any = false;
    for (std::size_t i = l + 1; i <= r; ++i) {
      unsigned d = diff(i);
      if (d != kEqual && (!any || d > top)) { top = d; split = i; any = true; }
    }
    if (!any) break;
    if ((y >> top) & 1u) l = split; else r = split - 1;
  }
  const std::uint64_t key = oracle(l);
  if (key == y) {
    std::size_t p = l;
    while (p + 1 < e && diff(p + 1) == kEqual) ++p;
    return p;
  }
  const unsigned p = 63 - static_cast<unsigned>(std::countl_zero(key ^ y));
  std::size_t L = l, R = l;
  while (L > b && (diff(L) == kEqual || diff(L) < p)) --L;
  while (R + 1 < e && (diff(R + 1) == kEqual || diff(R + 1) < p)) ++R;
  if ((y >> p) & 1u) return R;
  return L - 1;
}

template <class Oracle>
std::optional<std::size_t> PredecessorIndex::successor(std::size_t seg_begin, std::uint64_t y,
                                                      Oracle&& oracle) const {
  const std::size_t end = seg_end(seg_begin);
  if (y == 0) return seg_begin < end ? std::optional<std::size_t>(seg_begin) : std::nullopt;
  auto p = predecessor(seg_begin, y - 1, oracle);
  std::size_t s = p ? *p + 1 : seg_begin;
  if (s >= end) return std::nullopt;
  return s;
}

}  // namespace ors
