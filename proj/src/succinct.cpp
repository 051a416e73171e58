#include "ors/succinct.hpp"

#include <array>
#include <limits>

namespace ors {

PackedArray::PackedArray(std::size_t n, unsigned width) : n_(n), width_(width) {
  require(width >= 1 && width <= 64, "PackedArray: width out of range");
  mask_ = width == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
  words_.assign((n * width + 63) / 64 + 1, 0);
}

std::uint64_t PackedArray::get(std::size_t i) const {
  const std::size_t bit = i * width_;
  const std::size_t w = bit >> 6;
  const unsigned off = bit & 63;
  std::uint64_t v = words_[w] >> off;
  if (off + width_ > 64) v |= words_[w + 1] << (64 - off);
  return v & mask_;
}

void PackedArray::set(std::size_t i, std::uint64_t v) {
  v &= mask_;
  const std::size_t bit = i * width_;
  const std::size_t w = bit >> 6;
  const unsigned off = bit & 63;
  words_[w] = (words_[w] & ~(mask_ << off)) | (v << off);
  if (off + width_ > 64) {
    const unsigned spill = 64 - off;
    words_[w + 1] = (words_[w + 1] & ~(mask_ >> spill)) | (v >> spill);
  }
}

// ---------------------------------------------------------------------------

namespace {

unsigned symbol_width(std::uint32_t sigma) {
  unsigned b = bits_for(sigma - 1);
  unsigned w = 1;
  while (w < b) w <<= 1;
  return w;
}

}  // namespace

AlphabetRankIndex::AlphabetRankIndex(std::span<const std::uint32_t> symbols, std::uint32_t sigma,
                                     std::size_t segment_length)
    : n_(symbols.size()), sigma_(std::max<std::uint32_t>(sigma, 2)) {
  seg_len_ = segment_length ? segment_length : std::max<std::size_t>(n_, 1);
  const std::size_t lgn = std::max(1u, ceil_log2(n_ + 1));
  const std::size_t lglgn = std::max(1u, ceil_log2(lgn));
  two_level_ = static_cast<std::uint64_t>(sigma_) * sigma_ < lgn;
  major_ = sigma_ * lgn;
  if (two_level_) {
    minor_ = sigma_ * lglgn;
    major_ = (major_ + minor_ - 1) / minor_ * minor_;
  } else {
    minor_ = major_;
  }

  sym_ = PackedArray(n_, symbol_width(sigma_));
  const std::size_t nmajor = n_ / major_ + 1;
  major_counts_ = PackedArray(nmajor * sigma_, bits_for(std::min(seg_len_, n_)));
  if (two_level_) {
    minor_counts_ = PackedArray((n_ / minor_ + 1) * sigma_, bits_for(major_));
  } else {
    local_ = PackedArray(n_, bits_for(major_));
  }

  std::vector<std::uint32_t> seg_cnt(sigma_, 0), since(sigma_, 0);
  for (std::size_t pos = 0; pos < n_; ++pos) {
    const std::uint32_t c = symbols[pos];
    require(c < sigma_, "AlphabetRankIndex: symbol out of range");
    if (pos % seg_len_ == 0) {
      std::fill(seg_cnt.begin(), seg_cnt.end(), 0);
      std::fill(since.begin(), since.end(), 0);
    }
    if (pos % major_ == 0) {
      const std::size_t j = pos / major_;
      for (std::uint32_t a = 0; a < sigma_; ++a)
        if (seg_cnt[a]) major_counts_.set(j * sigma_ + a, seg_cnt[a]);
      std::fill(since.begin(), since.end(), 0);
    }
    if (two_level_ && pos % minor_ == 0) {
      const std::size_t j = pos / minor_;
      for (std::uint32_t a = 0; a < sigma_; ++a)
        if (since[a]) minor_counts_.set(j * sigma_ + a, since[a]);
    }
    sym_.set(pos, c);
    ++seg_cnt[c];
    ++since[c];
    if (!two_level_) local_.set(pos, since[c]);
  }
}

std::size_t AlphabetRankIndex::scan(std::uint32_t c, std::size_t from, std::size_t to) const {
  if (from >= to) return 0;
  const unsigned b = sym_.width();
  const unsigned per_word = 64 / b;
  const std::uint64_t rep = b == 64 ? 1 : ~std::uint64_t{0} / ((std::uint64_t{1} << b) - 1);
  const std::uint64_t high = rep << (b - 1);
  const std::uint64_t low = ~high;
  const std::uint64_t pattern = rep * c;
  const auto& words = sym_.words();
  std::size_t total = 0;
  for (std::size_t w = from / per_word; w <= (to - 1) / per_word; ++w) {
    const std::size_t first = w * per_word;
    const unsigned fa = from > first ? static_cast<unsigned>(from - first) : 0;
    const unsigned fb = static_cast<unsigned>(std::min<std::size_t>(to - first, per_word));
    std::uint64_t valid = high;
    if (fb < per_word) valid &= (std::uint64_t{1} << (fb * b)) - 1;
    valid &= ~((std::uint64_t{1} << (fa * b)) - 1);
    const std::uint64_t t = words[w] ^ pattern;
    const std::uint64_t nonzero = (((t & low) + low) | t) & high;
    total += std::popcount(~nonzero & valid);
  }
  return total;
}

std::size_t AlphabetRankIndex::rank(std::size_t pos) const {
  require(pos < n_, "AlphabetRankIndex::rank: position out of range");
  const std::uint32_t c = symbol(pos);
  const std::size_t ss = seg_start(pos);
  const std::size_t m = pos - pos % major_;
  std::size_t r = m > ss ? major_counts_.get(m / major_ * sigma_ + c) : 0;
  if (!two_level_) return r + local_.get(pos);
  const std::size_t mi = pos - pos % minor_;
  if (mi > std::max(ss, m)) r += minor_counts_.get(mi / minor_ * sigma_ + c);
  return r + scan(c, std::max(ss, mi), pos + 1);
}

std::size_t AlphabetRankIndex::count(std::uint32_t c, std::size_t seg_begin, std::size_t pos) const {
  require(pos <= n_ && seg_begin <= pos && seg_begin % seg_len_ == 0 && pos - seg_begin <= seg_len_,
          "AlphabetRankIndex::count: position out of range");
  if (pos == seg_begin) return 0;
  const std::size_t q = pos - 1;
  if (symbol(q) == c) return rank(q);
  if (sigma_ == 2) return (pos - seg_begin) - rank(q);
  const std::size_t m = q - q % major_;
  std::size_t r = m > seg_begin ? major_counts_.get(m / major_ * sigma_ + c) : 0;
  if (two_level_) {
    const std::size_t mi = q - q % minor_;
    if (mi > std::max(seg_begin, m)) r += minor_counts_.get(mi / minor_ * sigma_ + c);
    return r + scan(c, std::max(seg_begin, mi), pos);
  }
  const std::size_t lo = std::max(seg_begin, m);
  for (std::size_t t = q; t-- > lo;)
    if (symbol(t) == c) return rank(t);
  return r;
}

std::size_t AlphabetRankIndex::bit_size() const {
  return sym_.bit_size() + local_.bit_size() + major_counts_.bit_size() + minor_counts_.bit_size();
}

std::size_t alphabet_rank(const AlphabetRankIndex& idx, std::size_t k) {
  require(k >= 1 && k <= idx.size(), "alphabet_rank: k out of range");
  return idx.rank(k - 1);
}

// ---------------------------------------------------------------------------

namespace {

struct ByteTable {
  std::array<std::int8_t, 256> delta{};
  std::array<std::int8_t, 256> min_prefix{};
  std::array<std::uint8_t, 256> argmin{};
  ByteTable() {
    for (int v = 0; v < 256; ++v) {
      int cur = 0, best = 100, at = 0;
      for (int bit = 0; bit < 8; ++bit) {
        cur += ((v >> bit) & 1) ? 1 : -1;
        if (cur <= best) { best = cur; at = bit; }
      }
      delta[v] = static_cast<std::int8_t>(cur);
      min_prefix[v] = static_cast<std::int8_t>(best);
      argmin[v] = static_cast<std::uint8_t>(at);
    }
  }
};

const ByteTable& byte_table() {
  static const ByteTable t;
  return t;
}

constexpr std::size_t kSuperWords = 8;

}  // namespace

RMQIndex::RMQIndex(std::span<const std::uint32_t> keys, bool maximum) {
  build(keys, std::max<std::size_t>(keys.size(), 1), std::vector<bool>{maximum});
}

RMQIndex::RMQIndex(std::span<const std::uint32_t> keys, std::size_t segment_length,
                   const std::vector<bool>& want_max) {
  require(segment_length >= 1, "RMQIndex: segment length must be positive");
  build(keys, segment_length, want_max);
}

void RMQIndex::build(std::span<const std::uint32_t> keys, std::size_t seg_len,
                     const std::vector<bool>& want_max) {
  n_ = keys.size();
  seg_len_ = seg_len;
  const std::size_t nseg = (n_ + seg_len_ - 1) / seg_len_;
  require(want_max.size() >= nseg, "RMQIndex: missing per-segment orientation");
  nbits_ = 2 * (n_ + nseg);
  bits_.assign(nbits_ / 64 + 2, 0);
  std::size_t pos = 0;
  auto open = [&] { bits_[pos >> 6] |= std::uint64_t{1} << (pos & 63); ++pos; };
  auto close = [&] { ++pos; };
  std::vector<std::uint32_t> stack;
  for (std::size_t s = 0; s < nseg; ++s) {
    const std::size_t b = s * seg_len_, e = std::min(n_, b + seg_len_);
    const bool mx = want_max[s];
    open();
    stack.clear();
    for (std::size_t i = b; i < e; ++i) {
      const std::uint32_t k = keys[i];
      while (!stack.empty() && (mx ? stack.back() < k : stack.back() > k)) { stack.pop_back(); close(); }
      stack.push_back(k);
      open();
    }
    for (std::size_t i = 0; i < stack.size(); ++i) close();
    close();
  }

  const std::size_t nwords = bits_.size();
  word_rank_.assign(nwords + 1, 0);
  for (std::size_t w = 0; w < nwords; ++w) word_rank_[w + 1] = word_rank_[w] + std::popcount(bits_[w]);
  select_samples_.clear();
  for (std::size_t w = 0; w < nwords; ++w) {
    while (select_samples_.size() * 64 < word_rank_[w + 1]) select_samples_.push_back(static_cast<std::uint32_t>(w));
  }
  word_min_.assign(nwords, 0);
  for (std::size_t w = 0; w < nwords; ++w) {
    int cur = 0, best = 127;
    for (unsigned bit = 0; bit < 64; ++bit) {
      cur += ((bits_[w] >> bit) & 1) ? 1 : -1;
      best = std::min(best, cur);
    }
    word_min_[w] = static_cast<std::int8_t>(best);
  }
  // Sparse table over superblocks of words: leftmost word holding the minimum.
  const std::size_t nsuper = (nwords + kSuperWords - 1) / kSuperWords;
  auto word_abs = [&](std::size_t w) {
    return 2 * static_cast<std::int64_t>(word_rank_[w]) - static_cast<std::int64_t>(64 * w) + word_min_[w];
  };
  sparse_.clear();
  std::vector<std::uint32_t> lvl(nsuper);
  for (std::size_t sb = 0; sb < nsuper; ++sb) {
    std::size_t best = sb * kSuperWords;
    for (std::size_t w = best + 1; w < std::min(nwords, (sb + 1) * kSuperWords); ++w)
      if (word_abs(w) <= word_abs(best)) best = w;
    lvl[sb] = static_cast<std::uint32_t>(best);
  }
  sparse_.push_back(std::move(lvl));
  for (std::size_t k = 1; (std::size_t{1} << k) <= nsuper; ++k) {
    const auto& prev = sparse_.back();
    std::vector<std::uint32_t> next(nsuper - (std::size_t{1} << k) + 1);
    for (std::size_t i = 0; i < next.size(); ++i) {
      std::uint32_t a = prev[i], b = prev[i + (std::size_t{1} << (k - 1))];
      next[i] = word_abs(b) <= word_abs(a) ? b : a;
    }
    sparse_.push_back(std::move(next));
  }
}

std::size_t RMQIndex::rank1(std::size_t pos) const {
  const std::size_t w = pos >> 6;
  const unsigned off = pos & 63;
  std::size_t r = word_rank_[w];
  if (off) r += std::popcount(bits_[w] & ((std::uint64_t{1} << off) - 1));
  return r;
}

std::size_t RMQIndex::select_open(std::size_t k) const {
  std::size_t w = select_samples_[(k - 1) / 64];
  while (word_rank_[w + 1] < k) ++w;
  std::size_t need = k - word_rank_[w];
  std::uint64_t x = bits_[w];
  unsigned base = 0;
  for (;;) {
    const unsigned c = std::popcount(x & 0xFF);
    if (c >= need) break;
    need -= c;
    x >>= 8;
    base += 8;
  }
  for (;; x >>= 1, ++base)
    if ((x & 1) && --need == 0) return w * 64 + base;
}

std::size_t RMQIndex::word_min_pos(std::size_t w, std::size_t from, std::size_t to, std::int64_t& best) const {
  const auto& t = byte_table();
  const std::size_t start = w * 64 + from;
  std::int64_t cur = start == 0 ? 0 : excess(start - 1);
  std::size_t at = std::numeric_limits<std::size_t>::max();
  const std::uint64_t x = bits_[w];
  std::size_t p = from;
  while (p <= to) {
    if ((p & 7) == 0 && p + 7 <= to) {
      const unsigned byte = (x >> p) & 0xFF;
      if (cur + t.min_prefix[byte] <= best) {
        best = cur + t.min_prefix[byte];
        at = w * 64 + p + t.argmin[byte];
      }
      cur += t.delta[byte];
      p += 8;
    } else {
      cur += ((x >> p) & 1) ? 1 : -1;
      if (cur <= best) { best = cur; at = w * 64 + p; }
      ++p;
    }
  }
  return at;
}

std::size_t RMQIndex::min_excess_pos(std::size_t a, std::size_t b, std::int64_t& best) const {
  const std::size_t wa = a >> 6, wb = b >> 6;
  best = std::numeric_limits<std::int64_t>::max();
  if (wa == wb) return word_min_pos(wa, a & 63, b & 63, best);
  std::size_t at = word_min_pos(wa, a & 63, 63, best);
  auto word_abs = [&](std::size_t w) {
    return 2 * static_cast<std::int64_t>(word_rank_[w]) - static_cast<std::int64_t>(64 * w) + word_min_[w];
  };
  // Rightmost best whole word strictly between wa and wb.
  std::size_t bw = std::numeric_limits<std::size_t>::max();
  auto consider = [&](std::size_t w) {
    if (bw == std::numeric_limits<std::size_t>::max() || word_abs(w) <= word_abs(bw)) bw = w;
  };
  std::size_t w = wa + 1;
  const std::size_t wend = wb;  // exclusive
  while (w < wend && w % kSuperWords != 0) consider(w++);
  const std::size_t s1 = w / kSuperWords, s2 = wend / kSuperWords;  // full superblocks [s1, s2)
  if (w < wend && s1 < s2) {
    const unsigned k = 63 - std::countl_zero(static_cast<std::uint64_t>(s2 - s1));
    const std::uint32_t x = sparse_[k][s1], y = sparse_[k][s2 - (std::size_t{1} << k)];
    consider(x);
    consider(y);
    w = s2 * kSuperWords;
  }
  while (w < wend) consider(w++);
  if (bw != std::numeric_limits<std::size_t>::max() && word_abs(bw) <= best) {
    std::int64_t tmp = std::numeric_limits<std::int64_t>::max();
    at = word_min_pos(bw, 0, 63, tmp);
    best = tmp;
  }
  std::size_t r = word_min_pos(wb, 0, b & 63, best);
  if (r != std::numeric_limits<std::size_t>::max()) at = r;
  return at;
}

std::size_t RMQIndex::query(std::size_t i, std::size_t j) const {
  require(i <= j && j < n_, "RMQIndex::query: empty or out-of-range interval");
  const std::size_t s = i / seg_len_;
  require(j / seg_len_ == s, "RMQIndex::query: interval crosses a segment");
  if (i == j) return i;
  const std::size_t ou = select_open(i + s + 2);
  const std::size_t ov = select_open(j + s + 2);
  std::int64_t low = 0;
  const std::size_t m = min_excess_pos(ou, ov, low);
  // The answer is the last top-level sibling in range; if node i is never closed
  // inside the range it is an ancestor of everything there.
  if (low >= excess(ou)) return i;
  return rank1(m + 1) - s - 1;
}

std::size_t RMQIndex::bit_size() const {
  std::size_t bits = bits_.size() * 64 + word_rank_.size() * 32 + select_samples_.size() * 32 + word_min_.size() * 8;
  for (const auto& l : sparse_) bits += l.size() * 32;
  return bits;
}

// ---------------------------------------------------------------------------

PredecessorIndex::PredecessorIndex(std::span<const std::uint64_t> keys, unsigned key_bits,
                                   std::size_t segment_length)
    : n_(keys.size()), key_bits_(key_bits) {
  require(key_bits >= 1 && key_bits <= 64, "PredecessorIndex: key width out of range");
  seg_len_ = segment_length ? segment_length : std::max<std::size_t>(n_, 1);
  s_ = std::max<std::size_t>(2, key_bits / std::max(1u, ceil_log2(key_bits)));
  blocks_per_seg_ = (seg_len_ + s_ - 1) / s_;
  const std::size_t nseg = (n_ + seg_len_ - 1) / seg_len_;
  samples_ = PackedArray(nseg * blocks_per_seg_, key_bits);
  diff_ = PackedArray(n_, 7);
  const std::uint64_t top = key_bits == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << key_bits) - 1;
  for (std::size_t i = 0; i < nseg * blocks_per_seg_; ++i) samples_.set(i, top);
  for (std::size_t i = 0; i < n_; ++i) {
    require(keys[i] <= top, "PredecessorIndex: key exceeds key width");
    const std::size_t off = i % seg_len_;
    if (off == 0) {
      diff_.set(i, 0);
    } else {
      require(keys[i - 1] <= keys[i], "PredecessorIndex: segment not sorted");
      const std::uint64_t x = keys[i - 1] ^ keys[i];
      diff_.set(i, x == 0 ? kEqual : 63 - std::countl_zero(x));
    }
    if (off % s_ == 0) samples_.set((i / seg_len_) * blocks_per_seg_ + off / s_, keys[i]);
  }
}

}  // namespace ors
