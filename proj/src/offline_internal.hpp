#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ors/offline.hpp"

namespace ors::offline_detail {

using P3 = std::array<std::uint32_t, 3>;
using P4 = std::array<std::uint32_t, 4>;

/// Either all pairs or a per-query hit flag.
struct Out {
  bool empty = false;
  DominancePairs pairs;
  std::vector<std::uint8_t> hit;  // sized to the query count in emptiness mode
};

struct Ctx {
  const OfflineOptions& opt;
  OfflineStats& st;
};

/// Coordinates must be pairwise distinct between inputs and queries on every axis
/// (joint rank space), so <= and < agree across the two sets.
void solve3(const std::vector<P3>& I, const std::vector<P3>& Q, unsigned depth, std::uint64_t stream, Ctx& c,
            Out& o);
void solve4(const std::vector<P4>& I, const std::vector<P4>& Q, unsigned depth, std::uint64_t stream, Ctx& c,
            Out& o);
void fallback3(const std::vector<P3>& I, const std::vector<P3>& Q, Ctx& c, Out& o);
void fallback4(const std::vector<P4>& I, const std::vector<P4>& Q, Ctx& c, Out& o);
/// Packed quadratic scan after local rank reduction; needs |I| + |Q| <= 2^20.
void tiny3(const std::vector<P3>& I, const std::vector<P3>& Q, Ctx& c, Out& o);

std::uint64_t mix(std::uint64_t x);
inline std::uint64_t stream_of(std::uint64_t a, std::uint64_t b, std::uint64_t c) { return mix(mix(mix(a) ^ b) ^ c); }

}  // namespace ors::offline_detail
