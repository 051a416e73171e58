#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "ors/core.hpp"
#include "ors/offline.hpp"

namespace acc {

using Rng = std::mt19937_64;

struct Result {
  bool pass = false;
  std::string detail;
};

/// Exact-equality bookkeeping for one structure.
struct Tally {
  std::string name;
  std::uint64_t checks = 0, failures = 0;
  std::string first;
  void check(bool ok, const std::function<std::string()>& what) {
    ++checks;
    if (!ok && failures++ == 0) first = what();
  }
};

/// Counters shared by criterion 4.
struct Budget {
  std::uint64_t range2d_queries = 0, range2d_over = 0;
  std::uint64_t worst_calls = 0, worst_k = 0;
  std::uint64_t offline_runs = 0;
  unsigned offline_depth = 0;
  std::uint64_t chases = 0, hop_over = 0;
};
extern Budget budget;

/// Offline run wrapper that records recursion depth.
ors::DominancePairs offline_pairs(const ors::OfflineInstance& inst, const ors::OfflineOptions& opt);
std::vector<std::uint8_t> offline_empty(const ors::OfflineInstance& inst, const ors::OfflineOptions& opt);
void note_offline(const ors::OfflineStats& st);

std::string summarize(const std::vector<Tally>& t);
bool all_clean(const std::vector<Tally>& t);

Result criterion1();
Result criterion2();
Result criterion3();
Result criterion4();
Result criterion5();
Result criterion6();

/// Hash of every randomized path at fixed seeds.
std::string determinism_digest();

/// Writes config/cutting_calibration.json from the calibration seeds.
int calibrate(const std::string& path);

}  // namespace acc
