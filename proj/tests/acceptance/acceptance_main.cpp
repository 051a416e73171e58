#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <iostream>
#include <set>
#include <sstream>

#include "acceptance.hpp"

namespace acc {

Budget budget;

void note_offline(const ors::OfflineStats& st) {
  ++budget.offline_runs;
  budget.offline_depth = std::max(budget.offline_depth, st.max_depth);
}

ors::DominancePairs offline_pairs(const ors::OfflineInstance& inst, const ors::OfflineOptions& opt) {
  ors::OfflineStats st;
  auto out = ors::offline_dominance(inst, opt, &st);
  note_offline(st);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint8_t> offline_empty(const ors::OfflineInstance& inst, const ors::OfflineOptions& opt) {
  ors::OfflineStats st;
  auto out = ors::offline_dominance_emptiness(inst, opt, &st);
  note_offline(st);
  return out;
}

std::string summarize(const std::vector<Tally>& t) {
  std::ostringstream os;
  std::uint64_t checks = 0, failures = 0;
  for (const auto& x : t) checks += x.checks, failures += x.failures;
  os << t.size() << " structures, " << checks << " answers, " << failures << " mismatches";
  for (const auto& x : t)
    if (x.failures) os << "; " << x.name << " x" << x.failures << " first: " << x.first;
  return os.str();
}

bool all_clean(const std::vector<Tally>& t) {
  for (const auto& x : t)
    if (x.failures || x.checks == 0) return false;
  return true;
}

}  // namespace acc

namespace {

using Fn = acc::Result (*)();

}  // namespace

int main(int argc, char** argv) {
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--digest")) {
      std::cout << acc::determinism_digest() << '\n';
      return 0;
    }
    if (!std::strcmp(argv[i], "--calibrate")) {
      return acc::calibrate(i + 1 < argc ? argv[i + 1] : ORS_CONFIG_DIR "/cutting_calibration.json");
    }
    const int c = std::atoi(argv[i]);
    if (c < 1 || c > 6) {
      std::cerr << "usage: acceptance [1-6 ...] | --digest | --calibrate [path]\n";
      return 2;
    }
    wanted.insert(c);
  }
  if (wanted.empty()) wanted = {1, 2, 3, 4, 5, 6};

  const Fn fns[] = {acc::criterion1, acc::criterion2, acc::criterion3,
                    acc::criterion4, acc::criterion5, acc::criterion6};
  bool ok = true;
  for (int c : wanted) {
    const auto t0 = std::chrono::steady_clock::now();
    acc::Result r;
    try {
      r = fns[c - 1]();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %d: %s [%.1fs] %s\n", c, r.pass ? "PASS" : "FAIL", s, r.detail.c_str());
    std::fflush(stdout);
    ok &= r.pass;
  }
  return ok ? 0 : 1;
}
