#include <algorithm>
#include <charconv>

#include "ors/harness.hpp"

namespace ors {

ConfigError::ConfigError(std::size_t line, const std::string& msg)
    : std::runtime_error("config line " + std::to_string(line) + ": " + msg), line_(line) {}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(std::string_view v) {
  std::vector<std::string> out;
  while (true) {
    const auto c = v.find(',');
    const auto item = trim(v.substr(0, c));
    if (!item.empty()) out.emplace_back(item);
    if (c == std::string_view::npos) break;
    v.remove_prefix(c + 1);
  }
  return out;
}

std::uint64_t to_u64(const ConfigEntry& e, std::string_view v) {
  std::uint64_t x = 0;
  const auto* end = v.data() + v.size();
  const auto [p, ec] = std::from_chars(v.data(), end, x);
  if (v.empty() || ec != std::errc() || p != end)
    throw ConfigError(e.line, "'" + e.key + "' expects a non-negative integer, got '" + std::string(v) + "'");
  return x;
}

std::uint64_t to_u64(const ConfigEntry& e) { return to_u64(e, e.value); }

double to_double(const ConfigEntry& e) {
  std::size_t used = 0;
  double x = 0;
  try {
    x = std::stod(e.value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != e.value.size() || !(x >= 0))
    throw ConfigError(e.line, "'" + e.key + "' expects a non-negative number, got '" + e.value + "'");
  return x;
}

}  // namespace

std::vector<ConfigEntry> parse_config(std::string_view text) {
  std::vector<ConfigEntry> out;
  std::size_t line = 0, pos = 0;
  while (pos < text.size()) {
    ++line;
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view raw = text.substr(pos, nl - pos);
    pos = nl + 1;
    if (const auto h = raw.find('#'); h != std::string_view::npos) raw = raw.substr(0, h);
    raw = trim(raw);
    if (raw.empty()) continue;
    const auto eq = raw.find('=');
    if (eq == std::string_view::npos) throw ConfigError(line, "expected key = value");
    ConfigEntry e{line, std::string(trim(raw.substr(0, eq))), std::string(trim(raw.substr(eq + 1)))};
    if (e.key.empty()) throw ConfigError(line, "missing key");
    if (e.value.empty()) throw ConfigError(line, "missing value for '" + e.key + "'");
    out.push_back(std::move(e));
  }
  return out;
}

VerifyConfig parse_verify_config(std::string_view text) {
  VerifyConfig c;
  for (const auto& e : parse_config(text)) {
    if (e.key == "module" || e.key == "modules") {
      for (const auto& m : split_list(e.value)) {
        if (m == "all") continue;
        if (std::find(kVerifyModules.begin(), kVerifyModules.end(), m) == kVerifyModules.end())
          throw ConfigError(e.line, "unknown module '" + m + "'");
        c.modules.insert(m);
      }
    } else if (e.key == "seed") {
      c.seed = to_u64(e);
    } else if (e.key == "n") {
      c.n = to_u64(e);
      if (c.n < 2) throw ConfigError(e.line, "n must be at least 2");
    } else if (e.key == "queries") {
      c.queries = to_u64(e);
    } else if (e.key == "trials") {
      c.trials = to_u64(e);
    } else if (e.key == "quadratic_cap") {
      c.limits.quadratic_cap = to_u64(e);
    } else if (e.key == "fault") {
      if (e.value == "flip_routing_bit")
        c.flip_routing_bit = true;
      else if (e.value != "none")
        throw ConfigError(e.line, "unknown fault '" + e.value + "'");
    } else {
      throw ConfigError(e.line, "unknown key '" + e.key + "'");
    }
  }
  return c;
}

BenchConfig parse_bench_config(std::string_view text) {
  BenchConfig c;
  for (const auto& e : parse_config(text)) {
    if (e.key == "structure" || e.key == "structures") {
      c.structures = split_list(e.value);
      for (const auto& s : c.structures)
        if (std::find(kBenchStructures.begin(), kBenchStructures.end(), s) == kBenchStructures.end())
          throw ConfigError(e.line, "unknown structure '" + s + "'");
    } else if (e.key == "n") {
      c.ns.clear();
      for (const auto& s : split_list(e.value)) c.ns.push_back(to_u64(e, s));
      if (c.ns.empty()) throw ConfigError(e.line, "empty n list");
    } else if (e.key == "reps") {
      c.reps = static_cast<unsigned>(std::max<std::uint64_t>(1, to_u64(e)));
    } else if (e.key == "seed") {
      c.seed = to_u64(e);
    } else if (e.key == "dist") {
      const auto d = parse_dist(e.value);
      if (!d) throw ConfigError(e.line, "unknown distribution '" + e.value + "'");
      c.dist = *d;
    } else if (e.key == "dim") {
      c.dim = to_u64(e);
      if (c.dim > kMaxDim) throw ConfigError(e.line, "dim out of range");
    } else if (e.key == "queries") {
      c.queries = to_u64(e);
    } else if (e.key == "B") {
      c.B = static_cast<unsigned>(to_u64(e));
      if (c.B < 2) throw ConfigError(e.line, "B must be at least 2");
    } else if (e.key == "mode") {
      if (e.value == "fast-query")
        c.mode = SkipMode::FastQuery;
      else if (e.value == "low-space")
        c.mode = SkipMode::LowSpace;
      else
        throw ConfigError(e.line, "mode must be fast-query or low-space");
    } else if (e.key == "eps") {
      c.eps = to_double(e);
      if (c.eps <= 0 || c.eps > 1) throw ConfigError(e.line, "eps must be in (0, 1]");
    } else if (e.key == "b") {
      c.b = to_u64(e);
    } else if (e.key == "K") {
      c.K = to_u64(e);
    } else {
      throw ConfigError(e.line, "unknown key '" + e.key + "'");
    }
  }
  return c;
}

}  // namespace ors
