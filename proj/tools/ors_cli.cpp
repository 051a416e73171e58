#include <chrono>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ors/harness.hpp"
#include "ors/range2d.hpp"
#include "ors/range3d.hpp"

using namespace ors;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::uint64_t seed = 1;
  std::string n = "1000";
  std::size_t dim = 2;
  std::string dist = "uniform";
  std::string structure;
  std::vector<std::string> params;
  std::string format = "text";
  std::string out;
  std::string input, queries, config;
  std::set<std::string> given;  // options present on the command line
};

FileFormat format_of(const Common& c) { return c.format == "bin" ? FileFormat::Binary : FileFormat::Text; }

/// Config file, then flag-derived lines, then --params; later keys win.
std::string params_text(const Common& c, const std::string& flags = {}) {
  std::string text;
  if (!c.config.empty()) {
    std::ifstream f(c.config);
    if (!f) throw UsageError("cannot read config " + c.config);
    std::stringstream ss;
    ss << f.rdbuf();
    text = ss.str() + "\n";
  }
  text += flags;
  for (const auto& p : c.params) text += p + "\n";
  return text;
}

class Output {
 public:
  explicit Output(const std::string& path, bool binary = false) {
    if (path.empty()) return;
    file_.open(path, binary ? std::ios::binary : std::ios::out);
    if (!file_) throw UsageError("cannot write " + path);
  }
  std::ostream& get() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::ifstream open_in(const std::string& path, FileFormat f) {
  if (path.empty()) throw UsageError("missing --input");
  std::ifstream in(path, f == FileFormat::Binary ? std::ios::binary : std::ios::in);
  if (!in) throw UsageError("cannot read " + path);
  return in;
}

std::size_t single_n(const Common& c) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(c.n, &used);
    if (used != c.n.size()) throw UsageError("--n expects one integer");
    return v;
  } catch (const std::logic_error&) {
    throw UsageError("--n expects one integer");
  }
}

int cmd_gen(const Common& c) {
  const auto d = parse_dist(c.dist);
  if (!d) throw UsageError("unknown --dist " + c.dist);
  const auto data = generate(*d, single_n(c), c.dim, c.seed);
  Output out(c.out, format_of(c) == FileFormat::Binary);
  if (*d == Dist::NestedRects)
    write_rects(out.get(), data.rects, format_of(c));
  else
    write_points(out.get(), data.points, format_of(c));
  return 0;
}

const std::vector<std::string> kBuildable = {"range2d", "range3d4", "range3d5", "range3d6", "rangekd"};

int cmd_build(const Common& c) {
  if (std::find(kBuildable.begin(), kBuildable.end(), c.structure) == kBuildable.end())
    throw UsageError("build: --structure must be one of range2d, range3d4, range3d5, range3d6, rangekd");
  const auto bc = parse_bench_config(params_text(c));
  auto in = open_in(c.input, format_of(c));
  const auto pts = read_points(in, format_of(c), c.dim);
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t space = 0;
  Range3DParams rp;
  rp.eps = bc.eps;
  if (c.structure == "range2d") {
    RankSpaceMap map;
    const auto ranked = rank_space_reduce(pts, map);
    space = build_2d(ranked, bc.B, bc.mode).space_bytes();
  } else if (c.structure == "rangekd") {
    space = RangeKD(pts, static_cast<unsigned>(bc.b), rp).space_bytes();
  } else {
    const Shape3D s = c.structure == "range3d4"   ? Shape3D::FourSided
                      : c.structure == "range3d5" ? Shape3D::FiveSided
                                                  : Shape3D::SixSided;
    space = Range3D(pts, s, rp).space_bytes();
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  nlohmann::json j{{"structure", c.structure}, {"n", pts.size()}, {"space_bytes", space}, {"build_ms", ms}};
  Output out(c.out);
  out.get() << j.dump() << '\n';
  return 0;
}

/// Boxes as rows lo_0 .. lo_{d-1} hi_0 .. hi_{d-1}.
std::vector<QueryBox> read_boxes(const Common& c, std::size_t dim) {
  auto in = open_in(c.queries, format_of(c));
  std::vector<QueryBox> out;
  for (const auto& row : read_points(in, format_of(c), 2 * dim)) {
    std::vector<Coord> lo(row.c.begin(), row.c.begin() + dim), hi(row.c.begin() + dim, row.c.begin() + 2 * dim);
    out.push_back(QueryBox::closed(lo, hi));
  }
  return out;
}

void print_ids(std::ostream& os, const std::vector<PointD>& v) {
  std::vector<PointId> ids;
  for (const auto& p : v) ids.push_back(p.id);
  std::sort(ids.begin(), ids.end());
  for (std::size_t i = 0; i < ids.size(); ++i) os << (i ? " " : "") << ids[i];
  os << '\n';
}

int cmd_query(const Common& c) {
  const auto bc = parse_bench_config(params_text(c));
  OfflineOptions opt;
  opt.seed = c.seed;
  opt.K = bc.K;
  opt.b = bc.b;
  Output out(c.out);
  auto& os = out.get();
  const FileFormat f = format_of(c);
  Range3DParams rp;
  rp.eps = bc.eps;

  if (c.structure == "enclosure") {
    auto in = open_in(c.input, f);
    for (auto [a, b] : rectangle_enclosure(read_rects(in, f), opt)) os << a << ' ' << b << '\n';
    return 0;
  }
  if (c.structure == "pl2d") {
    auto in = open_in(c.input, f);
    const auto rects = read_rects(in, f);
    auto qin = open_in(c.queries, f);
    for (auto r : offline_pl_2d(rects, read_points(qin, f, c.dim))) os << (r == kNoRect ? -1 : std::int64_t{r}) << '\n';
    return 0;
  }
  auto in = open_in(c.input, f);
  const auto pts = read_points(in, f, c.dim);
  if (pts.empty()) throw UsageError("empty input");
  const std::size_t dim = pts[0].dim;
  if (c.structure == "maxima") {
    for (auto i : maxima(pts, opt)) os << pts[i].id << '\n';
    return 0;
  }
  if (c.structure == "dominance") {
    auto qin = open_in(c.queries, f);
    const auto inst = OfflineInstance::make(pts, read_points(qin, f, c.dim));
    for (auto [a, b] : offline_dominance(inst, opt)) os << inst.inputs[a].id << ' ' << inst.queries[b].id << '\n';
    return 0;
  }
  const auto boxes = read_boxes(c, dim);
  if (c.structure == "range2d") {
    RankSpaceMap map;
    const auto ranked = rank_space_reduce(pts, map);
    const auto st = build_2d(ranked, bc.B, bc.mode);
    for (const auto& b : boxes) {
      QueryBox rb;
      std::vector<PointD> hits;
      if (map.to_rank_box(b, rb)) hits = report_2d(st, rb).points;
      print_ids(os, hits);
    }
    return 0;
  }
  if (c.structure == "range3d6" || c.structure == "range3d") {
    const Range3D g(pts, Shape3D::SixSided, rp);
    for (const auto& b : boxes) print_ids(os, g.query(b));
    return 0;
  }
  if (c.structure == "rangekd") {
    const RangeKD kd(pts, static_cast<unsigned>(bc.b), rp);
    for (const auto& b : boxes) print_ids(os, kd.query(b));
    return 0;
  }
  throw UsageError("query: unsupported --structure '" + c.structure + "'");
}

int cmd_verify(const Common& c) {
  std::string flags;
  if (c.given.count("--structure")) flags += "module = " + c.structure + "\n";
  if (c.given.count("--seed")) flags += "seed = " + std::to_string(c.seed) + "\n";
  if (c.given.count("--n")) flags += "n = " + c.n + "\n";
  const auto cfg = parse_verify_config(params_text(c, flags));
  const auto rep = run_verify(cfg);
  Output out(c.out);
  out.get() << rep.to_json() << '\n';
  for (const auto& s : rep.suites)
    if (s.failures) std::cerr << "FAIL " << s.module << "/" << s.name << ": " << s.first_failure << '\n';
  return rep.ok() ? 0 : 1;
}

int cmd_bench(const Common& c) {
  std::string flags;
  if (c.given.count("--structure")) flags += "structure = " + c.structure + "\n";
  if (c.given.count("--n")) flags += "n = " + c.n + "\n";
  if (c.given.count("--seed")) flags += "seed = " + std::to_string(c.seed) + "\n";
  if (c.given.count("--dist")) flags += "dist = " + c.dist + "\n";
  if (c.given.count("--dim")) flags += "dim = " + std::to_string(c.dim) + "\n";
  const auto cfg = parse_bench_config(params_text(c, flags));
  const auto rows = run_bench(cfg);
  Output out(c.out);
  write_bench_csv(out.get(), rows);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orthogonal range searching and offline dominance toolkit"};
  app.require_subcommand(1);
  Common c;
  auto add_common = [&](CLI::App* s) {
    s->add_option("--seed", c.seed, "Seed for every randomized step");
    s->add_option("--n", c.n, "Size (bench accepts a comma list)");
    s->add_option("--dim", c.dim, "Dimension")->check(CLI::Range(1, 8));
    s->add_option("--dist", c.dist, "uniform | clustered | antichain | nested-rects | adversarial-duplicates");
    s->add_option("--structure", c.structure, "Structure or module name");
    s->add_option("--params", c.params, "key=val settings");
    s->add_option("--format", c.format, "File format")->check(CLI::IsMember({"text", "bin"}));
    s->add_option("--out", c.out, "Output path (default stdout)");
    s->add_option("--input", c.input, "Input points or rectangles");
    s->add_option("--queries", c.queries, "Query boxes or points");
    s->add_option("--config", c.config, "Config file of key = value lines");
  };
  auto* gen = app.add_subcommand("gen", "Generate a dataset");
  auto* build = app.add_subcommand("build", "Build a structure and report its size");
  auto* query = app.add_subcommand("query", "Answer queries from a file");
  auto* verify = app.add_subcommand("verify", "Run oracle verification suites");
  auto* bench = app.add_subcommand("bench", "Run benchmarks and print CSV");
  for (auto* s : {gen, build, query, verify, bench}) add_common(s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  for (auto* s : {gen, build, query, verify, bench})
    if (s->parsed())
      for (const char* name : {"--seed", "--n", "--dim", "--dist", "--structure"})
        if (s->count(name)) c.given.insert(name);
  try {
    if (gen->parsed()) return cmd_gen(c);
    if (build->parsed()) return cmd_build(c);
    if (query->parsed()) return cmd_query(c);
    if (verify->parsed()) return cmd_verify(c);
    if (bench->parsed()) return cmd_bench(c);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ContractViolation& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
