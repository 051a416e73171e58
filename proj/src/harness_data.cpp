#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "ors/harness.hpp"

namespace ors {

namespace {

constexpr std::array<std::pair<Dist, const char*>, 5> kDistNames = {{
    {Dist::Uniform, "uniform"},
    {Dist::Clustered, "clustered"},
    {Dist::Antichain, "antichain"},
    {Dist::NestedRects, "nested-rects"},
    {Dist::AdversarialDuplicates, "adversarial-duplicates"},
}};

using Rng = std::mt19937_64;

Coord draw(Rng& rng, std::uint64_t bound) { return static_cast<Coord>(rng() % bound); }

void gen_uniform(Dataset& d, Rng& rng, Coord U) {
  for (std::size_t i = 0; i < d.count; ++i) {
    PointD p;
    p.dim = static_cast<std::uint8_t>(d.dim);
    p.id = static_cast<PointId>(i);
    for (std::size_t a = 0; a < d.dim; ++a) p.c[a] = draw(rng, U);
    d.points.push_back(p);
  }
}

void gen_clustered(Dataset& d, Rng& rng, Coord U) {
  const std::size_t clusters = std::clamp<std::size_t>(d.count / 100, 1, 64);
  const std::uint64_t r = std::max<std::uint64_t>(1, U / 256);
  std::vector<std::array<Coord, kMaxDim>> centers(clusters);
  for (auto& c : centers)
    for (std::size_t a = 0; a < d.dim; ++a) c[a] = draw(rng, U);
  for (std::size_t i = 0; i < d.count; ++i) {
    const auto& c = centers[rng() % clusters];
    PointD p;
    p.dim = static_cast<std::uint8_t>(d.dim);
    p.id = static_cast<PointId>(i);
    for (std::size_t a = 0; a < d.dim; ++a) {
      const std::int64_t v = static_cast<std::int64_t>(c[a]) + static_cast<std::int64_t>(rng() % (2 * r + 1)) -
                             static_cast<std::int64_t>(r);
      p.c[a] = static_cast<Coord>(std::clamp<std::int64_t>(v, 0, static_cast<std::int64_t>(U) - 1));
    }
    d.points.push_back(p);
  }
}

void gen_antichain(Dataset& d, Rng& rng, Coord U) {
  require(d.dim >= 2, "generate: antichain needs dim >= 2");
  // Coordinates sum to a constant, so no point dominates another unless equal.
  const std::uint64_t per = std::max<std::uint64_t>(1, U / (d.dim - 1));
  const std::uint64_t total = (d.dim - 1) * (per - 1);
  for (std::size_t i = 0; i < d.count; ++i) {
    PointD p;
    p.dim = static_cast<std::uint8_t>(d.dim);
    p.id = static_cast<PointId>(i);
    std::uint64_t sum = 0;
    for (std::size_t a = 0; a + 1 < d.dim; ++a) {
      p.c[a] = draw(rng, per);
      sum += p.c[a];
    }
    p.c[d.dim - 1] = static_cast<Coord>(total - sum);
    d.points.push_back(p);
  }
}

void gen_nested(Dataset& d, Rng& rng, Coord U) {
  // Small random rectangles (side about U / sqrt n) plus short nested chains.
  const std::uint64_t side = std::max<std::uint64_t>(2, static_cast<std::uint64_t>(U / std::sqrt(double(d.count) + 1)));
  while (d.rects.size() < d.count) {
    const std::size_t chain = (rng() % 16 == 0) ? std::min<std::size_t>(4, d.count - d.rects.size()) : 1;
    const std::uint64_t w = 1 + rng() % side, h = 1 + rng() % side;
    Rect2 r;
    r.x1 = draw(rng, U - std::min<std::uint64_t>(w, U - 1));
    r.y1 = draw(rng, U - std::min<std::uint64_t>(h, U - 1));
    r.x2 = static_cast<Coord>(std::min<std::uint64_t>(std::uint64_t{r.x1} + w, U - 1));
    r.y2 = static_cast<Coord>(std::min<std::uint64_t>(std::uint64_t{r.y1} + h, U - 1));
    d.rects.push_back(r);
    for (std::size_t k = 1; k < chain; ++k) {
      const Coord sx = (r.x2 - r.x1) / 8, sy = (r.y2 - r.y1) / 8;
      r.x1 += sx ? draw(rng, sx + 1) : 0;
      r.x2 -= sx ? draw(rng, sx + 1) : 0;
      r.y1 += sy ? draw(rng, sy + 1) : 0;
      r.y2 -= sy ? draw(rng, sy + 1) : 0;
      d.rects.push_back(r);
    }
  }
}

void gen_duplicates(Dataset& d, Rng& rng, Coord U) {
  const std::size_t pool = std::max<std::size_t>(2, static_cast<std::size_t>(std::sqrt(double(d.count))));
  std::vector<std::vector<Coord>> values(d.dim, std::vector<Coord>(pool));
  for (auto& axis : values)
    for (auto& v : axis) v = draw(rng, U);
  for (std::size_t i = 0; i < d.count; ++i) {
    PointD p;
    if (i > 0 && rng() % 10 < 3) {
      p = d.points[rng() % i];
    } else {
      p.dim = static_cast<std::uint8_t>(d.dim);
      for (std::size_t a = 0; a < d.dim; ++a) p.c[a] = values[a][rng() % pool];
    }
    p.id = static_cast<PointId>(i);
    d.points.push_back(p);
  }
}

}  // namespace

const char* to_string(Dist d) {
  for (auto [k, name] : kDistNames)
    if (k == d) return name;
  return "?";
}

std::optional<Dist> parse_dist(std::string_view s) {
  for (auto [k, name] : kDistNames)
    if (s == name) return k;
  return std::nullopt;
}

Dataset generate(Dist dist, std::size_t count, std::size_t dim, std::uint64_t seed, Coord universe) {
  require(universe >= 2, "generate: universe must be at least 2");
  Dataset d;
  d.dist = dist;
  d.seed = seed;
  d.count = count;
  d.dim = dist == Dist::NestedRects ? 2 : dim;
  require(d.dim >= 1 && d.dim <= kMaxDim, "generate: dimension out of range");
  Rng rng(seed);
  switch (dist) {
    case Dist::Uniform: gen_uniform(d, rng, universe); break;
    case Dist::Clustered: gen_clustered(d, rng, universe); break;
    case Dist::Antichain: gen_antichain(d, rng, universe); break;
    case Dist::NestedRects: gen_nested(d, rng, universe); break;
    case Dist::AdversarialDuplicates: gen_duplicates(d, rng, universe); break;
  }
  return d;
}

std::vector<PointD> dominance_queries(std::size_t count, std::size_t dim, std::uint64_t seed, double scale,
                                      Coord universe) {
  require(dim >= 1 && dim <= kMaxDim, "dominance_queries: dimension out of range");
  const double f = std::min(1.0, scale * std::pow(double(std::max<std::size_t>(count, 1)), -1.0 / double(dim)));
  const std::uint64_t lim = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(universe * f));
  Rng rng(seed ^ 0x51ED2701A3C4B5D9ull);
  std::vector<PointD> qs(count);
  for (std::size_t i = 0; i < count; ++i) {
    qs[i].dim = static_cast<std::uint8_t>(dim);
    qs[i].id = static_cast<PointId>(i);
    for (std::size_t a = 0; a < dim; ++a) qs[i].c[a] = draw(rng, lim);
  }
  return qs;
}

// ---- files ----

namespace {

constexpr char kMagic[4] = {'O', 'R', 'S', 'P'};

template <class T>
void put_le(std::ostream& os, T v) {
  unsigned char b[sizeof(T)];
  for (std::size_t i = 0; i < sizeof(T); ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), sizeof(T));
}

template <class T>
T get_le(std::istream& is) {
  unsigned char b[sizeof(T)];
  if (!is.read(reinterpret_cast<char*>(b), sizeof(T))) throw FormatError("binary file truncated");
  T v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(b[i]) << (8 * i);
  return v;
}

}  // namespace

void write_points(std::ostream& os, std::span<const PointD> pts, FileFormat f, bool with_ids) {
  if (f == FileFormat::Binary) {
    const std::uint8_t dim = pts.empty() ? 0 : pts[0].dim;
    os.write(kMagic, 4);
    put_le<std::uint8_t>(os, dim);
    put_le<std::uint64_t>(os, pts.size());
    for (const auto& p : pts) {
      require(p.dim == dim, "write_points: mixed dimensions");
      for (std::size_t a = 0; a < dim; ++a) put_le<std::uint32_t>(os, p.c[a]);
    }
    return;
  }
  for (const auto& p : pts) {
    for (std::size_t a = 0; a < p.dim; ++a) {
      if (a) os << ' ';
      os << p.c[a];
    }
    if (with_ids) os << ' ' << p.id;
    os << '\n';
  }
}

std::vector<PointD> read_points(std::istream& is, FileFormat f, std::size_t dim) {
  std::vector<PointD> out;
  if (f == FileFormat::Binary) {
    char magic[4];
    if (!is.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) throw FormatError("bad magic, expected ORSP");
    const auto d = get_le<std::uint8_t>(is);
    const auto n = get_le<std::uint64_t>(is);
    if (d > kMaxDim || (dim && d != dim)) throw FormatError("unexpected dimension " + std::to_string(d));
    out.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(n, 1u << 24)));
    for (std::uint64_t i = 0; i < n; ++i) {
      PointD p;
      p.dim = d;
      p.id = static_cast<PointId>(i);
      for (std::size_t a = 0; a < d; ++a) p.c[a] = get_le<std::uint32_t>(is);
      out.push_back(p);
    }
    return out;
  }
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::uint64_t> vals;
  while (std::getline(is, line)) {
    ++lineno;
    const auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream ls(line);
    vals.clear();
    std::string tok;
    while (ls >> tok) {
      std::size_t used = 0;
      std::uint64_t v = 0;
      try {
        v = std::stoull(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size() || tok[0] == '-' || v > 0xFFFFFFFFull)
        throw FormatError("line " + std::to_string(lineno) + ": bad value '" + tok + "'");
      vals.push_back(v);
    }
    if (dim == 0) dim = vals.size();
    if (dim == 0 || dim > kMaxDim || (vals.size() != dim && vals.size() != dim + 1))
      throw FormatError("line " + std::to_string(lineno) + ": expected " + std::to_string(dim) + " coordinates");
    PointD p;
    p.dim = static_cast<std::uint8_t>(dim);
    for (std::size_t a = 0; a < dim; ++a) p.c[a] = static_cast<Coord>(vals[a]);
    p.id = static_cast<PointId>(vals.size() > dim ? vals[dim] : out.size());
    out.push_back(p);
  }
  return out;
}

void write_rects(std::ostream& os, std::span<const Rect2> rects, FileFormat f) {
  std::vector<PointD> rows;
  rows.reserve(rects.size());
  for (std::size_t i = 0; i < rects.size(); ++i)
    rows.push_back(PointD({rects[i].x1, rects[i].y1, rects[i].x2, rects[i].y2}, static_cast<PointId>(i)));
  write_points(os, rows, f, false);
}

std::vector<Rect2> read_rects(std::istream& is, FileFormat f) {
  const auto rows = read_points(is, f, 4);
  std::vector<Rect2> out;
  out.reserve(rows.size());
  for (const auto& p : rows) {
    if (p[0] > p[2] || p[1] > p[3]) throw FormatError("rectangle with inverted corners");
    out.push_back(Rect2{p[0], p[2], p[1], p[3]});
  }
  return out;
}

}  // namespace ors
