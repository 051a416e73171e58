#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ors/harness.hpp"
#include "ors/offline.hpp"
#include "ors/range2d.hpp"
#include "ors/range3d.hpp"

namespace py = pybind11;
using namespace ors;

namespace {

using Rows = std::vector<std::vector<std::uint32_t>>;

std::vector<PointD> to_points(const Rows& rows) {
  std::vector<PointD> out;
  out.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].empty() || rows[i].size() > kMaxDim) throw py::value_error("point dimension out of range");
    if (!out.empty() && rows[i].size() != out[0].dim) throw py::value_error("points of mixed dimension");
    out.push_back(PointD::of(rows[i], static_cast<PointId>(i)));
  }
  return out;
}

Rows to_rows(const std::vector<PointD>& pts) {
  Rows out;
  for (const auto& p : pts) out.emplace_back(p.c.begin(), p.c.begin() + p.dim);
  return out;
}

std::vector<Rect2> to_rects(const Rows& rows) {
  std::vector<Rect2> out;
  for (const auto& r : rows) {
    if (r.size() != 4 || r[0] > r[2] || r[1] > r[3]) throw py::value_error("rectangles are (x1, y1, x2, y2)");
    out.push_back({r[0], r[2], r[1], r[3]});
  }
  return out;
}

QueryBox box_of(const std::vector<std::uint32_t>& lo, const std::vector<std::uint32_t>& hi) {
  if (lo.size() != hi.size() || lo.empty()) throw py::value_error("lo and hi must have the same dimension");
  return QueryBox::closed(lo, hi);
}

std::vector<PointId> sorted_ids(const std::vector<PointD>& pts) {
  std::vector<PointId> ids;
  for (const auto& p : pts) ids.push_back(p.id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

/// 2-d reporting over arbitrary coordinates; answers are input indexes.
class Range2D {
 public:
  Range2D(const Rows& rows, unsigned B, const std::string& mode) {
    const auto pts = to_points(rows);
    if (!pts.empty() && pts[0].dim != 2) throw py::value_error("range2d needs 2-d points");
    if (mode != "fast-query" && mode != "low-space") throw py::value_error("mode is fast-query or low-space");
    ranked_ = rank_space_reduce(pts, map_);
    st_ = build_2d(ranked_, B, mode == "fast-query" ? SkipMode::FastQuery : SkipMode::LowSpace);
  }
  std::vector<PointId> report(const std::vector<std::uint32_t>& lo, const std::vector<std::uint32_t>& hi) const {
    QueryBox rb;
    if (!map_.to_rank_box(box_of(lo, hi), rb)) return {};
    return sorted_ids(report_2d(st_, rb).points);
  }
  bool empty(const std::vector<std::uint32_t>& lo, const std::vector<std::uint32_t>& hi) const {
    QueryBox rb;
    return !map_.to_rank_box(box_of(lo, hi), rb) || empty_2d(st_, rb);
  }
  std::size_t space_bytes() const { return st_.space_bytes(); }

 private:
  RankSpaceMap map_;
  std::vector<PointD> ranked_;
  RangeReport2D st_;
};

}  // namespace

PYBIND11_MODULE(_orsearch, m) {
  m.doc() = "Orthogonal range searching and offline dominance";

  m.def(
      "generate",
      [](const std::string& dist, std::size_t n, std::size_t dim, std::uint64_t seed) -> py::object {
        const auto d = parse_dist(dist);
        if (!d) throw py::value_error("unknown distribution " + dist);
        const auto data = generate(*d, n, dim, seed);
        if (*d != Dist::NestedRects) return py::cast(to_rows(data.points));
        Rows rows;
        for (const auto& r : data.rects) rows.push_back({r.x1, r.y1, r.x2, r.y2});
        return py::cast(rows);
      },
      py::arg("dist"), py::arg("n"), py::arg("dim") = 2, py::arg("seed") = 0);

  py::class_<Range2D>(m, "Range2D")
      .def(py::init<const Rows&, unsigned, const std::string&>(), py::arg("points"), py::arg("B") = 2,
           py::arg("mode") = "fast-query")
      .def("report", &Range2D::report, py::arg("lo"), py::arg("hi"))
      .def("empty", &Range2D::empty, py::arg("lo"), py::arg("hi"))
      .def_property_readonly("space_bytes", &Range2D::space_bytes);

  m.def(
      "range_report",
      [](const Rows& rows, const std::vector<std::uint32_t>& lo, const std::vector<std::uint32_t>& hi) {
        const auto pts = to_points(rows);
        if (pts.empty()) return std::vector<PointId>{};
        if (pts[0].dim == 3) return sorted_ids(Range3D(pts, Shape3D::SixSided).query(box_of(lo, hi)));
        if (pts[0].dim >= 4) return sorted_ids(RangeKD(pts).query(box_of(lo, hi)));
        return oracle::range_report(pts, box_of(lo, hi));
      },
      py::arg("points"), py::arg("lo"), py::arg("hi"));

  m.def(
      "dominance_pairs",
      [](const Rows& inputs, const Rows& queries, std::uint64_t seed) {
        OfflineOptions opt;
        opt.seed = seed;
        auto pairs = offline_dominance(OfflineInstance::make(to_points(inputs), to_points(queries)), opt);
        std::sort(pairs.begin(), pairs.end());
        return pairs;
      },
      py::arg("inputs"), py::arg("queries"), py::arg("seed") = 0);

  m.def(
      "maxima", [](const Rows& rows) { return maxima(to_points(rows)); }, py::arg("points"));
  m.def(
      "rectangle_enclosure", [](const Rows& rects) { return rectangle_enclosure(to_rects(rects)); },
      py::arg("rects"));

  m.def(
      "verify",
      [](const std::string& config) {
        const auto rep = run_verify(parse_verify_config(config));
        return py::make_tuple(rep.ok(), rep.to_json());
      },
      py::arg("config") = "");
  m.def(
      "bench",
      [](const std::string& config) {
        std::ostringstream os;
        write_bench_csv(os, run_bench(parse_bench_config(config)));
        return os.str();
      },
      py::arg("config") = "");

  py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
}
