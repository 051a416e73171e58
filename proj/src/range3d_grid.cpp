#include <algorithm>
#include <cmath>

#include "range3d_internal.hpp"

namespace ors::detail {

BaseTree::BaseTree(const View3& v, std::vector<std::uint32_t> idx) : view_(v), m_(idx.size()) {
  std::sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) { return view_.get(a, 0) < view_.get(b, 0); });
  L_ = ceil_log2(std::max<std::size_t>(m_, 1));
  const std::size_t N = std::size_t{1} << L_;
  idx.resize(N, kPad);
  lvl_.resize(L_ + 1);
  rmq_.resize(L_ + 1);
  lvl_[0] = std::move(idx);
  std::vector<std::uint32_t> keys(N);
  for (unsigned l = 1; l <= L_; ++l) {
    const std::size_t S = std::size_t{1} << l, H = S / 2;
    auto& cur = lvl_[l];
    cur.resize(N);
    const auto& prev = lvl_[l - 1];
    for (std::size_t s = 0; s < N; s += S) {
      std::merge(prev.begin() + s, prev.begin() + s + H, prev.begin() + s + H, prev.begin() + s + S, cur.begin() + s,
                 [&](std::uint32_t a, std::uint32_t b) { return y_key(a) < y_key(b); });
    }
    for (std::size_t p = 0; p < N; ++p) keys[p] = z_of(cur[p]);
    rmq_[l] = RMQIndex(keys, S, std::vector<bool>(N / S, false));
  }
}

template <class F>
void BaseTree::blocks(const Box3& box, F&& f) const {
  const auto& xs = lvl_[0];
  auto xa = std::partition_point(xs.begin(), xs.begin() + m_, [&](std::uint32_t i) { return view_.get(i, 0) < box.lo[0]; });
  auto xb = std::partition_point(xa, xs.begin() + m_, [&](std::uint32_t i) { return view_.get(i, 0) <= box.hi[0]; });
  std::size_t a = xa - xs.begin(), b = xb - xs.begin();
  for (unsigned l = 0; a < b; ++l, a >>= 1, b >>= 1) {
    if (a & 1) f(l, a++);
    if (b & 1) f(l, --b);
  }
}

void BaseTree::query(const Box3& box, const Sink& sink) const {
  require(box.lo[2] == 0, "BaseTree: z must be unbounded below");
  if (sink.stats) ++sink.stats->base_queries;
  std::vector<std::pair<std::size_t, std::size_t>> stack;
  blocks(box, [&](unsigned l, std::size_t j) {
    if (l == 0) {
      const std::uint32_t i = lvl_[0][j];
      const std::uint32_t y = y_of(i);
      if (y >= box.lo[1] && y <= box.hi[1] && z_of(i) <= box.hi[2]) sink.emit(i);
      return;
    }
    const std::size_t S = std::size_t{1} << l, seg = j * S;
    const auto& lst = lvl_[l];
    auto ya = std::partition_point(lst.begin() + seg, lst.begin() + seg + S, [&](std::uint32_t i) { return y_of(i) < box.lo[1]; });
    auto yb = std::partition_point(ya, lst.begin() + seg + S, [&](std::uint32_t i) { return i != kPad && y_of(i) <= box.hi[1]; });
    if (ya >= yb) return;
    stack.clear();
    stack.emplace_back(ya - lst.begin(), yb - lst.begin() - 1);
    while (!stack.empty()) {
      auto [p, q] = stack.back();
      stack.pop_back();
      const std::size_t m = p == q ? p : rmq_[l].query(p, q);
      const std::uint32_t i = lst[m];
      if (z_of(i) > box.hi[2]) continue;
      sink.emit(i);
      if (m < q) stack.emplace_back(m + 1, q);
      if (m > p) stack.emplace_back(p, m - 1);
    }
  });
}

std::uint32_t BaseTree::min_in(const Box3& box) const {
  std::uint32_t best = kPad;
  auto better = [&](std::uint32_t i) { return best == kPad || z_of(i) < z_of(best); };
  blocks(box, [&](unsigned l, std::size_t j) {
    if (l == 0) {
      const std::uint32_t i = lvl_[0][j];
      const std::uint32_t y = y_of(i);
      if (y >= box.lo[1] && y <= box.hi[1] && better(i)) best = i;
      return;
    }
    const std::size_t S = std::size_t{1} << l, seg = j * S;
    const auto& lst = lvl_[l];
    auto ya = std::partition_point(lst.begin() + seg, lst.begin() + seg + S, [&](std::uint32_t i) { return y_of(i) < box.lo[1]; });
    auto yb = std::partition_point(ya, lst.begin() + seg + S, [&](std::uint32_t i) { return i != kPad && y_of(i) <= box.hi[1]; });
    if (ya >= yb) return;
    const std::size_t p = ya - lst.begin(), q = yb - lst.begin() - 1;
    const std::uint32_t i = lst[p == q ? p : rmq_[l].query(p, q)];
    if (better(i)) best = i;
  });
  return best;
}

std::size_t BaseTree::bytes() const {
  std::size_t b = sizeof(*this);
  for (const auto& l : lvl_) b += l.size() * sizeof(std::uint32_t);
  for (const auto& r : rmq_) b += r.bit_size() / 8;
  return b;
}

// ---------------------------------------------------------------------------

unsigned rounds_for(double eps) {
  require(eps > 0 && eps <= 1, "range3d: eps must be in (0, 1]");
  return static_cast<unsigned>(std::ceil(1.0 / eps - 1e-9));
}

GridShape grid_shape(std::size_t n, unsigned round, const GridConfig& cfg) {
  const double lgn = std::max(1.0, std::log2(static_cast<double>(std::max<std::size_t>(n, 2))));
  const double lgt = std::ceil(std::pow(lgn, round / (round + 1.0)));
  GridShape s;
  s.t = std::max<std::size_t>(2, std::size_t{1} << static_cast<unsigned>(std::min(lgt, 30.0)));
  s.C = std::max<std::size_t>(cfg.c_min, static_cast<std::size_t>(std::ceil(std::pow(lgn, cfg.c_exponent))));
  return s;
}

namespace {

View3 compose(const View3& v, std::array<std::uint8_t, 3> p, std::array<bool, 3> f) {
  View3 r = v;
  for (int a = 0; a < 3; ++a) {
    r.perm[a] = v.perm[p[a]];
    r.flip[a] = v.flip[p[a]] ^ f[a];
  }
  return r;
}

}  // namespace

std::unique_ptr<Reporter3> make_reporter(const View3& v, std::vector<std::uint32_t> idx, GridKind kind,
                                         unsigned round, const GridConfig& cfg) {
  if (round == 0) return std::make_unique<BaseTree>(v, std::move(idx));
  return std::make_unique<Grid>(v, std::move(idx), kind, round, cfg);
}

Grid::Grid(const View3& v, std::vector<std::uint32_t> idx, GridKind kind, unsigned round, const GridConfig& cfg)
    : view_(v), kind_(kind), m_(idx.size()) {
  const GridShape shape = grid_shape(cfg.n_top, round, cfg);
  if (m_ <= shape.C * shape.t) {
    base_ = std::make_unique<BaseTree>(v, std::move(idx));
    return;
  }
  struct Loc {
    std::uint32_t i, col, row;
  };
  std::sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) { return view_.get(a, 0) < view_.get(b, 0); });
  const std::size_t colsize = (m_ + shape.t - 1) / shape.t;
  const std::size_t ncol = (m_ + colsize - 1) / colsize;
  std::vector<Loc> loc(m_);
  for (std::size_t p = 0; p < m_; ++p) loc[p] = Loc{idx[p], static_cast<std::uint32_t>(p / colsize), 0};
  for (std::size_t c = 0; c < ncol; ++c) {
    col_first_x_.push_back(view_.get(idx[c * colsize], 0));
    col_last_x_.push_back(view_.get(idx[std::min(m_, (c + 1) * colsize) - 1], 0));
  }
  // Recursive structure per column, plus the column's side structures.
  GridConfig side_cfg = cfg;
  for (std::size_t c = 0; c < ncol; ++c) {
    std::vector<std::uint32_t> col(idx.begin() + c * colsize, idx.begin() + std::min(m_, (c + 1) * colsize));
    if (kind == GridKind::Four) {
      col_side_.push_back(std::make_unique<BaseTree>(v, col));
    } else {
      side_cfg.n_top = col.size();
      col_left_.push_back(std::make_unique<Grid>(compose(v, {1, 0, 2}, {false, true, false}), col, GridKind::Four, round, side_cfg));
      col_right_.push_back(std::make_unique<Grid>(compose(v, {1, 0, 2}, {false, false, false}), col, GridKind::Four, round, side_cfg));
    }
    children_.push_back(std::make_unique<Grid>(v, std::move(col), kind, round, cfg));
  }

  std::sort(loc.begin(), loc.end(), [&](const Loc& a, const Loc& b) { return view_.get(a.i, 1) < view_.get(b.i, 1); });
  const std::size_t rowsize = shape.C * shape.t;
  const std::size_t nrow = (m_ + rowsize - 1) / rowsize;
  GridConfig row_cfg = cfg;
  row_cfg.n_top = rowsize;
  for (std::size_t r = 0; r < nrow; ++r) {
    const std::size_t b = r * rowsize, e = std::min(m_, b + rowsize);
    row_first_y_.push_back(view_.get(loc[b].i, 1));
    row_last_y_.push_back(view_.get(loc[e - 1].i, 1));
    std::vector<std::uint32_t> row;
    for (std::size_t p = b; p < e; ++p) {
      loc[p].row = static_cast<std::uint32_t>(r);
      row.push_back(loc[p].i);
    }
    rows_.push_back(make_reporter(v, std::move(row), kind, round - 1, row_cfg));
  }

  // Cells in (row, col) order, each z-sorted; G keeps the z-lowest point per cell.
  std::sort(loc.begin(), loc.end(), [&](const Loc& a, const Loc& b) {
    if (a.row != b.row) return a.row < b.row;
    if (a.col != b.col) return a.col < b.col;
    return view_.get(a.i, 2) < view_.get(b.i, 2);
  });
  cell_off_.assign(nrow * ncol + 1, 0);
  cell_pts_.resize(m_);
  std::vector<std::uint32_t> gpts;
  for (std::size_t p = 0; p < m_; ++p) {
    const std::size_t cell = loc[p].row * ncol + loc[p].col;
    ++cell_off_[cell + 1];
    cell_pts_[p] = loc[p].i;
    if (p == 0 || loc[p - 1].row != loc[p].row || loc[p - 1].col != loc[p].col) gpts.push_back(loc[p].i);
  }
  for (std::size_t c = 0; c < nrow * ncol; ++c) cell_off_[c + 1] += cell_off_[c];
  g_ = std::make_unique<BaseTree>(v, std::move(gpts));
}

void Grid::query(const Box3& box, const Sink& sink) const {
  require(box.lo[2] == 0, "Grid: z must be unbounded below");
  require(kind_ == GridKind::Five || box.lo[1] == 0, "Grid: y must be unbounded below");
  if (base_) {
    base_->query(box, sink);
    return;
  }
  if (sink.stats) ++sink.stats->grid_nodes;
  const std::size_t ncol = col_first_x_.size(), nrow = row_first_y_.size();
  const std::size_t colL = std::lower_bound(col_last_x_.begin(), col_last_x_.end(), box.lo[0]) - col_last_x_.begin();
  const std::size_t colR_end = std::upper_bound(col_first_x_.begin(), col_first_x_.end(), box.hi[0]) - col_first_x_.begin();
  if (colL >= ncol || colR_end == 0 || colL >= colR_end) return;
  const std::size_t colR = colR_end - 1;
  if (colL == colR) {
    children_[colL]->query(box, sink);
    return;
  }
  auto row_of_value = [&](std::uint32_t y) {
    return static_cast<std::size_t>(std::lower_bound(row_last_y_.begin(), row_last_y_.end(), y) - row_last_y_.begin());
  };
  const std::size_t iT = std::min(row_of_value(box.hi[1]), nrow - 1);
  std::size_t mid_lo = 0;
  auto tagged = [&](std::uint8_t t) {
    Sink s = sink;
    if (s.tag == 0) s.tag = t;
    return s;
  };
  auto count = [&](std::uint8_t t, std::size_t before) {
    if (sink.stats && sink.tag == 0) sink.stats->region[t] += sink.out->size() - before;
  };
  std::size_t before = sink.out->size();
  if (kind_ == GridKind::Five) {
    const std::size_t iB = row_of_value(box.lo[1]);
    if (iB >= nrow) return;
    if (iB == iT) {
      rows_[iT]->query(box, tagged(1));
      count(1, before);
      return;
    }
    rows_[iB]->query(box, tagged(2));
    count(2, before);
    mid_lo = iB + 1;
  }
  before = sink.out->size();
  rows_[iT]->query(box, tagged(1));
  count(1, before);
  if (iT == 0 || mid_lo > iT - 1) return;
  const std::size_t mid_hi = iT - 1;
  const std::uint32_t ylo = kind_ == GridKind::Five ? row_first_y_[mid_lo] : 0;
  const std::uint32_t yhi = row_last_y_[mid_hi];

  before = sink.out->size();
  if (kind_ == GridKind::Four) {
    col_side_[colL]->query(Box3{{box.lo[0], ylo, 0}, {kTop, yhi, box.hi[2]}}, tagged(3));
  } else {
    col_left_[colL]->query(Box3{{ylo, 0, 0}, {yhi, ~box.lo[0], box.hi[2]}}, tagged(3));
  }
  count(3, before);
  before = sink.out->size();
  if (kind_ == GridKind::Four) {
    col_side_[colR]->query(Box3{{0, ylo, 0}, {box.hi[0], yhi, box.hi[2]}}, tagged(4));
  } else {
    col_right_[colR]->query(Box3{{ylo, 0, 0}, {yhi, box.hi[0], box.hi[2]}}, tagged(4));
  }
  count(4, before);
  if (colL + 1 > colR - 1) return;

  before = sink.out->size();
  std::vector<std::uint32_t> hits;
  Sink gs{&hits, nullptr, 0, nullptr};
  g_->query(Box3{{col_first_x_[colL + 1], ylo, 0}, {col_last_x_[colR - 1], yhi, box.hi[2]}}, gs);
  const Sink is = tagged(5);
  for (std::uint32_t g : hits) {
    const std::size_t col = std::upper_bound(col_first_x_.begin(), col_first_x_.end(), view_.get(g, 0)) - col_first_x_.begin() - 1;
    const std::size_t row = std::upper_bound(row_first_y_.begin(), row_first_y_.end(), view_.get(g, 1)) - row_first_y_.begin() - 1;
    const std::size_t cell = row * ncol + col;
    if (sink.stats) ++sink.stats->g_points;
    for (std::size_t p = cell_off_[cell]; p < cell_off_[cell + 1]; ++p) {
      if (sink.stats) ++sink.stats->cell_scans;
      if (view_.get(cell_pts_[p], 2) > box.hi[2]) break;
      is.emit(cell_pts_[p]);
    }
  }
  count(5, before);
}

std::size_t Grid::bytes() const {
  std::size_t b = sizeof(*this);
  if (base_) return b + base_->bytes();
  b += (col_first_x_.size() + col_last_x_.size() + row_first_y_.size() + row_last_y_.size()) * 4;
  b += (cell_off_.size() + cell_pts_.size()) * 4;
  for (const auto& c : children_) b += c->bytes();
  for (const auto& r : rows_) b += r->bytes();
  for (const auto& c : col_side_) b += c->bytes();
  for (const auto& c : col_left_) b += c->bytes();
  for (const auto& c : col_right_) b += c->bytes();
  if (g_) b += g_->bytes();
  return b;
}

}  // namespace ors::detail
