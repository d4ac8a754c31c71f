#include "stlmon/gridset.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stlmon {

GridGeometry::GridGeometry(Box b, std::vector<int> counts)
    : bounds(std::move(b)), cells(std::move(counts)) {
  if (bounds.dim() == 0 || bounds.dim() != static_cast<int>(cells.size())) {
    throw std::invalid_argument("grid geometry: bounds/cell-count dimension mismatch");
  }
  for (int d = 0; d < dim(); ++d) {
    if (cells[d] < 1) throw std::invalid_argument("grid geometry: cell counts must be >= 1");
    if (!(bounds.dims[d].hi > bounds.dims[d].lo)) {
      throw std::invalid_argument("grid geometry: degenerate bounds");
    }
    total_ *= static_cast<size_t>(cells[d]);
  }
}

double GridGeometry::edge(int d, int i) const {
  const Interval& iv = bounds.dims[d];
  if (i <= 0) return iv.lo;
  if (i >= cells[d]) return iv.hi;
  return iv.lo + ((iv.hi - iv.lo) * static_cast<double>(i)) / static_cast<double>(cells[d]);
}

std::optional<size_t> GridGeometry::locate(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim()) {
    throw std::invalid_argument("grid locate: dimension mismatch");
  }
  size_t idx = 0;
  for (int d = 0; d < dim(); ++d) {
    const Interval& iv = bounds.dims[d];
    if (x[d] < iv.lo || x[d] > iv.hi) return std::nullopt;
    int i = static_cast<int>(std::floor((x[d] - iv.lo) / (iv.hi - iv.lo) *
                                        static_cast<double>(cells[d])));
    i = std::clamp(i, 0, cells[d] - 1);
    // The floor guess can be off by one near exact boundaries; fix against
    // the canonical edge values.
    while (i < cells[d] - 1 && x[d] >= edge(d, i + 1)) ++i;
    while (i > 0 && x[d] < edge(d, i)) --i;
    idx = idx * static_cast<size_t>(cells[d]) + static_cast<size_t>(i);
  }
  return idx;
}

std::vector<int> GridGeometry::coords(size_t index) const {
  std::vector<int> c(static_cast<size_t>(dim()));
  for (int d = dim() - 1; d >= 0; --d) {
    c[static_cast<size_t>(d)] = static_cast<int>(index % static_cast<size_t>(cells[d]));
    index /= static_cast<size_t>(cells[d]);
  }
  return c;
}

size_t GridGeometry::index(std::span<const int> coords) const {
  size_t idx = 0;
  for (int d = 0; d < dim(); ++d) {
    idx = idx * static_cast<size_t>(cells[d]) + static_cast<size_t>(coords[d]);
  }
  return idx;
}

Point GridGeometry::cell_center(size_t index) const {
  std::vector<int> c = coords(index);
  Point p(static_cast<size_t>(dim()));
  for (int d = 0; d < dim(); ++d) {
    p[static_cast<size_t>(d)] = 0.5 * (edge(d, c[static_cast<size_t>(d)]) +
                                       edge(d, c[static_cast<size_t>(d)] + 1));
  }
  return p;
}

std::vector<Point> GridGeometry::cell_corners(size_t index) const {
  std::vector<int> c = coords(index);
  std::vector<Point> corners;
  const int n = dim();
  corners.reserve(static_cast<size_t>(1) << n);
  for (size_t bits = 0; bits < (static_cast<size_t>(1) << n); ++bits) {
    Point p(static_cast<size_t>(n));
    for (int d = 0; d < n; ++d) {
      int i = c[static_cast<size_t>(d)] + (((bits >> d) & 1) ? 1 : 0);
      p[static_cast<size_t>(d)] = edge(d, i);
    }
    corners.push_back(std::move(p));
  }
  return corners;
}

GridSet::GridSet(GeometryPtr geometry, bool fill)
    : geometry_(std::move(geometry)), mask_(geometry_->cell_count(), fill) {}

bool GridSet::member(std::span<const double> x) const {
  std::optional<size_t> cell = geometry_->locate(x);
  return cell && mask_[*cell];
}

bool GridSet::is_empty() const {
  return std::none_of(mask_.begin(), mask_.end(), [](bool b) { return b; });
}

size_t GridSet::count() const {
  return static_cast<size_t>(std::count(mask_.begin(), mask_.end(), true));
}

bool GridSet::operator==(const GridSet& o) const {
  return *geometry_ == *o.geometry_ && mask_ == o.mask_;
}

namespace {

void check_same_geometry(const GridSet& a, const GridSet& b) {
  if (!a.geometry() || !b.geometry() || !(*a.geometry() == *b.geometry())) {
    throw std::invalid_argument("grid set operation: geometry mismatch");
  }
}

}  // namespace

GridSet set_union(const GridSet& a, const GridSet& b) {
  check_same_geometry(a, b);
  GridSet out = a;
  for (size_t i = 0; i < out.size(); ++i) out.set(i, a.test(i) || b.test(i));
  return out;
}

GridSet set_intersect(const GridSet& a, const GridSet& b) {
  check_same_geometry(a, b);
  GridSet out = a;
  for (size_t i = 0; i < out.size(); ++i) out.set(i, a.test(i) && b.test(i));
  return out;
}

GridSet set_difference(const GridSet& a, const GridSet& b) {
  check_same_geometry(a, b);
  GridSet out = a;
  for (size_t i = 0; i < out.size(); ++i) out.set(i, a.test(i) && !b.test(i));
  return out;
}

bool set_subset(const GridSet& a, const GridSet& b) {
  check_same_geometry(a, b);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a.test(i) && !b.test(i)) return false;
  }
  return true;
}

namespace {

RasterMode flip(RasterMode mode) {
  return mode == RasterMode::Inner ? RasterMode::Outer : RasterMode::Inner;
}

bool cell_in_region(const Region& region, const GridGeometry& geo,
                    std::span<const int> coords, RasterMode mode) {
  switch (region.kind()) {
    case Region::Kind::True:
      return true;
    case Region::Kind::AxisInterval: {
      const int d = region.axis();
      const double lo = geo.edge(d, coords[d]);
      const double hi = geo.edge(d, coords[d] + 1);
      if (mode == RasterMode::Inner) {
        return lo >= region.interval().lo && hi <= region.interval().hi;
      }
      // overlap of positive width, so aligned regions rasterize identically
      // in both modes
      return lo < region.interval().hi && hi > region.interval().lo;
    }
    case Region::Kind::Not:
      return !cell_in_region(region.child(0), geo, coords, flip(mode));
    case Region::Kind::And:
      return cell_in_region(region.child(0), geo, coords, mode) &&
             cell_in_region(region.child(1), geo, coords, mode);
    case Region::Kind::Or:
      return cell_in_region(region.child(0), geo, coords, mode) ||
             cell_in_region(region.child(1), geo, coords, mode);
  }
  return false;
}

}  // namespace

GridSet rasterize(const Region& region, GeometryPtr geometry, RasterMode mode) {
  if (region.max_axis() >= geometry->dim()) {
    throw std::invalid_argument("rasterize: region references a dimension beyond the grid");
  }
  GridSet out(geometry);
  for (size_t i = 0; i < out.size(); ++i) {
    std::vector<int> c = geometry->coords(i);
    out.set(i, cell_in_region(region, *geometry, c, mode));
  }
  return out;
}

std::vector<Interval> true_intervals_1d(const GridSet& s) {
  const GridGeometry& geo = *s.geometry();
  if (geo.dim() != 1) {
    throw std::invalid_argument("true_intervals_1d: grid is not one-dimensional");
  }
  std::vector<Interval> runs;
  size_t i = 0;
  while (i < s.size()) {
    if (!s.test(i)) {
      ++i;
      continue;
    }
    size_t begin = i;
    while (i < s.size() && s.test(i)) ++i;
    runs.push_back({geo.edge(0, static_cast<int>(begin)), geo.edge(0, static_cast<int>(i))});
  }
  return runs;
}

}  // namespace stlmon
