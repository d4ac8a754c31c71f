#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "stlmon/region.hpp"

namespace stlmon {

/* Uniform Cartesian grid over a bounding box. Cells are half-open
 * [edge_i, edge_{i+1}) per dimension, with the last cell closed, so every
 * in-bounds point belongs to exactly one cell. */
struct GridGeometry {
  Box bounds;
  std::vector<int> cells;  // per-dimension cell counts, all >= 1

  GridGeometry(Box b, std::vector<int> counts);

  int dim() const { return static_cast<int>(cells.size()); }
  size_t cell_count() const { return total_; }

  /* i-th cell boundary along dimension d: lo + (hi-lo)*i/count. Exact for
   * boundaries representable in binary, which keeps aligned region edges
   * classified consistently. */
  double edge(int d, int i) const;
  double width(int d) const { return (bounds.dims[d].hi - bounds.dims[d].lo) / cells[d]; }

  /* Cell containing x, or nullopt when x leaves the bounds. Points on an
   * interior boundary belong to the higher-index cell. */
  std::optional<size_t> locate(std::span<const double> x) const;

  std::vector<int> coords(size_t index) const;
  size_t index(std::span<const int> coords) const;
  Point cell_center(size_t index) const;
  /* All 2^dim cell corners. */
  std::vector<Point> cell_corners(size_t index) const;

  bool operator==(const GridGeometry& o) const {
    return bounds == o.bounds && cells == o.cells;
  }

 private:
  size_t total_ = 1;
};

using GeometryPtr = std::shared_ptr<const GridGeometry>;

enum class RasterMode { Inner, Outer };

/* Boolean occupancy mask over a grid; immutable value semantics. Two sets
 * combine only when their geometries compare equal. */
class GridSet {
 public:
  GridSet() = default;
  explicit GridSet(GeometryPtr geometry, bool fill = false);

  const GeometryPtr& geometry() const { return geometry_; }
  size_t size() const { return mask_.size(); }

  bool test(size_t cell) const { return mask_[cell]; }
  void set(size_t cell, bool value) { mask_[cell] = value; }

  /* False when x is outside the grid bounds, otherwise the occupancy of the
   * cell containing x. */
  bool member(std::span<const double> x) const;

  bool is_empty() const;
  size_t count() const;

  bool operator==(const GridSet& o) const;

  const std::vector<bool>& mask() const { return mask_; }
  std::vector<bool>& mask() { return mask_; }

 private:
  GeometryPtr geometry_;
  std::vector<bool> mask_;
};

GridSet set_union(const GridSet& a, const GridSet& b);
GridSet set_intersect(const GridSet& a, const GridSet& b);
GridSet set_difference(const GridSet& a, const GridSet& b);
bool set_subset(const GridSet& a, const GridSet& b);

/* Mark cells covered by a region. Inner mode marks a cell when its closure
 * lies inside the region; outer mode when it intersects the region. Both
 * are computed recursively: negation flips the mode, conjunction intersects
 * cellwise, disjunction unions cellwise. */
GridSet rasterize(const Region& region, GeometryPtr geometry, RasterMode mode);

/* Maximal runs of true cells as value intervals; 1-D grids only. */
std::vector<Interval> true_intervals_1d(const GridSet& s);

}  // namespace stlmon
