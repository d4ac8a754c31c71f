#include "stlmon/reach.hpp"

#include <stdexcept>

namespace stlmon {

std::vector<Point> control_lattice(const Box& control_bounds,
                                   const std::vector<int>& samples) {
  const int m = control_bounds.dim();
  if (static_cast<int>(samples.size()) != m) {
    throw std::invalid_argument("control lattice: sample counts do not match control dimension");
  }
  for (int s : samples) {
    if (s < 2) throw std::invalid_argument("control lattice: need at least 2 samples per dimension");
  }
  size_t total = 1;
  for (int s : samples) total *= static_cast<size_t>(s);

  std::vector<Point> lattice;
  lattice.reserve(total);
  std::vector<int> idx(static_cast<size_t>(m), 0);
  for (size_t n = 0; n < total; ++n) {
    Point u(static_cast<size_t>(m));
    for (int d = 0; d < m; ++d) {
      const Interval& iv = control_bounds.dims[d];
      u[static_cast<size_t>(d)] =
          iv.lo + (iv.hi - iv.lo) * static_cast<double>(idx[static_cast<size_t>(d)]) /
                      static_cast<double>(samples[d] - 1);
    }
    lattice.push_back(std::move(u));
    for (int d = m - 1; d >= 0; --d) {
      if (++idx[static_cast<size_t>(d)] < samples[d]) break;
      idx[static_cast<size_t>(d)] = 0;
    }
  }
  return lattice;
}

namespace {

/* Image test for one sample point: the image cell (or the epsilon box of
 * cells) must exist and be true in the target. */
bool image_ok(const GridSet& target, const GridGeometry& geo,
              std::span<const double> img, double epsilon) {
  if (epsilon <= 0.0) {
    std::optional<size_t> cell = geo.locate(img);
    return cell && target.test(*cell);
  }
  const int n = geo.dim();
  for (int d = 0; d < n; ++d) {
    if (img[d] - epsilon < geo.bounds.dims[d].lo || img[d] + epsilon > geo.bounds.dims[d].hi) {
      return false;
    }
  }
  Point lo_pt(static_cast<size_t>(n)), hi_pt(static_cast<size_t>(n));
  for (int d = 0; d < n; ++d) {
    lo_pt[static_cast<size_t>(d)] = img[d] - epsilon;
    hi_pt[static_cast<size_t>(d)] = img[d] + epsilon;
  }
  std::vector<int> lo_coords = geo.coords(*geo.locate(lo_pt));
  std::vector<int> hi_coords = geo.coords(*geo.locate(hi_pt));
  // walk the box of cells between the two corners
  std::vector<int> cur = lo_coords;
  while (true) {
    if (!target.test(geo.index(cur))) return false;
    int d = n - 1;
    for (; d >= 0; --d) {
      if (++cur[static_cast<size_t>(d)] <= hi_coords[static_cast<size_t>(d)]) break;
      cur[static_cast<size_t>(d)] = lo_coords[static_cast<size_t>(d)];
    }
    if (d < 0) break;
  }
  return true;
}

}  // namespace

GridSet one_step_set(const GridSet& target, const GridSet& mask,
                     const SystemModel& model, const ReachConfig& cfg) {
  if (!(*target.geometry() == *mask.geometry())) {
    throw std::invalid_argument("one_step_set: target/mask geometry mismatch");
  }
  const GridGeometry& geo = *target.geometry();
  if (geo.dim() != model.state_dim || !(geo.bounds == model.state_bounds)) {
    throw std::invalid_argument("one_step_set: grid does not cover the model state box");
  }
  if (cfg.epsilon < 0.0) throw std::invalid_argument("one_step_set: negative epsilon");

  const std::vector<Point> lattice = control_lattice(model.control_bounds, cfg.control_samples);

  GridSet out(target.geometry());
  Point img(static_cast<size_t>(geo.dim()));
  std::vector<Point> samples;
  for (size_t cell = 0; cell < out.size(); ++cell) {
    if (!mask.test(cell)) continue;

    samples.clear();
    if (cfg.scheme == CellSampleScheme::CornersAndCenter) {
      samples = geo.cell_corners(cell);
    }
    samples.push_back(geo.cell_center(cell));

    bool feasible = false;
    for (const Point& u : lattice) {
      bool all_ok = true;
      for (const Point& p : samples) {
        step_dynamics_into(model, p, u, img);
        if (!image_ok(target, geo, img, cfg.epsilon)) {
          all_ok = false;
          break;
        }
      }
      if (all_ok) {
        feasible = true;
        break;
      }
    }
    out.set(cell, feasible);
  }
  return out;
}

GridSet iterated_one_step(const GridSet& target, const GridSet& mask, int j,
                          const SystemModel& model, const ReachConfig& cfg) {
  if (j < 1) throw std::invalid_argument("iterated_one_step: j must be >= 1");
  GridSet current = one_step_set(target, mask, model, cfg);
  for (int i = 1; i < j; ++i) {
    current = one_step_set(current, mask, model, cfg);
  }
  return current;
}

}  // namespace stlmon
