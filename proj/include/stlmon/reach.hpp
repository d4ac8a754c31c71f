#pragma once

#include <vector>

#include "stlmon/gridset.hpp"
#include "stlmon/system.hpp"

namespace stlmon {

enum class CellSampleScheme { Center, CornersAndCenter };

/* Knobs for the sampled one-step computation: how densely the control set
 * is scanned, which points of a cell stand in for the whole cell, and an
 * optional inflation margin applied to every image. */
struct ReachConfig {
  std::vector<int> control_samples;  // per control dimension, >= 2 each
  CellSampleScheme scheme = CellSampleScheme::CornersAndCenter;
  double epsilon = 0.0;  // state units, >= 0
};

/* Evenly spaced lattice over the control box, endpoints included, one count
 * per dimension. Dimension 0 varies slowest. */
std::vector<Point> control_lattice(const Box& control_bounds,
                                   const std::vector<int>& samples);

/* Sampled H-one-step set: cells of `mask` from which a single sampled
 * control maps every cell sample point into a true cell of `target`, images
 * staying within the grid. With epsilon > 0 the box of half-width epsilon
 * around each image must lie in true cells as well. */
GridSet one_step_set(const GridSet& target, const GridSet& mask,
                     const SystemModel& model, const ReachConfig& cfg);

/* j-fold application of one_step_set with a fixed mask. */
GridSet iterated_one_step(const GridSet& target, const GridSet& mask, int j,
                          const SystemModel& model, const ReachConfig& cfg);

}  // namespace stlmon
