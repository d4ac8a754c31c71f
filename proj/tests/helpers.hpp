#pragma once

#include <cmath>
#include <memory>
#include <random>
#include <string>

#include "stlmon/feasible.hpp"
#include "stlmon/formula.hpp"
#include "stlmon/parser.hpp"
#include "stlmon/system.hpp"

namespace stlmon::testing {

inline SystemModel case1_model() {
  return load_system(R"({
    "name": "case1", "dim": 1, "control_dim": 1,
    "state_bounds": [[0, 5]], "control_bounds": [[-1, 1]],
    "dynamics": {"kind": "poly1d", "coeffs": [0, 0.16, 0.2]}
  })");
}

inline SystemModel case2_model() {
  return load_system(R"({
    "name": "case2", "dim": 2, "control_dim": 2,
    "state_bounds": [[0, 10], [0, 6]], "control_bounds": [[-1, 1], [-1, 1]],
    "dynamics": {"kind": "affine", "A": [[1, 0], [0, 1]], "B": [[0.9, 0], [0, 0.8]]}
  })");
}

inline const char* case1_formula_text() {
  return "(x1 in [0,4]) U[1,3] (x1 in [3,5]) & F[6,9] (x1 in [1,3]) & G[12,15] (x1 in [0,1])";
}

inline const char* case2_formula_text() {
  return "F[0,3] (x1 in [1,3] & x2 in [2,4]) & F[4,6] (x1 in [4,6] & x2 in [4,6]) & "
         "G[8,10] (x1 in [7,9] & x2 in [1,3])";
}

/* Case I truncated to horizon 4: the coarse instance used for matched-
 * discretization oracle checks. */
inline const char* coarse_formula_text() {
  return "F[0,2] (x1 in [1,3]) & G[3,4] (x1 in [0,1])";
}

inline SegmentedFormula segmented(const SystemModel& model, const char* text) {
  return segment(rewrite_until(parse_formula(text, model.state_dim)), model.state_bounds);
}

inline GeometryPtr make_geometry(const SystemModel& model, std::vector<int> cells) {
  return std::make_shared<GridGeometry>(model.state_bounds, std::move(cells));
}

/* Solve 0.2 x^2 + 0.16 x = c for the positive root: the closed-form oracle
 * for Case I one-step endpoints. */
inline double case1_root(double c) {
  return (-0.16 + std::sqrt(0.0256 + 0.8 * c)) / 0.4;
}

/* Uniform double helper with inclusive bounds. */
inline double uniform(std::mt19937& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(std::mt19937& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

}  // namespace stlmon::testing
