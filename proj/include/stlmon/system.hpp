#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "stlmon/region.hpp"

namespace stlmon {

enum class DynamicsKind { Affine, Poly1d, Builtin };

/* Discrete-time controlled system x' = f(x, u) with box bounds on states
 * and controls. Immutable after construction. */
struct SystemModel {
  std::string name;
  int state_dim = 0;
  int control_dim = 0;
  Box state_bounds;
  Box control_bounds;

  DynamicsKind kind = DynamicsKind::Affine;
  std::vector<std::vector<double>> a;  // affine: n x n
  std::vector<std::vector<double>> b;  // affine: n x m
  std::vector<double> coeffs;          // poly1d: c0..cd, x' = sum c_j x^j + u
  std::string builtin;                 // builtin: registry key
};

/* State sequence starting at a given instant. */
struct Trace {
  int start = 0;
  std::vector<Point> states;

  int length() const { return static_cast<int>(states.size()); }
  int last_instant() const { return start + length() - 1; }
  bool covers(int k) const { return k >= start && k <= last_instant(); }
  const Point& at_instant(int k) const { return states.at(static_cast<size_t>(k - start)); }
};

/* One application of the dynamics. No clamping: out-of-bounds images are
 * returned as-is for the caller to classify. With `unchecked`, x and u may
 * lie outside their bounds (probing). */
Point step_dynamics(const SystemModel& model, std::span<const double> x,
                    std::span<const double> u, bool unchecked = false);

/* As step_dynamics(unchecked), writing into a caller-provided buffer; `out`
 * must not alias `x`. For tight loops over grid cells. */
void step_dynamics_into(const SystemModel& model, std::span<const double> x,
                        std::span<const double> u, std::span<double> out);

/* States x_{k+1}..x_{k+len} generated from x under the control sequence;
 * the returned trace starts at start_instant + 1 and excludes x itself. */
Trace simulate(const SystemModel& model, const Point& x,
               const std::vector<Point>& controls, int start_instant = 0);

SystemModel load_system(const std::string& json_text);
SystemModel load_system_file(const std::filesystem::path& path);

/* Names accepted by the builtin dynamics registry. */
std::vector<std::string> builtin_names();

}  // namespace stlmon
