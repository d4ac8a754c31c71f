#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "stlmon/formula.hpp"
#include "stlmon/gridset.hpp"
#include "stlmon/system.hpp"

namespace stlmon {

class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleOptions {
  long long budget = 10'000'000;  // simulated dynamics steps before aborting
};

/* Boolean satisfaction of the formula on a complete trace at instant t,
 * by direct recursive evaluation of the operator definitions. Throws when
 * the trace does not cover the instants the formula references. */
bool eval_trace(const Formula& f, const Trace& trace, int t);

/* Direct decision of prefix feasibility: scan every control sequence over
 * the sampled lattice from instant k and test whether some solution that
 * stays inside the state box satisfies the remaining obligations. Segments
 * whose flag is set are replaced by their exclusive variants (dropped). */
bool brute_force_feasible(const SystemModel& model, const SegmentedFormula& sf, int k,
                          const Point& x, const std::vector<int>& control_samples,
                          const std::vector<bool>& prefix_flags,
                          const OracleOptions& opts = {});

/* As brute_force_feasible, returning the first satisfying control sequence. */
std::optional<std::vector<Point>> find_witness_controls(
    const SystemModel& model, const SegmentedFormula& sf, int k, const Point& x,
    const std::vector<int>& control_samples, const std::vector<bool>& prefix_flags,
    const OracleOptions& opts = {});

/* Cross-validation set: cell true when brute_force_feasible holds at the
 * cell center with no flags set. */
GridSet oracle_feasible_set(const SystemModel& model, const SegmentedFormula& sf, int k,
                            GeometryPtr geometry, const std::vector<int>& control_samples,
                            const OracleOptions& opts = {});

/* The remaining obligations seen from instant k with the given flags: the
 * current segment's window is cut to start at k, flagged F/U' segments are
 * dropped. Windows stay absolute, for evaluation at t = 0. */
Formula subsequent_formula(const SegmentedFormula& sf, int k,
                           const std::vector<bool>& prefix_flags);

}  // namespace stlmon
