#pragma once

#include <span>
#include <vector>

#include "stlmon/feasible.hpp"
#include "stlmon/formula.hpp"

namespace stlmon {

enum class Outcome { Feasible, Violated };

enum class ConsultedSet { Feasible, Exclusive, RegionOnly };

struct Verdict {
  int k = 0;
  Outcome outcome = Outcome::Feasible;
  int segment = 1;  // 1-based index of the active sub-formula
  TemporalOp op = TemporalOp::Always;
  bool flag = false;               // satisfaction flag after this step's update
  ConsultedSet consulted = ConsultedSet::Feasible;
};

/* Streaming monitor: states arrive one instant at a time and each step is a
 * set-membership test against the precomputed feasible sets. A violated
 * verdict latches; further steps are rejected. The monitor borrows the
 * feasible sets and formula, which must outlive it. */
class Monitor {
 public:
  /* Fails when the feasible sets were not computed for this formula
   * (canonical-text hash comparison). */
  Monitor(const FeasibleSets& fs, const SegmentedFormula& sf);

  /* Consume the state for the current instant and judge the prefix. */
  Verdict step(std::span<const double> x);

  int instant() const { return k_; }
  bool violated() const { return violated_; }
  bool done() const { return violated_ || k_ > sf_->horizon; }
  const std::vector<bool>& flags() const { return flags_; }

 private:
  const FeasibleSets* fs_;
  const SegmentedFormula* sf_;
  std::vector<GridSet> flag_region_;  // per segment: raster of H (F) or H1^H2 (U')
  std::vector<bool> flags_;
  int k_ = 0;
  bool violated_ = false;
};

/* Region-and-deadline comparator that never consults the dynamics: a G
 * instant fails only when the state leaves the region, an F obligation only
 * at its deadline, a U' segment when the state leaves H1 before the target
 * was reached. Uses pointwise region membership. */
class ModelFreeMonitor {
 public:
  explicit ModelFreeMonitor(const SegmentedFormula& sf);

  Verdict step(std::span<const double> x);

  int instant() const { return k_; }
  bool violated() const { return violated_; }
  bool done() const { return violated_ || k_ > sf_->horizon; }
  const std::vector<bool>& flags() const { return flags_; }

 private:
  const SegmentedFormula* sf_;
  std::vector<bool> flags_;
  int k_ = 0;
  bool violated_ = false;
};

}  // namespace stlmon
