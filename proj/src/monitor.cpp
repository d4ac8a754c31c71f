#include "stlmon/monitor.hpp"

#include <stdexcept>

namespace stlmon {

Monitor::Monitor(const FeasibleSets& fs, const SegmentedFormula& sf)
    : fs_(&fs), sf_(&sf) {
  if (fs.formula_sha256 != formula_hash(sf)) {
    throw std::invalid_argument(
        "monitor: feasible-set artifact was computed for a different formula");
  }
  if (fs.horizon != sf.horizon) {
    throw std::invalid_argument("monitor: artifact horizon mismatch");
  }
  flags_.assign(sf.segments.size(), false);
  for (const Segment& seg : sf.segments) {
    switch (seg.op) {
      case TemporalOp::Eventually:
        flag_region_.push_back(rasterize(seg.region, fs.geometry, fs.mode));
        break;
      case TemporalOp::UntilPrime:
        flag_region_.push_back(rasterize(
            Region::conjunction(seg.region, *seg.region2), fs.geometry, fs.mode));
        break;
      default:
        flag_region_.emplace_back();
        break;
    }
  }
}

Verdict Monitor::step(std::span<const double> x) {
  if (violated_) throw std::logic_error("monitor: step after a violated verdict");
  if (k_ > sf_->horizon) throw std::logic_error("monitor: step beyond the formula horizon");

  const int i = sf_->segment_at(k_);
  const Segment& seg = sf_->segments[static_cast<size_t>(i)];

  // Flag update precedes the membership test, so a state inside the target
  // region is judged against the exclusive set of the same instant.
  if (seg.op != TemporalOp::Always &&
      flag_region_[static_cast<size_t>(i)].member(x)) {
    flags_[static_cast<size_t>(i)] = true;
  }

  const bool use_exclusive =
      seg.op != TemporalOp::Always && flags_[static_cast<size_t>(i)];
  const GridSet& consulted = use_exclusive ? fs_->exclusive[static_cast<size_t>(k_)]
                                           : fs_->feasible[static_cast<size_t>(k_)];

  Verdict v;
  v.k = k_;
  v.segment = i + 1;
  v.op = seg.op;
  v.flag = seg.op != TemporalOp::Always && flags_[static_cast<size_t>(i)];
  v.consulted = use_exclusive ? ConsultedSet::Exclusive : ConsultedSet::Feasible;
  v.outcome = consulted.member(x) ? Outcome::Feasible : Outcome::Violated;

  if (v.outcome == Outcome::Violated) {
    violated_ = true;
  } else {
    ++k_;
  }
  return v;
}

ModelFreeMonitor::ModelFreeMonitor(const SegmentedFormula& sf) : sf_(&sf) {
  flags_.assign(sf.segments.size(), false);
}

Verdict ModelFreeMonitor::step(std::span<const double> x) {
  if (violated_) throw std::logic_error("monitor: step after a violated verdict");
  if (k_ > sf_->horizon) throw std::logic_error("monitor: step beyond the formula horizon");

  const int i = sf_->segment_at(k_);
  const Segment& seg = sf_->segments[static_cast<size_t>(i)];
  const bool deadline = (k_ == seg.window.b);
  bool bad = false;

  switch (seg.op) {
    case TemporalOp::Always:
      bad = !seg.region.contains(x);
      break;
    case TemporalOp::Eventually:
      if (seg.region.contains(x)) flags_[static_cast<size_t>(i)] = true;
      bad = !flags_[static_cast<size_t>(i)] && deadline;
      break;
    case TemporalOp::UntilPrime: {
      if (seg.region.contains(x) && seg.region2->contains(x)) {
        flags_[static_cast<size_t>(i)] = true;
      }
      const bool discharged = flags_[static_cast<size_t>(i)];
      bad = (!discharged && !seg.region.contains(x)) || (!discharged && deadline);
      break;
    }
    default:
      throw std::logic_error("model-free monitor: raw until in segmented formula");
  }

  Verdict v;
  v.k = k_;
  v.segment = i + 1;
  v.op = seg.op;
  v.flag = seg.op != TemporalOp::Always && flags_[static_cast<size_t>(i)];
  v.consulted = ConsultedSet::RegionOnly;
  v.outcome = bad ? Outcome::Violated : Outcome::Feasible;

  if (bad) {
    violated_ = true;
  } else {
    ++k_;
  }
  return v;
}

}  // namespace stlmon
