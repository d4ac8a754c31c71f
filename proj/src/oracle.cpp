#include "stlmon/oracle.hpp"

#include <cmath>

#include "stlmon/reach.hpp"

namespace stlmon {

namespace {

void require_coverage(const Trace& trace, int lo, int hi) {
  if (!trace.covers(lo) || !trace.covers(hi)) {
    throw std::invalid_argument("eval_trace: trace too short, instants [" +
                                std::to_string(lo) + "," + std::to_string(hi) +
                                "] not covered");
  }
}

bool eval_atom(const TemporalAtom& atom, const Trace& trace, int t) {
  const int lo = t + atom.window.a;
  const int hi = t + atom.window.b;
  switch (atom.op) {
    case TemporalOp::Always:
      require_coverage(trace, lo, hi);
      for (int j = lo; j <= hi; ++j) {
        if (!atom.region.contains(trace.at_instant(j))) return false;
      }
      return true;
    case TemporalOp::Eventually:
      require_coverage(trace, lo, hi);
      for (int j = lo; j <= hi; ++j) {
        if (atom.region.contains(trace.at_instant(j))) return true;
      }
      return false;
    case TemporalOp::Until:
      // H2 at some j in [t+a, t+b], H1 everywhere in [t, j].
      require_coverage(trace, t, hi);
      for (int j = lo; j <= hi; ++j) {
        if (!atom.region2->contains(trace.at_instant(j))) continue;
        bool guard = true;
        for (int j2 = t; j2 <= j; ++j2) {
          if (!atom.region.contains(trace.at_instant(j2))) {
            guard = false;
            break;
          }
        }
        if (guard) return true;
      }
      return false;
    case TemporalOp::UntilPrime:
      // As until, with the guard starting at t+a instead of t.
      require_coverage(trace, lo, hi);
      for (int j = lo; j <= hi; ++j) {
        if (!atom.region2->contains(trace.at_instant(j))) continue;
        bool guard = true;
        for (int j2 = lo; j2 <= j; ++j2) {
          if (!atom.region.contains(trace.at_instant(j2))) {
            guard = false;
            break;
          }
        }
        if (guard) return true;
      }
      return false;
  }
  return false;
}

}  // namespace

bool eval_trace(const Formula& f, const Trace& trace, int t) {
  if (f.atoms.empty()) return true;
  for (const TemporalAtom& atom : f.atoms) {
    if (!eval_atom(atom, trace, t)) return false;
  }
  return true;
}

Formula subsequent_formula(const SegmentedFormula& sf, int k,
                           const std::vector<bool>& prefix_flags) {
  if (k < 0 || k > sf.horizon) {
    throw std::invalid_argument("subsequent_formula: instant outside [0, horizon]");
  }
  if (prefix_flags.size() != sf.segments.size()) {
    throw std::invalid_argument("subsequent_formula: flag vector size mismatch");
  }
  Formula out;
  const int i_k = sf.segment_at(k);
  for (int i = i_k; i < sf.segment_count(); ++i) {
    const Segment& seg = sf.segments[static_cast<size_t>(i)];
    const bool discharged = seg.op != TemporalOp::Always && prefix_flags[static_cast<size_t>(i)];
    if (discharged) continue;
    TemporalAtom atom;
    atom.op = seg.op;
    atom.window = {std::max(seg.window.a, k), seg.window.b};
    atom.region = seg.region;
    atom.region2 = seg.region2;
    out.atoms.push_back(std::move(atom));
  }
  return out;
}

namespace {

struct Enumerator {
  const SystemModel& model;
  const Formula& folded;
  const std::vector<Point>& lattice;
  int t_phi;
  long long budget;
  long long steps = 0;

  Trace trace;                   // states from instant k on, extended in place
  std::vector<Point> controls;   // chosen controls, parallel to the extension

  bool found = false;

  /* Depth-first scan: `instant` is the next instant to fill. */
  void scan(int instant) {
    if (found) return;
    if (instant > t_phi) {
      if (eval_trace(folded, trace, 0)) found = true;
      return;
    }
    // copy: the push_back below may reallocate the state vector
    const Point x = trace.states.back();
    for (const Point& u : lattice) {
      if (++steps > budget) {
        throw BudgetError("oracle: enumeration budget of " + std::to_string(budget) +
                          " simulated steps exceeded");
      }
      Point next = step_dynamics(model, x, u, /*unchecked=*/true);
      if (!model.state_bounds.contains(next)) continue;  // not a valid solution
      trace.states.push_back(std::move(next));
      controls.push_back(u);
      scan(instant + 1);
      if (found) return;
      trace.states.pop_back();
      controls.pop_back();
    }
  }
};

std::optional<std::vector<Point>> run_enumeration(const SystemModel& model,
                                                  const SegmentedFormula& sf, int k,
                                                  const Point& x,
                                                  const std::vector<int>& control_samples,
                                                  const std::vector<bool>& prefix_flags,
                                                  const OracleOptions& opts) {
  if (static_cast<int>(x.size()) != model.state_dim) {
    throw std::invalid_argument("oracle: state dimension mismatch");
  }
  const std::vector<Point> lattice = control_lattice(model.control_bounds, control_samples);

  // Up-front worst-case check so hopeless instances abort before burning time.
  const double sequences =
      std::pow(static_cast<double>(lattice.size()), static_cast<double>(sf.horizon - k));
  if (sequences > static_cast<double>(opts.budget)) {
    throw BudgetError("oracle: " + std::to_string(sequences) +
                      " control sequences exceed the budget of " +
                      std::to_string(opts.budget));
  }

  if (!model.state_bounds.contains(x)) return std::nullopt;

  Formula folded = subsequent_formula(sf, k, prefix_flags);
  Enumerator en{.model = model,
                .folded = folded,
                .lattice = lattice,
                .t_phi = sf.horizon,
                .budget = opts.budget};
  en.trace.start = k;
  en.trace.states.reserve(static_cast<size_t>(sf.horizon - k) + 1);
  en.trace.states.push_back(x);
  en.scan(k + 1);
  if (!en.found) return std::nullopt;
  return en.controls;
}

}  // namespace

bool brute_force_feasible(const SystemModel& model, const SegmentedFormula& sf, int k,
                          const Point& x, const std::vector<int>& control_samples,
                          const std::vector<bool>& prefix_flags, const OracleOptions& opts) {
  return run_enumeration(model, sf, k, x, control_samples, prefix_flags, opts).has_value();
}

std::optional<std::vector<Point>> find_witness_controls(
    const SystemModel& model, const SegmentedFormula& sf, int k, const Point& x,
    const std::vector<int>& control_samples, const std::vector<bool>& prefix_flags,
    const OracleOptions& opts) {
  return run_enumeration(model, sf, k, x, control_samples, prefix_flags, opts);
}

GridSet oracle_feasible_set(const SystemModel& model, const SegmentedFormula& sf, int k,
                            GeometryPtr geometry, const std::vector<int>& control_samples,
                            const OracleOptions& opts) {
  GridSet out(geometry);
  const std::vector<bool> no_flags(sf.segments.size(), false);
  for (size_t cell = 0; cell < out.size(); ++cell) {
    Point center = geometry->cell_center(cell);
    out.set(cell, brute_force_feasible(model, sf, k, center, control_samples, no_flags, opts));
  }
  return out;
}

}  // namespace stlmon
