// Acceptance suite: exercises the five shipped guarantees end to end and
// prints one PASS/FAIL line per criterion. Returns the number of failures.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "stlmon/feasible.hpp"
#include "stlmon/monitor.hpp"
#include "stlmon/oracle.hpp"
#include "stlmon/parser.hpp"
#include "stlmon/system.hpp"

using namespace stlmon;

namespace {

struct Criterion {
  std::string name;
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("FAILED: " + what);
    }
  }
  void note(const std::string& what) { notes.push_back(what); }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

SystemModel model_from(const char* file) {
  return load_system_file(std::string(CASES_DIR) + "/" + file);
}

SegmentedFormula formula_from(const SystemModel& model, const char* file) {
  std::ifstream in(std::string(CASES_DIR) + "/" + file);
  std::ostringstream buf;
  buf << in.rdbuf();
  Formula raw = parse_formula(buf.str(), model.state_dim);
  return segment(rewrite_until(raw), model.state_bounds);
}

void check_interval(Criterion& c, const GridSet& set, double lo, double hi, double tol,
                    const std::string& label) {
  auto runs = true_intervals_1d(set);
  if (runs.size() != 1) {
    c.require(false, label + ": expected one maximal run, got " + std::to_string(runs.size()));
    return;
  }
  c.require(std::abs(runs[0].lo - lo) <= tol,
            label + " lower endpoint " + fmt(runs[0].lo) + " vs " + fmt(lo));
  c.require(std::abs(runs[0].hi - hi) <= tol,
            label + " upper endpoint " + fmt(runs[0].hi) + " vs " + fmt(hi));
}

struct BoxSummary {
  double lo0 = 1e9, hi0 = -1e9, lo1 = 1e9, hi1 = -1e9;
  size_t cells = 0;
};

BoxSummary bounding_box_2d(const GridSet& s) {
  const GridGeometry& geo = *s.geometry();
  BoxSummary out;
  for (size_t c = 0; c < s.size(); ++c) {
    if (!s.test(c)) continue;
    ++out.cells;
    std::vector<int> ij = geo.coords(c);
    out.lo0 = std::min(out.lo0, geo.edge(0, ij[0]));
    out.hi0 = std::max(out.hi0, geo.edge(0, ij[0] + 1));
    out.lo1 = std::min(out.lo1, geo.edge(1, ij[1]));
    out.hi1 = std::max(out.hi1, geo.edge(1, ij[1] + 1));
  }
  return out;
}

void check_box_2d(Criterion& c, const GridSet& s, double lo0, double hi0, double lo1,
                  double hi1, double cell, const std::string& label) {
  BoxSummary bb = bounding_box_2d(s);
  c.require(std::abs(bb.lo0 - lo0) <= cell + 1e-9, label + " x lower " + fmt(bb.lo0));
  c.require(std::abs(bb.hi0 - hi0) <= cell + 1e-9, label + " x upper " + fmt(bb.hi0));
  c.require(std::abs(bb.lo1 - lo1) <= cell + 1e-9, label + " y lower " + fmt(bb.lo1));
  c.require(std::abs(bb.hi1 - hi1) <= cell + 1e-9, label + " y upper " + fmt(bb.hi1));
  // the set must fill its bounding box (it is a product of intervals)
  auto cells0 = static_cast<size_t>(std::llround((bb.hi0 - bb.lo0) / cell));
  auto cells1 = static_cast<size_t>(std::llround((bb.hi1 - bb.lo1) / cell));
  c.require(bb.cells == cells0 * cells1, label + " is not a filled box");
}

const std::vector<double> kCase1Trace = {3,    3.28, 3.6,  4.1, 3.1, 3.4,
                                         2.7,  2.89, 3.13, 3.46, 3.9, 3.2};

Criterion criterion1() {
  Criterion c{"criterion 1: Case I feasible-set regression"};
  auto start = std::chrono::steady_clock::now();

  SystemModel model = model_from("case1.json");
  SegmentedFormula sf = formula_from(model, "case1.stl");
  auto geo = std::make_shared<GridGeometry>(model.state_bounds, std::vector<int>{500});
  ReachConfig cfg{{201}, CellSampleScheme::CornersAndCenter, 0.0};
  FeasibleSets fs = compute_feasible_sets(sf, model, geo, cfg);

  const double tol = 0.02;
  for (int k = 12; k <= 15; ++k) {
    check_interval(c, fs.feasible[static_cast<size_t>(k)], 0, 1, tol,
                   "X" + std::to_string(k));
  }
  check_interval(c, fs.feasible[11], 0, 2.7875, tol, "X11");
  check_interval(c, fs.feasible[10], 0, 3.9700, tol, "X10");
  check_interval(c, fs.feasible[9], 1, 3, tol, "X9");
  check_interval(c, fs.feasible[8], 0, 4.0900, tol, "X8");
  check_interval(c, fs.feasible[7], 0, 4.6606, tol, "X7");
  check_interval(c, fs.feasible[6], 0, 4.9351, tol, "X6");
  check_interval(c, fs.feasible[5], 0, 5, tol, "X5");
  check_interval(c, fs.feasible[4], 0, 5, tol, "X4");
  check_interval(c, fs.feasible[3], 3, 4, tol, "X3");
  check_interval(c, fs.exclusive[9], 0, 4.6010, tol, "Xhat9");
  check_interval(c, fs.exclusive[8], 0, 4.9071, tol, "Xhat8");
  // equation-derived values inside the until segment (the published drawing
  // disagrees with the recursion here; the recursion wins)
  check_interval(c, fs.feasible[2], 2.787, 4, tol, "X2");
  check_interval(c, fs.feasible[1], 2.616, 4, tol, "X1");
  check_interval(c, fs.feasible[0], 2.471, 4, tol, "X0");

  double elapsed = seconds_since(start);
  c.require(elapsed < 5.0, "runtime " + fmt(elapsed) + " s exceeds 5 s");
  c.note("computed in " + fmt(elapsed) + " s");
  return c;
}

Criterion criterion2() {
  Criterion c{"criterion 2: Case I monitoring verdict with baseline lead"};
  SystemModel model = model_from("case1.json");
  SegmentedFormula sf = formula_from(model, "case1.stl");
  auto geo = std::make_shared<GridGeometry>(model.state_bounds, std::vector<int>{500});
  ReachConfig cfg{{201}, CellSampleScheme::CornersAndCenter, 0.0};
  FeasibleSets fs = compute_feasible_sets(sf, model, geo, cfg);

  Monitor monitor(fs, sf);
  ModelFreeMonitor baseline(sf);
  std::optional<int> model_violation, baseline_violation;
  for (size_t k = 0; k < kCase1Trace.size(); ++k) {
    Point x{kCase1Trace[k]};
    Verdict v = monitor.step(x);
    if (v.outcome == Outcome::Violated) {
      model_violation = v.k;
    } else {
      c.require(k <= 10, "feasible verdict past the expected violation instant");
    }
    if (k == 1) {
      c.require(v.flag && v.op == TemporalOp::UntilPrime && v.segment == 2,
                "flag not raised in the until segment at k=1");
    }
    if (k == 6) {
      c.require(v.flag && v.op == TemporalOp::Eventually && v.segment == 4,
                "flag not raised in the eventually segment at k=6");
    }
    Verdict b = baseline.step(x);
    if (b.outcome == Outcome::Violated) baseline_violation = b.k;
    if (model_violation) break;
  }
  c.require(model_violation.has_value() && *model_violation == 11,
            "model-based monitor did not alarm at k=11");
  c.require(baseline.instant() == 12, "baseline did not consume the whole trace");
  c.require(!baseline_violation.has_value(),
            "model-free baseline alarmed within the observed prefix");
  c.note("model-based alarm at k=11, baseline silent through k=11: lead >= 1");
  return c;
}

Criterion criterion3() {
  Criterion c{"criterion 3: Case II exactness and monitoring verdict"};
  auto start = std::chrono::steady_clock::now();

  SystemModel model = model_from("case2.json");
  SegmentedFormula sf = formula_from(model, "case2.stl");
  auto geo = std::make_shared<GridGeometry>(model.state_bounds, std::vector<int>{200, 120});
  ReachConfig cfg{{21, 21}, CellSampleScheme::CornersAndCenter, 0.0};
  FeasibleSets fs = compute_feasible_sets(sf, model, geo, cfg);

  const double cell = 0.05;
  for (int k = 8; k <= 10; ++k) {
    check_box_2d(c, fs.feasible[static_cast<size_t>(k)], 7, 9, 1, 3, cell,
                 "X" + std::to_string(k));
  }
  check_box_2d(c, fs.feasible[7], 6.1, 9.9, 0.2, 3.8, cell, "X7");

  const std::vector<Point> trace = {{1.2, 1}, {2, 1.8}, {1.9, 2.7}, {2.8, 3.5},
                                    {3.7, 4.3}, {4.6, 4}, {5.5, 4.7}, {6.4, 4}};
  Monitor monitor(fs, sf);
  std::optional<int> violated_at;
  for (size_t k = 0; k < trace.size() && !monitor.done(); ++k) {
    Verdict v = monitor.step(trace[k]);
    if (k == 2) c.require(v.flag, "flag not raised at k=2");
    if (k == 5) c.require(v.flag, "flag not raised at k=5");
    if (v.outcome == Outcome::Violated) violated_at = v.k;
    if (k <= 6) {
      c.require(v.outcome == Outcome::Feasible,
                "expected feasible at k=" + std::to_string(k) + " per the stated criterion");
    }
  }
  c.require(violated_at.has_value() && *violated_at == 7,
            "expected the violation verdict at k=7 per the stated criterion");
  if (violated_at && *violated_at == 6) {
    c.note("monitor alarms at k=6: from (5.5,4.7) the y coordinate cannot fall below "
           "3.1 by k=8, so no continuation satisfies the parking obligation; the k=7 "
           "alarm stated in the criterion understates the achievable lead");
  }

  double elapsed = seconds_since(start);
  c.require(elapsed < 60.0, "runtime " + fmt(elapsed) + " s exceeds 60 s");
  c.note("computed in " + fmt(elapsed) + " s");
  return c;
}

Criterion criterion4() {
  Criterion c{"criterion 4: matched-discretization oracle equivalence"};
  auto start = std::chrono::steady_clock::now();

  SystemModel model = model_from("case1.json");
  Formula raw = parse_formula("F[0,2] (x1 in [1,3]) & G[3,4] (x1 in [0,1])", 1);
  SegmentedFormula sf = segment(rewrite_until(raw), model.state_bounds);
  auto geo = std::make_shared<GridGeometry>(model.state_bounds, std::vector<int>{25});
  ReachConfig cfg{{5}, CellSampleScheme::Center, 0.0};
  FeasibleSets fs = compute_feasible_sets(sf, model, geo, cfg);

  for (int k = 0; k <= 4; ++k) {
    GridSet reference = oracle_feasible_set(model, sf, k, geo, {5});
    c.require(fs.feasible[static_cast<size_t>(k)] == reference,
              "cellwise disagreement at k=" + std::to_string(k));
  }

  // random monitor-vs-enumeration checks, flags folded as the monitor folds them
  std::mt19937 rng(424242);
  std::uniform_int_distribution<int> pick_k(0, sf.horizon);
  std::uniform_int_distribution<int> pick_cell(0, 24);
  int compared = 0;
  while (compared < 200) {
    int k = pick_k(rng);
    Point x = geo->cell_center(static_cast<size_t>(pick_cell(rng)));

    Monitor monitor(fs, sf);
    bool reached = true;
    for (int j = 0; j < k && reached; ++j) {
      reached = false;
      for (size_t cell = 0; cell < geo->cell_count(); ++cell) {
        Monitor probe = monitor;
        if (probe.step(geo->cell_center(cell)).outcome == Outcome::Feasible) {
          monitor.step(geo->cell_center(cell));
          reached = true;
          break;
        }
      }
    }
    if (!reached) continue;

    std::vector<bool> flags = monitor.flags();
    const int seg = sf.segment_at(k);
    const Segment& s = sf.segments[static_cast<size_t>(seg)];
    if (s.op != TemporalOp::Always && s.region.contains(x)) {
      flags[static_cast<size_t>(seg)] = true;
    }
    bool feasible_by_enumeration = brute_force_feasible(model, sf, k, x, {5}, flags);
    bool feasible_by_monitor = monitor.step(x).outcome == Outcome::Feasible;
    c.require(feasible_by_monitor == feasible_by_enumeration,
              "monitor and enumeration disagree at k=" + std::to_string(k) + ", x=" +
                  fmt(x[0]));
    ++compared;
  }
  c.note("200 randomized monitor/enumeration comparisons");

  double elapsed = seconds_since(start);
  c.require(elapsed < 30.0, "runtime " + fmt(elapsed) + " s exceeds 30 s");
  c.note("computed in " + fmt(elapsed) + " s");
  return c;
}

Criterion criterion5() {
  Criterion c{"criterion 5: randomized property suites"};
  std::string command = std::string(STLMON_TESTS_BIN) + " \"-tc=property*\" 2>&1";
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) {
    c.require(false, "could not spawn the property-suite runner");
    return c;
  }
  std::string output;
  char buffer[4096];
  size_t n;
  while ((n = fread(buffer, 1, sizeof(buffer), pipe)) > 0) output.append(buffer, n);
  int status = pclose(pipe);
  int exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  c.require(exit_code == 0, "property suites reported failures");

  // make sure the filter actually selected the suites
  size_t pos = output.find("assertions:");
  long assertions = 0;
  if (pos != std::string::npos) assertions = std::atol(output.c_str() + pos + 11);
  c.require(assertions >= 3000, "expected thousands of property assertions, saw " +
                                    std::to_string(assertions));
  c.note(std::to_string(assertions) + " assertions across the randomized suites");
  return c;
}

}  // namespace

int main() {
  std::vector<Criterion> results;
  results.push_back(criterion1());
  results.push_back(criterion2());
  results.push_back(criterion3());
  results.push_back(criterion4());
  results.push_back(criterion5());

  int failures = 0;
  for (const Criterion& c : results) {
    std::cout << c.name << ": " << (c.pass ? "PASS" : "FAIL") << "\n";
    for (const std::string& note : c.notes) std::cout << "    " << note << "\n";
    if (!c.pass) ++failures;
  }
  std::cout << (failures == 0 ? "all criteria passed"
                              : std::to_string(failures) + " criterion(s) failed") << "\n";
  return failures;
}
