#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "stlmon/feasible.hpp"
#include "stlmon/monitor.hpp"
#include "stlmon/oracle.hpp"
#include "stlmon/parser.hpp"
#include "stlmon/system.hpp"

namespace {

using nlohmann::json;
using namespace stlmon;

constexpr int kExitOk = 0;
constexpr int kExitEvalFalse = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitOverlap = 3;
constexpr int kExitBudget = 4;
constexpr int kExitDisagreement = 5;
constexpr int kExitViolated = 10;

std::vector<int> parse_counts(const std::string& spec, const char* what) {
  std::vector<int> counts;
  std::string token;
  for (char c : spec + ",") {
    if (c == ',' || c == 'x' || c == 'X') {
      if (!token.empty()) {
        try {
          counts.push_back(std::stoi(token));
        } catch (const std::exception&) {
          throw std::invalid_argument(std::string(what) + ": '" + token +
                                      "' is not a count");
        }
        token.clear();
      }
    } else {
      token.push_back(c);
    }
  }
  if (counts.empty()) {
    throw std::invalid_argument(std::string(what) + ": empty specification '" + spec + "'");
  }
  return counts;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/* Broadcast a single count over every dimension, otherwise require one
 * count per dimension. */
std::vector<int> fit_counts(std::vector<int> counts, int dim, const char* what) {
  if (static_cast<int>(counts.size()) == 1 && dim > 1) {
    return std::vector<int>(static_cast<size_t>(dim), counts[0]);
  }
  if (static_cast<int>(counts.size()) != dim) {
    throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(dim) +
                                " comma-separated counts");
  }
  return counts;
}

struct PipelineOptions {
  std::string system_path;
  std::string formula_path;
  std::string grid_spec = "500";
  std::string samples_spec = "201";
  std::string scheme = "corners_center";
  double epsilon = 0.0;
  std::string mode = "inner";
};

CellSampleScheme parse_scheme(const std::string& s) {
  if (s == "center") return CellSampleScheme::Center;
  if (s == "corners_center") return CellSampleScheme::CornersAndCenter;
  throw std::invalid_argument("unknown cell sample scheme '" + s + "' (center|corners_center)");
}

RasterMode parse_mode(const std::string& s) {
  if (s == "inner") return RasterMode::Inner;
  if (s == "outer") return RasterMode::Outer;
  throw std::invalid_argument("unknown raster mode '" + s + "' (inner|outer)");
}

struct LoadedProblem {
  SystemModel model;
  SegmentedFormula segmented;
  GeometryPtr geometry;
  ReachConfig reach;
  RasterMode mode = RasterMode::Inner;
};

LoadedProblem load_problem(const PipelineOptions& opt) {
  LoadedProblem p;
  p.model = load_system(read_file(opt.system_path));
  Formula raw = parse_formula(read_file(opt.formula_path), p.model.state_dim);
  p.segmented = segment(rewrite_until(raw), p.model.state_bounds);
  p.geometry = std::make_shared<GridGeometry>(
      p.model.state_bounds, fit_counts(parse_counts(opt.grid_spec, "--grid"),
                                       p.model.state_dim, "--grid"));
  p.reach.control_samples = fit_counts(parse_counts(opt.samples_spec, "--control-samples"),
                                       p.model.control_dim, "--control-samples");
  p.reach.scheme = parse_scheme(opt.scheme);
  p.reach.epsilon = opt.epsilon;
  p.mode = parse_mode(opt.mode);
  return p;
}

// ---------------------------------------------------------------- traces

struct TraceReader {
  std::istream& in;
  bool jsonl = false;
  bool header_done = false;
  int next_k = 0;
  int line_no = 0;

  explicit TraceReader(std::istream& s) : in(s) {
    int c = in.peek();
    while (c == ' ' || c == '\n' || c == '\r' || c == '\t') {
      in.get();
      c = in.peek();
    }
    jsonl = (c == '{');
  }

  /* Next state, or nullopt at end of input. Validates that instants are
   * consecutive from 0. */
  std::optional<Point> next() {
    std::string line;
    while (std::getline(in, line)) {
      ++line_no;
      // strip whitespace-only lines
      if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
      if (!jsonl && !header_done) {
        header_done = true;
        if (line.find_first_not_of("0123456789+-.eE, \t\r") != std::string::npos ||
            line.starts_with("k")) {
          continue;  // header row
        }
      }
      int k = 0;
      Point x;
      if (jsonl) {
        json obj;
        try {
          obj = json::parse(line);
          k = obj.at("k").get<int>();
          x = obj.at("x").get<Point>();
        } catch (const json::exception& e) {
          throw std::invalid_argument("trace line " + std::to_string(line_no) +
                                      ": malformed JSON record: " + e.what());
        }
      } else {
        std::istringstream row(line);
        std::string field;
        bool first = true;
        while (std::getline(row, field, ',')) {
          try {
            if (first) {
              k = std::stoi(field);
              first = false;
            } else {
              x.push_back(std::stod(field));
            }
          } catch (const std::exception&) {
            throw std::invalid_argument("trace line " + std::to_string(line_no) +
                                        ": malformed CSV field '" + field + "'");
          }
        }
        if (first || x.empty()) {
          throw std::invalid_argument("trace line " + std::to_string(line_no) +
                                      ": expected k,x1,...,xn");
        }
      }
      if (k != next_k) {
        throw std::invalid_argument("trace line " + std::to_string(line_no) + ": instant " +
                                    std::to_string(k) + " out of order, expected " +
                                    std::to_string(next_k));
      }
      ++next_k;
      return x;
    }
    return std::nullopt;
  }
};

Trace read_whole_trace(std::istream& in) {
  TraceReader reader(in);
  Trace trace;
  trace.start = 0;
  while (auto x = reader.next()) trace.states.push_back(*x);
  return trace;
}

// ---------------------------------------------------------------- verdicts

const char* set_label(ConsultedSet s) {
  switch (s) {
    case ConsultedSet::Feasible:
      return "X";
    case ConsultedSet::Exclusive:
      return "Xhat";
    case ConsultedSet::RegionOnly:
      return "H";
  }
  return "?";
}

json verdict_json(const Verdict& v) {
  json line;
  line["k"] = v.k;
  line["verdict"] = v.outcome == Outcome::Feasible ? "feasible" : "violated";
  line["segment"] = v.segment;
  line["op"] = op_name(v.op);
  line["flag"] = v.flag;
  line["set"] = set_label(v.consulted);
  return line;
}

// ---------------------------------------------------------------- commands

int cmd_precompute(const PipelineOptions& opt, const std::string& out_path) {
  LoadedProblem p = load_problem(opt);
  FeasibleSets fs = compute_feasible_sets(p.segmented, p.model, p.geometry, p.reach, p.mode);
  if (p.mode == RasterMode::Outer) {
    std::cerr << "note: outer rasterization over-approximates the feasible sets; "
                 "a feasible verdict may mask an unavoidable violation\n";
  }
  for (int k = 0; k <= fs.horizon; ++k) {
    std::cout << "k=" << k << " X=" << fs.feasible[static_cast<size_t>(k)].count()
              << " Xhat=" << fs.exclusive[static_cast<size_t>(k)].count() << "\n";
  }
  save_artifact(fs, out_path);
  std::cout << "wrote " << out_path << "\n";
  return kExitOk;
}

int cmd_monitor(const std::string& artifact_path, const std::string& formula_path,
                const std::string& trace_path, bool baseline) {
  FeasibleSets fs = load_artifact(artifact_path);
  Formula raw = parse_formula(read_file(formula_path), fs.geometry->dim());
  SegmentedFormula sf = segment(rewrite_until(raw), fs.geometry->bounds);
  Monitor monitor(fs, sf);
  ModelFreeMonitor free_monitor(sf);

  std::ifstream file;
  std::istream* in = &std::cin;
  if (!trace_path.empty() && trace_path != "-") {
    file.open(trace_path);
    if (!file) throw std::invalid_argument("cannot open trace " + trace_path);
    in = &file;
  }
  TraceReader reader(*in);

  std::vector<json> baseline_lines;
  std::optional<int> model_violation, baseline_violation;
  while (auto x = reader.next()) {
    if (!monitor.done()) {
      Verdict v = monitor.step(*x);
      std::cout << verdict_json(v).dump() << std::endl;
      if (v.outcome == Outcome::Violated) model_violation = v.k;
    }
    if (baseline && !free_monitor.done()) {
      Verdict v = free_monitor.step(*x);
      baseline_lines.push_back(verdict_json(v));
      if (v.outcome == Outcome::Violated) baseline_violation = v.k;
    }
    if (monitor.done() && (!baseline || free_monitor.done())) break;
  }

  if (baseline) {
    for (const json& line : baseline_lines) std::cout << line.dump() << "\n";
    json summary;
    summary["model_violated_at"] = model_violation ? json(*model_violation) : json(nullptr);
    summary["baseline_violated_at"] =
        baseline_violation ? json(*baseline_violation) : json(nullptr);
    summary["lead_instants"] = (model_violation && baseline_violation)
                                   ? json(*baseline_violation - *model_violation)
                                   : json(nullptr);
    std::cout << summary.dump() << "\n";
  }
  return model_violation ? kExitViolated : kExitOk;
}

int cmd_eval(const std::string& formula_path, const std::string& trace_path) {
  Formula f = parse_formula(read_file(formula_path));
  std::ifstream file;
  std::istream* in = &std::cin;
  if (!trace_path.empty() && trace_path != "-") {
    file.open(trace_path);
    if (!file) throw std::invalid_argument("cannot open trace " + trace_path);
    in = &file;
  }
  Trace trace = read_whole_trace(*in);
  const int t_phi = horizon(f).second;
  if (trace.length() < t_phi + 1) {
    throw std::invalid_argument("trace too short: need " + std::to_string(t_phi + 1) +
                                " states, got " + std::to_string(trace.length()));
  }
  bool ok = eval_trace(f, trace, 0);
  std::cout << (ok ? "true" : "false") << "\n";
  return ok ? kExitOk : kExitEvalFalse;
}

int cmd_oracle_check(const PipelineOptions& opt, long long budget) {
  LoadedProblem p = load_problem(opt);
  OracleOptions oracle_opts{budget};
  FeasibleSets fs = compute_feasible_sets(p.segmented, p.model, p.geometry, p.reach, p.mode);

  bool any_disagreement = false;
  bool grid_subset_of_oracle = true;
  for (int k = 0; k <= fs.horizon; ++k) {
    GridSet reference = oracle_feasible_set(p.model, p.segmented, k, p.geometry,
                                            p.reach.control_samples, oracle_opts);
    const GridSet& computed = fs.feasible[static_cast<size_t>(k)];
    size_t agree = 0;
    for (size_t c = 0; c < computed.size(); ++c) {
      if (computed.test(c) == reference.test(c)) ++agree;
      if (computed.test(c) && !reference.test(c)) grid_subset_of_oracle = false;
    }
    double pct = 100.0 * static_cast<double>(agree) / static_cast<double>(computed.size());
    std::cout << "k=" << k << " agreement=" << pct << "%"
              << " computed=" << computed.count() << " oracle=" << reference.count() << "\n";
    if (agree != computed.size()) any_disagreement = true;
  }
  if (!any_disagreement) {
    std::cout << "all instants agree exactly\n";
    return kExitOk;
  }
  if (grid_subset_of_oracle) {
    std::cout << "computed sets are a subset of the oracle sets (conservative)\n";
  } else {
    std::cout << "computed sets contain cells the oracle rejects\n";
  }
  return kExitDisagreement;
}

int cmd_plotdata(const std::string& artifact_path, const std::string& out_dir) {
  FeasibleSets fs = load_artifact(artifact_path);
  std::filesystem::create_directories(out_dir);
  const GridGeometry& geo = *fs.geometry;

  auto dump_family = [&](const std::vector<GridSet>& sets, const std::string& name) {
    std::ofstream out(std::filesystem::path(out_dir) / (name + ".csv"));
    if (geo.dim() == 1) {
      out << "k,dim,interval_lo,interval_hi\n";
      for (int k = 0; k <= fs.horizon; ++k) {
        for (const Interval& run : true_intervals_1d(sets[static_cast<size_t>(k)])) {
          out << k << ",1," << format_real(run.lo) << "," << format_real(run.hi) << "\n";
        }
      }
    } else {
      out << "k,cell";
      for (int d = 1; d <= geo.dim(); ++d) out << ",center" << d;
      out << "\n";
      for (int k = 0; k <= fs.horizon; ++k) {
        const GridSet& s = sets[static_cast<size_t>(k)];
        for (size_t c = 0; c < s.size(); ++c) {
          if (!s.test(c)) continue;
          out << k << "," << c;
          for (double v : geo.cell_center(c)) out << "," << format_real(v);
          out << "\n";
        }
      }
    }
  };
  dump_family(fs.feasible, "feasible");
  dump_family(fs.exclusive, "exclusive");
  std::cout << "wrote " << out_dir << "/feasible.csv and " << out_dir << "/exclusive.csv\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Model-based online monitor for bounded-horizon STL specifications"};
  app.require_subcommand(1);

  PipelineOptions opt;
  std::string out_path = "artifact.json";
  std::string artifact_path, formula_path, trace_path;
  bool baseline = false;
  long long budget = 10'000'000;

  auto add_pipeline_flags = [&](CLI::App* cmd, bool with_reach) {
    cmd->add_option("--system", opt.system_path, "system config JSON")->required();
    cmd->add_option("--formula", opt.formula_path, "formula file")->required();
    cmd->add_option("--grid", opt.grid_spec, "cells per dimension, e.g. 500 or 200x120");
    if (with_reach) {
      cmd->add_option("--control-samples", opt.samples_spec,
                      "control samples per dimension, e.g. 201 or 21,21");
      cmd->add_option("--scheme", opt.scheme, "cell sample scheme: center|corners_center");
      cmd->add_option("--epsilon", opt.epsilon, "image inflation margin (state units)");
      cmd->add_option("--mode", opt.mode, "rasterization mode: inner|outer");
    }
  };

  CLI::App* precompute = app.add_subcommand("precompute", "compute feasible sets offline");
  add_pipeline_flags(precompute, true);
  precompute->add_option("-o,--out", out_path, "artifact output path");

  CLI::App* monitor = app.add_subcommand("monitor", "stream verdicts for a trace");
  monitor->add_option("--artifact", artifact_path, "precomputed feasible sets")->required();
  monitor->add_option("--formula", formula_path, "formula file")->required();
  monitor->add_option("--trace", trace_path, "trace file (CSV or JSONL); '-' for stdin");
  monitor->add_flag("--baseline", baseline, "also run the model-free comparator");

  CLI::App* eval = app.add_subcommand("eval", "evaluate a complete trace");
  eval->add_option("--formula", formula_path, "formula file")->required();
  eval->add_option("--trace", trace_path, "trace file (CSV or JSONL); '-' for stdin");

  CLI::App* oracle = app.add_subcommand("oracle-check",
                                        "cross-check feasible sets against enumeration");
  add_pipeline_flags(oracle, true);
  oracle->add_option("--budget", budget, "enumeration budget in simulated steps");

  CLI::App* plotdata = app.add_subcommand("plotdata", "export plot-ready CSV files");
  plotdata->add_option("--artifact", artifact_path, "precomputed feasible sets")->required();
  plotdata->add_option("-o,--out", out_path, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (precompute->parsed()) return cmd_precompute(opt, out_path);
    if (monitor->parsed()) return cmd_monitor(artifact_path, formula_path, trace_path, baseline);
    if (eval->parsed()) return cmd_eval(formula_path, trace_path);
    if (oracle->parsed()) return cmd_oracle_check(opt, budget);
    if (plotdata->parsed()) return cmd_plotdata(artifact_path, out_path);
  } catch (const OverlapError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitOverlap;
  } catch (const BudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}
