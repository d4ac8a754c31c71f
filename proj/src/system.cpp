#include "stlmon/system.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace stlmon {
namespace {

using nlohmann::json;

void check_dims(const SystemModel& model, std::span<const double> x,
                std::span<const double> u) {
  if (static_cast<int>(x.size()) != model.state_dim) {
    throw std::invalid_argument("step_dynamics: state dimension mismatch");
  }
  if (static_cast<int>(u.size()) != model.control_dim) {
    throw std::invalid_argument("step_dynamics: control dimension mismatch");
  }
}

Point builtin_step(const std::string& name, std::span<const double> x,
                   std::span<const double> u) {
  if (name == "case1") {
    if (x.size() != 1 || u.size() != 1) {
      throw std::invalid_argument("builtin 'case1' expects dim = control_dim = 1");
    }
    return {0.2 * x[0] * x[0] + 0.16 * x[0] + u[0]};
  }
  if (name == "case2") {
    if (x.size() != 2 || u.size() != 2) {
      throw std::invalid_argument("builtin 'case2' expects dim = control_dim = 2");
    }
    return {x[0] + 0.9 * u[0], x[1] + 0.8 * u[1]};
  }
  std::string known;
  for (const std::string& n : builtin_names()) known += (known.empty() ? "" : ", ") + n;
  throw std::invalid_argument("unknown builtin dynamics '" + name + "' (known: " + known + ")");
}

Box parse_bounds(const json& arr, int expected_dim, const char* what) {
  if (!arr.is_array() || static_cast<int>(arr.size()) != expected_dim) {
    throw std::invalid_argument(std::string("system config: ") + what +
                                " must list one [lo,hi] pair per dimension");
  }
  Box box;
  for (const auto& pair : arr) {
    if (!pair.is_array() || pair.size() != 2) {
      throw std::invalid_argument(std::string("system config: malformed bound in ") + what);
    }
    double lo = pair[0].get<double>();
    double hi = pair[1].get<double>();
    if (lo > hi) {
      throw std::invalid_argument(std::string("system config: empty interval in ") + what);
    }
    box.dims.push_back({lo, hi});
  }
  return box;
}

std::vector<std::vector<double>> parse_matrix(const json& m, int rows, int cols,
                                              const char* what) {
  if (!m.is_array() || static_cast<int>(m.size()) != rows) {
    throw std::invalid_argument(std::string("system config: matrix ") + what +
                                " has wrong shape");
  }
  std::vector<std::vector<double>> out;
  for (const auto& row : m) {
    if (!row.is_array() || static_cast<int>(row.size()) != cols) {
      throw std::invalid_argument(std::string("system config: matrix ") + what +
                                  " has wrong shape");
    }
    out.push_back(row.get<std::vector<double>>());
  }
  return out;
}

}  // namespace

void step_dynamics_into(const SystemModel& model, std::span<const double> x,
                        std::span<const double> u, std::span<double> out) {
  switch (model.kind) {
    case DynamicsKind::Affine:
      for (int i = 0; i < model.state_dim; ++i) {
        double v = 0.0;
        for (int j = 0; j < model.state_dim; ++j) v += model.a[i][j] * x[j];
        for (int j = 0; j < model.control_dim; ++j) v += model.b[i][j] * u[j];
        out[static_cast<size_t>(i)] = v;
      }
      return;
    case DynamicsKind::Poly1d: {
      double v = 0.0;
      // Horner evaluation of sum c_j x^j
      for (auto it = model.coeffs.rbegin(); it != model.coeffs.rend(); ++it) {
        v = v * x[0] + *it;
      }
      out[0] = v + u[0];
      return;
    }
    case DynamicsKind::Builtin: {
      Point next = builtin_step(model.builtin, x, u);
      std::copy(next.begin(), next.end(), out.begin());
      return;
    }
  }
  throw std::logic_error("step_dynamics: unreachable");
}

Point step_dynamics(const SystemModel& model, std::span<const double> x,
                    std::span<const double> u, bool unchecked) {
  check_dims(model, x, u);
  if (!unchecked) {
    if (!model.state_bounds.contains(x)) {
      throw std::invalid_argument("step_dynamics: state outside bounds (pass unchecked to probe)");
    }
    if (!model.control_bounds.contains(u)) {
      throw std::invalid_argument("step_dynamics: control outside bounds (pass unchecked to probe)");
    }
  }
  Point next(static_cast<size_t>(model.state_dim), 0.0);
  step_dynamics_into(model, x, u, next);
  return next;
}

Trace simulate(const SystemModel& model, const Point& x,
               const std::vector<Point>& controls, int start_instant) {
  Trace trace;
  trace.start = start_instant + 1;
  Point current = x;
  for (const Point& u : controls) {
    if (!model.control_bounds.contains(u)) {
      throw std::invalid_argument("simulate: control outside bounds");
    }
    current = step_dynamics(model, current, u, /*unchecked=*/true);
    trace.states.push_back(current);
  }
  return trace;
}

std::vector<std::string> builtin_names() { return {"case1", "case2"}; }

SystemModel load_system(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("system config: not valid JSON: ") + e.what());
  }
  SystemModel model;
  try {
    model.name = doc.at("name").get<std::string>();
    model.state_dim = doc.at("dim").get<int>();
    model.control_dim = doc.at("control_dim").get<int>();
    if (model.state_dim < 1 || model.control_dim < 1) {
      throw std::invalid_argument("system config: dimensions must be positive");
    }
    model.state_bounds = parse_bounds(doc.at("state_bounds"), model.state_dim, "state_bounds");
    model.control_bounds =
        parse_bounds(doc.at("control_bounds"), model.control_dim, "control_bounds");

    const json& dyn = doc.at("dynamics");
    std::string kind = dyn.at("kind").get<std::string>();
    if (kind == "affine") {
      model.kind = DynamicsKind::Affine;
      model.a = parse_matrix(dyn.at("A"), model.state_dim, model.state_dim, "A");
      model.b = parse_matrix(dyn.at("B"), model.state_dim, model.control_dim, "B");
    } else if (kind == "poly1d") {
      if (model.state_dim != 1 || model.control_dim != 1) {
        throw std::invalid_argument("system config: poly1d requires dim = control_dim = 1");
      }
      model.kind = DynamicsKind::Poly1d;
      model.coeffs = dyn.at("coeffs").get<std::vector<double>>();
      if (model.coeffs.empty()) {
        throw std::invalid_argument("system config: poly1d needs at least one coefficient");
      }
    } else if (kind == "builtin") {
      model.kind = DynamicsKind::Builtin;
      model.builtin = dyn.at("name").get<std::string>();
      Point probe_x(static_cast<size_t>(model.state_dim), 0.0);
      Point probe_u(static_cast<size_t>(model.control_dim), 0.0);
      builtin_step(model.builtin, probe_x, probe_u);  // rejects unknown names
    } else {
      throw std::invalid_argument("system config: unknown dynamics kind '" + kind + "'");
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("system config: schema violation: ") + e.what());
  }
  return model;
}

SystemModel load_system_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open system config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_system(buf.str());
}

}  // namespace stlmon
