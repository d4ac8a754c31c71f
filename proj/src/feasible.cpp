#include "stlmon/feasible.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "stlmon/digest.hpp"

namespace stlmon {

using nlohmann::json;

std::string formula_hash(const SegmentedFormula& sf) { return sha256_hex(to_string(sf)); }

FeasibleSets compute_feasible_sets(const SegmentedFormula& sf, const SystemModel& model,
                                   GeometryPtr geometry, const ReachConfig& cfg,
                                   RasterMode mode) {
  for (const Segment& seg : sf.segments) {
    int m = seg.region.max_axis();
    if (seg.region2) m = std::max(m, seg.region2->max_axis());
    if (m >= model.state_dim) {
      throw std::invalid_argument("compute_feasible_sets: formula references dimension x" +
                                  std::to_string(m + 1) + " beyond the system dimension");
    }
  }

  const int t_phi = sf.horizon;
  const GridSet full(geometry, true);

  // Per-segment rasters: the stay region for G, the target for F, and the
  // (H1, H1 and H2) pair for U'.
  std::vector<GridSet> stay, goal;
  for (const Segment& seg : sf.segments) {
    switch (seg.op) {
      case TemporalOp::Always:
        stay.push_back(rasterize(seg.region, geometry, mode));
        goal.emplace_back();
        break;
      case TemporalOp::Eventually:
        stay.emplace_back();
        goal.push_back(rasterize(seg.region, geometry, mode));
        break;
      case TemporalOp::UntilPrime:
        stay.push_back(rasterize(seg.region, geometry, mode));
        goal.push_back(rasterize(Region::conjunction(seg.region, *seg.region2), geometry, mode));
        break;
      default:
        throw std::invalid_argument("compute_feasible_sets: raw until in segmented formula");
    }
  }

  FeasibleSets fs;
  fs.horizon = t_phi;
  fs.feasible.assign(static_cast<size_t>(t_phi) + 1, GridSet());
  fs.exclusive.assign(static_cast<size_t>(t_phi) + 1, GridSet());
  fs.formula_sha256 = formula_hash(sf);
  fs.system_name = model.name;
  fs.reach = cfg;
  fs.mode = mode;
  fs.geometry = geometry;

  GridSet next = full;  // X_{k+1}, seeded with X_{T+1} = the whole grid
  for (int k = t_phi; k >= 0; --k) {
    const int i = sf.segment_at(k);
    const Segment& seg = sf.segments[static_cast<size_t>(i)];
    const bool last_of_segment = (k == seg.window.b);

    // Exclusive set: unrestricted one-step chain from X_{b+1}.
    const GridSet& hat_source =
        last_of_segment ? next : fs.exclusive[static_cast<size_t>(k) + 1];
    fs.exclusive[static_cast<size_t>(k)] = one_step_set(hat_source, full, model, cfg);

    GridSet current;
    switch (seg.op) {
      case TemporalOp::Always:
        current = one_step_set(next, stay[static_cast<size_t>(i)], model, cfg);
        break;
      case TemporalOp::Eventually: {
        GridSet satisfied_now = set_intersect(goal[static_cast<size_t>(i)],
                                              fs.exclusive[static_cast<size_t>(k)]);
        current = last_of_segment
                      ? std::move(satisfied_now)
                      : set_union(satisfied_now, one_step_set(next, full, model, cfg));
        break;
      }
      case TemporalOp::UntilPrime: {
        GridSet satisfied_now = set_intersect(goal[static_cast<size_t>(i)],
                                              fs.exclusive[static_cast<size_t>(k)]);
        current = last_of_segment
                      ? std::move(satisfied_now)
                      : set_union(satisfied_now,
                                  one_step_set(next, stay[static_cast<size_t>(i)], model, cfg));
        break;
      }
      default:
        throw std::logic_error("compute_feasible_sets: unreachable");
    }
    fs.feasible[static_cast<size_t>(k)] = current;
    next = std::move(current);
  }
  return fs;
}

std::vector<size_t> rle_encode(const std::vector<bool>& mask) {
  std::vector<size_t> runs;
  bool expected = false;
  size_t i = 0;
  while (i < mask.size()) {
    size_t run = 0;
    while (i < mask.size() && mask[i] == expected) {
      ++run;
      ++i;
    }
    runs.push_back(run);
    expected = !expected;
  }
  if (runs.empty()) runs.push_back(0);
  return runs;
}

std::vector<bool> rle_decode(const std::vector<size_t>& runs, size_t expected_size) {
  std::vector<bool> mask;
  mask.reserve(expected_size);
  bool value = false;
  for (size_t run : runs) {
    for (size_t i = 0; i < run; ++i) mask.push_back(value);
    value = !value;
  }
  if (mask.size() != expected_size) {
    throw ArtifactError("artifact: run-length data does not match the declared grid size");
  }
  return mask;
}

namespace {

json artifact_body(const FeasibleSets& fs) {
  json grid;
  grid["bounds"] = json::array();
  for (const Interval& iv : fs.geometry->bounds.dims) {
    grid["bounds"].push_back(json::array({iv.lo, iv.hi}));
  }
  grid["cells"] = fs.geometry->cells;

  json reach;
  reach["control_samples"] = fs.reach.control_samples;
  reach["scheme"] =
      fs.reach.scheme == CellSampleScheme::Center ? "center" : "corners_center";
  reach["epsilon"] = fs.reach.epsilon;
  reach["mode"] = fs.mode == RasterMode::Inner ? "inner" : "outer";

  json sets = json::array();
  for (int k = 0; k <= fs.horizon; ++k) {
    json entry;
    entry["k"] = k;
    entry["X"] = rle_encode(fs.feasible[static_cast<size_t>(k)].mask());
    entry["Xhat"] = rle_encode(fs.exclusive[static_cast<size_t>(k)].mask());
    sets.push_back(std::move(entry));
  }

  json body;
  body["version"] = 1;
  body["formula_sha256"] = fs.formula_sha256;
  body["system"] = fs.system_name;
  body["grid"] = std::move(grid);
  body["reach"] = std::move(reach);
  body["horizon"] = fs.horizon;
  body["sets"] = std::move(sets);
  return body;
}

}  // namespace

std::string serialize_artifact(const FeasibleSets& fs) {
  json body = artifact_body(fs);
  body["checksum"] = sha256_hex(body.dump());
  return body.dump(2) + "\n";
}

void save_artifact(const FeasibleSets& fs, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ArtifactError("cannot write artifact " + path.string());
  out << serialize_artifact(fs);
}

FeasibleSets parse_artifact(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ArtifactError(std::string("corrupt artifact: ") + e.what());
  }
  try {
    if (!doc.contains("version") || doc["version"].get<int>() != 1) {
      throw ArtifactError("artifact: unsupported version");
    }
    if (!doc.contains("checksum")) throw ArtifactError("artifact: missing checksum");
    std::string stored = doc["checksum"].get<std::string>();
    doc.erase("checksum");
    if (sha256_hex(doc.dump()) != stored) {
      throw ArtifactError("artifact: checksum mismatch, file is corrupt");
    }

    FeasibleSets fs;
    fs.formula_sha256 = doc.at("formula_sha256").get<std::string>();
    fs.system_name = doc.at("system").get<std::string>();
    fs.horizon = doc.at("horizon").get<int>();

    Box bounds;
    for (const auto& pair : doc.at("grid").at("bounds")) {
      bounds.dims.push_back({pair.at(0).get<double>(), pair.at(1).get<double>()});
    }
    std::vector<int> cells = doc.at("grid").at("cells").get<std::vector<int>>();
    fs.geometry = std::make_shared<GridGeometry>(std::move(bounds), std::move(cells));

    const json& reach = doc.at("reach");
    fs.reach.control_samples = reach.at("control_samples").get<std::vector<int>>();
    std::string scheme = reach.at("scheme").get<std::string>();
    if (scheme == "center") {
      fs.reach.scheme = CellSampleScheme::Center;
    } else if (scheme == "corners_center") {
      fs.reach.scheme = CellSampleScheme::CornersAndCenter;
    } else {
      throw ArtifactError("artifact: unknown sample scheme '" + scheme + "'");
    }
    fs.reach.epsilon = reach.at("epsilon").get<double>();
    std::string mode = reach.at("mode").get<std::string>();
    if (mode == "inner") {
      fs.mode = RasterMode::Inner;
    } else if (mode == "outer") {
      fs.mode = RasterMode::Outer;
    } else {
      throw ArtifactError("artifact: unknown raster mode '" + mode + "'");
    }

    const json& sets = doc.at("sets");
    if (static_cast<int>(sets.size()) != fs.horizon + 1) {
      throw ArtifactError("artifact: set count does not match the horizon");
    }
    fs.feasible.assign(static_cast<size_t>(fs.horizon) + 1, GridSet());
    fs.exclusive.assign(static_cast<size_t>(fs.horizon) + 1, GridSet());
    for (const auto& entry : sets) {
      int k = entry.at("k").get<int>();
      if (k < 0 || k > fs.horizon) throw ArtifactError("artifact: set instant out of range");
      GridSet x(fs.geometry), xhat(fs.geometry);
      x.mask() = rle_decode(entry.at("X").get<std::vector<size_t>>(), fs.geometry->cell_count());
      xhat.mask() =
          rle_decode(entry.at("Xhat").get<std::vector<size_t>>(), fs.geometry->cell_count());
      fs.feasible[static_cast<size_t>(k)] = std::move(x);
      fs.exclusive[static_cast<size_t>(k)] = std::move(xhat);
    }
    return fs;
  } catch (const json::exception& e) {
    throw ArtifactError(std::string("artifact: schema violation: ") + e.what());
  }
}

FeasibleSets load_artifact(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArtifactError("cannot open artifact " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_artifact(buf.str());
}

}  // namespace stlmon
