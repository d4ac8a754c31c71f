#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "stlmon/formula.hpp"
#include "stlmon/gridset.hpp"
#include "stlmon/reach.hpp"
#include "stlmon/system.hpp"

namespace stlmon {

class ArtifactError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/* Time-indexed family of feasible sets X_k and exclusive feasible sets
 * Xhat_k for k in [0, horizon], plus the provenance needed to pair the
 * family with a formula and system at monitoring time. */
struct FeasibleSets {
  int horizon = 0;
  std::vector<GridSet> feasible;   // X_k, index k
  std::vector<GridSet> exclusive;  // Xhat_k, index k

  std::string formula_sha256;  // hash of the canonical segmented formula text
  std::string system_name;
  ReachConfig reach;
  RasterMode mode = RasterMode::Inner;
  GeometryPtr geometry;
};

/* Hash pairing artifacts with formulae: SHA-256 of to_string(sf). */
std::string formula_hash(const SegmentedFormula& sf);

/* Backward computation of every X_k and Xhat_k, from the horizon down to
 * instant 0, starting from the full grid past the horizon. Regions are
 * rasterized in `mode` (inner by default). */
FeasibleSets compute_feasible_sets(const SegmentedFormula& sf, const SystemModel& model,
                                   GeometryPtr geometry, const ReachConfig& cfg,
                                   RasterMode mode = RasterMode::Inner);

/* JSON artifact with run-length encoded masks and a content checksum.
 * Serialization is byte-deterministic for fixed inputs. */
std::string serialize_artifact(const FeasibleSets& fs);
void save_artifact(const FeasibleSets& fs, const std::filesystem::path& path);

FeasibleSets parse_artifact(const std::string& text);
FeasibleSets load_artifact(const std::filesystem::path& path);

/* Alternating run lengths, false first; exposed for tests. */
std::vector<size_t> rle_encode(const std::vector<bool>& mask);
std::vector<bool> rle_decode(const std::vector<size_t>& runs, size_t expected_size);

}  // namespace stlmon
