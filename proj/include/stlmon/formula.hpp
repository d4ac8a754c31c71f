#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stlmon/region.hpp"

namespace stlmon {

enum class TemporalOp { Always, Eventually, Until, UntilPrime };

const char* op_name(TemporalOp op);

/* Discrete time window [a,b], a <= b, both non-negative instants. */
struct TimeWindow {
  int a = 0;
  int b = 0;

  bool contains(int k) const { return a <= k && k <= b; }
  bool overlaps(const TimeWindow& o) const { return a <= o.b && o.a <= b; }
  bool operator==(const TimeWindow&) const = default;
};

/* One temporal operator applied to region predicates. G/F carry a single
 * region; U/U' carry the pair (H1, H2). */
struct TemporalAtom {
  TemporalOp op = TemporalOp::Always;
  TimeWindow window;
  Region region = Region::whole_space();
  std::optional<Region> region2;

  bool operator==(const TemporalAtom&) const = default;
};

/* Conjunction of temporal atoms; never empty. */
struct Formula {
  std::vector<TemporalAtom> atoms;

  bool operator==(const Formula&) const = default;
};

/* Thrown by segment() when two atoms overlap in time and are not both
 * "always" atoms. */
class OverlapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Segment {
  TemporalOp op = TemporalOp::Always;  // Always, Eventually or UntilPrime
  TimeWindow window;
  Region region = Region::whole_space();      // G/F region, or H1 for U'
  std::optional<Region> region2;              // H2 for U'

  bool operator==(const Segment&) const = default;
};

/* Conjunction of single-operator sub-formulae whose windows partition
 * [0, horizon]. */
struct SegmentedFormula {
  std::vector<Segment> segments;
  int horizon = 0;
  std::vector<int> segment_index;  // i_k for k in [0, horizon], 0-based

  int segment_at(int k) const { return segment_index.at(static_cast<size_t>(k)); }
  TemporalOp op_at(int k) const { return segments[segment_at(k)].op; }
  int segment_count() const { return static_cast<int>(segments.size()); }

  bool operator==(const SegmentedFormula&) const = default;
};

/* Replace each standard until Phi1 U[a,b] Phi2 by the pair
 * { G[0,a-1] Phi1, Phi1 U'[a,b] Phi2 }; the G prefix is omitted when a = 0.
 * Other atoms pass through unchanged. */
Formula rewrite_until(const Formula& f);

/* Normalise a rewritten formula into a segmented conjunction partitioning
 * [0, horizon]: atoms sorted by window, gaps padded with G over the state
 * box, overlapping always-always pairs split with intersected regions.
 * Throws OverlapError for any other overlap. */
SegmentedFormula segment(const Formula& f, const Box& state_space);

/* (S, T): first and last instants the satisfaction of f depends on. */
std::pair<int, int> horizon(const Formula& f);

std::string to_string(const TemporalAtom& atom);
std::string to_string(const Formula& f);
std::string to_string(const SegmentedFormula& sf);

/* View a segmented formula as a plain formula again (for trace evaluation). */
Formula as_formula(const SegmentedFormula& sf);

}  // namespace stlmon
