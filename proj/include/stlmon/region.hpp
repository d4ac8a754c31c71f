#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace stlmon {

using Point = std::vector<double>;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double x) const { return lo <= x && x <= hi; }
  bool operator==(const Interval&) const = default;
};

/* Axis-aligned hyper-rectangle; also used for state/control bounds. */
struct Box {
  std::vector<Interval> dims;

  int dim() const { return static_cast<int>(dims.size()); }
  bool contains(std::span<const double> x) const;
  bool operator==(const Box&) const = default;
};

/* State-space region built from per-dimension interval constraints and
 * boolean connectives. Connectives are binary and left-associated, matching
 * the concrete predicate grammar. */
class Region {
 public:
  enum class Kind { True, AxisInterval, Not, And, Or };

  static Region whole_space();
  static Region axis_interval(int dim, double lo, double hi);
  static Region negation(Region r);
  static Region conjunction(Region lhs, Region rhs);
  static Region disjunction(Region lhs, Region rhs);
  /* Conjunction of per-dimension interval constraints covering `box`. */
  static Region from_box(const Box& box);

  Kind kind() const { return kind_; }
  int axis() const { return axis_; }
  const Interval& interval() const { return interval_; }
  const Region& child(int i) const { return children_[i]; }
  int child_count() const { return static_cast<int>(children_.size()); }

  /* Pointwise membership with closed intervals. */
  bool contains(std::span<const double> x) const;

  /* Largest 0-based dimension index referenced; -1 when none. */
  int max_axis() const;

  /* Predicate-expression text, re-parseable by the formula parser. */
  std::string to_string() const;

  bool operator==(const Region& other) const;

 private:
  Region() = default;

  Kind kind_ = Kind::True;
  int axis_ = 0;
  Interval interval_{};
  std::vector<Region> children_;
};

std::string format_real(double v);

}  // namespace stlmon
