#include "stlmon/region.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace stlmon {

bool Box::contains(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim()) {
    throw std::invalid_argument("Box::contains: dimension mismatch");
  }
  for (int d = 0; d < dim(); ++d) {
    if (!dims[d].contains(x[d])) return false;
  }
  return true;
}

Region Region::whole_space() {
  Region r;
  r.kind_ = Kind::True;
  return r;
}

Region Region::axis_interval(int dim, double lo, double hi) {
  if (dim < 0) throw std::invalid_argument("region: negative dimension index");
  if (lo > hi) throw std::invalid_argument("region: reversed interval");
  Region r;
  r.kind_ = Kind::AxisInterval;
  r.axis_ = dim;
  r.interval_ = {lo, hi};
  return r;
}

Region Region::negation(Region r) {
  Region out;
  out.kind_ = Kind::Not;
  out.children_.push_back(std::move(r));
  return out;
}

Region Region::conjunction(Region lhs, Region rhs) {
  Region out;
  out.kind_ = Kind::And;
  out.children_.push_back(std::move(lhs));
  out.children_.push_back(std::move(rhs));
  return out;
}

Region Region::disjunction(Region lhs, Region rhs) {
  Region out;
  out.kind_ = Kind::Or;
  out.children_.push_back(std::move(lhs));
  out.children_.push_back(std::move(rhs));
  return out;
}

Region Region::from_box(const Box& box) {
  if (box.dim() == 0) return whole_space();
  Region r = axis_interval(0, box.dims[0].lo, box.dims[0].hi);
  for (int d = 1; d < box.dim(); ++d) {
    r = conjunction(std::move(r), axis_interval(d, box.dims[d].lo, box.dims[d].hi));
  }
  return r;
}

bool Region::contains(std::span<const double> x) const {
  switch (kind_) {
    case Kind::True:
      return true;
    case Kind::AxisInterval:
      if (axis_ >= static_cast<int>(x.size())) {
        throw std::invalid_argument("region: dimension out of range of point");
      }
      return interval_.contains(x[axis_]);
    case Kind::Not:
      return !children_[0].contains(x);
    case Kind::And:
      return children_[0].contains(x) && children_[1].contains(x);
    case Kind::Or:
      return children_[0].contains(x) || children_[1].contains(x);
  }
  return false;
}

int Region::max_axis() const {
  switch (kind_) {
    case Kind::True:
      return -1;
    case Kind::AxisInterval:
      return axis_;
    default: {
      int m = -1;
      for (const Region& c : children_) m = std::max(m, c.max_axis());
      return m;
    }
  }
}

bool Region::operator==(const Region& other) const {
  if (kind_ != other.kind_) return false;
  switch (kind_) {
    case Kind::True:
      return true;
    case Kind::AxisInterval:
      return axis_ == other.axis_ && interval_ == other.interval_;
    default:
      if (children_.size() != other.children_.size()) return false;
      for (size_t i = 0; i < children_.size(); ++i) {
        if (!(children_[i] == other.children_[i])) return false;
      }
      return true;
  }
}

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  double back = std::strtod(buf, nullptr);
  if (back == v) {
    // prefer the shortest representation that still round-trips
    for (int prec = 1; prec <= 16; ++prec) {
      char shorter[40];
      std::snprintf(shorter, sizeof(shorter), "%.*g", prec, v);
      if (std::strtod(shorter, nullptr) == v) return shorter;
    }
  }
  return buf;
}

namespace {

/* Print with the grammar's flat left-associated connective chains: the left
 * operand of a connective prints bare, the right operand is parenthesised
 * whenever it is itself a connective. */
std::string print_term(const Region& r);

std::string print_expr(const Region& r) {
  switch (r.kind()) {
    case Region::Kind::And:
      return print_expr(r.child(0)) + " & " + print_term(r.child(1));
    case Region::Kind::Or:
      return print_expr(r.child(0)) + " | " + print_term(r.child(1));
    default:
      return print_term(r);
  }
}

std::string print_term(const Region& r) {
  switch (r.kind()) {
    case Region::Kind::True:
      return "true";
    case Region::Kind::AxisInterval:
      return "x" + std::to_string(r.axis() + 1) + " in [" +
             format_real(r.interval().lo) + "," + format_real(r.interval().hi) + "]";
    case Region::Kind::Not:
      return "!" + print_term(r.child(0));
    default:
      return "(" + print_expr(r) + ")";
  }
}

}  // namespace

std::string Region::to_string() const { return print_expr(*this); }

}  // namespace stlmon
