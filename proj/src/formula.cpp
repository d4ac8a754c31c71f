#include "stlmon/formula.hpp"

#include <algorithm>
#include <map>

namespace stlmon {

const char* op_name(TemporalOp op) {
  switch (op) {
    case TemporalOp::Always:
      return "G";
    case TemporalOp::Eventually:
      return "F";
    case TemporalOp::Until:
      return "U";
    case TemporalOp::UntilPrime:
      return "U'";
  }
  return "?";
}

Formula rewrite_until(const Formula& f) {
  Formula out;
  for (const TemporalAtom& atom : f.atoms) {
    if (atom.op != TemporalOp::Until) {
      out.atoms.push_back(atom);
      continue;
    }
    if (atom.window.a > 0) {
      TemporalAtom prefix;
      prefix.op = TemporalOp::Always;
      prefix.window = {0, atom.window.a - 1};
      prefix.region = atom.region;
      out.atoms.push_back(std::move(prefix));
    }
    TemporalAtom until_prime = atom;
    until_prime.op = TemporalOp::UntilPrime;
    out.atoms.push_back(std::move(until_prime));
  }
  return out;
}

std::pair<int, int> horizon(const Formula& f) {
  if (f.atoms.empty()) throw std::invalid_argument("horizon: empty formula");
  int s = f.atoms[0].window.a;
  int t = f.atoms[0].window.b;
  for (const TemporalAtom& atom : f.atoms) {
    s = std::min(s, atom.window.a);
    t = std::max(t, atom.window.b);
  }
  return {s, t};
}

SegmentedFormula segment(const Formula& f, const Box& state_space) {
  if (f.atoms.empty()) throw std::invalid_argument("segment: empty formula");
  for (const TemporalAtom& atom : f.atoms) {
    if (atom.op == TemporalOp::Until) {
      throw std::invalid_argument("segment: raw until present, apply rewrite_until first");
    }
  }

  const int t_phi = horizon(f).second;
  const int n_atoms = static_cast<int>(f.atoms.size());

  // Reject overlaps unless both atoms are "always".
  for (int i = 0; i < n_atoms; ++i) {
    for (int j = i + 1; j < n_atoms; ++j) {
      if (!f.atoms[i].window.overlaps(f.atoms[j].window)) continue;
      if (f.atoms[i].op == TemporalOp::Always && f.atoms[j].op == TemporalOp::Always) continue;
      throw OverlapError("overlapping windows [" + std::to_string(f.atoms[i].window.a) +
                         "," + std::to_string(f.atoms[i].window.b) + "] and [" +
                         std::to_string(f.atoms[j].window.a) + "," +
                         std::to_string(f.atoms[j].window.b) +
                         "] with non-always operator");
    }
  }

  // Per-instant cover: which atoms apply at each k. Runs of instants with an
  // identical cover become one segment; the empty cover becomes padding.
  std::vector<std::vector<int>> cover(static_cast<size_t>(t_phi) + 1);
  for (int i = 0; i < n_atoms; ++i) {
    for (int k = f.atoms[i].window.a; k <= f.atoms[i].window.b; ++k) {
      cover[static_cast<size_t>(k)].push_back(i);
    }
  }

  SegmentedFormula sf;
  sf.horizon = t_phi;
  int k = 0;
  while (k <= t_phi) {
    int end = k;
    while (end + 1 <= t_phi && cover[static_cast<size_t>(end + 1)] == cover[static_cast<size_t>(k)]) {
      ++end;
    }
    const std::vector<int>& atoms_here = cover[static_cast<size_t>(k)];
    Segment seg;
    seg.window = {k, end};
    if (atoms_here.empty()) {
      seg.op = TemporalOp::Always;
      seg.region = Region::from_box(state_space);
    } else if (f.atoms[atoms_here[0]].op == TemporalOp::Always) {
      seg.op = TemporalOp::Always;
      seg.region = f.atoms[atoms_here[0]].region;
      for (size_t i = 1; i < atoms_here.size(); ++i) {
        seg.region = Region::conjunction(std::move(seg.region), f.atoms[atoms_here[i]].region);
      }
    } else {
      // F or U' never overlaps, so the cover is that single atom and the run
      // spans its whole window.
      const TemporalAtom& atom = f.atoms[atoms_here[0]];
      seg.op = atom.op;
      seg.region = atom.region;
      seg.region2 = atom.region2;
    }
    sf.segments.push_back(std::move(seg));
    k = end + 1;
  }

  sf.segment_index.assign(static_cast<size_t>(t_phi) + 1, 0);
  for (int i = 0; i < sf.segment_count(); ++i) {
    for (int j = sf.segments[i].window.a; j <= sf.segments[i].window.b; ++j) {
      sf.segment_index[static_cast<size_t>(j)] = i;
    }
  }
  return sf;
}

std::string to_string(const TemporalAtom& atom) {
  const std::string window =
      "[" + std::to_string(atom.window.a) + "," + std::to_string(atom.window.b) + "]";
  if (atom.op == TemporalOp::Always || atom.op == TemporalOp::Eventually) {
    return std::string(op_name(atom.op)) + window + " (" + atom.region.to_string() + ")";
  }
  return "(" + atom.region.to_string() + ") " + op_name(atom.op) + window + " (" +
         atom.region2->to_string() + ")";
}

std::string to_string(const Formula& f) {
  std::string out;
  for (size_t i = 0; i < f.atoms.size(); ++i) {
    if (i > 0) out += " & ";
    out += to_string(f.atoms[i]);
  }
  return out;
}

Formula as_formula(const SegmentedFormula& sf) {
  Formula f;
  for (const Segment& seg : sf.segments) {
    TemporalAtom atom;
    atom.op = seg.op;
    atom.window = seg.window;
    atom.region = seg.region;
    atom.region2 = seg.region2;
    f.atoms.push_back(std::move(atom));
  }
  return f;
}

std::string to_string(const SegmentedFormula& sf) { return to_string(as_formula(sf)); }

}  // namespace stlmon
