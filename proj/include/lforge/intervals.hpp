#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lforge/build_config.hpp"
#include "lforge/trig_poly.hpp"

namespace lforge {

// Closed arc [a*pi/n, b*pi/n] on R/2piZ, endpoints on the (pi/n)-lattice.
struct LatticeArc {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t len() const { return b - a; }
};

// Suitable/well-separated candidate family. `base` holds the arcs inside
// [0, pi/2] (lattice indices in [0, n/2]); `full` is the closure under
// theta -> pi - theta and theta -> pi + theta, 4 arcs per base arc, with
// lattice indices in [0, 2n). The symmetry clauses hold by construction;
// the remaining clauses are checked and reported in `flags`.
struct IntervalFamily {
  std::int64_t n = 0;
  std::vector<LatticeArc> base;
  std::vector<LatticeArc> full;
  std::string flags;  // violated clause letters among "abcdef", sorted

  std::int64_t N() const { return static_cast<std::int64_t>(base.size()); }

  std::string to_json() const;
  static IntervalFamily from_json(const std::string& text);
};

// Partitions R/4TpiZ into 2n intervals of length eta = 2T pi / n, certifies
// each against |Re H| >= threshold, collects maximal bad runs, and rescales
// them by theta = x/2T into lattice arcs. In paper-exact mode a violated
// clause raises a validation error; in scaled mode violations land in flags.
IntervalFamily classify_intervals(const BuildConfig& cfg);

// Clause letters from Definition-style checks (a)-(f); empty when the family
// is suitable and well-separated. Violations are data, not errors.
std::string validate_family(const IntervalFamily& fam, const BuildConfig& cfg);

// Certified lower bound for min |c| over the complement of the family, via
// grid evaluation minus the Bernstein-Lipschitz correction
// |c'| <= deg(c) * sup|c|. `sup_bound` must upper-bound sup|c| (pass 0 to
// use the coefficient-count bound). Returns +inf for an empty complement.
double min_abs_outside(const TrigPoly& c, const IntervalFamily& fam,
                       std::int64_t grid, double sup_bound = 0.0);

}  // namespace lforge
