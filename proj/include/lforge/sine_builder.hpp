#pragma once

#include <cstdint>
#include <vector>

#include "lforge/build_config.hpp"
#include "lforge/discrepancy.hpp"
#include "lforge/intervals.hpp"
#include "lforge/trig_poly.hpp"

namespace lforge {

// Symmetric colouring of the family, stored on the base arcs; the extension
// rule is alpha(pi - I) = alpha(I), alpha(pi + I) = -alpha(I).
struct IntervalColouring {
  std::vector<std::int8_t> alpha0;
};

// Fractional start for the odd colouring: eps_hat[j-1] belongs to frequency
// 2j-1, and every entry must lie in [-1, 1].
struct FractionalStart {
  std::int64_t n = 0;
  std::vector<double> eps_hat;
};

struct TaylorGrid {
  std::int64_t n = 0;
  std::int64_t M = 0;  // 16n
  int ell_max = 0;     // least ell with (65+2ell)^2 >= 4n, so the first
                       // derivative order whose bound beats the trivial one
  static TaylorGrid make(std::int64_t n);
  double theta(std::int64_t k) const;  // (2k-1)pi/(4M), k in [1..M]
};

// int_I sin(j theta) dtheta = (cos(j a) - cos(j b)) / j for the arc
// [a pi/n, b pi/n]; the 4 K sqrt(n) factor is the caller's.
double interval_sine_integral(const LatticeArc& arc, std::int64_t n,
                              std::int64_t j);

struct AlphaChoice {
  IntervalColouring alpha;
  FractionalStart start;
  double eps_hat_max = 0.0;
  double K_used = 0.0;
  int attempts = 1;
};

// Chooses the symmetric interval colouring by a full colouring of the
// N-dimensional instance with vectors 4K sqrt(n) int_{I_i} sin((2j-1)theta)
// and budgets 14 sqrt(log(16n/N)), then integrates it into eps_hat.
// ||eps_hat||_inf > 1 is an error (after reseeded retries); K = 0 picks the
// mode default (2^7 paper-exact, a feasibility-derived value scaled).
AlphaChoice choose_alpha(const IntervalFamily& fam, const BuildConfig& cfg,
                         std::uint64_t seed);

// The (k, ell) derivative constraint system at the Taylor points, with
// x0 = eps_hat. Budgets 14 sqrt((9+ell) log 2) sum to n/16 over the full
// infinite family; orders above ell_max are provably vacuous and dropped.
DiscInstance taylor_constraints(const FractionalStart& start,
                                const TaylorGrid& grid);

struct OddSineChoice {
  TrigPoly s_o;
  Colouring colouring;
  // min over (k, ell) of 1 - |diff| / ((65+2ell) sqrt(n) (2n)^ell).
  double worst_margin = 0.0;
};

// Runs full_colour from eps_hat and returns the odd sine polynomial on
// {1, 3, ..., 2n-1}; the Taylor-point bounds are re-verified.
OddSineChoice solve_odd_sine(const FractionalStart& start,
                             const DiscInstance& inst, std::uint64_t seed);

double eval_s_hat(const FractionalStart& start, double theta);
double eval_s_hat_deriv(const FractionalStart& start, double theta, int ell);

struct SiBounds {
  double worst_margin = 0.0;  // most negative = violation
  std::int64_t cases = 0;
};

// Random lattice arcs (length <= 6 units) and offsets theta0: quadrature
// values of int_I sin(2n(theta-theta0))/(theta-theta0) must land in
// [4/3, 4] when theta0 is inside I and [-1, 2] otherwise.
SiBounds check_si_bounds(std::int64_t n, int trials, std::uint64_t seed);

// |lhs - rhs| of the product-to-quotient identity
// 4 sum_{j<n} sin((2j+1)theta0) sin((2j+1)theta)
//   = sin(2n(theta-theta0))/sin(theta-theta0)
//   - sin(2n(theta+theta0))/sin(theta+theta0).
double trig_identity_gap(std::int64_t n, double theta, double theta0);

}  // namespace lforge
