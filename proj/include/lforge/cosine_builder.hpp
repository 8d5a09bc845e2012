#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "lforge/build_config.hpp"
#include "lforge/trig_poly.hpp"

namespace lforge {

// Rescaled cosine core H(x) = e^{ix} alpha(x) + e^{2ix} beta(x) with
// alpha(x) = 2^{-(t+1)/2} P_t(e^{ix/T}), beta likewise with Q_t; satisfies
// c(theta) = 2^{(t+1)/2} Re H(2 T theta). Stored as the explicit frequency
// sum so every derivative is an exact term-by-term expression.
struct HSeries {
  int t = 1;
  std::int64_t T = 0;
  double scale = 1.0;  // 2^{-(t+1)/2}
  std::vector<double> p, q;

  static HSeries make(const BuildConfig& cfg);
};

struct HEvaluation {
  double x = 0.0;
  int max_deriv = 0;
  std::array<std::complex<double>, 5> h{};  // H^{(k)}(x), k <= max_deriv
  std::complex<double> alpha{}, beta{};
};

// Cosine polynomial on 2*({T..T+2^t-1} u {2T..2T+2^t-1}): P_t signs in the
// first window, Q_t signs in the second.
TrigPoly build_cosine(const BuildConfig& cfg);

// Even sine polynomial on 2*([n] \ C'), signs from the prefix P_{<(n+1)}.
TrigPoly build_even_sine(const BuildConfig& cfg);

HEvaluation eval_H(const HSeries& hs, double x, int max_deriv);
HEvaluation eval_H(const BuildConfig& cfg, double x, int max_deriv);

// alpha^{(k)}(x) (and with `use_q`, beta^{(k)}): exact term-by-term sums,
// used by the derivative-decay checks.
std::complex<double> eval_ab_deriv(const HSeries& hs, double x, int k,
                                   bool use_q);

// Rigorous sup bound on |H^{(k)}| for the configured shift:
// (2^k + 1) + sum_{j>=1} C(k,j) (1 + 2^{k-j}) 2^{-shift*j}.
double h_deriv_cap(int k, int shift);

// Grid minimum over one period of max_{k<=3} |Re H^{(k)}(x)|.
double scan_derivative_floor(const BuildConfig& cfg, double grid_step);

// Grid minimum of Re H over [x0, x1] (signed, not absolute).
double min_re_h_on(const BuildConfig& cfg, double x0, double x1, double step);

}  // namespace lforge
