#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "lforge/cosine_builder.hpp"
#include "lforge/sign_seq.hpp"
#include "lforge/trig_poly.hpp"

namespace lforge::kernels {

// OpenMP kernels. Work is split into fixed-size chunks with chunk-local
// phasor seeding, so results are bit-identical for any thread count. The
// ref:: versions are plain per-point evaluations kept as oracles for the
// fast paths (and as the serial baseline for the benchmark).

// sum_k s_k e^{i k theta} at each theta.
std::vector<std::complex<double>> eval_many(const SignSeq& s,
                                            std::span<const double> thetas);

// min over {x0 + j*step <= x1} of max_{k<=kmax} |Re H^{(k)}(x)|.
double scan_floor(const HSeries& hs, double x0, double x1, double step,
                  int kmax);

// Grid minimum of Re H (signed) over [x0, x1].
double min_re_h(const HSeries& hs, double x0, double x1, double step);

// Certified good/bad verdict for the intervals I_j = [j*eta, (j+1)*eta],
// j < half. verdict[j] == 1 means min |Re H| >= tau everywhere on I_j,
// certified through the |H'| <= lip bound; borderline intervals come back 0.
std::vector<std::uint8_t> classify_base(const HSeries& hs, std::int64_t half,
                                        double eta, double tau, double lip);

// Certified minimum of |f| over closed arcs, sampling at spacing <= h with
// Lipschitz constant lip: returns {grid_min - lip*h/2, grid_min, points}.
struct ArcMin {
  double certified = 0.0;
  double grid_min = 0.0;
  std::int64_t points = 0;
};
ArcMin min_abs_on_arcs(const TrigPoly& f,
                       const std::vector<std::pair<double, double>>& arcs,
                       double h, double lip);

namespace ref {
std::vector<std::complex<double>> eval_many(const SignSeq& s,
                                            std::span<const double> thetas);
double scan_floor(const HSeries& hs, double x0, double x1, double step,
                  int kmax);
std::vector<std::uint8_t> classify_base(const HSeries& hs, std::int64_t half,
                                        double eta, double tau, double lip);
ArcMin min_abs_on_arcs(const TrigPoly& f,
                       const std::vector<std::pair<double, double>>& arcs,
                       double h, double lip);
}  // namespace ref

}  // namespace lforge::kernels
