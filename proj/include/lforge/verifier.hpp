#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "lforge/build_config.hpp"
#include "lforge/sign_seq.hpp"

namespace lforge {

// Certified unit-circle extrema of |Q| for a sign sequence, normalised by
// sqrt(n): the true min/max over the whole circle lie inside
// [min_ratio, grid min / sqrt(n)] and [grid max / sqrt(n), max_ratio].
struct FlatnessReport {
  std::int64_t n = 0;  // normalisation: ratios are |Q| / sqrt(n)
  std::int64_t degree = 0;
  std::int64_t grid_size = 0;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  double lipschitz_margin = 0.0;  // absolute margin added/subtracted
  double parseval_check = 0.0;    // |mean |Q|^2 / (deg+1) - 1|
  std::string mode = "verify";
  std::uint64_t seed = 0;
  double target_min = 0.0;
  double target_max = 0.0;
  bool pass = false;

  std::string to_json() const;
  static FlatnessReport from_json(const std::string& text);
};

// Values sum_k q_k w^{jk}, w = e^{2 pi i / grid_size}, via FFT.
// grid_size must be a power of two with grid_size >= 2 (degree + 1).
std::vector<std::complex<double>> eval_grid(const SignSeq& q,
                                            std::int64_t grid_size);

// Bernstein-certified extrema; grid_size must be a power of two with
// grid_size >= 16 (degree + 1). norm_n <= 0 defaults to degree + 1.
FlatnessReport certify_flatness(const SignSeq& q, std::int64_t grid_size,
                                std::int64_t norm_n = 0);

struct BoundsTargets {
  double min_ratio = 0.0;
  double max_ratio = 0.0;
};

// Mode defaults: paper-exact compares min against delta = 2^-8 gamma^{7/2}
// and max against 2^12; scaled uses the pinned targets (0.05, 2^12).
BoundsTargets default_targets(Mode mode, double delta);

struct BoundsCheck {
  bool pass = false;
  double min_margin = 0.0;  // min_ratio - target_min
  double max_margin = 0.0;  // target_max - max_ratio
};

BoundsCheck check_theorem_bounds(const FlatnessReport& rep,
                                 const BoundsTargets& targets);

}  // namespace lforge
