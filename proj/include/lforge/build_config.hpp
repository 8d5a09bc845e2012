#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "lforge/common.hpp"

namespace lforge {

enum class Mode { paper_exact, scaled };

Mode mode_from_string(const std::string& s);
const char* to_string(Mode m);

// Parameters of one construction run.
//
// The cosine part lives on frequencies 2*({T..T+2^t-1} u {2T..2T+2^t-1}) with
// T = 2^{t+shift}; n is the quarter degree of the final polynomial.
// paper_exact pins shift = 10, K = 2^7, gamma in (2^-43, 2^-40] and
// delta = 2^-8 gamma^{7/2}; scaled keeps the structural relations but lets
// shift >= 2 and the remaining knobs float (0 = use the derived default).
struct BuildConfig {
  int t = 3;
  int shift = 2;
  std::int64_t n = 1024;
  Mode mode = Mode::scaled;
  double K = 0.0;
  double good_threshold = 0.0;
  double delta = 0.0;

  std::int64_t T() const { return std::int64_t{1} << (t + shift); }
  // Cosine support parameter 2T + 2^t - 1 (an integer; equals gamma * n).
  std::int64_t gamma_n() const {
    return 2 * T() + (std::int64_t{1} << t) - 1;
  }
  double gamma() const {
    return static_cast<double>(gamma_n()) / static_cast<double>(n);
  }
  // Interval length in x-space, eta = 2*T*pi/n.
  double eta() const {
    return 2.0 * static_cast<double>(T()) * kPi / static_cast<double>(n);
  }
  double resolved_threshold() const {
    if (good_threshold > 0.0) return good_threshold;
    const double e = eta();
    return e * e * e / 128.0;
  }
  double resolved_delta() const {
    if (delta > 0.0) return delta;
    return std::pow(gamma(), 3.5) / 256.0;
  }

  // Throws config/capacity errors; returns normally when runnable.
  void validate() const;
};

// Largest n accepted by classify_intervals (memory-bound).
inline constexpr std::int64_t kMaxClassifyN = std::int64_t{1} << 28;
// Largest n accepted by the full pipeline (solver-bound).
inline constexpr std::int64_t kMaxBuildN = std::int64_t{1} << 18;

}  // namespace lforge
