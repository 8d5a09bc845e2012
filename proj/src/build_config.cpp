#include "lforge/build_config.hpp"

namespace lforge {

Mode mode_from_string(const std::string& s) {
  if (s == "paper-exact") return Mode::paper_exact;
  if (s == "scaled") return Mode::scaled;
  fail(ErrorKind::usage, "unknown mode '" + s + "' (paper-exact | scaled)");
}

const char* to_string(Mode m) {
  return m == Mode::paper_exact ? "paper-exact" : "scaled";
}

void BuildConfig::validate() const {
  if (t < 1 || t % 2 == 0)
    fail(ErrorKind::config, "t must be a positive odd integer (got " +
                                std::to_string(t) + ")");
  if (shift < 2)
    fail(ErrorKind::config, "shift must be at least 2");
  if (t + shift + 2 > 62) fail(ErrorKind::capacity, "t + shift too large");
  if (n < 2) fail(ErrorKind::config, "n must be at least 2");
  if (gamma_n() > n)
    fail(ErrorKind::config,
         "cosine support does not fit: need 2*2^{t+shift} + 2^t - 1 <= n, got " +
             std::to_string(gamma_n()) + " > " + std::to_string(n));
  if (K < 0.0 || good_threshold < 0.0 || delta < 0.0)
    fail(ErrorKind::config, "K, good_threshold and delta must be nonnegative");

  if (mode == Mode::paper_exact) {
    if (shift != 10)
      fail(ErrorKind::config, "paper-exact mode requires shift = 10");
    if (K != 0.0 && K != 128.0)
      fail(ErrorKind::config, "paper-exact mode requires K = 2^7");
    if (delta != 0.0 || good_threshold != 0.0)
      fail(ErrorKind::config,
           "paper-exact mode fixes delta = 2^-8 gamma^{7/2} and the good "
           "threshold at eta^3/2^7; do not override them");
    // gamma in (2^-43, 2^-40] forces n in [gamma_n * 2^40, gamma_n * 2^43).
    const double n_lo = std::ldexp(static_cast<double>(gamma_n()), 40);
    const double n_hi = std::ldexp(static_cast<double>(gamma_n()), 43);
    const double nd = static_cast<double>(n);
    if (nd < n_lo || nd >= n_hi)
      fail(ErrorKind::config,
           "paper-exact gamma window (2^-43, 2^-40] requires n in [" +
               std::to_string(n_lo) + ", " + std::to_string(n_hi) +
               ") for t = " + std::to_string(t) +
               " (gamma * n = 2^{t+11} + 2^t - 1 = " +
               std::to_string(gamma_n()) + ")");
  }
}

}  // namespace lforge
