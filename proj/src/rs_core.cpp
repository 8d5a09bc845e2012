#include "lforge/rs_core.hpp"

#include <cmath>

#include "lforge/common.hpp"

namespace lforge {

namespace {

void require_level(int t) {
  if (t < 0) fail(ErrorKind::config, "negative recursion level");
  if (t > kMaxRsLevel)
    fail(ErrorKind::capacity, "recursion level " + std::to_string(t) +
                                  " exceeds capacity " +
                                  std::to_string(kMaxRsLevel));
}

}  // namespace

std::pair<SignSeq, SignSeq> rs_pair(int t) {
  require_level(t);
  std::vector<std::int8_t> p{1};
  std::vector<std::int8_t> q{1};
  for (int level = 0; level < t; ++level) {
    const std::size_t half = p.size();
    std::vector<std::int8_t> np(2 * half);
    std::vector<std::int8_t> nq(2 * half);
    for (std::size_t k = 0; k < half; ++k) {
      np[k] = p[k];
      nq[k] = p[k];
      np[half + k] = q[k];
      nq[half + k] = static_cast<std::int8_t>(-q[k]);
    }
    p = std::move(np);
    q = std::move(nq);
  }
  return {SignSeq{std::move(p), 0}, SignSeq{std::move(q), 0}};
}

SignSeq rs_truncated(std::int64_t n) {
  if (n < 1) fail(ErrorKind::config, "truncation length must be positive");
  int t = 0;
  while ((std::int64_t{1} << t) < n) ++t;
  require_level(t);
  SignSeq p = rs_pair(t).first;
  p.coeffs.resize(static_cast<std::size_t>(n));
  return p;
}

std::complex<double> eval_seq(const SignSeq& s, double theta) {
  using cd = std::complex<double>;
  const std::int64_t n = s.size();
  const cd step(std::cos(theta), std::sin(theta));
  // Phasor recurrence, re-anchored every 512 terms to stop drift.
  constexpr std::int64_t kResync = 512;
  const bool compensated = n > (std::int64_t{1} << 12);
  cd sum(0.0, 0.0);
  cd comp(0.0, 0.0);
  cd phase(1.0, 0.0);
  for (std::int64_t k = 0; k < n; ++k) {
    if (k % kResync == 0) {
      const double ang = theta * static_cast<double>(k);
      phase = cd(std::cos(ang), std::sin(ang));
    }
    const cd term = phase * static_cast<double>(s.coeffs[static_cast<std::size_t>(k)]);
    if (compensated) {
      const cd y = term - comp;
      const cd t = sum + y;
      comp = (t - sum) - y;
      sum = t;
    } else {
      sum += term;
    }
    phase *= step;
  }
  if (s.offset != 0) {
    const double ang = theta * static_cast<double>(s.offset);
    sum *= cd(std::cos(ang), std::sin(ang));
  }
  return sum;
}

std::pair<std::complex<double>, std::complex<double>> rs_eval_pair(int t,
                                                                   double theta) {
  using cd = std::complex<double>;
  require_level(t);
  cd p(1.0, 0.0);
  cd q(1.0, 0.0);
  cd zpow(std::cos(theta), std::sin(theta));  // z^{2^level}
  for (int level = 0; level < t; ++level) {
    const cd shifted = zpow * q;
    const cd np = p + shifted;
    const cd nq = p - shifted;
    p = np;
    q = nq;
    zpow *= zpow;
  }
  return {p, q};
}

double check_norm_identity(int t, std::span<const double> thetas) {
  require_level(t);
  const double target = std::ldexp(1.0, t + 1);
  double worst = 0.0;
  for (double theta : thetas) {
    const auto [p, q] = rs_eval_pair(t, theta);
    const double v = std::norm(p) + std::norm(q);
    worst = std::max(worst, std::abs(v - target));
  }
  return worst;
}

}  // namespace lforge
