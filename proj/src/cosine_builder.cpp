#include "lforge/cosine_builder.hpp"

#include <cmath>

#include "lforge/kernels.hpp"
#include "lforge/rs_core.hpp"

namespace lforge {

namespace {
using cd = std::complex<double>;

constexpr cd kIpow[5] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {1, 0}};
}  // namespace

HSeries HSeries::make(const BuildConfig& cfg) {
  auto [p, q] = rs_pair(cfg.t);
  HSeries hs;
  hs.t = cfg.t;
  hs.T = cfg.T();
  hs.scale = std::ldexp(1.0, -(cfg.t + 1) / 2);
  hs.p.assign(p.coeffs.begin(), p.coeffs.end());
  hs.q.assign(q.coeffs.begin(), q.coeffs.end());
  return hs;
}

TrigPoly build_cosine(const BuildConfig& cfg) {
  cfg.validate();
  auto [p, q] = rs_pair(cfg.t);
  const std::int64_t T = cfg.T();
  const std::int64_t len = std::int64_t{1} << cfg.t;
  TrigPoly c;
  c.kind = TrigKind::cosine;
  c.support.reserve(2 * static_cast<std::size_t>(len));
  c.sign.reserve(2 * static_cast<std::size_t>(len));
  for (std::int64_t r = 0; r < len; ++r) {
    c.support.push_back(2 * (T + r));
    c.sign.push_back(p.coeffs[static_cast<std::size_t>(r)]);
  }
  for (std::int64_t r = 0; r < len; ++r) {
    c.support.push_back(2 * (2 * T + r));
    c.sign.push_back(q.coeffs[static_cast<std::size_t>(r)]);
  }
  return c;
}

TrigPoly build_even_sine(const BuildConfig& cfg) {
  cfg.validate();
  const std::int64_t T = cfg.T();
  const std::int64_t len = std::int64_t{1} << cfg.t;
  const SignSeq prefix = rs_truncated(cfg.n + 1);
  TrigPoly s;
  s.kind = TrigKind::sine;
  s.support.reserve(static_cast<std::size_t>(cfg.n));
  for (std::int64_t m = 1; m <= cfg.n; ++m) {
    const bool in_c = (m >= T && m < T + len) || (m >= 2 * T && m < 2 * T + len);
    if (in_c) continue;
    s.support.push_back(2 * m);
    s.sign.push_back(prefix.coeffs[static_cast<std::size_t>(m)]);
  }
  return s;
}

HEvaluation eval_H(const HSeries& hs, double x, int max_deriv) {
  if (max_deriv < 0 || max_deriv > 4)
    fail(ErrorKind::config, "max_deriv must be in 0..4");
  const std::int64_t len = std::int64_t{1} << hs.t;
  const double invT = 1.0 / static_cast<double>(hs.T);
  const cd z1(std::cos(x), std::sin(x));
  const cd z2 = z1 * z1;
  const cd zstep(std::cos(x * invT), std::sin(x * invT));

  cd acc[5] = {};
  cd alpha(0.0, 0.0), beta(0.0, 0.0);
  cd zr(1.0, 0.0);
  for (std::int64_t r = 0; r < len; ++r) {
    if (r % 512 == 0) {
      const double ang = x * (static_cast<double>(r) * invT);
      zr = cd(std::cos(ang), std::sin(ang));
    }
    const double pr = hs.p[static_cast<std::size_t>(r)];
    const double qr = hs.q[static_cast<std::size_t>(r)];
    alpha += pr * zr;
    beta += qr * zr;
    const cd php = z1 * zr;
    const cd phq = z2 * zr;
    const double wp = 1.0 + static_cast<double>(r) * invT;
    const double wq = 2.0 + static_cast<double>(r) * invT;
    double pp = pr, pq = qr;
    for (int k = 0; k <= max_deriv; ++k) {
      acc[k] += pp * php + pq * phq;
      pp *= wp;
      pq *= wq;
    }
    zr *= zstep;
  }

  HEvaluation out;
  out.x = x;
  out.max_deriv = max_deriv;
  out.alpha = hs.scale * alpha;
  out.beta = hs.scale * beta;
  for (int k = 0; k <= max_deriv; ++k) out.h[k] = hs.scale * kIpow[k] * acc[k];
  return out;
}

HEvaluation eval_H(const BuildConfig& cfg, double x, int max_deriv) {
  return eval_H(HSeries::make(cfg), x, max_deriv);
}

std::complex<double> eval_ab_deriv(const HSeries& hs, double x, int k,
                                   bool use_q) {
  const std::int64_t len = std::int64_t{1} << hs.t;
  const double invT = 1.0 / static_cast<double>(hs.T);
  const cd zstep(std::cos(x * invT), std::sin(x * invT));
  cd zr(1.0, 0.0);
  cd acc(0.0, 0.0);
  const auto& coeff = use_q ? hs.q : hs.p;
  for (std::int64_t r = 0; r < len; ++r) {
    if (r % 512 == 0) {
      const double ang = x * (static_cast<double>(r) * invT);
      zr = cd(std::cos(ang), std::sin(ang));
    }
    const double w = static_cast<double>(r) * invT;
    acc += coeff[static_cast<std::size_t>(r)] * std::pow(w, k) * zr;
    zr *= zstep;
  }
  return hs.scale * kIpow[k % 4] * acc;
}

double h_deriv_cap(int k, int shift) {
  double cap = std::ldexp(1.0, k) + 1.0;
  double binom = 1.0;
  for (int j = 1; j <= k; ++j) {
    binom = binom * static_cast<double>(k - j + 1) / static_cast<double>(j);
    cap += binom * (1.0 + std::ldexp(1.0, k - j)) * std::ldexp(1.0, -shift * j);
  }
  return cap;
}

double scan_derivative_floor(const BuildConfig& cfg, double grid_step) {
  cfg.validate();
  if (!(grid_step > 0.0) || grid_step > std::ldexp(1.0, -8))
    fail(ErrorKind::config, "grid_step must lie in (0, 2^-8]");
  const HSeries hs = HSeries::make(cfg);
  // H has period 2*pi*T (T is an integer) and |Re H^{(k)}| is even in x, so
  // the grid over [0, pi*T] covers the whole line.
  const double x1 = kPi * static_cast<double>(hs.T);
  return kernels::scan_floor(hs, 0.0, x1, grid_step, 3);
}

double min_re_h_on(const BuildConfig& cfg, double x0, double x1, double step) {
  cfg.validate();
  const HSeries hs = HSeries::make(cfg);
  return kernels::min_re_h(hs, x0, x1, step);
}

}  // namespace lforge
