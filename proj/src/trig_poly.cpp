#include "lforge/trig_poly.hpp"

#include <cmath>
#include <complex>

#include "lforge/common.hpp"

namespace lforge {

void TrigPoly::validate() const {
  if (support.size() != sign.size())
    fail(ErrorKind::validation, "trig polynomial support/sign size mismatch");
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (support[i] <= 0)
      fail(ErrorKind::validation, "trig polynomial frequency must be positive");
    if (i > 0 && support[i] <= support[i - 1])
      fail(ErrorKind::validation, "trig polynomial support not sorted");
    if (sign[i] != 1 && sign[i] != -1)
      fail(ErrorKind::validation, "trig polynomial sign must be +-1");
  }
}

double TrigPoly::eval(double theta) const {
  using cd = std::complex<double>;
  // Walk the phasor up the (sorted) support; re-anchor periodically.
  const cd unit(std::cos(theta), std::sin(theta));
  double acc = 0.0;
  cd phase(1.0, 0.0);
  std::int64_t cur = 0;
  std::int64_t since_anchor = 0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    const std::int64_t f = support[i];
    std::int64_t gap = f - cur;
    if (since_anchor + gap > 1024 || gap > 64) {
      const double ang = theta * static_cast<double>(f);
      phase = cd(std::cos(ang), std::sin(ang));
      since_anchor = 0;
    } else {
      while (gap-- > 0) phase *= unit;
      since_anchor += f - cur;
    }
    cur = f;
    const double v = (kind == TrigKind::cosine) ? phase.real() : phase.imag();
    acc += static_cast<double>(sign[i]) * v;
  }
  return acc;
}

double TrigPoly::eval_deriv(double theta, int ell) const {
  if (ell == 0) return eval(theta);
  const double shift = 0.5 * kPi * static_cast<double>(ell);
  double acc = 0.0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    const double f = static_cast<double>(support[i]);
    const double arg = f * theta + shift;
    const double base =
        (kind == TrigKind::cosine) ? std::cos(arg) : std::sin(arg);
    acc += static_cast<double>(sign[i]) * std::pow(f, ell) * base;
  }
  return acc;
}

}  // namespace lforge
