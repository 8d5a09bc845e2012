#pragma once

#include <cmath>
#include <cstdint>

namespace lforge {

// Adaptive Gauss-Kronrod (G7, K15) with interval bisection. Good enough for
// the oscillatory sine integrals checked here; not a general-purpose library.
namespace detail {

inline constexpr double kGK15Node[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double kK15Weight[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr double kG7Weight[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <typename F>
void gk15(const F& f, double a, double b, double& kronrod, double& err) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fk[15];
  for (int i = 0; i < 7; ++i) {
    fk[i] = f(c - h * kGK15Node[i]);
    fk[14 - i] = f(c + h * kGK15Node[i]);
  }
  fk[7] = f(c);
  double resk = kK15Weight[7] * fk[7];
  double resg = kG7Weight[3] * fk[7];
  for (int i = 0; i < 7; ++i) resk += kK15Weight[i] * (fk[i] + fk[14 - i]);
  for (int i = 0; i < 3; ++i)
    resg += kG7Weight[i] * (fk[2 * i + 1] + fk[13 - 2 * i]);
  kronrod = resk * h;
  err = std::abs((resk - resg) * h);
}

template <typename F>
double integrate_rec(const F& f, double a, double b, double tol, int depth) {
  double val, err;
  gk15(f, a, b, val, err);
  if (err <= tol || depth >= 48) return val;
  const double c = 0.5 * (a + b);
  return integrate_rec(f, a, c, 0.5 * tol, depth + 1) +
         integrate_rec(f, c, b, 0.5 * tol, depth + 1);
}

}  // namespace detail

template <typename F>
double integrate(const F& f, double a, double b, double abs_tol) {
  if (a == b) return 0.0;
  return detail::integrate_rec(f, a, b, abs_tol, 0);
}

}  // namespace lforge
