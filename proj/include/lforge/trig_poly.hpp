#pragma once

#include <cstdint>
#include <vector>

namespace lforge {

enum class TrigKind { cosine, sine };

// Sparse real trigonometric polynomial sum_{f in support} sign_f * trig(f*theta)
// with trig = cos or sin and sign_f in {-1,+1}. Support is sorted ascending.
struct TrigPoly {
  TrigKind kind = TrigKind::cosine;
  std::vector<std::int64_t> support;
  std::vector<std::int8_t> sign;

  std::int64_t max_freq() const { return support.empty() ? 0 : support.back(); }
  std::size_t terms() const { return support.size(); }

  void validate() const;

  double eval(double theta) const;
  // ell-th derivative: sum sign_f * f^ell * trig(f*theta + ell*pi/2).
  double eval_deriv(double theta, int ell) const;
};

}  // namespace lforge
