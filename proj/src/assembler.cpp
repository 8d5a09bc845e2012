#include "lforge/assembler.hpp"

#include <cmath>

#include "lforge/common.hpp"
#include "lforge/rng.hpp"
#include "lforge/rs_core.hpp"

namespace lforge {

std::complex<double> LaurentLittlewood::eval(double theta) const {
  SignSeq s;
  s.coeffs = eps;
  s.offset = -2 * n;
  return eval_seq(s, theta);
}

LaurentLittlewood assemble(const TrigPoly& c, const TrigPoly& s_e,
                           const TrigPoly& s_o, std::int64_t n,
                           std::uint64_t seed) {
  if (c.kind != TrigKind::cosine || s_e.kind != TrigKind::sine ||
      s_o.kind != TrigKind::sine)
    fail(ErrorKind::assembly, "assemble expects (cosine, sine, sine) parts");

  // 0 = unclaimed, 1 = cosine, 2 = sine.
  std::vector<std::uint8_t> owner(static_cast<std::size_t>(2 * n) + 1, 0);
  auto claim = [&](const TrigPoly& part, std::uint8_t tag) {
    for (std::int64_t f : part.support) {
      if (f < 1 || f > 2 * n)
        fail(ErrorKind::assembly,
             "frequency " + std::to_string(f) + " outside [1, 2n]");
      auto& slot = owner[static_cast<std::size_t>(f)];
      if (slot != 0)
        fail(ErrorKind::assembly,
             "frequency " + std::to_string(f) + " claimed twice");
      slot = tag;
    }
  };
  claim(c, 1);
  claim(s_e, 2);
  claim(s_o, 2);
  for (std::int64_t f = 1; f <= 2 * n; ++f)
    if (owner[static_cast<std::size_t>(f)] == 0)
      fail(ErrorKind::assembly,
           "frequency " + std::to_string(f) + " missing from all supports");

  LaurentLittlewood p;
  p.n = n;
  p.eps.assign(static_cast<std::size_t>(4 * n) + 1, 0);
  p.eps[static_cast<std::size_t>(2 * n)] = 1;
  auto place = [&](const TrigPoly& part, bool even_mirror) {
    for (std::size_t i = 0; i < part.support.size(); ++i) {
      const std::int64_t f = part.support[i];
      const std::int8_t s = part.sign[i];
      p.eps[static_cast<std::size_t>(2 * n + f)] = s;
      p.eps[static_cast<std::size_t>(2 * n - f)] =
          even_mirror ? s : static_cast<std::int8_t>(-s);
    }
  };
  place(c, true);
  place(s_e, false);
  place(s_o, false);

  // Spot-check the split identity at seeded angles.
  Rng rng(derive_seed(seed, "assemble-check"));
  const double scale = std::sqrt(static_cast<double>(4 * n + 1));
  for (int trial = 0; trial < 64; ++trial) {
    const double theta = rng.uniform(0.0, 2.0 * kPi);
    const std::complex<double> lhs = p.eval(theta);
    const std::complex<double> rhs(1.0 + 2.0 * c.eval(theta),
                                   2.0 * (s_e.eval(theta) + s_o.eval(theta)));
    const double denom = std::max(std::abs(rhs), scale);
    if (std::abs(lhs - rhs) > 1e-9 * denom)
      fail(ErrorKind::assembly,
           "evaluation identity failed at theta = " + std::to_string(theta));
  }
  return p;
}

SignSeq to_standard(const LaurentLittlewood& p) {
  SignSeq q;
  q.coeffs = p.eps;
  q.offset = 0;
  return q;
}

SignSeq pad_to_degree(const SignSeq& q, std::int64_t target_degree) {
  const std::int64_t pad = target_degree - q.degree();
  if (pad < 0)
    fail(ErrorKind::config, "target degree below current degree");
  if (pad > 3)
    fail(ErrorKind::config,
         "padding by " + std::to_string(pad) +
             " > 3 changes flatness too much; rebuild at larger n");
  SignSeq out = q;
  for (std::int64_t i = 0; i < pad; ++i) out.coeffs.push_back(1);
  return out;
}

}  // namespace lforge
