#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "lforge/sign_seq.hpp"
#include "lforge/trig_poly.hpp"

namespace lforge {

// Centred Laurent form sum_{k=-2n}^{2n} eps_k z^k with every eps_k in
// {-1,+1}: eps_0 = +1, cosine frequencies mirror evenly (eps_{-k} = eps_k),
// sine frequencies oddly (eps_{-k} = -eps_k).
struct LaurentLittlewood {
  std::int64_t n = 0;
  std::vector<std::int8_t> eps;  // index k + 2n

  int sign_at(std::int64_t k) const {
    return eps[static_cast<std::size_t>(k + 2 * n)];
  }
  std::complex<double> eval(double theta) const;
};

// Merges the three supports into the Laurent coefficient array and verifies
// the evaluation identity P(e^{i theta}) = (1 + 2c) + 2i(s_e + s_o) at 64
// seeded points. Overlapping or missing frequencies raise assembly errors.
LaurentLittlewood assemble(const TrigPoly& c, const TrigPoly& s_e,
                           const TrigPoly& s_o, std::int64_t n,
                           std::uint64_t seed);

// Multiplies by z^{2n}: the degree-4n standard form with q_k = eps_{k-2n}.
SignSeq to_standard(const LaurentLittlewood& p);

// Appends +1 coefficients (at most 3) to reach target_degree.
SignSeq pad_to_degree(const SignSeq& q, std::int64_t target_degree);

}  // namespace lforge
