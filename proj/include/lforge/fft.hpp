#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace lforge {

// In-place DFT with exponent sign `dir` (+1 or -1):
//   out[k] = sum_m in[m] * exp(dir * 2*pi*i * m * k / N).
// Power-of-two lengths use iterative radix-2; everything else goes through
// Bluestein's chirp transform. No normalisation is applied.
void dft(std::vector<std::complex<double>>& a, int dir);

bool is_pow2(std::uint64_t n);
std::uint64_t next_pow2(std::uint64_t n);

}  // namespace lforge
