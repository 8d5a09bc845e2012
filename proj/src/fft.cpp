#include "lforge/fft.hpp"

#include <cmath>

#include "lforge/common.hpp"

namespace lforge {

namespace {

using cd = std::complex<double>;

void bit_reverse(std::vector<cd>& a) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
}

void fft_pow2(std::vector<cd>& a, int dir) {
  const std::size_t n = a.size();
  if (n <= 1) return;
  bit_reverse(a);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = dir * 2.0 * kPi / static_cast<double>(len);
    // Twiddles from one sincos per butterfly column; recomputed per stage so
    // results do not depend on any shared table or thread count.
    const std::size_t half = len >> 1;
    std::vector<cd> w(half);
    for (std::size_t k = 0; k < half; ++k)
      w[k] = cd(std::cos(ang * static_cast<double>(k)),
                std::sin(ang * static_cast<double>(k)));
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const cd u = a[i + k];
        const cd v = a[i + k + half] * w[k];
        a[i + k] = u + v;
        a[i + k + half] = u - v;
      }
    }
  }
}

// Bluestein: with chirp_m = exp(dir*pi*i*m^2/N), the identity
// 2mk = m^2 + k^2 - (k-m)^2 turns the DFT into the circular convolution
//   X_k = chirp_k * sum_m (a_m*chirp_m) * conj(chirp_{k-m}).
void bluestein(std::vector<cd>& a, int dir) {
  const std::size_t n = a.size();
  const std::size_t m = next_pow2(2 * n + 1);
  std::vector<cd> chirp(n);
  for (std::size_t k = 0; k < n; ++k) {
    // k^2 mod 2N keeps the sincos argument small for large transforms.
    const std::uint64_t k2 = (static_cast<std::uint64_t>(k) * k) %
                             (2 * static_cast<std::uint64_t>(n));
    const double ang = dir * kPi * static_cast<double>(k2) / static_cast<double>(n);
    chirp[k] = cd(std::cos(ang), std::sin(ang));
  }
  std::vector<cd> fa(m, cd(0.0, 0.0));
  std::vector<cd> fb(m, cd(0.0, 0.0));
  for (std::size_t k = 0; k < n; ++k) fa[k] = a[k] * chirp[k];
  fb[0] = std::conj(chirp[0]);
  for (std::size_t k = 1; k < n; ++k) fb[k] = fb[m - k] = std::conj(chirp[k]);
  fft_pow2(fa, +1);
  fft_pow2(fb, +1);
  for (std::size_t k = 0; k < m; ++k) fa[k] *= fb[k];
  fft_pow2(fa, -1);
  const double inv = 1.0 / static_cast<double>(m);
  for (std::size_t k = 0; k < n; ++k) a[k] = fa[k] * inv * chirp[k];
}

}  // namespace

bool is_pow2(std::uint64_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::uint64_t next_pow2(std::uint64_t n) {
  std::uint64_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

void dft(std::vector<std::complex<double>>& a, int dir) {
  if (a.size() <= 1) return;
  if (is_pow2(a.size()))
    fft_pow2(a, dir);
  else
    bluestein(a, dir);
}

}  // namespace lforge
