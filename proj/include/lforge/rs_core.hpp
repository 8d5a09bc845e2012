#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <utility>

#include "lforge/sign_seq.hpp"

namespace lforge {

// Rudin-Shapiro pair generation and evaluation.
//
// P_0 = Q_0 = 1,  P_{t+1} = P_t + z^{2^t} Q_t,  Q_{t+1} = P_t - z^{2^t} Q_t.
// Coefficients are generated iteratively (doubling), one array per
// polynomial; sequences have length 2^t.

inline constexpr int kMaxRsLevel = 30;

std::pair<SignSeq, SignSeq> rs_pair(int t);

// First n coefficients of the common prefix P_{<n}.
SignSeq rs_truncated(std::int64_t n);

// Direct evaluation of sum_k s_k e^{i k theta} (degrees shifted by offset).
// Uses compensated summation above length 2^12.
std::complex<double> eval_seq(const SignSeq& s, double theta);

// (P_t, Q_t) at e^{i theta} through the defining recursion: O(t) work and
// O(t * eps) rounding error, so it stays accurate at t = 30 where a direct
// sum would be both slow and noisy.
std::pair<std::complex<double>, std::complex<double>> rs_eval_pair(int t,
                                                                   double theta);

// max over thetas of | |P_t|^2 + |Q_t|^2 - 2^{t+1} |.
double check_norm_identity(int t, std::span<const double> thetas);

}  // namespace lforge
