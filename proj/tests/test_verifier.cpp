#include <cmath>
#include <complex>

#include "doctest.h"
#include "lforge/rng.hpp"
#include "lforge/rs_core.hpp"
#include "lforge/verifier.hpp"

using namespace lforge;
using cd = std::complex<double>;

namespace {

cd horner(const SignSeq& q, double theta) {
  const cd z(std::cos(theta), std::sin(theta));
  cd acc(0.0, 0.0);
  for (std::int64_t k = q.size() - 1; k >= 0; --k)
    acc = acc * z + cd(static_cast<double>(q.coeffs[static_cast<std::size_t>(k)]), 0.0);
  return acc;
}

SignSeq random_signs(std::int64_t len, std::uint64_t seed) {
  Rng rng(seed);
  SignSeq q;
  q.coeffs.resize(static_cast<std::size_t>(len));
  for (auto& c : q.coeffs) c = static_cast<std::int8_t>(rng.sign());
  return q;
}

}  // namespace

TEST_CASE("eval_grid basics") {
  SignSeq one;
  one.coeffs = {1};
  const auto vals = eval_grid(one, 4);
  for (const cd& v : vals) CHECK(std::abs(v - cd(1.0, 0.0)) < 1e-12);

  const auto p3 = eval_grid(rs_pair(3).first, 64);
  CHECK(std::abs(p3[0] - cd(4.0, 0.0)) < 1e-12);

  CHECK_THROWS_AS((void)eval_grid(one, 3), Error);          // not a power of two
  CHECK_THROWS_AS((void)eval_grid(rs_pair(3).first, 8), Error);  // too small
}

TEST_CASE("eval_grid matches Horner to 1e-9 relative") {
  for (int rep = 0; rep < 5; ++rep) {
    const SignSeq q = random_signs(512, 1000 + rep);
    const std::int64_t grid = 4096;
    const auto vals = eval_grid(q, grid);
    double worst = 0.0;
    for (std::int64_t j = 0; j < grid; j += 17) {
      const double theta =
          2.0 * kPi * static_cast<double>(j) / static_cast<double>(grid);
      const double denom =
          std::max(1.0, std::abs(vals[static_cast<std::size_t>(j)]));
      worst = std::max(
          worst, std::abs(vals[static_cast<std::size_t>(j)] - horner(q, theta)) /
                     denom);
    }
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("all-ones sequence: Dirichlet peak and near-zero minimum") {
  SignSeq q;
  q.coeffs.assign(101, 1);
  const FlatnessReport rep = certify_flatness(q, 8192);
  CHECK(rep.n == 101);
  // Peak (deg+1)/sqrt(deg+1) at theta = 0.
  CHECK(rep.max_ratio >= std::sqrt(101.0));
  CHECK(rep.max_ratio <= std::sqrt(101.0) * 1.1);
  // True minimum is 0 (roots at the 101st roots of unity), so the certified
  // floor must sit at 0.
  CHECK(rep.min_ratio <= 0.05);
  CHECK(rep.parseval_check < 1e-9);
}

TEST_CASE("Rudin-Shapiro certified flatness: max near sqrt(2)") {
  const SignSeq q = rs_pair(10).first;
  const FlatnessReport rep = certify_flatness(q, 65536, 1 << 10);
  CHECK(rep.max_ratio <= std::sqrt(2.0) * 1.06);
  CHECK(rep.max_ratio >= 1.0);
  CHECK(rep.min_ratio >= 0.0);
  CHECK(rep.parseval_check < 1e-9);
}

TEST_CASE("1 - z - z^2 keeps a positive certified minimum") {
  SignSeq q;
  q.coeffs = {1, -1, -1};
  const FlatnessReport rep = certify_flatness(q, 1024);
  CHECK(rep.min_ratio * std::sqrt(3.0) > 0.1);
}

TEST_CASE("doubling the grid never widens the certified interval") {
  const SignSeq q = random_signs(200, 9);
  const FlatnessReport a = certify_flatness(q, 1 << 13);
  const FlatnessReport b = certify_flatness(q, 1 << 14);
  const double wa = a.max_ratio - a.min_ratio;
  const double wb = b.max_ratio - b.min_ratio;
  CHECK(wb <= wa + 1e-12);
  // and the coarser certificate must contain the finer one
  CHECK(b.min_ratio >= a.min_ratio - 1e-12);
  CHECK(b.max_ratio <= a.max_ratio + 1e-12);
}

TEST_CASE("theorem bound targets") {
  FlatnessReport rep;
  rep.min_ratio = 0.07;
  rep.max_ratio = 2.1;
  const BoundsTargets scaled = default_targets(Mode::scaled, 1e-40);
  CHECK(scaled.min_ratio == 0.05);
  CHECK(scaled.max_ratio == 4096.0);
  CHECK(check_theorem_bounds(rep, scaled).pass);
  const BoundsTargets paper = default_targets(Mode::paper_exact, 1e-40);
  CHECK(paper.min_ratio == 1e-40);
  rep.min_ratio = 0.0;
  CHECK(!check_theorem_bounds(rep, paper).pass);
  CHECK(check_theorem_bounds(rep, BoundsTargets{0.0, 4096.0}).pass);
}

TEST_CASE("certificate soundness against dense sampling") {
  const SignSeq q = random_signs(97, 31);
  const FlatnessReport rep = certify_flatness(q, 4096);
  double lo = 1e300, hi = 0.0;
  for (int j = 0; j < 200000; ++j) {
    const double theta = 2.0 * kPi * static_cast<double>(j) / 200000.0;
    const double a = std::abs(horner(q, theta));
    lo = std::min(lo, a);
    hi = std::max(hi, a);
  }
  const double root_n = std::sqrt(97.0);
  CHECK(rep.min_ratio * root_n <= lo + 1e-9);
  CHECK(rep.max_ratio * root_n >= hi - 1e-9);
}

TEST_CASE("flatness report JSON round trip") {
  FlatnessReport rep;
  rep.n = 12;
  rep.degree = 48;
  rep.grid_size = 1024;
  rep.min_ratio = 0.125;
  rep.max_ratio = 2.5;
  rep.lipschitz_margin = 0.01;
  rep.parseval_check = 1e-12;
  rep.mode = "scaled";
  rep.seed = 99;
  rep.target_min = 0.05;
  rep.target_max = 4096.0;
  rep.pass = true;
  const FlatnessReport back = FlatnessReport::from_json(rep.to_json());
  CHECK(back.n == rep.n);
  CHECK(back.degree == rep.degree);
  CHECK(back.grid_size == rep.grid_size);
  CHECK(back.min_ratio == rep.min_ratio);
  CHECK(back.max_ratio == rep.max_ratio);
  CHECK(back.lipschitz_margin == rep.lipschitz_margin);
  CHECK(back.parseval_check == rep.parseval_check);
  CHECK(back.mode == rep.mode);
  CHECK(back.seed == rep.seed);
  CHECK(back.target_min == rep.target_min);
  CHECK(back.target_max == rep.target_max);
  CHECK(back.pass == rep.pass);
}
