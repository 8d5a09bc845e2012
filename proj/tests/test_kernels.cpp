#include <cmath>

#include "doctest.h"
#include "lforge/kernels.hpp"
#include "lforge/rng.hpp"
#include "lforge/rs_core.hpp"

using namespace lforge;

namespace {

BuildConfig kernel_cfg(int t, int shift, std::int64_t n) {
  BuildConfig cfg;
  cfg.t = t;
  cfg.shift = shift;
  cfg.n = n;
  cfg.mode = Mode::scaled;
  return cfg;
}

}  // namespace

TEST_CASE("fast multi-point evaluation matches the direct reference") {
  const SignSeq p = rs_pair(9).first;
  Rng rng(404);
  std::vector<double> thetas(64);
  for (double& t : thetas) t = rng.uniform(0.0, 2.0 * kPi);
  const auto fast = kernels::eval_many(p, thetas);
  const auto slow = kernels::ref::eval_many(p, thetas);
  for (std::size_t i = 0; i < thetas.size(); ++i)
    CHECK(std::abs(fast[i] - slow[i]) <
          1e-9 * static_cast<double>(p.size()));
}

TEST_CASE("phasor-bank scan agrees with the per-point reference") {
  const BuildConfig cfg = kernel_cfg(1, 4, 256);
  const HSeries hs = HSeries::make(cfg);
  const double step = 0x1p-8;
  for (double x0 : {0.0, 13.7}) {
    const double a = kernels::scan_floor(hs, x0, x0 + 25.0, step, 3);
    const double b = kernels::ref::scan_floor(hs, x0, x0 + 25.0, step, 3);
    CHECK(std::abs(a - b) < 1e-9);
  }
}

TEST_CASE("classification verdicts match the direct reference") {
  const BuildConfig cfg = kernel_cfg(1, 2, 512);
  const HSeries hs = HSeries::make(cfg);
  const double eta = cfg.eta();
  const double tau = cfg.resolved_threshold();
  const double lip = h_deriv_cap(1, cfg.shift);
  const auto fast = kernels::classify_base(hs, cfg.n / 2, eta, tau, lip);
  const auto slow = kernels::ref::classify_base(hs, cfg.n / 2, eta, tau, lip);
  REQUIRE(fast.size() == slow.size());
  for (std::size_t j = 0; j < fast.size(); ++j) CHECK(fast[j] == slow[j]);
  // Some of both verdicts should appear at this scale.
  std::int64_t good = 0;
  for (auto v : fast) good += v;
  CHECK(good > 0);
  CHECK(good < static_cast<std::int64_t>(fast.size()));
}

TEST_CASE("arc minima: fast vs reference") {
  const BuildConfig cfg = kernel_cfg(3, 2, 512);
  const TrigPoly c = build_cosine(cfg);
  std::vector<std::pair<double, double>> arcs;
  Rng rng(3131);
  for (int i = 0; i < 24; ++i) {
    const double a = rng.uniform(0.0, 2.0 * kPi - 0.1);
    arcs.emplace_back(a, a + rng.uniform(0.01, 0.09));
  }
  const double h = 2.0 * kPi / (64.0 * static_cast<double>(cfg.n));
  const double lip = static_cast<double>(c.max_freq()) *
                     std::sqrt(static_cast<double>(cfg.n));
  const auto fast = kernels::min_abs_on_arcs(c, arcs, h, lip);
  const auto slow = kernels::ref::min_abs_on_arcs(c, arcs, h, lip);
  CHECK(fast.grid_min == doctest::Approx(slow.grid_min).epsilon(1e-12));
  CHECK(fast.certified == doctest::Approx(slow.certified).epsilon(1e-12));
  CHECK(fast.points == slow.points);
}
