// Timing comparison: OpenMP kernels vs their serial reference
// implementations, on representative sizes for each hot loop.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "lforge/build_config.hpp"
#include "lforge/cosine_builder.hpp"
#include "lforge/kernels.hpp"
#include "lforge/parallel.hpp"
#include "lforge/rng.hpp"
#include "lforge/rs_core.hpp"

using namespace lforge;

namespace {

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

template <typename F>
double time_ms(F&& f, int reps = 3) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const double t0 = now_ms();
    f();
    best = std::min(best, now_ms() - t0);
  }
  return best;
}

void report(const char* name, double serial_ms, double omp_ms, double diff) {
  std::printf("%-22s serial %9.2f ms   omp %9.2f ms   speedup %5.2fx   |diff| %.3g\n",
              name, serial_ms, omp_ms, serial_ms / omp_ms, diff);
}

}  // namespace

int main() {
  apply_thread_cap();
  std::printf("littlewood-forge kernel benchmark (%d worker%s)\n",
              worker_count(), worker_count() == 1 ? "" : "s");

  {  // direct multi-point evaluation
    const SignSeq p = rs_pair(12).first;
    Rng rng(7);
    std::vector<double> thetas(256);
    for (double& t : thetas) t = rng.uniform(0.0, 2.0 * kPi);
    std::vector<std::complex<double>> a, b;
    const double ts = time_ms([&] { a = kernels::ref::eval_many(p, thetas); });
    const double tp = time_ms([&] { b = kernels::eval_many(p, thetas); });
    double diff = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
      diff = std::max(diff, std::abs(a[i] - b[i]));
    report("eval_many", ts, tp, diff);
  }

  BuildConfig cfg;
  cfg.t = 3;
  cfg.shift = 6;
  cfg.n = 1 << 16;
  const HSeries hs = HSeries::make(cfg);

  {  // derivative-floor scan
    const double x1 = kPi * static_cast<double>(hs.T);
    const double step = 0x1p-8;
    double a = 0.0, b = 0.0;
    const double ts =
        time_ms([&] { a = kernels::ref::scan_floor(hs, 0.0, x1, step, 3); });
    const double tp =
        time_ms([&] { b = kernels::scan_floor(hs, 0.0, x1, step, 3); });
    report("scan_floor", ts, tp, std::abs(a - b));
  }

  {  // interval classification
    const double eta = cfg.eta();
    const double tau = cfg.resolved_threshold();
    const double lip = h_deriv_cap(1, cfg.shift);
    std::vector<std::uint8_t> a, b;
    const double ts = time_ms(
        [&] { a = kernels::ref::classify_base(hs, cfg.n / 2, eta, tau, lip); });
    const double tp = time_ms(
        [&] { b = kernels::classify_base(hs, cfg.n / 2, eta, tau, lip); });
    std::int64_t mismatch = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] != b[i]) ++mismatch;
    report("classify_base", ts, tp, static_cast<double>(mismatch));
  }

  {  // certified arc minima
    const TrigPoly c = build_cosine(cfg);
    std::vector<std::pair<double, double>> arcs;
    for (int i = 0; i < 64; ++i)
      arcs.emplace_back(i * 0.09, i * 0.09 + 0.06);
    const double h = 2.0 * kPi / static_cast<double>(64 * cfg.n);
    const double lip =
        static_cast<double>(c.max_freq()) * std::sqrt(static_cast<double>(cfg.n));
    kernels::ArcMin a, b;
    const double ts =
        time_ms([&] { a = kernels::ref::min_abs_on_arcs(c, arcs, h, lip); });
    const double tp =
        time_ms([&] { b = kernels::min_abs_on_arcs(c, arcs, h, lip); });
    report("min_abs_on_arcs", ts, tp, std::abs(a.certified - b.certified));
  }

  return 0;
}
