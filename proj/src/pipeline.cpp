#include "lforge/pipeline.hpp"

#include <cmath>
#include <limits>

#include "json.hpp"
#include "lforge/cosine_builder.hpp"
#include "lforge/fft.hpp"

namespace lforge {

BuildResult run_build(const BuildOptions& opt) {
  const BuildConfig& cfg = opt.cfg;
  cfg.validate();
  if (cfg.n > kMaxBuildN) {
    std::string msg = "n = " + std::to_string(cfg.n) +
                      " exceeds the build capacity " +
                      std::to_string(kMaxBuildN);
    if (cfg.mode == Mode::paper_exact)
      msg += " (the paper-exact gamma window (2^-43, 2^-40] with gamma * n = "
             "2^{t+11} + 2^t - 1 forces n >= " +
             std::to_string(std::ldexp(static_cast<double>(cfg.gamma_n()), 40)) +
             ")";
    fail(ErrorKind::capacity, msg);
  }

  BuildResult res;
  res.cfg = cfg;
  res.seed = opt.seed;

  const TrigPoly cosine = build_cosine(cfg);
  const TrigPoly even_sine = build_even_sine(cfg);

  res.family = classify_intervals(cfg);

  // Certified floor of |c| away from the bad arcs. sup|c| <= 2^{(t+3)/2}
  // from the norm identity; double the 16n minimum grid for margin.
  {
    const double sup_c = std::ldexp(1.0, (cfg.t + 3) / 2) *
                         ((cfg.t + 3) % 2 == 1 ? std::sqrt(2.0) : 1.0);
    const double floor_c =
        min_abs_outside(cosine, res.family, 64 * cfg.n, sup_c);
    res.delta_prime = std::isfinite(floor_c)
                          ? floor_c / std::sqrt(static_cast<double>(cfg.n))
                          : -1.0;
  }

  res.alpha = choose_alpha(res.family, cfg, derive_seed(opt.seed, "alpha"));

  const TaylorGrid grid = TaylorGrid::make(cfg.n);
  const DiscInstance inst = taylor_constraints(res.alpha.start, grid);
  res.odd = solve_odd_sine(res.alpha.start, inst, derive_seed(opt.seed, "odd"));

  // Sampled magnitudes of s_hat and s_o: on the bad arcs and globally.
  {
    SineMeasurements& m = res.sines;
    m.s_hat_min_on_arcs = std::numeric_limits<double>::infinity();
    m.s_o_min_on_arcs = std::numeric_limits<double>::infinity();
    const double unit = kPi / static_cast<double>(cfg.n);
    for (const LatticeArc& arc : res.family.base) {
      for (int s = 0; s <= 16; ++s) {
        const double theta =
            unit * (static_cast<double>(arc.a) +
                    static_cast<double>(arc.len()) * s / 16.0);
        m.s_hat_min_on_arcs = std::min(
            m.s_hat_min_on_arcs, std::abs(eval_s_hat(res.alpha.start, theta)));
        m.s_o_min_on_arcs =
            std::min(m.s_o_min_on_arcs, std::abs(res.odd.s_o.eval(theta)));
      }
    }
    if (res.family.base.empty()) {
      m.s_hat_min_on_arcs = 0.0;
      m.s_o_min_on_arcs = 0.0;
    }
    for (int s = 0; s < 4096; ++s) {
      const double theta = 2.0 * kPi * s / 4096.0;
      m.s_hat_max =
          std::max(m.s_hat_max, std::abs(eval_s_hat(res.alpha.start, theta)));
      m.s_o_max = std::max(m.s_o_max, std::abs(res.odd.s_o.eval(theta)));
    }
  }

  res.laurent = assemble(cosine, even_sine, res.odd.s_o, cfg.n,
                         derive_seed(opt.seed, "assemble"));
  res.coeffs = to_standard(res.laurent);

  const std::int64_t grid_size = static_cast<std::int64_t>(next_pow2(
      static_cast<std::uint64_t>(opt.grid_factor * (res.coeffs.degree() + 1))));
  res.report = certify_flatness(res.coeffs, grid_size, cfg.n);
  res.report.mode = to_string(cfg.mode);
  res.report.seed = opt.seed;

  BoundsTargets targets = default_targets(cfg.mode, cfg.resolved_delta());
  if (opt.target_min > 0.0) targets.min_ratio = opt.target_min;
  if (opt.target_max > 0.0) targets.max_ratio = opt.target_max;
  res.bounds = check_theorem_bounds(res.report, targets);
  res.report.target_min = targets.min_ratio;
  res.report.target_max = targets.max_ratio;
  res.report.pass = res.bounds.pass;
  return res;
}

std::string BuildResult::report_json(const BuildOptions& opt) const {
  nlohmann::json j = nlohmann::json::parse(report.to_json());
  j["config"] = {
      {"version", kVersion},
      {"t", cfg.t},
      {"shift", cfg.shift},
      {"n", cfg.n},
      {"mode", to_string(cfg.mode)},
      {"seed", seed},
      {"K", alpha.K_used},
      {"good_threshold", cfg.resolved_threshold()},
      {"delta", cfg.resolved_delta()},
      {"grid_factor", opt.grid_factor},
  };
  j["pipeline"] = {
      {"family_size", family.full.size()},
      {"family_base", family.base.size()},
      {"family_flags", family.flags},
      {"achieved_delta_prime", delta_prime},
      {"achieved_Delta_prime", report.max_ratio},
      {"eps_hat_max", alpha.eps_hat_max},
      {"alpha_attempts", alpha.attempts},
      {"taylor_ell_max", TaylorGrid::make(cfg.n).ell_max},
      {"taylor_margin", odd.worst_margin},
      {"solver_attempts", odd.colouring.attempts},
      {"s_hat_min_on_arcs", sines.s_hat_min_on_arcs},
      {"s_hat_max", sines.s_hat_max},
      {"s_o_min_on_arcs", sines.s_o_min_on_arcs},
      {"s_o_max", sines.s_o_max},
      {"min_margin", bounds.min_margin},
      {"max_margin", bounds.max_margin},
  };
  return j.dump(2) + "\n";
}

}  // namespace lforge
