#include "lforge/verifier.hpp"

#include <cmath>
#include <limits>

#include "json.hpp"
#include "lforge/fft.hpp"

namespace lforge {

std::vector<std::complex<double>> eval_grid(const SignSeq& q,
                                            std::int64_t grid_size) {
  q.validate();
  if (q.offset != 0)
    fail(ErrorKind::config, "grid evaluation expects offset-0 sequences");
  if (!is_pow2(static_cast<std::uint64_t>(grid_size)))
    fail(ErrorKind::config, "grid_size must be a power of two");
  if (grid_size < 2 * (q.degree() + 1))
    fail(ErrorKind::config, "grid_size must be at least 2 (degree + 1)");
  std::vector<std::complex<double>> buf(static_cast<std::size_t>(grid_size),
                                        {0.0, 0.0});
  for (std::int64_t k = 0; k <= q.degree(); ++k)
    buf[static_cast<std::size_t>(k)] =
        static_cast<double>(q.coeffs[static_cast<std::size_t>(k)]);
  dft(buf, +1);
  return buf;
}

namespace {

// Q and Q' (d/dtheta) at one angle by Horner; the refinement path.
void horner_pd(const SignSeq& q, double theta, double& absq, double& absd) {
  const std::complex<double> z(std::cos(theta), std::sin(theta));
  std::complex<double> p(0.0, 0.0);
  std::complex<double> d(0.0, 0.0);
  for (std::int64_t k = q.degree(); k >= 0; --k) {
    const double c = static_cast<double>(q.coeffs[static_cast<std::size_t>(k)]);
    p = p * z + c;
    d = d * z + static_cast<double>(k) * c;
  }
  absq = std::abs(p);
  absd = std::abs(d);
}

// Certified lower bound for |Q| on [center - r, center + r]: evaluate the
// center and use |Q(center+u)| >= |Q| - |u||Q'| - u^2/2 sup|Q''|. Cells that
// cannot be settled split into 8 until the radius underruns r_min.
double refine_floor(const SignSeq& q, double center, double r, double curv2,
                    double r_min, double eval_eps) {
  double absq, absd;
  horner_pd(q, center, absq, absd);
  const double bound = absq - r * absd - 0.5 * r * r * curv2 - eval_eps;
  if (bound >= 0.0 && (absd == 0.0 || r <= 0.25 * absq / absd))
    return bound;  // margin already dominated by the value
  if (r <= r_min) return bound;
  double lo = std::numeric_limits<double>::infinity();
  const double rr = r / 8.0;
  for (int s = 0; s < 8; ++s) {
    const double sub = center - r + (2.0 * s + 1.0) * rr;
    lo = std::min(lo, refine_floor(q, sub, rr, curv2, r_min, eval_eps));
    if (lo <= 0.0) break;
  }
  return lo;
}

}  // namespace

FlatnessReport certify_flatness(const SignSeq& q, std::int64_t grid_size,
                                std::int64_t norm_n) {
  const std::int64_t deg = q.degree();
  if (grid_size < 16 * (deg + 1))
    fail(ErrorKind::config, "grid_size must be at least 16 (degree + 1)");
  const std::int64_t G = grid_size;

  std::vector<double> absval(static_cast<std::size_t>(G));
  double grid_min = std::numeric_limits<double>::infinity();
  double grid_max = 0.0;
  long double power = 0.0L;
  {
    const auto values = eval_grid(q, G);
    for (std::int64_t j = 0; j < G; ++j) {
      const double a = std::abs(values[static_cast<std::size_t>(j)]);
      absval[static_cast<std::size_t>(j)] = a;
      grid_min = std::min(grid_min, a);
      grid_max = std::max(grid_max, a);
      // Parseval baseline in extended precision (serial, deterministic).
      power += static_cast<long double>(a) * a;
    }
  }
  const long double mean = power / static_cast<long double>(G);
  const double parseval = std::abs(
      static_cast<double>(mean / static_cast<long double>(deg + 1) - 1.0L));

  // |Q'| on the same grid, from the derivative coefficient sequence.
  std::vector<double> absder(static_cast<std::size_t>(G));
  {
    std::vector<std::complex<double>> buf(static_cast<std::size_t>(G),
                                          {0.0, 0.0});
    for (std::int64_t k = 0; k <= deg; ++k)
      buf[static_cast<std::size_t>(k)] = std::complex<double>(
          static_cast<double>(k) *
              static_cast<double>(q.coeffs[static_cast<std::size_t>(k)]),
          0.0);
    dft(buf, +1);
    for (std::int64_t j = 0; j < G; ++j)
      absder[static_cast<std::size_t>(j)] =
          std::abs(buf[static_cast<std::size_t>(j)]);
  }

  // Second-order certificate around each grid point:
  //   | |Q(theta_g + u)| - |Q(theta_g)| | <= |u||Q'(theta_g)| + u^2/2 sup|Q''|
  // with sup|Q''| <= deg^2 sup|Q| (Bernstein twice) and the sup closed via
  // sup|Q| <= grid_max / (1 - pi deg / G). Cells whose lower bound dips
  // under the sampled minimum are re-certified by local subdivision --
  // the deep dips of |Q| are far narrower than any affordable uniform grid.
  const double x = kPi * static_cast<double>(deg) / static_cast<double>(G);
  const double sup_q = grid_max / (1.0 - x);
  const double curv2 =
      static_cast<double>(deg) * static_cast<double>(deg) * sup_q;
  const double h = 2.0 * kPi / static_cast<double>(G);
  // Rigorous Horner rounding allowance: 2 (deg+1)^2 eps covers the value
  // term; the derivative term enters scaled by the cell radius.
  const double eval_eps = 2.0 * std::numeric_limits<double>::epsilon() *
                          static_cast<double>(deg + 1) *
                          static_cast<double>(deg + 1);
  double lo_plain = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  double worst_margin = 0.0;
  std::vector<std::int64_t> candidates;
  for (std::int64_t j = 0; j < G; ++j) {
    const double m =
        0.5 * h * absder[static_cast<std::size_t>(j)] + 0.125 * h * h * curv2;
    const double lo_j = absval[static_cast<std::size_t>(j)] - m;
    hi = std::max(hi, absval[static_cast<std::size_t>(j)] + m);
    worst_margin = std::max(worst_margin, m);
    if (lo_j < grid_min) {
      candidates.push_back(j);
    } else {
      lo_plain = std::min(lo_plain, lo_j);
    }
  }

  double lo = std::min(lo_plain, grid_min);
  const double r_min = h * 0x1p-24;
  const std::int64_t nc = static_cast<std::int64_t>(candidates.size());
#pragma omp parallel for schedule(dynamic, 4) reduction(min : lo)
  for (std::int64_t i = 0; i < nc; ++i) {
    const double center =
        h * static_cast<double>(candidates[static_cast<std::size_t>(i)]);
    lo = std::min(lo, refine_floor(q, center, 0.5 * h, curv2, r_min, eval_eps));
  }

  FlatnessReport rep;
  rep.n = norm_n > 0 ? norm_n : deg + 1;
  rep.degree = deg;
  rep.grid_size = G;
  const double root_n = std::sqrt(static_cast<double>(rep.n));
  rep.min_ratio = std::max(0.0, lo) / root_n;
  rep.max_ratio = hi / root_n;
  rep.lipschitz_margin = worst_margin;
  rep.parseval_check = parseval;
  return rep;
}

BoundsTargets default_targets(Mode mode, double delta) {
  BoundsTargets t;
  t.max_ratio = 4096.0;  // 2^12
  t.min_ratio = mode == Mode::paper_exact ? delta : 0.05;
  return t;
}

BoundsCheck check_theorem_bounds(const FlatnessReport& rep,
                                 const BoundsTargets& targets) {
  BoundsCheck out;
  out.min_margin = rep.min_ratio - targets.min_ratio;
  out.max_margin = targets.max_ratio - rep.max_ratio;
  out.pass = out.min_margin >= 0.0 && out.max_margin >= 0.0;
  return out;
}

std::string FlatnessReport::to_json() const {
  nlohmann::json j;
  j["n"] = n;
  j["degree"] = degree;
  j["grid_size"] = grid_size;
  j["min_ratio"] = min_ratio;
  j["max_ratio"] = max_ratio;
  j["lipschitz_margin"] = lipschitz_margin;
  j["parseval_check"] = parseval_check;
  j["mode"] = mode;
  j["seed"] = seed;
  j["targets"] = {{"min", target_min}, {"max", target_max}};
  j["pass"] = pass;
  return j.dump(2) + "\n";
}

FlatnessReport FlatnessReport::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::parse, std::string("flatness report: ") + e.what());
  }
  FlatnessReport rep;
  try {
    rep.n = j.at("n").get<std::int64_t>();
    rep.degree = j.at("degree").get<std::int64_t>();
    rep.grid_size = j.at("grid_size").get<std::int64_t>();
    rep.min_ratio = j.at("min_ratio").get<double>();
    rep.max_ratio = j.at("max_ratio").get<double>();
    rep.lipschitz_margin = j.at("lipschitz_margin").get<double>();
    rep.parseval_check = j.at("parseval_check").get<double>();
    rep.mode = j.at("mode").get<std::string>();
    rep.seed = j.at("seed").get<std::uint64_t>();
    rep.target_min = j.at("targets").at("min").get<double>();
    rep.target_max = j.at("targets").at("max").get<double>();
    rep.pass = j.at("pass").get<bool>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::parse, std::string("flatness report: ") + e.what());
  }
  return rep;
}

}  // namespace lforge
