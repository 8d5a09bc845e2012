#include "lforge/intervals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "json.hpp"
#include "lforge/cosine_builder.hpp"
#include "lforge/kernels.hpp"

namespace lforge {

namespace {

std::int64_t mod2n(std::int64_t v, std::int64_t two_n) {
  v %= two_n;
  if (v < 0) v += two_n;
  return v;
}

// Circular distance (lattice units) from point q to the closed arc [a, b],
// all mod 2n.
std::int64_t point_arc_dist(std::int64_t q, std::int64_t a, std::int64_t b,
                            std::int64_t two_n) {
  const std::int64_t len = b - a;
  const std::int64_t rel = mod2n(q - a, two_n);
  if (rel <= len) return 0;
  return std::min(rel - len, two_n - rel);
}

}  // namespace

IntervalFamily classify_intervals(const BuildConfig& cfg) {
  cfg.validate();
  if (cfg.n > kMaxClassifyN)
    fail(ErrorKind::capacity,
         "n exceeds classification capacity " + std::to_string(kMaxClassifyN));
  if (cfg.n % 2 != 0)
    fail(ErrorKind::config,
         "interval classification needs even n (pi/2 must sit on the lattice)");

  const HSeries hs = HSeries::make(cfg);
  const double eta = cfg.eta();
  const double tau = cfg.resolved_threshold();
  const double lip = h_deriv_cap(1, cfg.shift);
  const std::int64_t half = cfg.n / 2;

  const std::vector<std::uint8_t> verdict =
      kernels::classify_base(hs, half, eta, tau, lip);

  IntervalFamily fam;
  fam.n = cfg.n;
  std::int64_t run_start = -1;
  for (std::int64_t j = 0; j <= half; ++j) {
    const bool bad = j < half && verdict[static_cast<std::size_t>(j)] == 0;
    if (bad && run_start < 0) run_start = j;
    if (!bad && run_start >= 0) {
      fam.base.push_back({run_start, j});
      run_start = -1;
    }
  }

  const std::int64_t two_n = 2 * cfg.n;
  for (const LatticeArc& arc : fam.base) {
    fam.full.push_back(arc);
    fam.full.push_back({cfg.n - arc.b, cfg.n - arc.a});
    fam.full.push_back({cfg.n + arc.a, cfg.n + arc.b});
    fam.full.push_back({two_n - arc.b, two_n - arc.a});
  }
  std::sort(fam.full.begin(), fam.full.end(),
            [](const LatticeArc& l, const LatticeArc& r) { return l.a < r.a; });

  fam.flags = validate_family(fam, cfg);
  if (!fam.flags.empty() && cfg.mode == Mode::paper_exact)
    fail(ErrorKind::validation,
         "interval family violates clauses (" + fam.flags +
             ") in paper-exact mode");
  return fam;
}

std::string validate_family(const IntervalFamily& fam, const BuildConfig& cfg) {
  std::set<char> bad;
  const std::int64_t n = fam.n;
  const std::int64_t two_n = 2 * n;

  // (a) lattice endpoints with positive length inside one period.
  for (const LatticeArc& arc : fam.full)
    if (arc.a < 0 || arc.b <= arc.a || arc.b > two_n) bad.insert('a');

  // (b) closure under theta -> pi - theta and theta -> pi + theta.
  {
    std::set<std::pair<std::int64_t, std::int64_t>> canon;
    for (const LatticeArc& arc : fam.full)
      canon.insert({mod2n(arc.a, two_n), arc.len()});
    for (const auto& [a, len] : canon) {
      if (!canon.count({mod2n(n - a - len, two_n), len}) ||
          !canon.count({mod2n(n + a, two_n), len}))
        bad.insert('b');
    }
  }

  // (c) |full| = 4N with N <= gamma*n.
  if (fam.full.size() != 4 * fam.base.size() || fam.N() > cfg.gamma_n())
    bad.insert('c');

  // (d) |I| <= 6 pi / n.
  for (const LatticeArc& arc : fam.full)
    if (arc.len() > 6) bad.insert('d');

  // (e) pairwise gaps >= pi / n (also catches overlap).
  if (fam.full.size() > 1) {
    std::vector<LatticeArc> sorted = fam.full;
    std::sort(sorted.begin(), sorted.end(),
              [](const LatticeArc& l, const LatticeArc& r) { return l.a < r.a; });
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
      if (sorted[i + 1].a - sorted[i].b < 1) bad.insert('e');
    if (sorted.front().a + two_n - sorted.back().b < 1) bad.insert('e');
  }

  // (f) clear of (pi/2)Z + [-100 pi / n, 100 pi / n].
  for (const LatticeArc& arc : fam.full)
    for (std::int64_t q : {std::int64_t{0}, n / 2, n, 3 * n / 2})
      if (point_arc_dist(q, arc.a, arc.b, two_n) <= 100) bad.insert('f');

  return std::string(bad.begin(), bad.end());
}

double min_abs_outside(const TrigPoly& c, const IntervalFamily& fam,
                       std::int64_t grid, double sup_bound) {
  if (grid < 16 * fam.n)
    fail(ErrorKind::config, "grid must be at least 16n");
  const double unit = kPi / static_cast<double>(fam.n);

  std::vector<LatticeArc> sorted = fam.full;
  std::sort(sorted.begin(), sorted.end(),
            [](const LatticeArc& l, const LatticeArc& r) { return l.a < r.a; });

  std::vector<std::pair<double, double>> gaps;
  if (sorted.empty()) {
    gaps.emplace_back(0.0, 2.0 * kPi);
  } else {
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
      if (sorted[i + 1].a > sorted[i].b)
        gaps.emplace_back(unit * static_cast<double>(sorted[i].b),
                          unit * static_cast<double>(sorted[i + 1].a));
    const std::int64_t wrap = sorted.front().a + 2 * fam.n - sorted.back().b;
    if (wrap > 0)
      gaps.emplace_back(unit * static_cast<double>(sorted.back().b),
                        unit * static_cast<double>(sorted.front().a + 2 * fam.n));
  }
  if (gaps.empty()) return std::numeric_limits<double>::infinity();

  double sup = sup_bound;
  if (sup <= 0.0) sup = static_cast<double>(c.terms());
  const double lip = static_cast<double>(c.max_freq()) * sup;
  const double h = 2.0 * kPi / static_cast<double>(grid);
  return kernels::min_abs_on_arcs(c, gaps, h, lip).certified;
}

std::string IntervalFamily::to_json() const {
  nlohmann::json j;
  j["n"] = n;
  nlohmann::json arcs = nlohmann::json::array();
  for (const LatticeArc& arc : full)
    arcs.push_back(nlohmann::json::array({arc.a, arc.b}));
  j["arcs"] = arcs;
  j["flags"] = flags;
  return j.dump(2) + "\n";
}

IntervalFamily IntervalFamily::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::parse, std::string("interval family: ") + e.what());
  }
  IntervalFamily fam;
  try {
    fam.n = j.at("n").get<std::int64_t>();
    for (const auto& arc : j.at("arcs"))
      fam.full.push_back({arc.at(0).get<std::int64_t>(),
                          arc.at(1).get<std::int64_t>()});
    fam.flags = j.value("flags", std::string{});
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::parse, std::string("interval family: ") + e.what());
  }
  for (const LatticeArc& arc : fam.full)
    if (arc.b <= fam.n / 2) fam.base.push_back(arc);
  return fam;
}

}  // namespace lforge
