#include "lforge/discrepancy.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstring>
#include <limits>
#include <unordered_map>

#include "json.hpp"
#include "lforge/fft.hpp"
#include "lforge/rng.hpp"

namespace lforge {

namespace {

using cd = std::complex<double>;

double odd_sine_budget(int ell) {
  return 14.0 * std::sqrt((9.0 + ell) * std::log(2.0));
}

// Verification slack: 1e-6 relative to the cap plus a tiny absolute floor,
// rechecked in long double before a violation is declared.
double verify_slack(double cap, double l2) { return 1e-6 * cap + 1e-9 * l2; }

}  // namespace

DiscInstance DiscInstance::dense(std::int64_t dim, std::vector<double> rows,
                                 std::vector<double> budgets,
                                 std::vector<double> x0) {
  if (dim < 1) fail(ErrorKind::config, "instance dimension must be positive");
  if (rows.size() != budgets.size() * static_cast<std::size_t>(dim))
    fail(ErrorKind::config, "constraint matrix shape mismatch");
  if (x0.size() != static_cast<std::size_t>(dim))
    fail(ErrorKind::config, "start point dimension mismatch");
  for (double v : x0)
    if (!(std::abs(v) <= 1.0))
      fail(ErrorKind::config, "start point must lie in [-1,1]^n");
  for (double c : budgets)
    if (!(c >= 0.0)) fail(ErrorKind::config, "budgets must be nonnegative");
  DiscInstance inst;
  inst.dim_ = dim;
  inst.rows_ = std::move(rows);
  inst.budgets_ = std::move(budgets);
  inst.x0_ = std::move(x0);
  inst.compute_norms();
  return inst;
}

DiscInstance DiscInstance::odd_sine(const OddSineFamily& fam,
                                    std::vector<double> x0) {
  if (fam.n < 1 || fam.M < 1 || fam.ell_max < 0)
    fail(ErrorKind::config, "bad odd-sine family shape");
  if (x0.size() != static_cast<std::size_t>(fam.n))
    fail(ErrorKind::config, "start point dimension mismatch");
  for (double v : x0)
    if (!(std::abs(v) <= 1.0))
      fail(ErrorKind::config, "start point must lie in [-1,1]^n");
  DiscInstance inst;
  inst.dim_ = fam.n;
  inst.family_ = fam;
  inst.x0_ = std::move(x0);
  inst.compute_norms();
  return inst;
}

double DiscInstance::budget(std::size_t j) const {
  if (family_) return odd_sine_budget(static_cast<int>(j / family_->M));
  return budgets_[j];
}

void DiscInstance::compute_norms() {
  const std::size_t m = count();
  l2_.resize(m);
  inf_cap_.resize(m);
  if (!family_) {
    const std::size_t d = static_cast<std::size_t>(dim_);
#pragma omp parallel for schedule(static)
    for (std::int64_t j = 0; j < static_cast<std::int64_t>(m); ++j) {
      const double* row = rows_.data() + static_cast<std::size_t>(j) * d;
      double s2 = 0.0, si = 0.0;
      for (std::size_t i = 0; i < d; ++i) {
        s2 += row[i] * row[i];
        si = std::max(si, std::abs(row[i]));
      }
      l2_[static_cast<std::size_t>(j)] = std::sqrt(s2);
      inf_cap_[static_cast<std::size_t>(j)] = si;
    }
    return;
  }

  // ||v_{k,ell}||_2^2 = S_ell/2 - (-1)^ell/2 * Re sum_j r_j^{2 ell}
  // e^{2i(2j-1)theta_k}; the k-sweep is one half-size chirped FFT per ell.
  const std::int64_t n = family_->n;
  const std::int64_t M = family_->M;
  const std::int64_t L = 2 * M;
  const double inv2n1 = 1.0 / static_cast<double>(2 * n - 1);
  std::vector<double> r2(static_cast<std::size_t>(n));
  std::vector<double> u(static_cast<std::size_t>(n), 1.0);
  for (std::int64_t j = 1; j <= n; ++j) {
    const double r = static_cast<double>(2 * j - 1) * inv2n1;
    r2[static_cast<std::size_t>(j - 1)] = r * r;
  }
  const double ratio = static_cast<double>(2 * n) * inv2n1;
  double cap = 1.0;
  for (int ell = 0; ell <= family_->ell_max; ++ell) {
    double s_ell = 0.0;
    for (std::int64_t j = 0; j < n; ++j) s_ell += u[static_cast<std::size_t>(j)];
    std::vector<cd> buf(static_cast<std::size_t>(L), cd(0.0, 0.0));
    for (std::int64_t j = 1; j <= n; ++j) {
      const std::int64_t mm = 2 * j - 1;
      const double ang = -kPi * static_cast<double>(mm) / static_cast<double>(L);
      buf[static_cast<std::size_t>(mm)] =
          u[static_cast<std::size_t>(j - 1)] * cd(std::cos(ang), std::sin(ang));
    }
    dft(buf, +1);
    const double sgn = (ell % 2 == 0) ? 1.0 : -1.0;
    for (std::int64_t k = 1; k <= M; ++k) {
      const double y = buf[static_cast<std::size_t>(k)].real();
      const double norm2 = 0.5 * (s_ell - sgn * y);
      const std::size_t row = static_cast<std::size_t>(ell) *
                                  static_cast<std::size_t>(M) +
                              static_cast<std::size_t>(k - 1);
      l2_[row] = std::sqrt(std::max(0.0, norm2));
      inf_cap_[row] = cap;
    }
    for (std::int64_t j = 0; j < n; ++j)
      u[static_cast<std::size_t>(j)] *= r2[static_cast<std::size_t>(j)];
    cap *= ratio;
  }
}

void DiscInstance::apply(std::span<const double> w,
                         std::span<double> out) const {
  const std::size_t m = count();
  if (!family_) {
    const std::size_t d = static_cast<std::size_t>(dim_);
#pragma omp parallel for schedule(static)
    for (std::int64_t j = 0; j < static_cast<std::int64_t>(m); ++j) {
      const double* row = rows_.data() + static_cast<std::size_t>(j) * d;
      double s = 0.0;
      for (std::size_t i = 0; i < d; ++i) s += row[i] * w[i];
      out[static_cast<std::size_t>(j)] = s;
    }
    return;
  }
  const std::int64_t n = family_->n;
  const std::int64_t M = family_->M;
  const std::int64_t L = 4 * M;
  const double inv2n1 = 1.0 / static_cast<double>(2 * n - 1);
  const int ell_max = family_->ell_max;
#pragma omp parallel for schedule(dynamic, 1)
  for (int ell = 0; ell <= ell_max; ++ell) {
    std::vector<cd> buf(static_cast<std::size_t>(L), cd(0.0, 0.0));
    for (std::int64_t j = 1; j <= n; ++j) {
      const std::int64_t mm = 2 * j - 1;
      const double r = static_cast<double>(mm) * inv2n1;
      const double scaled = w[static_cast<std::size_t>(j - 1)] *
                            std::pow(r, static_cast<double>(ell));
      const double ang = -kPi * static_cast<double>(mm) / static_cast<double>(L);
      buf[static_cast<std::size_t>(mm)] =
          scaled * cd(std::cos(ang), std::sin(ang));
    }
    dft(buf, +1);
    double* dst = out.data() + static_cast<std::size_t>(ell) *
                                   static_cast<std::size_t>(M);
    for (std::int64_t k = 1; k <= M; ++k) {
      const cd x = buf[static_cast<std::size_t>(k)];
      double v;
      switch (ell % 4) {
        case 0: v = x.imag(); break;
        case 1: v = x.real(); break;
        case 2: v = -x.imag(); break;
        default: v = -x.real(); break;
      }
      dst[k - 1] = v;
    }
  }
}

double DiscInstance::row_dot(std::size_t j, std::span<const double> w) const {
  if (!family_) {
    const double* row = rows_.data() + j * static_cast<std::size_t>(dim_);
    double s = 0.0;
    for (std::int64_t i = 0; i < dim_; ++i)
      s += row[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(i)];
    return s;
  }
  std::vector<double> r(static_cast<std::size_t>(dim_));
  row(j, r);
  double s = 0.0;
  for (std::int64_t i = 0; i < dim_; ++i)
    s += r[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(i)];
  return s;
}

long double DiscInstance::row_dot_ld(std::size_t j,
                                     std::span<const double> w) const {
  std::vector<double> r(static_cast<std::size_t>(dim_));
  row(j, r);
  long double s = 0.0L;
  for (std::int64_t i = 0; i < dim_; ++i)
    s += static_cast<long double>(r[static_cast<std::size_t>(i)]) *
         static_cast<long double>(w[static_cast<std::size_t>(i)]);
  return s;
}

void DiscInstance::row(std::size_t j, std::span<double> out) const {
  if (!family_) {
    std::memcpy(out.data(), rows_.data() + j * static_cast<std::size_t>(dim_),
                sizeof(double) * static_cast<std::size_t>(dim_));
    return;
  }
  const std::int64_t n = family_->n;
  const std::int64_t M = family_->M;
  const int ell = static_cast<int>(j / static_cast<std::size_t>(M));
  const std::int64_t k = static_cast<std::int64_t>(j % static_cast<std::size_t>(M)) + 1;
  const double theta = static_cast<double>(2 * k - 1) * kPi /
                       (4.0 * static_cast<double>(M));
  const double shift = 0.5 * kPi * static_cast<double>(ell);
  const double inv2n1 = 1.0 / static_cast<double>(2 * n - 1);
  for (std::int64_t jj = 1; jj <= n; ++jj) {
    const double f = static_cast<double>(2 * jj - 1);
    out[static_cast<std::size_t>(jj - 1)] =
        std::pow(f * inv2n1, static_cast<double>(ell)) *
        std::sin(f * theta + shift);
  }
}

double budget_sum(const DiscInstance& inst, int denom) {
  const double d = static_cast<double>(denom);
  long double sum = 0.0L;
  const std::size_t m = inst.count();
  for (std::size_t j = 0; j < m; ++j) {
    const double c = inst.budget(j);
    sum += std::exp(-static_cast<long double>(c) * c / d);
  }
  return static_cast<double>(sum);
}

bool check_budget(const DiscInstance& inst, int denom) {
  if (denom != 16 && denom != 196)
    fail(ErrorKind::config, "budget denominator must be 16 or 196");
  return budget_sum(inst, denom) <=
         static_cast<double>(inst.dim()) / 16.0 * (1.0 + 1e-12);
}

// ---------------------------------------------------------------------------
// Projected random walk.

namespace {

struct CapSpec {
  // cap_j = bound the walk must keep |<x - x_base, v_j>| under.
  std::vector<double> caps;
};

struct Verify {
  bool ok = true;
  double worst_slack = std::numeric_limits<double>::infinity();
};

Verify verify_caps(const DiscInstance& inst, std::span<const double> w,
                   const std::vector<double>& caps) {
  const std::size_t m = inst.count();
  std::vector<double> D(m);
  inst.apply(w, D);
  Verify out;
  double worst = std::numeric_limits<double>::infinity();
  bool ok = true;
#pragma omp parallel for schedule(static) reduction(min : worst) \
    reduction(&& : ok)
  for (std::int64_t j = 0; j < static_cast<std::int64_t>(m); ++j) {
    const std::size_t js = static_cast<std::size_t>(j);
    double dj = std::abs(D[js]);
    const double slack = verify_slack(caps[js], inst.l2(js));
    if (dj > caps[js] + slack) {
      // Recheck in extended precision before declaring a violation.
      dj = static_cast<double>(std::abs(inst.row_dot_ld(js, w)));
    }
    worst = std::min(worst, caps[js] - dj);
    ok = ok && (dj <= caps[js] + slack);
  }
  out.ok = ok;
  out.worst_slack = worst;
  return out;
}

class Walk {
 public:
  Walk(const DiscInstance& inst, const std::vector<char>& mask,
       const std::vector<double>& caps, const WalkParams& params)
      : inst_(inst), mask_(mask), caps_(caps), params_(params) {}

  // Moves x (full-dimension, in place). Returns true when at least
  // ceil(level_dim/2) of the masked coordinates are integral afterwards.
  bool run(std::vector<double>& x, std::uint64_t seed);

 private:
  static constexpr double kWatchWindow = 4.0;  // normalised slack
  static constexpr std::size_t kMaxMaterialised = 512;

  void rebuild_live(const std::vector<double>& x);
  void rebuild_basis();
  bool refresh(std::span<const double> w);
  const std::vector<double>& materialise(std::size_t j);

  const DiscInstance& inst_;
  const std::vector<char>& mask_;
  const std::vector<double>& caps_;
  const WalkParams& params_;

  std::vector<std::int64_t> live_;
  std::vector<double> D_;
  std::vector<char> status_;  // 0 plain, 1 watched, 2 active
  std::vector<std::size_t> watched_;
  std::vector<std::vector<double>> basis_;  // orthonormal, over live coords
  std::unordered_map<std::size_t, std::vector<double>> rows_;
  std::int64_t batch_ = 64;
  double sigma_ = 0.0;
};

const std::vector<double>& Walk::materialise(std::size_t j) {
  auto it = rows_.find(j);
  if (it != rows_.end()) return it->second;
  std::vector<double> r(static_cast<std::size_t>(inst_.dim()));
  inst_.row(j, r);
  return rows_.emplace(j, std::move(r)).first->second;
}

void Walk::rebuild_live(const std::vector<double>& x) {
  live_.clear();
  for (std::int64_t i = 0; i < inst_.dim(); ++i)
    if (mask_[static_cast<std::size_t>(i)] &&
        std::abs(x[static_cast<std::size_t>(i)]) < 1.0)
      live_.push_back(i);
}

void Walk::rebuild_basis() {
  basis_.clear();
  for (std::size_t j = 0; j < status_.size(); ++j) {
    if (status_[j] != 2) continue;
    const std::vector<double>& row = materialise(j);
    std::vector<double> v(live_.size());
    double norm0 = 0.0;
    for (std::size_t idx = 0; idx < live_.size(); ++idx) {
      v[idx] = row[static_cast<std::size_t>(live_[idx])];
      norm0 += v[idx] * v[idx];
    }
    for (const auto& b : basis_) {
      double dot = 0.0;
      for (std::size_t idx = 0; idx < v.size(); ++idx) dot += v[idx] * b[idx];
      for (std::size_t idx = 0; idx < v.size(); ++idx) v[idx] -= dot * b[idx];
    }
    double norm = 0.0;
    for (double e : v) norm += e * e;
    if (norm <= 1e-20 * std::max(norm0, 1.0)) continue;  // dependent row
    const double inv = 1.0 / std::sqrt(norm);
    for (double& e : v) e *= inv;
    basis_.push_back(std::move(v));
  }
}

bool Walk::refresh(std::span<const double> w) {
  const std::size_t m = inst_.count();
  inst_.apply(w, D_);
  bool basis_dirty = false;
  double min_norm_slack = std::numeric_limits<double>::infinity();
  watched_.clear();
  for (std::size_t j = 0; j < m; ++j) {
    const double dj = std::abs(D_[j]);
    const double cap = caps_[j];
    if (dj > cap + verify_slack(cap, inst_.l2(j))) return false;  // overshoot
    const double l2 = std::max(inst_.l2(j), 1e-300);
    const double norm_slack = (cap - dj) / l2;
    char st = 0;
    if (cap == 0.0 || dj >= (1.0 - params_.tight_margin) * cap)
      st = 2;
    else if (norm_slack <= kWatchWindow)
      st = 1;
    if (st != status_[j] && (st == 2 || status_[j] == 2)) basis_dirty = true;
    status_[j] = st;
    if (st == 1) watched_.push_back(j);
    if (st == 2) watched_.push_back(j);  // active rows also tracked exactly
    if (st == 0) min_norm_slack = std::min(min_norm_slack, norm_slack);
  }
  if (watched_.size() > kMaxMaterialised) return false;
  if (basis_dirty || basis_.size() > 0) rebuild_basis();

  // Unwatched rows drift like a random walk with per-step deviation sigma
  // along v/||v||; re-check well before the watch window could be crossed.
  if (!std::isfinite(min_norm_slack)) {
    batch_ = 64;
  } else {
    const double b = min_norm_slack / (4.0 * sigma_);
    batch_ = static_cast<std::int64_t>(std::clamp(b * b, 64.0, 16384.0));
  }
  return true;
}

bool Walk::run(std::vector<double>& x, std::uint64_t seed) {
  const std::int64_t dim = inst_.dim();
  std::int64_t level_dim = 0;
  for (char c : mask_) level_dim += c ? 1 : 0;
  const std::int64_t need = (level_dim + 1) / 2;

  rebuild_live(x);
  std::int64_t frozen = level_dim - static_cast<std::int64_t>(live_.size());
  if (frozen >= need) return true;

  const std::vector<double> x_base = x;
  std::vector<double> w(static_cast<std::size_t>(dim), 0.0);
  D_.assign(inst_.count(), 0.0);
  status_.assign(inst_.count(), 0);
  rows_.clear();
  basis_.clear();

  Rng rng(seed);
  sigma_ =
      params_.step_scale / (8.0 * std::sqrt(static_cast<double>(level_dim)));
  const std::int64_t max_steps =
      params_.max_steps > 0 ? params_.max_steps : 64 * level_dim * level_dim;

  if (!refresh(w)) return false;

  std::vector<double> g;
  std::vector<double> dx;
  std::int64_t since_refresh = 0;
  int stalls = 0;

  for (std::int64_t step = 0; step < max_steps; ++step) {
    if (since_refresh >= batch_) {
      if (!refresh(w)) return false;
      since_refresh = 0;
    }
    ++since_refresh;

    const std::size_t nl = live_.size();
    g.resize(nl);
    for (double& e : g) e = rng.gaussian();
    for (const auto& b : basis_) {
      double dot = 0.0;
      for (std::size_t idx = 0; idx < nl; ++idx) dot += g[idx] * b[idx];
      for (std::size_t idx = 0; idx < nl; ++idx) g[idx] -= dot * b[idx];
    }
    double gnorm2 = 0.0;
    for (double e : g) gnorm2 += e * e;
    if (gnorm2 <= 1e-12 * static_cast<double>(nl)) {
      if (++stalls > 64) return false;  // projected out of moves
      continue;
    }

    dx.resize(nl);
    bool froze = false;
    for (std::size_t idx = 0; idx < nl; ++idx) {
      const std::size_t i = static_cast<std::size_t>(live_[idx]);
      double nx = x[i] + sigma_ * g[idx];
      if (nx >= 1.0) {
        nx = 1.0;
        froze = true;
      } else if (nx <= -1.0) {
        nx = -1.0;
        froze = true;
      }
      dx[idx] = nx - x[i];
      x[i] = nx;
      w[i] = nx - x_base[i];
    }

    // Watched and active rows track their inner products exactly.
    bool basis_dirty = false;
    for (std::size_t j : watched_) {
      const std::vector<double>& row = materialise(j);
      double upd = 0.0;
      for (std::size_t idx = 0; idx < nl; ++idx)
        upd += row[static_cast<std::size_t>(live_[idx])] * dx[idx];
      D_[j] += upd;
      const double dj = std::abs(D_[j]);
      if (dj > caps_[j] + verify_slack(caps_[j], inst_.l2(j))) return false;
      if (status_[j] == 1 &&
          dj >= (1.0 - params_.tight_margin) * caps_[j]) {
        status_[j] = 2;
        basis_dirty = true;
      }
    }

    if (froze) {
      rebuild_live(x);
      frozen = level_dim - static_cast<std::int64_t>(live_.size());
      if (frozen >= need) break;
      basis_dirty = !basis_.empty() || basis_dirty;
    }
    if (basis_dirty) rebuild_basis();
  }

  // End-of-walk snap within tolerance, then recount.
  rebuild_live(x);
  for (std::int64_t i : live_) {
    const std::size_t ii = static_cast<std::size_t>(i);
    if (std::abs(x[ii]) >= 1.0 - params_.snap_tol)
      x[ii] = x[ii] >= 0.0 ? 1.0 : -1.0;
  }
  rebuild_live(x);
  frozen = level_dim - static_cast<std::int64_t>(live_.size());
  return frozen >= need;
}

// One verified partial-colour round over the masked coordinates, retrying
// with derived seeds. caps are the literal walk bounds c_j ||v_j||_2.
void partial_round(const DiscInstance& inst, const std::vector<char>& mask,
                   const std::vector<double>& caps, std::vector<double>& x,
                   std::uint64_t seed, const WalkParams& params,
                   const char* what, int& attempts_out, double& slack_out) {
  double best_slack = -std::numeric_limits<double>::infinity();
  for (int attempt = 0; attempt <= params.retries; ++attempt) {
    std::vector<double> trial = x;
    Walk walk(inst, mask, caps, params);
    const std::uint64_t s =
        derive_seed(seed, "attempt-" + std::to_string(attempt));
    if (!walk.run(trial, s)) continue;
    std::vector<double> w(trial.size());
    for (std::size_t i = 0; i < trial.size(); ++i) w[i] = trial[i] - x[i];
    const Verify v = verify_caps(inst, w, caps);
    if (v.ok) {
      x = std::move(trial);
      attempts_out += attempt + 1;
      slack_out = std::min(slack_out, v.worst_slack);
      return;
    }
    best_slack = std::max(best_slack, v.worst_slack);
  }
  fail(ErrorKind::solver,
       std::string(what) + ": walk failed to converge within " +
           std::to_string(params.retries + 1) +
           " attempts (best attempt slack " + std::to_string(best_slack) + ")");
}

}  // namespace

Colouring partial_colour(const DiscInstance& inst, std::uint64_t seed,
                         const WalkParams& params) {
  if (!check_budget(inst, 16))
    fail(ErrorKind::config,
         "partial-colouring budget violated: sum exp(-c^2/16) = " +
             std::to_string(budget_sum(inst, 16)) + " > dim/16 = " +
             std::to_string(static_cast<double>(inst.dim()) / 16.0));

  std::vector<double> x = inst.x0();
  std::vector<char> mask(static_cast<std::size_t>(inst.dim()), 1);
  std::vector<double> caps(inst.count());
  for (std::size_t j = 0; j < caps.size(); ++j)
    caps[j] = inst.budget(j) * inst.l2(j);

  Colouring out;
  out.seed = seed;
  out.attempts = 0;
  out.worst_slack = std::numeric_limits<double>::infinity();
  partial_round(inst, mask, caps, x, seed, params, "partial_colour",
                out.attempts, out.worst_slack);

  std::vector<double> w(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) w[i] = x[i] - inst.x0()[i];
  const Verify v = verify_caps(inst, w, caps);
  if (!v.ok)
    fail(ErrorKind::solver, "partial_colour: verification failed after snap");
  out.worst_slack = std::min(out.worst_slack, v.worst_slack);
  out.x = std::move(x);
  for (std::int64_t i = 0; i < inst.dim(); ++i)
    if (std::abs(out.x[static_cast<std::size_t>(i)]) == 1.0)
      out.frozen.push_back(i);
  if (out.frozen.size() <
      static_cast<std::size_t>((inst.dim() + 1) / 2))
    fail(ErrorKind::solver, "partial_colour: fewer than half the coordinates "
                            "reached +-1");
  out.verified = true;
  return out;
}

Colouring full_colour(const DiscInstance& inst, std::uint64_t seed,
                      const WalkParams& params) {
  if (!check_budget(inst, 196))
    fail(ErrorKind::config,
         "full-colouring budget violated: sum exp(-c^2/14^2) = " +
             std::to_string(budget_sum(inst, 196)) + " > dim/16 = " +
             std::to_string(static_cast<double>(inst.dim()) / 16.0));

  const std::size_t m = inst.count();
  std::vector<double> x = inst.x0();
  std::vector<char> mask(static_cast<std::size_t>(inst.dim()), 1);
  std::vector<double> c_eff(m);
  for (std::size_t j = 0; j < m; ++j) c_eff[j] = inst.budget(j);

  Colouring out;
  out.seed = seed;
  out.attempts = 0;
  out.worst_slack = std::numeric_limits<double>::infinity();

  int level = 0;
  std::int64_t level_dim = inst.dim();
  while (level_dim > 900) {
    std::vector<double> caps(m);
    for (std::size_t j = 0; j < m; ++j)
      caps[j] = (2.0 / 7.0) * c_eff[j] * inst.l2(j);
    const std::uint64_t level_seed =
        derive_seed(seed, "level-" + std::to_string(level));
    partial_round(inst, mask, caps, x, level_seed, params, "full_colour",
                  out.attempts, out.worst_slack);

    // Keep the first ceil(dim/2) integral coordinates, recurse on the rest.
    const std::int64_t keep = (level_dim + 1) / 2;
    std::int64_t kept = 0;
    for (std::int64_t i = 0; i < inst.dim() && kept < keep; ++i) {
      const std::size_t ii = static_cast<std::size_t>(i);
      if (mask[ii] && std::abs(x[ii]) == 1.0) {
        mask[ii] = 0;
        ++kept;
      }
    }
    if (kept < keep)
      fail(ErrorKind::solver, "full_colour: partial round lost its frozen set");
    const std::int64_t rest = level_dim - keep;
    const double inflate =
        196.0 * std::log(static_cast<double>(level_dim) /
                         static_cast<double>(level_dim / 2));
    for (std::size_t j = 0; j < m; ++j)
      c_eff[j] = std::sqrt(c_eff[j] * c_eff[j] + inflate);
    level_dim = rest;
    ++level;
  }

  for (std::int64_t i = 0; i < inst.dim(); ++i) {
    const std::size_t ii = static_cast<std::size_t>(i);
    if (mask[ii]) x[ii] = x[ii] >= 0.0 ? 1.0 : -1.0;
  }

  std::vector<double> w(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) w[i] = x[i] - inst.x0()[i];
  std::vector<double> caps(m);
  const double root_dim = std::sqrt(static_cast<double>(inst.dim()));
  for (std::size_t j = 0; j < m; ++j)
    caps[j] = (inst.budget(j) + 30.0) * root_dim * inst.inf_cap(j);
  const Verify v = verify_caps(inst, w, caps);
  if (!v.ok)
    fail(ErrorKind::solver, "full_colour: final verification failed");
  out.worst_slack = std::min(out.worst_slack, v.worst_slack);
  out.x = std::move(x);
  out.frozen.resize(static_cast<std::size_t>(inst.dim()));
  for (std::int64_t i = 0; i < inst.dim(); ++i)
    out.frozen[static_cast<std::size_t>(i)] = i;
  out.verified = true;
  if (out.attempts == 0) out.attempts = 1;
  return out;
}

// ---------------------------------------------------------------------------
// JSON round trip (dense instances; the CLI surface).

std::string DiscInstance::to_json() const {
  if (family_)
    fail(ErrorKind::config, "structured instances have no JSON form");
  nlohmann::json j;
  j["dim"] = dim_;
  nlohmann::json cons = nlohmann::json::array();
  for (std::size_t r = 0; r < budgets_.size(); ++r) {
    nlohmann::json one;
    one["v"] = std::vector<double>(
        rows_.begin() + static_cast<std::ptrdiff_t>(r * static_cast<std::size_t>(dim_)),
        rows_.begin() + static_cast<std::ptrdiff_t>((r + 1) * static_cast<std::size_t>(dim_)));
    one["c"] = budgets_[r];
    cons.push_back(std::move(one));
  }
  j["constraints"] = std::move(cons);
  j["x0"] = x0_;
  return j.dump(2) + "\n";
}

DiscInstance DiscInstance::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::parse, std::string("instance: ") + e.what());
  }
  try {
    const std::int64_t dim = j.at("dim").get<std::int64_t>();
    std::vector<double> rows;
    std::vector<double> budgets;
    for (const auto& one : j.at("constraints")) {
      const auto v = one.at("v").get<std::vector<double>>();
      if (v.size() != static_cast<std::size_t>(dim))
        fail(ErrorKind::parse, "instance: constraint vector length mismatch");
      rows.insert(rows.end(), v.begin(), v.end());
      budgets.push_back(one.at("c").get<double>());
    }
    std::vector<double> x0(static_cast<std::size_t>(dim), 0.0);
    if (j.contains("x0")) x0 = j.at("x0").get<std::vector<double>>();
    return DiscInstance::dense(dim, std::move(rows), std::move(budgets),
                               std::move(x0));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::parse, std::string("instance: ") + e.what());
  }
}

std::string Colouring::to_json() const {
  nlohmann::json j;
  j["x"] = x;
  j["seed"] = seed;
  j["verified"] = verified;
  return j.dump(2) + "\n";
}

Colouring Colouring::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::parse, std::string("colouring: ") + e.what());
  }
  Colouring col;
  try {
    col.x = j.at("x").get<std::vector<double>>();
    col.seed = j.at("seed").get<std::uint64_t>();
    col.verified = j.at("verified").get<bool>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::parse, std::string("colouring: ") + e.what());
  }
  for (std::size_t i = 0; i < col.x.size(); ++i)
    if (std::abs(col.x[i]) == 1.0)
      col.frozen.push_back(static_cast<std::int64_t>(i));
  return col;
}

}  // namespace lforge
