#include "lforge/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lforge/common.hpp"
#include "lforge/rs_core.hpp"

namespace lforge::kernels {

namespace {

using cd = std::complex<double>;

// Fixed chunk sizes: work is carved up the same way regardless of how many
// threads run, which keeps every floating-point value thread-count
// independent.
constexpr std::int64_t kScanChunk = 4096;
constexpr std::int64_t kClassifyChunk = 2048;

struct PhasorBank {
  // Combined P/Q term bank: frequencies, per-step rotators and per-derivative
  // real weights so that S_k = sum_r wgt[k][r] * ph[r] gives
  // H^{(k)} = i^k * S_k, hence |Re H^{(k)}| = |Re S_k| (k even) or
  // |Im S_k| (k odd).
  std::vector<double> freq;
  std::vector<std::vector<double>> wgt;  // wgt[k][r]
  int kmax;

  PhasorBank(const HSeries& hs, int kmax_) : kmax(kmax_) {
    const std::int64_t len = std::int64_t{1} << hs.t;
    const double invT = 1.0 / static_cast<double>(hs.T);
    freq.resize(2 * static_cast<std::size_t>(len));
    wgt.assign(kmax + 1, std::vector<double>(2 * static_cast<std::size_t>(len)));
    for (std::int64_t r = 0; r < len; ++r) {
      const double wp = 1.0 + static_cast<double>(r) * invT;
      const double wq = 2.0 + static_cast<double>(r) * invT;
      freq[static_cast<std::size_t>(r)] = wp;
      freq[static_cast<std::size_t>(len + r)] = wq;
      double pp = hs.scale * hs.p[static_cast<std::size_t>(r)];
      double pq = hs.scale * hs.q[static_cast<std::size_t>(r)];
      for (int k = 0; k <= kmax; ++k) {
        wgt[k][static_cast<std::size_t>(r)] = pp;
        wgt[k][static_cast<std::size_t>(len + r)] = pq;
        pp *= wp;
        pq *= wq;
      }
    }
  }

  void seed(double x, std::vector<double>& re, std::vector<double>& im) const {
    const std::size_t m = freq.size();
    re.resize(m);
    im.resize(m);
    for (std::size_t r = 0; r < m; ++r) {
      re[r] = std::cos(freq[r] * x);
      im[r] = std::sin(freq[r] * x);
    }
  }

  void rotator(double step, std::vector<double>& re,
               std::vector<double>& im) const {
    const std::size_t m = freq.size();
    re.resize(m);
    im.resize(m);
    for (std::size_t r = 0; r < m; ++r) {
      re[r] = std::cos(freq[r] * step);
      im[r] = std::sin(freq[r] * step);
    }
  }
};

inline void rotate(std::vector<double>& pre, std::vector<double>& pim,
                   const std::vector<double>& rre,
                   const std::vector<double>& rim) {
  const std::size_t m = pre.size();
  for (std::size_t r = 0; r < m; ++r) {
    const double a = pre[r] * rre[r] - pim[r] * rim[r];
    const double b = pre[r] * rim[r] + pim[r] * rre[r];
    pre[r] = a;
    pim[r] = b;
  }
}

// max_{k<=kmax} |Re H^{(k)}| from a seeded phasor bank at the current point.
inline double deriv_envelope(const PhasorBank& bank,
                             const std::vector<double>& pre,
                             const std::vector<double>& pim) {
  const std::size_t m = pre.size();
  double worst = 0.0;
  for (int k = 0; k <= bank.kmax; ++k) {
    const std::vector<double>& w = bank.wgt[static_cast<std::size_t>(k)];
    double sre = 0.0, sim = 0.0;
    for (std::size_t r = 0; r < m; ++r) {
      sre += w[r] * pre[r];
      sim += w[r] * pim[r];
    }
    const double v = (k % 2 == 0) ? std::abs(sre) : std::abs(sim);
    worst = std::max(worst, v);
  }
  return worst;
}

inline double re_h_from_bank(const PhasorBank& bank,
                             const std::vector<double>& pre,
                             const std::vector<double>& pim) {
  const std::vector<double>& w = bank.wgt[0];
  double sre = 0.0;
  for (std::size_t r = 0; r < pre.size(); ++r) sre += w[r] * pre[r];
  (void)pim;
  return sre;
}

// Direct (sincos-anchored) Re H, used by the adaptive refinement.
double re_h_point(const HSeries& hs, double x) {
  const std::int64_t len = std::int64_t{1} << hs.t;
  const double invT = 1.0 / static_cast<double>(hs.T);
  const cd z1(std::cos(x), std::sin(x));
  const cd z2 = z1 * z1;
  const cd zstep(std::cos(x * invT), std::sin(x * invT));
  cd zr(1.0, 0.0);
  double acc = 0.0;
  for (std::int64_t r = 0; r < len; ++r) {
    if (r % 512 == 0) {
      const double ang = x * (static_cast<double>(r) * invT);
      zr = cd(std::cos(ang), std::sin(ang));
    }
    const std::size_t ri = static_cast<std::size_t>(r);
    acc += hs.p[ri] * (z1.real() * zr.real() - z1.imag() * zr.imag()) +
           hs.q[ri] * (z2.real() * zr.real() - z2.imag() * zr.imag());
    zr *= zstep;
  }
  return hs.scale * acc;
}

// Branch-and-bound certificate for min |Re H| >= tau on [lo, hi].
// Returns true only when certified; a sample below tau, or an undecidable
// sliver at the depth limit, both come back bad.
bool refine_is_good(const HSeries& hs, double lo, double hi, double tau,
                    double lip) {
  constexpr double kDirectEps = 1e-11;
  const double h_min = (hi - lo) * 0x1p-26;
  struct Seg {
    double a, b;
  };
  std::vector<Seg> stack{{lo, hi}};
  while (!stack.empty()) {
    const Seg s = stack.back();
    stack.pop_back();
    const double mid = 0.5 * (s.a + s.b);
    const double v = std::abs(re_h_point(hs, mid));
    if (v < tau - kDirectEps) return false;
    if (v - lip * 0.5 * (s.b - s.a) - kDirectEps >= tau) continue;
    if (s.b - s.a < h_min) return false;
    stack.push_back({s.a, mid});
    stack.push_back({mid, s.b});
  }
  return true;
}

std::int64_t grid_count(double x0, double x1, double step) {
  return static_cast<std::int64_t>(std::floor((x1 - x0) / step + 1e-9)) + 1;
}

}  // namespace

std::vector<std::complex<double>> eval_many(const SignSeq& s,
                                            std::span<const double> thetas) {
  std::vector<std::complex<double>> out(thetas.size());
  const std::int64_t m = static_cast<std::int64_t>(thetas.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < m; ++i)
    out[static_cast<std::size_t>(i)] = eval_seq(s, thetas[static_cast<std::size_t>(i)]);
  return out;
}

double scan_floor(const HSeries& hs, double x0, double x1, double step,
                  int kmax) {
  const PhasorBank bank(hs, kmax);
  const std::int64_t npts = grid_count(x0, x1, step);
  const std::int64_t nseg = (npts + kScanChunk - 1) / kScanChunk;
  double global_min = std::numeric_limits<double>::infinity();
#pragma omp parallel for schedule(static) reduction(min : global_min)
  for (std::int64_t seg = 0; seg < nseg; ++seg) {
    const std::int64_t j0 = seg * kScanChunk;
    const std::int64_t j1 = std::min(npts, j0 + kScanChunk);
    std::vector<double> pre, pim, rre, rim;
    bank.seed(x0 + static_cast<double>(j0) * step, pre, pim);
    bank.rotator(step, rre, rim);
    double local = std::numeric_limits<double>::infinity();
    for (std::int64_t j = j0; j < j1; ++j) {
      local = std::min(local, deriv_envelope(bank, pre, pim));
      rotate(pre, pim, rre, rim);
    }
    global_min = std::min(global_min, local);
  }
  return global_min;
}

double min_re_h(const HSeries& hs, double x0, double x1, double step) {
  const PhasorBank bank(hs, 0);
  const std::int64_t npts = grid_count(x0, x1, step);
  const std::int64_t nseg = (npts + kScanChunk - 1) / kScanChunk;
  double global_min = std::numeric_limits<double>::infinity();
#pragma omp parallel for schedule(static) reduction(min : global_min)
  for (std::int64_t seg = 0; seg < nseg; ++seg) {
    const std::int64_t j0 = seg * kScanChunk;
    const std::int64_t j1 = std::min(npts, j0 + kScanChunk);
    std::vector<double> pre, pim, rre, rim;
    bank.seed(x0 + static_cast<double>(j0) * step, pre, pim);
    bank.rotator(step, rre, rim);
    double local = std::numeric_limits<double>::infinity();
    for (std::int64_t j = j0; j < j1; ++j) {
      local = std::min(local, re_h_from_bank(bank, pre, pim));
      rotate(pre, pim, rre, rim);
    }
    global_min = std::min(global_min, local);
  }
  return global_min;
}

std::vector<std::uint8_t> classify_base(const HSeries& hs, std::int64_t half,
                                        double eta, double tau, double lip) {
  constexpr double kCoarseEps = 1e-9;
  std::vector<std::uint8_t> verdict(static_cast<std::size_t>(half), 0);
  const PhasorBank bank(hs, 0);
  const std::int64_t nseg = (half + kClassifyChunk - 1) / kClassifyChunk;
#pragma omp parallel for schedule(static)
  for (std::int64_t seg = 0; seg < nseg; ++seg) {
    const std::int64_t j0 = seg * kClassifyChunk;
    const std::int64_t j1 = std::min(half, j0 + kClassifyChunk);
    std::vector<double> pre, pim, rre, rim;
    bank.seed(static_cast<double>(j0) * eta, pre, pim);
    bank.rotator(0.5 * eta, rre, rim);
    double v_left = std::abs(re_h_from_bank(bank, pre, pim));
    for (std::int64_t j = j0; j < j1; ++j) {
      rotate(pre, pim, rre, rim);
      const double v_mid = std::abs(re_h_from_bank(bank, pre, pim));
      rotate(pre, pim, rre, rim);
      const double v_right = std::abs(re_h_from_bank(bank, pre, pim));
      const double m3 = std::min({v_left, v_mid, v_right});
      bool good;
      if (m3 - lip * 0.25 * eta - kCoarseEps >= tau) {
        good = true;
      } else {
        good = refine_is_good(hs, static_cast<double>(j) * eta,
                              static_cast<double>(j + 1) * eta, tau, lip);
      }
      verdict[static_cast<std::size_t>(j)] = good ? 1 : 0;
      v_left = v_right;
    }
  }
  return verdict;
}

ArcMin min_abs_on_arcs(const TrigPoly& f,
                       const std::vector<std::pair<double, double>>& arcs,
                       double h, double lip) {
  ArcMin out;
  out.grid_min = std::numeric_limits<double>::infinity();
  out.certified = std::numeric_limits<double>::infinity();
  std::int64_t total = 0;
  const std::int64_t na = static_cast<std::int64_t>(arcs.size());
  double grid_min = std::numeric_limits<double>::infinity();
  double certified = std::numeric_limits<double>::infinity();
#pragma omp parallel for schedule(dynamic) \
    reduction(min : grid_min, certified) reduction(+ : total)
  for (std::int64_t i = 0; i < na; ++i) {
    const auto [a, b] = arcs[static_cast<std::size_t>(i)];
    const std::int64_t npts =
        std::max<std::int64_t>(2, grid_count(a, b, h));
    const double spacing = (b - a) / static_cast<double>(npts - 1);
    double local = std::numeric_limits<double>::infinity();
    for (std::int64_t j = 0; j < npts; ++j) {
      const double theta = a + spacing * static_cast<double>(j);
      local = std::min(local, std::abs(f.eval(theta)));
    }
    grid_min = std::min(grid_min, local);
    certified = std::min(certified, local - lip * 0.5 * spacing);
    total += npts;
  }
  out.grid_min = grid_min;
  out.certified = certified;
  out.points = total;
  return out;
}

namespace ref {

std::vector<std::complex<double>> eval_many(const SignSeq& s,
                                            std::span<const double> thetas) {
  std::vector<std::complex<double>> out(thetas.size());
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    cd sum(0.0, 0.0);
    for (std::int64_t k = 0; k < s.size(); ++k) {
      const double ang =
          thetas[i] * static_cast<double>(k + s.offset);
      sum += static_cast<double>(s.coeffs[static_cast<std::size_t>(k)]) *
             cd(std::cos(ang), std::sin(ang));
    }
    out[i] = sum;
  }
  return out;
}

double scan_floor(const HSeries& hs, double x0, double x1, double step,
                  int kmax) {
  const std::int64_t npts = grid_count(x0, x1, step);
  double worst = std::numeric_limits<double>::infinity();
  for (std::int64_t j = 0; j < npts; ++j) {
    const double x = x0 + static_cast<double>(j) * step;
    const HEvaluation he = eval_H(hs, x, kmax);
    double env = 0.0;
    for (int k = 0; k <= kmax; ++k)
      env = std::max(env, std::abs(he.h[static_cast<std::size_t>(k)].real()));
    worst = std::min(worst, env);
  }
  return worst;
}

std::vector<std::uint8_t> classify_base(const HSeries& hs, std::int64_t half,
                                        double eta, double tau, double lip) {
  constexpr double kCoarseEps = 1e-9;
  std::vector<std::uint8_t> verdict(static_cast<std::size_t>(half), 0);
  for (std::int64_t j = 0; j < half; ++j) {
    const double lo = static_cast<double>(j) * eta;
    const double m3 =
        std::min({std::abs(re_h_point(hs, lo)),
                  std::abs(re_h_point(hs, lo + 0.5 * eta)),
                  std::abs(re_h_point(hs, lo + eta))});
    bool good;
    if (m3 - lip * 0.25 * eta - kCoarseEps >= tau)
      good = true;
    else
      good = refine_is_good(hs, lo, lo + eta, tau, lip);
    verdict[static_cast<std::size_t>(j)] = good ? 1 : 0;
  }
  return verdict;
}

ArcMin min_abs_on_arcs(const TrigPoly& f,
                       const std::vector<std::pair<double, double>>& arcs,
                       double h, double lip) {
  ArcMin out;
  out.grid_min = std::numeric_limits<double>::infinity();
  out.certified = std::numeric_limits<double>::infinity();
  for (const auto& [a, b] : arcs) {
    const std::int64_t npts = std::max<std::int64_t>(2, grid_count(a, b, h));
    const double spacing = (b - a) / static_cast<double>(npts - 1);
    double local = std::numeric_limits<double>::infinity();
    for (std::int64_t j = 0; j < npts; ++j) {
      const double theta = a + spacing * static_cast<double>(j);
      local = std::min(local, std::abs(f.eval(theta)));
    }
    out.grid_min = std::min(out.grid_min, local);
    out.certified = std::min(out.certified, local - lip * 0.5 * spacing);
    out.points += npts;
  }
  return out;
}

}  // namespace ref

}  // namespace lforge::kernels
