#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lforge/common.hpp"

namespace lforge {

// Constraint family for the odd-sine Taylor-point system: rows indexed by
// (k, ell), k in [1..M], ell in [0..ell_max], laid out ell-major
// (row = ell*M + k - 1). Row entries over j in [1..n] are
//   ((2j-1)/(2n-1))^ell * sin((2j-1)*theta_k + ell*pi/2),
// theta_k = (2k-1)*pi/(4M) -- the ell-th derivative vectors scaled per row
// by (2n-1)^ell so large orders stay inside double range. Budgets are
// 14*sqrt((9+ell)*log 2). Row-times-vector products for all k at once reduce
// to one FFT per ell.
struct OddSineFamily {
  std::int64_t n = 0;
  std::int64_t M = 0;
  int ell_max = 0;
  std::size_t count() const {
    return static_cast<std::size_t>(M) * (ell_max + 1);
  }
};

// Vectors v_j with budgets c_j and a start point, either stored densely or
// described by an OddSineFamily.
class DiscInstance {
 public:
  static DiscInstance dense(std::int64_t dim, std::vector<double> rows,
                            std::vector<double> budgets,
                            std::vector<double> x0);
  static DiscInstance odd_sine(const OddSineFamily& fam,
                               std::vector<double> x0);

  std::int64_t dim() const { return dim_; }
  std::size_t count() const {
    return family_ ? family_->count() : budgets_.size();
  }
  double budget(std::size_t j) const;
  double l2(std::size_t j) const { return l2_[j]; }
  // Upper bound on ||v_j||_inf (exact for dense rows).
  double inf_cap(std::size_t j) const { return inf_cap_[j]; }
  const std::vector<double>& x0() const { return x0_; }
  const OddSineFamily* family() const {
    return family_ ? &*family_ : nullptr;
  }

  // out[j] = <w, v_j> for every j; w has full dimension.
  void apply(std::span<const double> w, std::span<double> out) const;
  double row_dot(std::size_t j, std::span<const double> w) const;
  long double row_dot_ld(std::size_t j, std::span<const double> w) const;
  void row(std::size_t j, std::span<double> out) const;

  std::string to_json() const;  // dense instances only
  static DiscInstance from_json(const std::string& text);

 private:
  DiscInstance() = default;
  void compute_norms();

  std::int64_t dim_ = 0;
  std::vector<double> rows_;     // m * dim, row-major (dense backend)
  std::vector<double> budgets_;  // dense backend
  std::optional<OddSineFamily> family_;
  std::vector<double> x0_;
  std::vector<double> l2_;
  std::vector<double> inf_cap_;
};

// sum_j exp(-c_j^2/denom) <= dim/16 (1e-12 relative headroom: the pipeline
// instances sit exactly on the boundary).
bool check_budget(const DiscInstance& inst, int denom);
double budget_sum(const DiscInstance& inst, int denom);

struct WalkParams {
  double step_scale = 1.0;     // sigma = step_scale / (8 sqrt(dim))
  std::int64_t max_steps = 0;  // 0 -> 64 * dim^2
  int retries = 3;
  double snap_tol = 1e-6;
  double tight_margin = 1e-3;  // constraint joins the projection set at
                               // |D| >= (1 - margin) * cap
};

struct Colouring {
  std::vector<double> x;
  std::vector<std::int64_t> frozen;  // indices with x_i in {-1,+1}
  std::uint64_t seed = 0;
  bool verified = false;
  double worst_slack = 0.0;  // min_j (cap_j - |<x - x0, v_j>|)
  int attempts = 1;

  std::string to_json() const;
  static Colouring from_json(const std::string& text);
};

// Randomised projected walk: returns x in [-1,1]^dim with
// |<x - x0, v_j>| <= c_j ||v_j||_2 for all j and at least ceil(dim/2)
// coordinates exactly +-1. The postcondition is re-verified, never assumed.
Colouring partial_colour(const DiscInstance& inst, std::uint64_t seed,
                         const WalkParams& params = {});

// Recursive full colouring: x in {-1,+1}^dim with
// |<x - x0, v_j>| <= (c_j + 30) sqrt(dim) ||v_j||_inf. Dimensions <= 900
// snap x0 to the nearest signs; otherwise one partial-colour round with
// budgets 2c/7 freezes half, and the remainder recurses with
// a_j^2 = c_j^2 + 196 log(dim/floor(dim/2)).
Colouring full_colour(const DiscInstance& inst, std::uint64_t seed,
                      const WalkParams& params = {});

}  // namespace lforge
