#include <cmath>
#include <vector>

#include "doctest.h"
#include "lforge/discrepancy.hpp"
#include "lforge/rng.hpp"

using namespace lforge;

namespace {

DiscInstance random_dense(std::int64_t dim, std::size_t m, double budget,
                          std::uint64_t seed, bool unit_rows = true) {
  Rng rng(seed);
  std::vector<double> rows(m * static_cast<std::size_t>(dim));
  for (double& v : rows) v = rng.gaussian();
  if (unit_rows) {
    for (std::size_t j = 0; j < m; ++j) {
      double s = 0.0;
      for (std::int64_t i = 0; i < dim; ++i)
        s += rows[j * dim + i] * rows[j * dim + i];
      const double inv = 1.0 / std::sqrt(s);
      for (std::int64_t i = 0; i < dim; ++i) rows[j * dim + i] *= inv;
    }
  }
  std::vector<double> budgets(m, budget);
  std::vector<double> x0(static_cast<std::size_t>(dim), 0.0);
  return DiscInstance::dense(dim, std::move(rows), std::move(budgets),
                             std::move(x0));
}

}  // namespace

TEST_CASE("check_budget boundary cases") {
  // dim 16 with one c = 0 constraint: sum = 1 = dim/16.
  auto one = DiscInstance::dense(16, std::vector<double>(16, 1.0), {0.0},
                                 std::vector<double>(16, 0.0));
  CHECK(check_budget(one, 16));
  CHECK(check_budget(one, 196));

  auto two = DiscInstance::dense(16, std::vector<double>(32, 1.0), {0.0, 0.0},
                                 std::vector<double>(16, 0.0));
  CHECK(!check_budget(two, 16));

  auto none = DiscInstance::dense(16, {}, {}, std::vector<double>(16, 0.0));
  CHECK(check_budget(none, 16));
  CHECK_THROWS_AS((void)check_budget(none, 17), Error);
}

TEST_CASE("partial_colour with no constraints freezes half the cube") {
  auto inst = DiscInstance::dense(2, {}, {}, {0.0, 0.0});
  const Colouring col = partial_colour(inst, 1);
  CHECK(col.verified);
  CHECK(col.frozen.size() >= 1);
  for (double v : col.x) CHECK(std::abs(v) <= 1.0);
}

TEST_CASE("partial_colour respects loose random constraints (oracle recheck)") {
  const std::int64_t dim = 64;
  auto inst = random_dense(dim, 4, 10.0, 77);
  const Colouring col = partial_colour(inst, 5);
  CHECK(col.verified);
  CHECK(col.frozen.size() >= 32);
  // Independent dot products against the instance rows.
  std::vector<double> row(static_cast<std::size_t>(dim));
  for (std::size_t j = 0; j < inst.count(); ++j) {
    inst.row(j, row);
    long double d = 0.0L;
    for (std::int64_t i = 0; i < dim; ++i)
      d += static_cast<long double>(col.x[static_cast<std::size_t>(i)] -
                                    inst.x0()[static_cast<std::size_t>(i)]) *
           row[static_cast<std::size_t>(i)];
    CHECK(std::abs(static_cast<double>(d)) <=
          inst.budget(j) * inst.l2(j) * (1.0 + 1e-6) + 1e-9);
  }
}

TEST_CASE("partial_colour is the identity on integral start points") {
  Rng rng(9);
  const std::int64_t dim = 32;
  std::vector<double> x0(static_cast<std::size_t>(dim));
  for (double& v : x0) v = rng.sign();
  auto inst = DiscInstance::dense(dim, {}, {}, x0);
  const Colouring col = partial_colour(inst, 3);
  CHECK(col.x == x0);
  CHECK(col.frozen.size() == static_cast<std::size_t>(dim));
}

TEST_CASE("partial_colour rejects over-budget instances") {
  // 32 constraints with c = 0 on dim 16: sum = 32 > 1.
  auto inst = DiscInstance::dense(
      16, std::vector<double>(32 * 16, 0.5), std::vector<double>(32, 0.0),
      std::vector<double>(16, 0.0));
  CHECK_THROWS_AS((void)partial_colour(inst, 1), Error);
}

TEST_CASE("full_colour base case snaps to the nearest signs") {
  const std::int64_t dim = 10;
  std::vector<double> x0 = {0.3, -0.2, 0.0, 0.9, -0.9, 0.5, -0.5, 0.1, -0.1, 0.7};
  Rng rng(21);
  std::vector<double> rows(3 * static_cast<std::size_t>(dim));
  for (double& v : rows) v = rng.uniform(-1.0, 1.0);
  auto inst = DiscInstance::dense(dim, std::move(rows), {14.0, 20.0, 35.0}, x0);
  const Colouring col = full_colour(inst, 2);
  CHECK(col.verified);
  for (std::int64_t i = 0; i < dim; ++i) {
    const double expect = x0[static_cast<std::size_t>(i)] >= 0.0 ? 1.0 : -1.0;
    CHECK(col.x[static_cast<std::size_t>(i)] == expect);
  }
  // Base-case guarantee: |<x - x0, v>| <= dim ||v||_inf <= 30 sqrt(dim) ||v||_inf.
  std::vector<double> row(static_cast<std::size_t>(dim));
  for (std::size_t j = 0; j < inst.count(); ++j) {
    inst.row(j, row);
    double d = 0.0;
    for (std::int64_t i = 0; i < dim; ++i)
      d += (col.x[static_cast<std::size_t>(i)] - x0[static_cast<std::size_t>(i)]) *
           row[static_cast<std::size_t>(i)];
    CHECK(std::abs(d) <=
          (inst.budget(j) + 30.0) * std::sqrt(static_cast<double>(dim)) *
              inst.inf_cap(j));
  }
}

TEST_CASE("full_colour above the base case walks and verifies") {
  const std::int64_t dim = 1024;
  auto inst = random_dense(dim, 50, 14.0 * std::sqrt(9.0 * std::log(2.0)), 123);
  REQUIRE(check_budget(inst, 196));
  const Colouring col = full_colour(inst, 31);
  CHECK(col.verified);
  CHECK(col.frozen.size() == static_cast<std::size_t>(dim));
  for (double v : col.x) CHECK(std::abs(v) == 1.0);
  CHECK(col.worst_slack >= 0.0);
}

TEST_CASE("identical seeds reproduce identical colourings") {
  const std::int64_t dim = 1024;
  auto inst = random_dense(dim, 20, 40.0, 55);
  const Colouring a = full_colour(inst, 7);
  const Colouring b = full_colour(inst, 7);
  CHECK(a.x == b.x);
  const Colouring c = full_colour(inst, 8);
  bool same = true;
  for (std::size_t i = 0; i < a.x.size(); ++i) same = same && a.x[i] == c.x[i];
  CHECK(!same);
}

TEST_CASE("budget inflation keeps a_j within c_j + 12 above the base case") {
  for (std::int64_t n : {901, 1024, 1800, 2048}) {
    const double inflate = 196.0 * std::log(static_cast<double>(n) /
                                            static_cast<double>(n / 2));
    for (double c : {0.0, 5.0, 35.0}) {
      const double a = std::sqrt(c * c + inflate);
      CHECK(a <= c + 12.0);
    }
  }
}

TEST_CASE("odd-sine family: FFT apply equals direct row dots") {
  OddSineFamily fam;
  fam.n = 64;
  fam.M = 1024;
  fam.ell_max = 3;
  std::vector<double> x0(64, 0.0);
  auto inst = DiscInstance::odd_sine(fam, x0);
  Rng rng(71);
  std::vector<double> w(64);
  for (double& v : w) v = rng.uniform(-1.0, 1.0);
  std::vector<double> fast(inst.count());
  inst.apply(w, fast);
  std::vector<double> row(64);
  for (std::size_t j = 0; j < inst.count(); ++j) {
    const double direct = inst.row_dot(j, w);
    CHECK(std::abs(fast[j] - direct) < 1e-9 * (1.0 + std::abs(direct)));
  }
  // Norms: l2 from the closed form vs direct; inf_cap upper-bounds the rows.
  for (std::size_t j = 0; j < inst.count(); j += 97) {
    inst.row(j, row);
    double s2 = 0.0, si = 0.0;
    for (double v : row) {
      s2 += v * v;
      si = std::max(si, std::abs(v));
    }
    CHECK(inst.l2(j) == doctest::Approx(std::sqrt(s2)).epsilon(1e-9));
    CHECK(si <= inst.inf_cap(j) * (1.0 + 1e-12));
  }
}

TEST_CASE("dense instance JSON round trip") {
  auto inst = random_dense(8, 3, 2.5, 99, false);
  const DiscInstance back = DiscInstance::from_json(inst.to_json());
  CHECK(back.dim() == inst.dim());
  REQUIRE(back.count() == inst.count());
  std::vector<double> r1(8), r2(8);
  for (std::size_t j = 0; j < inst.count(); ++j) {
    inst.row(j, r1);
    back.row(j, r2);
    CHECK(r1 == r2);
    CHECK(back.budget(j) == inst.budget(j));
  }
  CHECK_THROWS_AS((void)DiscInstance::from_json("{\"dim\": 2}"), Error);
}
