#pragma once

#include <cstdint>
#include <string>

#include "lforge/assembler.hpp"
#include "lforge/build_config.hpp"
#include "lforge/intervals.hpp"
#include "lforge/sine_builder.hpp"
#include "lforge/verifier.hpp"

namespace lforge {

struct BuildOptions {
  BuildConfig cfg;
  std::uint64_t seed = 1;
  double target_min = 0.0;  // <= 0: mode default
  double target_max = 0.0;
  std::int64_t grid_factor = 64;
};

// Sampled magnitudes of the sine parts, standing in for the paper-exact
// targets (s_hat within [2K sqrt(n)/3, 5K sqrt(n)] and s_o within
// [10 sqrt(n), 2^10 sqrt(n)]) that only hold at the literal constants.
struct SineMeasurements {
  double s_hat_min_on_arcs = 0.0;
  double s_hat_max = 0.0;
  double s_o_min_on_arcs = 0.0;
  double s_o_max = 0.0;
};

struct BuildResult {
  BuildConfig cfg;
  std::uint64_t seed = 0;
  IntervalFamily family;
  AlphaChoice alpha;
  OddSineChoice odd;
  SineMeasurements sines;
  double delta_prime = 0.0;  // certified min |c| outside the family, /sqrt(n)
  LaurentLittlewood laurent;
  SignSeq coeffs;
  FlatnessReport report;
  BoundsCheck bounds;

  // report.json body: the flatness schema plus config echo and pipeline
  // measurements for provenance.
  std::string report_json(const BuildOptions& opt) const;
};

// cosine -> intervals -> alpha -> taylor system -> odd sine -> assemble ->
// certify. Throws on any stage failure; bounds.pass carries the final
// verdict against the configured targets.
BuildResult run_build(const BuildOptions& opt);

}  // namespace lforge
