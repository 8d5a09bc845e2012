// littlewood-forge command line: build / verify / rs / discrepancy.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "lforge/common.hpp"
#include "lforge/discrepancy.hpp"
#include "lforge/fft.hpp"
#include "lforge/parallel.hpp"
#include "lforge/pipeline.hpp"
#include "lforge/rs_core.hpp"
#include "lforge/verifier.hpp"

namespace {

namespace fs = std::filesystem;
using lforge::ErrorKind;
using lforge::fail;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::usage, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::usage, "cannot write " + path);
  out << body;
}

lforge::SignSeq load_coeffs(const std::string& path) {
  const std::string body = read_file(path);
  // JSON form {n, eps: [...]} or a '+'/'-' line.
  std::size_t first = 0;
  while (first < body.size() &&
         (body[first] == ' ' || body[first] == '\n' || body[first] == '\t' ||
          body[first] == '\r'))
    ++first;
  if (first < body.size() && body[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(body);
    } catch (const nlohmann::json::parse_error& e) {
      fail(ErrorKind::parse, path + ": " + e.what());
    }
    lforge::SignSeq s;
    try {
      for (const auto& v : j.at("eps"))
        s.coeffs.push_back(static_cast<std::int8_t>(v.get<int>()));
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorKind::parse, path + ": " + e.what());
    }
    s.validate();
    return s;
  }
  lforge::SignSeq s = lforge::SignSeq::from_line(body);
  s.validate();
  return s;
}

int cmd_build(const lforge::BuildOptions& opt, const std::string& out_dir) {
  const lforge::BuildResult res = lforge::run_build(opt);
  fs::create_directories(out_dir);
  write_file(out_dir + "/coeffs.txt", res.coeffs.to_line() + "\n");
  write_file(out_dir + "/report.json", res.report_json(opt));
  write_file(out_dir + "/intervals.json", res.family.to_json());
  std::cout << "n=" << res.cfg.n << " degree=" << res.coeffs.degree()
            << " min_ratio=" << res.report.min_ratio
            << " max_ratio=" << res.report.max_ratio
            << " pass=" << (res.report.pass ? "true" : "false") << "\n";
  return res.report.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  lforge::apply_thread_cap();
  CLI::App app{"flat Littlewood polynomial construction and certification"};
  app.set_version_flag("--version", lforge::kVersion);
  app.require_subcommand(1);

  // --- build ---------------------------------------------------------------
  auto* build = app.add_subcommand("build", "run the construction pipeline");
  std::string config_file;
  std::string out_dir = ".";
  std::string mode_str;
  std::int64_t n = 0;
  int t = 0, shift = 0;
  std::uint64_t seed = 1;
  double kpush = 0.0, good_threshold = 0.0, delta = 0.0;
  double target_min = 0.0, target_max = 0.0;
  std::int64_t grid_factor = 0;
  build->add_option("--config", config_file, "JSON config file");
  auto* o_n = build->add_option("--n", n, "quarter degree (final degree 4n)");
  auto* o_t = build->add_option("--t", t, "odd recursion level");
  auto* o_shift = build->add_option("--shift", shift, "T = 2^{t+shift}");
  auto* o_mode = build->add_option("--mode", mode_str, "paper-exact | scaled");
  auto* o_seed = build->add_option("--seed", seed, "64-bit seed");
  auto* o_k = build->add_option("--K", kpush, "push amplitude (0 = derived)");
  auto* o_thr = build->add_option("--good-threshold", good_threshold,
                                  "good-interval floor (0 = eta^3/2^7)");
  auto* o_delta = build->add_option("--delta", delta,
                                    "target delta (0 = 2^-8 gamma^{7/2})");
  auto* o_tmin = build->add_option("--target-min", target_min,
                                   "min_ratio target (0 = mode default)");
  auto* o_tmax = build->add_option("--target-max", target_max,
                                   "max_ratio target (0 = mode default)");
  auto* o_gf = build->add_option("--grid-factor", grid_factor,
                                 "verification grid oversampling (default 64)");
  build->add_option("--out", out_dir, "output directory");

  // --- verify --------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "certify a coefficient file");
  std::string in_file, report_out;
  std::int64_t vgrid = 0, vnorm = 0, vgf = 64;
  double vtmin = 0.0, vtmax = 0.0;
  verify->add_option("--in", in_file, "'+'/'-' line or JSON {n, eps}")
      ->required();
  verify->add_option("--grid", vgrid, "grid size (power of two)");
  verify->add_option("--grid-factor", vgf, "grid oversampling (default 64)");
  verify->add_option("--norm-n", vnorm, "normalisation n (default degree+1)");
  verify->add_option("--target-min", vtmin, "min_ratio target");
  verify->add_option("--target-max", vtmax, "max_ratio target");
  verify->add_option("--out", report_out, "report path (default stdout)");

  // --- rs ------------------------------------------------------------------
  auto* rs = app.add_subcommand("rs", "emit Rudin-Shapiro sign sequences");
  int rs_t = -1;
  std::int64_t rs_trunc = 0;
  bool rs_q = false;
  std::string rs_out;
  rs->add_option("--t", rs_t, "level: emit P_t (length 2^t)");
  rs->add_flag("--q", rs_q, "emit Q_t instead of P_t");
  rs->add_option("--truncate", rs_trunc, "emit the prefix P_{<n}");
  rs->add_option("--out", rs_out, "output path (default stdout)");

  // --- discrepancy ---------------------------------------------------------
  auto* disc = app.add_subcommand("discrepancy", "solve an instance file");
  std::string disc_in, disc_out;
  std::uint64_t disc_seed = 1;
  bool disc_partial = false;
  disc->add_option("--in", disc_in, "instance JSON")->required();
  disc->add_option("--seed", disc_seed, "64-bit seed");
  disc->add_flag("--partial", disc_partial, "partial colouring only");
  disc->add_option("--out", disc_out, "colouring path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help/--version
    app.exit(e);
    return 2;
  }

  try {
    if (build->parsed()) {
      lforge::BuildOptions opt;
      bool n_given = o_n->count() > 0;
      if (!config_file.empty()) {
        nlohmann::json j;
        try {
          j = nlohmann::json::parse(read_file(config_file));
        } catch (const nlohmann::json::parse_error& e) {
          fail(ErrorKind::parse, config_file + ": " + e.what());
        }
        if (j.contains("n")) n_given = true;
        opt.cfg.n = j.value("n", opt.cfg.n);
        opt.cfg.t = j.value("t", opt.cfg.t);
        opt.cfg.shift = j.value("shift", opt.cfg.shift);
        if (j.contains("mode"))
          opt.cfg.mode = lforge::mode_from_string(j["mode"].get<std::string>());
        opt.seed = j.value("seed", opt.seed);
        opt.cfg.K = j.value("K", opt.cfg.K);
        opt.cfg.good_threshold = j.value("good_threshold", opt.cfg.good_threshold);
        opt.cfg.delta = j.value("delta", opt.cfg.delta);
        opt.target_min = j.value("target_min", opt.target_min);
        opt.target_max = j.value("target_max", opt.target_max);
        opt.grid_factor = j.value("grid_factor", opt.grid_factor);
      }
      // Flags override the config file.
      if (o_n->count()) opt.cfg.n = n;
      if (o_t->count()) opt.cfg.t = t;
      if (o_shift->count()) opt.cfg.shift = shift;
      if (o_mode->count()) opt.cfg.mode = lforge::mode_from_string(mode_str);
      if (o_seed->count()) opt.seed = seed;
      if (o_k->count()) opt.cfg.K = kpush;
      if (o_thr->count()) opt.cfg.good_threshold = good_threshold;
      if (o_delta->count()) opt.cfg.delta = delta;
      if (o_tmin->count()) opt.target_min = target_min;
      if (o_tmax->count()) opt.target_max = target_max;
      if (o_gf->count()) opt.grid_factor = grid_factor;
      if (opt.grid_factor <= 0) opt.grid_factor = 64;
      if (opt.cfg.mode == lforge::Mode::paper_exact && !n_given) {
        // No n given: report the n the gamma window would force.
        const double forced =
            std::ldexp(static_cast<double>(opt.cfg.gamma_n()), 40);
        fail(ErrorKind::capacity,
             "paper-exact mode: the gamma window (2^-43, 2^-40] with "
             "gamma * n = 2^{t+11} + 2^t - 1 = " +
                 std::to_string(opt.cfg.gamma_n()) + " forces n >= " +
                 std::to_string(forced) + ", beyond the build capacity " +
                 std::to_string(lforge::kMaxBuildN));
      }
      return cmd_build(opt, out_dir);
    }

    if (verify->parsed()) {
      const lforge::SignSeq q = load_coeffs(in_file);
      std::int64_t grid = vgrid;
      if (grid == 0)
        grid = static_cast<std::int64_t>(lforge::next_pow2(
            static_cast<std::uint64_t>(vgf * (q.degree() + 1))));
      lforge::FlatnessReport rep = lforge::certify_flatness(q, grid, vnorm);
      lforge::BoundsTargets targets{vtmin, vtmax > 0.0 ? vtmax : 4096.0};
      const lforge::BoundsCheck chk = lforge::check_theorem_bounds(rep, targets);
      rep.target_min = targets.min_ratio;
      rep.target_max = targets.max_ratio;
      rep.pass = chk.pass;
      const std::string body = rep.to_json();
      if (report_out.empty())
        std::cout << body;
      else
        write_file(report_out, body);
      return rep.pass ? 0 : 1;
    }

    if (rs->parsed()) {
      lforge::SignSeq s;
      if (rs_trunc > 0) {
        s = lforge::rs_truncated(rs_trunc);
      } else if (rs_t >= 0) {
        auto pq = lforge::rs_pair(rs_t);
        s = rs_q ? pq.second : pq.first;
      } else {
        fail(ErrorKind::usage, "rs needs --t or --truncate");
      }
      const std::string line = s.to_line() + "\n";
      if (rs_out.empty())
        std::cout << line;
      else
        write_file(rs_out, line);
      return 0;
    }

    if (disc->parsed()) {
      const lforge::DiscInstance inst =
          lforge::DiscInstance::from_json(read_file(disc_in));
      const lforge::Colouring col =
          disc_partial ? lforge::partial_colour(inst, disc_seed)
                       : lforge::full_colour(inst, disc_seed);
      const std::string body = col.to_json();
      if (disc_out.empty())
        std::cout << body;
      else
        write_file(disc_out, body);
      return 0;
    }
  } catch (const lforge::Error& e) {
    nlohmann::json err;
    err["error"] = lforge::to_string(e.kind());
    err["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return e.kind() == ErrorKind::usage ? 2 : 1;
  } catch (const std::exception& e) {
    nlohmann::json err;
    err["error"] = "internal";
    err["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return 1;
  }
  return 2;
}
