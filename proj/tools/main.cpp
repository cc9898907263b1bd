// hallmhd: pseudo-spectral Hall-MHD decay laboratory.
//
// Subcommands:
//   run <config>        full experiment (data, integration, fits, verdicts)
//   predict             print the predicted decay exponent for a query
//   analyze <norms.csv> re-fit and re-verdict an existing norm series
//   verify-lemmas       Gronwall certificate sweep + parabolic ratio suite
//   oracle-heat         linear solver vs closed-form Gaussian validation
//
// Exit codes: 0 all checks pass, 1 any check failed, 2 usage/config error.

#include <cstdio>
#include <exception>
#include <iostream>
#include <limits>
#include <string>

#include "CLI11.hpp"

#include "hallmhd/experiment.hpp"
#include "hallmhd/heat_run.hpp"
#include "hallmhd/lemma_suite.hpp"

namespace {

int cmd_run(const std::string& config_path) {
  hallmhd::ExperimentConfig cfg;
  try {
    cfg = hallmhd::parse_config_file(config_path);
    cfg.validate();
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  const auto res = hallmhd::run_experiment(cfg);
  std::cout << res.report.dump(2) << "\n";
  std::cerr << "wrote " << res.norms_csv_path << ", " << res.report_path
            << "\n";
  return res.exit_code;
}

int cmd_predict(const std::string& field, double a, int b, double p) {
  hallmhd::ExponentQuery q;
  if (field == "u") {
    q.field = hallmhd::FieldKind::u;
  } else if (field == "B" || field == "b") {
    q.field = hallmhd::FieldKind::B;
  } else if (field == "omega" || field == "w") {
    q.field = hallmhd::FieldKind::omega;
  } else {
    std::cerr << "unknown field '" << field << "' (want u|B|omega)\n";
    return 2;
  }
  q.a = a;
  q.b = b;
  q.p = p;
  const auto e = hallmhd::predicted_exponent(q);
  if (e) {
    std::printf("%g\n", *e);
  } else {
    std::printf("out-of-validity\n");
  }
  return 0;
}

int cmd_analyze(const std::string& csv, const std::string& config_path,
                hallmhd::FitSettings fit, double width, bool have_flags) {
  if (!config_path.empty()) {
    const auto cfg = hallmhd::parse_config_file(config_path);
    if (!have_flags) {
      fit = cfg.fit;
      width = cfg.init.sigma;
      for (const auto& b : cfg.init.blobs) width = std::max(width, b.sigma);
    }
  }
  const auto res = hallmhd::analyze_norms(csv, fit, width);
  std::cout << res.report.dump(2) << "\n";
  return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pseudo-spectral Hall-MHD solver with decay-rate verification"};
  app.require_subcommand(1);

  std::string config_path, csv_path;
  std::string field = "u";
  double a = 0.0, p = 2.0;
  int b = 0;
  int sweep = 100;
  std::uint64_t seed = 1;
  double t_max = 1e3;
  int heat_n = 64;
  double heat_l = 32.0, heat_sigma = 1.0, heat_t = 24.0, heat_nu = 0.5;
  hallmhd::FitSettings fit;
  double width = 1.0;

  auto* run = app.add_subcommand("run", "run a full experiment from a config");
  run->add_option("config", config_path, "config file")->required();

  auto* predict =
      app.add_subcommand("predict", "print the predicted decay exponent");
  predict->add_option("--field", field, "u|B|omega")->required();
  predict->add_option("--a", a, "weight exponent")->required();
  predict->add_option("--b", b, "derivative order")->required();
  std::string p_text = "2";
  predict->add_option("--p", p_text, "Lebesgue exponent (inf accepted)")
      ->required();

  auto* analyze = app.add_subcommand(
      "analyze", "re-fit and re-verdict an existing norms.csv");
  analyze->add_option("csv", csv_path, "norms.csv from a run")->required();
  analyze->add_option("--config", config_path,
                      "config of the producing run (reproduces its verdicts)");
  auto* f_tol = analyze->add_option("--tol", fit.tol, "exponent tolerance");
  auto* f_ts = analyze->add_option("--t-s", fit.t_shift, "fit shift");
  auto* f_th = analyze->add_option("--threshold", fit.boundary_threshold,
                                   "boundary threshold");
  auto* f_tm = analyze->add_option("--t-min-factor", fit.t_min_factor,
                                   "transient cutoff factor");
  auto* f_w = analyze->add_option("--width", width, "initial data width");

  auto* lemmas = app.add_subcommand(
      "verify-lemmas", "Gronwall sweep and parabolic interpolation suite");
  lemmas->add_option("--sweep", sweep, "number of random parameter draws");
  lemmas->add_option("--seed", seed, "sweep seed");
  lemmas->add_option("--t-max", t_max, "trajectory horizon");

  auto* heat = app.add_subcommand(
      "oracle-heat", "linear solver vs closed-form Gaussian validation");
  heat->add_option("--n", heat_n, "grid points per dimension");
  heat->add_option("--l", heat_l, "box length");
  heat->add_option("--sigma", heat_sigma, "Gaussian width");
  heat->add_option("--t-end", heat_t, "final time");
  heat->add_option("--nu", heat_nu,
                   "diffusivity (default keeps the Gaussian inside the box)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (run->parsed()) {
      return cmd_run(config_path);
    }
    if (predict->parsed()) {
      if (p_text == "inf") {
        p = std::numeric_limits<double>::infinity();
      } else {
        try {
          p = std::stod(p_text);
        } catch (...) {
          std::cerr << "bad --p value '" << p_text << "'\n";
          return 2;
        }
      }
      try {
        return cmd_predict(field, a, b, p);
      } catch (const std::invalid_argument& e) {
        std::cerr << "bad query: " << e.what() << "\n";
        return 2;
      }
    }
    if (analyze->parsed()) {
      const bool have_flags = *f_tol || *f_ts || *f_th || *f_tm || *f_w;
      return cmd_analyze(csv_path, config_path, fit, width, have_flags);
    }
    if (lemmas->parsed()) {
      const auto res = hallmhd::verify_lemmas(sweep, seed, t_max);
      std::cout << res.report.dump(2) << "\n";
      return res.pass ? 0 : 1;
    }
    if (heat->parsed()) {
      const auto res =
          hallmhd::run_heat_oracle(heat_n, heat_l, heat_sigma, heat_t, heat_nu);
      std::cout << res.report.dump(2) << "\n";
      return res.pass ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
