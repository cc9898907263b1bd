#pragma once

#include <optional>
#include <string>

// Vendored single-header nlohmann/json.
#include "json.hpp"

#include "hallmhd/config.hpp"

namespace hallmhd {

struct QueryReport {
  ExponentQuery query;
  std::optional<double> predicted;
  std::optional<FitWindow> window;
  std::optional<DecayFit> fit;
  Verdict result = Verdict::no_valid_window;
};

struct RatioReport {
  std::string name;
  double expected = 0.0;
  double tol = 0.0;
  std::optional<DecayFit> fit;
  bool pass = false;
};

struct ExperimentResult {
  int exit_code = 0;  // 0 all checks pass, 1 any fail
  NormSeriesSet series;
  std::vector<QueryReport> queries;
  std::vector<RatioReport> ratios;
  nlohmann::ordered_json report;
  std::string norms_csv_path;
  std::string report_path;
  std::string checkpoint_path;
};

/// Full pipeline: generate data, integrate with snapshot observers, record
/// norm series, window/fit/verdict each query, fit the derivative/weight/
/// vorticity ratio diagnostics, and write norms.csv, report.json, and the
/// final checkpoint under cfg.out_dir (HALLMHD_OUT_DIR overrides).
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Re-fits and re-verdicts an existing norms.csv without re-simulation;
/// reproduces a run's verdicts when given the run's config.
ExperimentResult analyze_norms(const std::string& csv_path,
                               const FitSettings& fit, double init_width);

/// norms.csv: header `t,<series labels>,boundary_u,boundary_B`, one row per
/// snapshot, values in full double precision scientific notation.
void write_norms_csv(const std::string& path, const NormSeriesSet& set);
NormSeriesSet read_norms_csv(const std::string& path);

/// Inverse of WeightedNormSpec::label().
WeightedNormSpec parse_series_label(const std::string& label);

}  // namespace hallmhd
