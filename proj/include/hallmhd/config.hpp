#pragma once

#include <string>
#include <vector>

#include "hallmhd/decay.hpp"
#include "hallmhd/initial_data.hpp"
#include "hallmhd/integrator.hpp"

namespace hallmhd {

struct FitSettings {
  double tol = 0.15;                 // exponent tolerance for verdicts
  double t_shift = 1.0;              // log(t + t_shift) abscissa
  double boundary_threshold = 1e-6;  // auto-window contamination cutoff
  double t_min_factor = 5.0;         // transient cutoff multiplier
};

struct ExperimentConfig {
  int grid_n = 64;
  double grid_l = 32.0;
  HallMhdParams params;
  InitialDataSpec init;
  StepControl step;
  std::vector<WeightedNormSpec> norm_specs;
  FitSettings fit;
  double t_end = 24.0;
  bool linear_only = false;
  std::string out_dir = ".";

  void validate() const;
};

/// Flat key-value config text: one `section.key = value` per line, `#`
/// comments. Norm specs are space- or comma-separated `field:a:b:p` tokens
/// (p may be `inf`; append `:shifted` for the heat-adapted weight); explicit
/// blobs use repeatable `init.blob = cx cy cz sigma ax ay az` lines.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

/// Parses one `field:a:b:p[:shifted]` token.
WeightedNormSpec parse_norm_token(const std::string& token);

}  // namespace hallmhd
