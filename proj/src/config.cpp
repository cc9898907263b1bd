#include "hallmhd/config.hpp"

#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace hallmhd {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& v, const std::string& key) {
  if (v == "inf") return std::numeric_limits<double>::infinity();
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (...) {
    throw std::invalid_argument("config: bad number '" + v + "' for " + key);
  }
}

bool parse_bool(const std::string& v, const std::string& key) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw std::invalid_argument("config: bad boolean '" + v + "' for " + key);
}

std::vector<std::string> split_any(const std::string& s,
                                   const std::string& seps) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (seps.find(c) != std::string::npos) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

WeightedNormSpec parse_norm_token(const std::string& token) {
  auto parts = split_any(token, ":");
  if (parts.size() < 4 || parts.size() > 5) {
    throw std::invalid_argument("config: bad norm token '" + token +
                                "' (want field:a:b:p[:shifted])");
  }
  WeightedNormSpec spec;
  if (parts[0] == "u") {
    spec.field_kind = FieldKind::u;
  } else if (parts[0] == "B" || parts[0] == "b") {
    spec.field_kind = FieldKind::B;
  } else if (parts[0] == "omega" || parts[0] == "w") {
    spec.field_kind = FieldKind::omega;
  } else {
    throw std::invalid_argument("config: unknown field '" + parts[0] + "'");
  }
  spec.a = parse_double(parts[1], "norm a");
  spec.b = static_cast<int>(parse_double(parts[2], "norm b"));
  spec.p = parse_double(parts[3], "norm p");
  if (parts.size() == 5) {
    if (parts[4] != "shifted") {
      throw std::invalid_argument("config: bad norm suffix '" + parts[4] + "'");
    }
    spec.weight_kind = WeightKind::shifted;
  }
  spec.validate();
  return spec;
}

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig cfg;
  cfg.init.blobs.clear();
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));

    if (key == "grid.n") {
      cfg.grid_n = static_cast<int>(parse_double(val, key));
    } else if (key == "grid.l") {
      cfg.grid_l = parse_double(val, key);
    } else if (key == "params.nu") {
      cfg.params.nu = parse_double(val, key);
    } else if (key == "params.eta") {
      cfg.params.eta = parse_double(val, key);
    } else if (key == "params.eps_hall") {
      cfg.params.eps_hall = parse_double(val, key);
    } else if (key == "init.kind") {
      if (val == "curl") {
        cfg.init.kind = InitKind::potential_curl;
      } else if (val == "scalar") {
        cfg.init.kind = InitKind::gaussian_scalar;
      } else {
        throw std::invalid_argument("config: init.kind must be curl|scalar");
      }
    } else if (key == "init.which") {
      if (val == "u") {
        cfg.init.which = WhichFields::u_only;
      } else if (val == "b" || val == "B") {
        cfg.init.which = WhichFields::b_only;
      } else if (val == "both") {
        cfg.init.which = WhichFields::both;
      } else {
        throw std::invalid_argument("config: init.which must be u|b|both");
      }
    } else if (key == "init.seed") {
      cfg.init.seed = static_cast<std::uint64_t>(parse_double(val, key));
    } else if (key == "init.sigma") {
      cfg.init.sigma = parse_double(val, key);
    } else if (key == "init.random_blobs") {
      cfg.init.random_blobs = static_cast<int>(parse_double(val, key));
    } else if (key == "init.center_spread") {
      cfg.init.center_spread = parse_double(val, key);
    } else if (key == "init.target_h3") {
      cfg.init.target_h3 = parse_double(val, key);
    } else if (key == "init.blob") {
      auto parts = split_any(val, " \t,");
      if (parts.size() != 7) {
        throw std::invalid_argument(
            "config: init.blob wants cx cy cz sigma ax ay az");
      }
      BlobSpec b;
      for (int d = 0; d < 3; ++d) b.center[d] = parse_double(parts[d], key);
      b.sigma = parse_double(parts[3], key);
      for (int d = 0; d < 3; ++d) {
        b.amplitude[d] = parse_double(parts[4 + d], key);
      }
      cfg.init.blobs.push_back(b);
    } else if (key == "step.cfl_adv") {
      cfg.step.cfl_adv = parse_double(val, key);
    } else if (key == "step.cfl_whistler") {
      cfg.step.cfl_whistler = parse_double(val, key);
    } else if (key == "step.dt_max") {
      cfg.step.dt_max = parse_double(val, key);
    } else if (key == "step.t0") {
      cfg.step.schedule_t0 = parse_double(val, key);
    } else if (key == "step.ratio") {
      cfg.step.schedule_ratio = parse_double(val, key);
    } else if (key == "step.max_steps") {
      cfg.step.max_steps = static_cast<std::int64_t>(parse_double(val, key));
    } else if (key == "step.max_wall_seconds") {
      cfg.step.max_wall_seconds = parse_double(val, key);
    } else if (key == "run.t_end") {
      cfg.t_end = parse_double(val, key);
    } else if (key == "run.linear_only") {
      cfg.linear_only = parse_bool(val, key);
    } else if (key == "norms") {
      cfg.norm_specs.clear();
      for (const auto& tok : split_any(val, " \t,")) {
        cfg.norm_specs.push_back(parse_norm_token(tok));
      }
    } else if (key == "fit.tol") {
      cfg.fit.tol = parse_double(val, key);
    } else if (key == "fit.t_s") {
      cfg.fit.t_shift = parse_double(val, key);
    } else if (key == "fit.threshold") {
      cfg.fit.boundary_threshold = parse_double(val, key);
    } else if (key == "fit.t_min_factor") {
      cfg.fit.t_min_factor = parse_double(val, key);
    } else if (key == "out.dir") {
      cfg.out_dir = val;
    } else {
      throw std::invalid_argument("config: unknown key '" + key + "'");
    }
  }
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

void ExperimentConfig::validate() const {
  const Grid g = make_grid(grid_n, grid_l);  // n/L preconditions
  params.validate();
  step.validate();
  init.validate(g);
  if (norm_specs.empty()) {
    throw std::invalid_argument("config: norm spec list must not be empty");
  }
  for (const auto& s : norm_specs) {
    s.validate();
    if (s.field_kind == FieldKind::custom) {
      throw std::invalid_argument("config: norm specs must name u, B, or omega");
    }
  }
  if (!(t_end > 0.0)) {
    throw std::invalid_argument("config: run.t_end must be positive");
  }
  if (!(fit.tol > 0.0) || !(fit.t_min_factor >= 0.0) ||
      !(fit.boundary_threshold > 0.0)) {
    throw std::invalid_argument("config: bad fit settings");
  }
}

}  // namespace hallmhd
