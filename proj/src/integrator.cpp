#include "hallmhd/integrator.hpp"

#include <chrono>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace hallmhd {

namespace {

constexpr double kEpsQuiescent = 1e-30;

// exp(-coef * |k|^2 * dt) on the flattened lattice.
Eigen::ArrayXd exp_multiplier(const Grid& g, double coef, double dt) {
  const int n = g.n();
  std::vector<double> k(n);
  for (int j = 0; j < n; ++j) k[j] = g.wavenumber(j);
  Eigen::ArrayXd out(g.size());
  std::int64_t idx = 0;
  for (int i = 0; i < n; ++i) {
    const double k1 = k[i] * k[i];
    for (int j = 0; j < n; ++j) {
      const double k12 = k1 + k[j] * k[j];
      for (int kk = 0; kk < n; ++kk, ++idx) {
        out[idx] = std::exp(-coef * (k12 + k[kk] * k[kk]) * dt);
      }
    }
  }
  return out;
}

void scale(Field& f, const Eigen::ArrayXd& m) {
  for (int c = 0; c < 3; ++c) {
    auto& a = f.spec(c);
    for (std::int64_t i = 0; i < a.size(); ++i) a[i] *= m[i];
  }
}

void axpy(Field& y, double a, const Field& x) {
  for (int c = 0; c < 3; ++c) y.spec(c) += a * x.spec(c);
}

}  // namespace

void StepControl::validate() const {
  if (!(cfl_adv > 0.0 && cfl_adv <= 1.0) ||
      !(cfl_whistler > 0.0 && cfl_whistler <= 1.0)) {
    throw std::invalid_argument("step control: safety factors must be in (0,1]");
  }
  if (!(dt_max > 0.0)) {
    throw std::invalid_argument("step control: dt_max must be positive");
  }
  if (!(schedule_t0 > 0.0) || !(schedule_ratio > 1.0)) {
    throw std::invalid_argument(
        "step control: schedule needs t0 > 0 and ratio > 1");
  }
}

double stable_dt(const SimState& s, const StepControl& c) {
  const double dx = s.u.grid().dx();
  const double vmax = std::max(max_abs(s.u), max_abs(s.B));
  const double bmax = max_abs(s.B);
  const double dt_adv = c.cfl_adv * dx / std::max(vmax, kEpsQuiescent);
  const double dt_whistler =
      c.cfl_whistler * dx * dx /
      (std::numbers::pi * std::numbers::pi * s.params.eps_hall * bmax +
       kEpsQuiescent);
  return std::min({dt_adv, dt_whistler, c.dt_max});
}

SimState step(const SimState& s, double dt, const StepControl& c,
              bool linear_only) {
  if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
  if (!linear_only && dt > 1.1 * stable_dt(s, c)) {
    throw std::invalid_argument("step: dt exceeds stable_dt by more than 10%");
  }
  const Grid& g = s.u.grid();

  // Half-step integrating factors; the full-step factor is their square.
  const Eigen::ArrayXd eu = exp_multiplier(g, s.params.nu, 0.5 * dt);
  const Eigen::ArrayXd eb = exp_multiplier(g, s.params.eta, 0.5 * dt);
  const Eigen::ArrayXd eu2 = eu.square();
  const Eigen::ArrayXd eb2 = eb.square();

  SimState out = s;
  out.t = s.t + dt;

  if (linear_only) {
    scale(out.u, eu2);
    scale(out.B, eb2);
    return out;
  }

  auto eval = [&](const Field& u, const Field& b) {
    SimState tmp;
    tmp.u = u;
    tmp.B = b;
    tmp.t = s.t;
    tmp.params = s.params;
    return nonlinear_rhs(tmp);
  };

  // Classical RK4 in integrating-factor variables.
  auto [n1u, n1b] = eval(s.u, s.B);

  Field u2 = s.u, b2 = s.B;               // E (y + dt/2 N1)
  axpy(u2, 0.5 * dt, n1u);
  axpy(b2, 0.5 * dt, n1b);
  scale(u2, eu);
  scale(b2, eb);
  auto [n2u, n2b] = eval(u2, b2);

  Field u3 = s.u, b3 = s.B;               // E y + dt/2 N2
  scale(u3, eu);
  scale(b3, eb);
  axpy(u3, 0.5 * dt, n2u);
  axpy(b3, 0.5 * dt, n2b);
  auto [n3u, n3b] = eval(u3, b3);

  Field u4 = s.u, b4 = s.B;               // E^2 y + dt E N3
  scale(u4, eu2);
  scale(b4, eb2);
  scale(n3u, eu);
  scale(n3b, eb);
  axpy(u4, dt, n3u);
  axpy(b4, dt, n3b);
  auto [n4u, n4b] = eval(u4, b4);

  // y' = E^2 y + dt/6 (E^2 N1 + 2 E N2 + 2 E N3 + N4); n3 already carries E.
  scale(out.u, eu2);
  scale(out.B, eb2);
  scale(n1u, eu2);
  scale(n1b, eb2);
  scale(n2u, eu);
  scale(n2b, eb);
  axpy(out.u, dt / 6.0, n1u);
  axpy(out.B, dt / 6.0, n1b);
  axpy(out.u, dt / 3.0, n2u);
  axpy(out.B, dt / 3.0, n2b);
  axpy(out.u, dt / 3.0, n3u);
  axpy(out.B, dt / 3.0, n3b);
  axpy(out.u, dt / 6.0, n4u);
  axpy(out.B, dt / 6.0, n4b);

  if (!out.u.all_finite() || !out.B.all_finite()) {
    try {
      save_checkpoint("hallmhd_abort_state.bin", s);
    } catch (...) {
      // The dump is best effort; the abort below carries the diagnosis.
    }
    throw std::runtime_error(
        "step: non-finite state after update at t = " + std::to_string(s.t) +
        " (last good state dumped to hallmhd_abort_state.bin)");
  }
  return out;
}

std::vector<double> schedule_times(const StepControl& c, double t_begin,
                                   double t_end) {
  std::vector<double> out;
  double t = c.schedule_t0;
  // Skip ladder points at or before t_begin without accumulating rounding.
  if (t <= t_begin) {
    const int j = static_cast<int>(
        std::floor(std::log(t_begin / c.schedule_t0) /
                   std::log(c.schedule_ratio)) + 1.0);
    t = c.schedule_t0 * std::pow(c.schedule_ratio, j);
    while (t <= t_begin) t *= c.schedule_ratio;
  }
  for (; t <= t_end; t *= c.schedule_ratio) out.push_back(t);
  return out;
}

SimState integrate(SimState s, double t_end, const StepControl& c,
                   const std::vector<Observer>& observers, bool linear_only) {
  c.validate();
  if (!(t_end > s.t)) {
    throw std::invalid_argument("integrate: t_end must exceed current time");
  }
  const auto wall_start = std::chrono::steady_clock::now();
  std::int64_t steps = 0;

  std::vector<std::pair<double, bool>> targets;  // (time, is_snapshot)
  for (double t : schedule_times(c, s.t, t_end)) targets.emplace_back(t, true);
  if (targets.empty() || targets.back().first < t_end) {
    targets.emplace_back(t_end, false);
  }

  for (auto [target, is_snapshot] : targets) {
    while (s.t < target) {
      // The exact exponential propagator needs no CFL in linear-only mode;
      // dt_max still applies.
      const double dt_cap = linear_only ? c.dt_max : stable_dt(s, c);
      double dt = std::min(dt_cap, target - s.t);
      // Land exactly instead of leaving a rounding sliver.
      bool lands = false;
      if (dt >= target - s.t - 1e-12 * std::abs(target)) {
        dt = target - s.t;
        lands = true;
      }
      s = step(s, dt, c, linear_only);
      if (lands) s.t = target;
      if (++steps > c.max_steps) {
        throw std::runtime_error("integrate: step budget exhausted");
      }
      const double wall =
          std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                        wall_start)
              .count();
      if (wall > c.max_wall_seconds) {
        throw std::runtime_error("integrate: wall-clock budget exhausted");
      }
    }
    if (is_snapshot) {
      for (const auto& obs : observers) obs(s);
    }
  }
  return s;
}

namespace {

constexpr char kMagic[8] = {'H', 'M', 'H', 'D', 'C', 'K', '0', '1'};

template <typename T>
void put(std::ofstream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
void get(std::ifstream& is, T& v) {
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
}

}  // namespace

void save_checkpoint(const std::string& path, const SimState& s) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open checkpoint for write: " + path);
  os.write(kMagic, sizeof(kMagic));
  const std::int64_t n = s.u.grid().n();
  put(os, n);
  put(os, s.u.grid().box());
  put(os, s.params.nu);
  put(os, s.params.eta);
  put(os, s.params.eps_hall);
  put(os, s.t);
  for (const Field* f : {&s.u, &s.B}) {
    for (int c = 0; c < 3; ++c) {
      const auto& a = f->spec(c);
      os.write(reinterpret_cast<const char*>(a.data()),
               static_cast<std::streamsize>(a.size() * sizeof(std::complex<double>)));
    }
  }
  if (!os) throw std::runtime_error("checkpoint write failed: " + path);
}

SimState load_checkpoint(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open checkpoint: " + path);
  char magic[8];
  is.read(magic, sizeof(magic));
  if (!is || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw std::runtime_error("bad checkpoint magic: " + path);
  }
  std::int64_t n = 0;
  double box = 0.0;
  get(is, n);
  get(is, box);
  SimState s;
  get(is, s.params.nu);
  get(is, s.params.eta);
  get(is, s.params.eps_hall);
  get(is, s.t);
  const Grid g = make_grid(static_cast<int>(n), box);
  s.u = Field::spectral(g);
  s.B = Field::spectral(g);
  for (Field* f : {&s.u, &s.B}) {
    for (int c = 0; c < 3; ++c) {
      auto& a = f->spec(c);
      is.read(reinterpret_cast<char*>(a.data()),
              static_cast<std::streamsize>(a.size() * sizeof(std::complex<double>)));
    }
  }
  if (!is) throw std::runtime_error("truncated checkpoint: " + path);
  return s;
}

}  // namespace hallmhd
