#include "satflux/pde_solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <numbers>
#include <string>
#include <type_traits>
#include <variant>

#include "satflux/errors.hpp"
#include "satflux/quadrature.hpp"

namespace satflux {
namespace {

// Trapezoid-weighted mean of f(u); f values are also written to fbuf.
double weighted_force_mean(std::span<const double> u, double* fbuf, double dx, double length) {
  const std::size_t n = u.size() - 1;
  CompensatedSum s;
  for (std::size_t i = 0; i <= n; ++i) {
    const double f = bulk_force(u[i]);
    fbuf[i] = f;
    s.add((i == 0 || i == n) ? 0.5 * f : f);
  }
  return s.value() * dx / length;
}

struct KernelStats {
  double max_change = 0.0;
  bool finite = true;
};

// One explicit step from u into next. Interface fluxes are evaluated as
// d dx / sqrt(dx^2 + d^2), which stays bounded at near-vertical jumps.
// Separate passes keep each loop free of carried dependencies.
KernelStats kernel(std::span<const double> u, std::span<double> next, std::vector<double>& fbuf,
                   std::vector<double>& qbuf, double dx, double dt, double lambda, double length) {
  const std::size_t n = u.size() - 1;
  const double avg = weighted_force_mean(u, fbuf.data(), dx, length);
  const double dx2 = dx * dx;
  const double c = dt / dx2;
  const double r = dt * lambda;
  const double* up = u.data();
  double* q = qbuf.data();
  for (std::size_t i = 0; i < n; ++i) {
    const double d = up[i + 1] - up[i];
    q[i] = d * dx / std::sqrt(dx2 + d * d);
  }
  const double* f = fbuf.data();
  double* out = next.data();
  out[0] = up[0] + (2.0 * c * q[0] + r * (f[0] - avg));
  for (std::size_t i = 1; i < n; ++i) {
    out[i] = up[i] + (c * (q[i] - q[i - 1]) + r * (f[i] - avg));
  }
  out[n] = up[n] + (-2.0 * c * q[n - 1] + r * (f[n] - avg));
  KernelStats st;
  double check = 0.0;
  double m = 0.0;
  for (std::size_t i = 0; i <= n; ++i) {
    m = std::max(m, std::abs(out[i] - up[i]));
    check += out[i];
  }
  st.max_change = m;
  st.finite = std::isfinite(check);
  return st;
}

}  // namespace

GridState GridState::from_values(const ModelParams& params, std::vector<double> values) {
  if (values.size() < 5) throw std::invalid_argument("grid needs at least 4 cells");
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("grid values must be finite");
  }
  const double dx = params.length() / static_cast<double>(values.size() - 1);
  const double m = discrete_mass(values);
  return GridState{params, std::move(values), dx, 0.0, m};
}

double discrete_mass(std::span<const double> values) {
  const std::size_t n = values.size() - 1;
  CompensatedSum s;
  for (std::size_t i = 0; i <= n; ++i) s.add((i == 0 || i == n) ? 0.5 * values[i] : values[i]);
  return s.value() / static_cast<double>(n);
}

double resolve_dt(const SchemeConfig& cfg, double dx, double lambda) {
  if (cfg.dt > 0.0) return cfg.dt;
  return cfg.dt_safety * std::min(dx * dx, 1.0 / (lambda * kReactionBound));
}

double stability_cap(double dx, double lambda) {
  return std::min(0.5 * dx * dx, 2.0 / (lambda * kReactionBound));
}

double nonlocal_term(const GridState& state) {
  std::vector<double> f(state.values.size());
  return weighted_force_mean(state.values, f.data(), state.dx, state.params.length());
}

GridState step(const GridState& state, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  GridState out = state;
  std::vector<double> f(state.values.size());
  std::vector<double> q(state.values.size());
  const KernelStats st = kernel(state.values, out.values, f, q, state.dx, dt,
                                state.params.lambda(), state.params.length());
  if (!st.finite) throw NonFinite("non-finite value after step at t = " + std::to_string(state.time));
  out.time = state.time + dt;
  return out;
}

const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::Equilibrium:
      return "Equilibrium";
    case StopReason::Horizon:
      return "Horizon";
    case StopReason::NonFinite:
      return "NonFinite";
  }
  return "?";
}

RunResult run(GridState state, const SchemeConfig& cfg) {
  const double lambda = state.params.lambda();
  const double length = state.params.length();
  const double dx = state.dx;
  const double dt = resolve_dt(cfg, dx, lambda);
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");

  RunResult res{.final_state = state, .history = {}};
  res.dt = dt;
  res.initial_mass = state.recorded_mass;

  std::vector<double> a = std::move(state.values);
  std::vector<double> b(a.size());
  std::vector<double> fbuf(a.size());
  std::vector<double> qbuf(a.size());
  const double t0 = state.time;
  long steps = 0;
  auto audit = [&](const std::vector<double>& v) {
    const double m = discrete_mass(v);
    res.max_mass_drift = std::max(res.max_mass_drift, std::abs(m - res.initial_mass));
    return m;
  };
  if (cfg.snapshot_every > 0) res.history.push_back({t0, a});

  while (true) {
    const double t = t0 + steps * dt;
    if (t >= cfg.t_end) {
      res.reason = StopReason::Horizon;
      break;
    }
    const KernelStats st = kernel(a, b, fbuf, qbuf, dx, dt, lambda, length);
    if (!st.finite) {
      res.reason = StopReason::NonFinite;
      break;
    }
    a.swap(b);
    ++steps;
    res.final_rate = st.max_change / dt;
    if (cfg.audit_every > 0 && steps % cfg.audit_every == 0) audit(a);
    if (cfg.snapshot_every > 0 && steps % cfg.snapshot_every == 0) {
      res.history.push_back({t0 + steps * dt, a});
    }
    if (res.final_rate < cfg.equilibrium_tol) {
      res.reason = StopReason::Equilibrium;
      break;
    }
  }
  res.final_mass = audit(a);
  res.steps = steps;
  res.final_state.values = std::move(a);
  res.final_state.time = t0 + steps * dt;
  return res;
}

double max_slope(const GridState& state) {
  double m = 0.0;
  for (std::size_t i = 0; i + 1 < state.values.size(); ++i) {
    m = std::max(m, std::abs(state.values[i + 1] - state.values[i]));
  }
  return m / state.dx;
}

// ---------------------------------------------------------------------------

double initial_value(const InitialData& data, double x, double length) {
  const double s = x / length;
  return std::visit(
      [&](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, TanhStep>) {
          return d.base + d.jump * std::tanh(d.sharpness * (s - d.gamma));
        } else if constexpr (std::is_same_v<T, TwoInterface>) {
          if (x < 0.5 * length) return d.base - d.jump * std::tanh(d.sharpness * (s - d.left));
          return d.base + d.jump * std::tanh(d.sharpness * (s - d.right));
        } else if constexpr (std::is_same_v<T, Constant>) {
          return d.value;
        } else {
          return d.mass + d.amplitude * std::cos(d.k * std::numbers::pi * s);
        }
      },
      data);
}

std::string describe(const InitialData& data) {
  std::ostringstream os;
  os.precision(12);
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, TanhStep>) {
          os << "tanh_step(base=" << d.base << ", jump=" << d.jump << ", gamma=" << d.gamma
             << ", sharpness=" << d.sharpness << ")";
        } else if constexpr (std::is_same_v<T, TwoInterface>) {
          os << "two_interface(base=" << d.base << ", jump=" << d.jump << ", left=" << d.left
             << ", right=" << d.right << ", sharpness=" << d.sharpness << ")";
        } else if constexpr (std::is_same_v<T, Constant>) {
          os << "constant(" << d.value << ")";
        } else {
          os << "cosine_perturbation(mass=" << d.mass << ", amplitude=" << d.amplitude
             << ", k=" << d.k << ")";
        }
      },
      data);
  return os.str();
}

GridState preset_initial(const InitialData& data, const ModelParams& params, int cells) {
  if (cells < 4) throw std::invalid_argument("need at least 4 cells");
  std::vector<double> v(cells + 1);
  const double dx = params.length() / cells;
  for (int i = 0; i <= cells; ++i) v[i] = initial_value(data, i * dx, params.length());
  return GridState::from_values(params, std::move(v));
}

}  // namespace satflux
