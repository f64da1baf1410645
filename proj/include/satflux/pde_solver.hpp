#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "satflux/model.hpp"

namespace satflux {

/// Nodal values u_0..u_N at x_i = i dx, dx = L/N.
struct GridState {
  ModelParams params;
  std::vector<double> values;
  double dx = 0.0;
  double time = 0.0;
  /// Discrete mass at construction; audits compare against it.
  double recorded_mass = 0.0;

  /// Throws std::invalid_argument for fewer than 5 nodes or non-finite values.
  static GridState from_values(const ModelParams& params, std::vector<double> values);

  int cells() const { return static_cast<int>(values.size()) - 1; }
  double x(int i) const { return i * dx; }
};

/// Mean of u with weights dx [1/2, 1, ..., 1, 1/2] / L, compensated sum.
double discrete_mass(std::span<const double> values);

struct SchemeConfig {
  int cells = 500;
  /// <= 0 selects dt_safety * min(dx^2, 1/(lambda max|f'| on [-1.5, 1.5])).
  double dt = 0.0;
  double dt_safety = 0.4;
  double t_end = 1e3;
  /// Stop once max_i |u_i^{n+1} - u_i^n| / dt falls below this.
  double equilibrium_tol = 1e-8;
  long audit_every = 10000;
  /// 0 disables snapshot history.
  long snapshot_every = 0;
};

/// max |f'(u)| over [-1.5, 1.5].
inline constexpr double kReactionBound = 5.75;

double resolve_dt(const SchemeConfig& cfg, double dx, double lambda);

/// Forward Euler is stable for dt below min(dx^2 / 2, 2 / (lambda max|f'|)).
double stability_cap(double dx, double lambda);

/// (1/L) times the trapezoid-weighted sum of f(u_i) dx, without the lambda factor.
double nonlocal_term(const GridState& state);

/// One forward Euler step. Throws NonFinite if any value stops being finite.
GridState step(const GridState& state, double dt);

enum class StopReason { Equilibrium, Horizon, NonFinite };

const char* to_string(StopReason r);

struct Snapshot {
  double time = 0.0;
  std::vector<double> values;
};

struct RunResult {
  GridState final_state;
  StopReason reason = StopReason::Horizon;
  long steps = 0;
  double dt = 0.0;
  double initial_mass = 0.0;
  double final_mass = 0.0;
  /// Largest |mass - initial| seen at any audit (and at the end).
  double max_mass_drift = 0.0;
  /// max |du|/dt over the last step.
  double final_rate = 0.0;
  std::vector<Snapshot> history;
};

/// Steps until equilibrium, the horizon, or a non-finite value. On NonFinite
/// the returned state is the last finite one.
RunResult run(GridState state, const SchemeConfig& cfg);

/// Largest |u_{i+1} - u_i| / dx.
double max_slope(const GridState& state);

// Initial data --------------------------------------------------------------

/// base + jump * tanh(sharpness (x/L - gamma)).
struct TanhStep {
  double base = 0.0;
  double jump = 0.0;
  double gamma = 0.5;
  double sharpness = 1000.0;
};

/// base - jump tanh(s(x/L - left)) on [0, L/2), base + jump tanh(s(x/L - right)) after.
struct TwoInterface {
  double base = 0.32;
  double jump = 0.6;
  double left = 0.2;
  double right = 0.8;
  double sharpness = 1000.0;
};

struct Constant {
  double value = 0.0;
};

/// mass + amplitude cos(k pi x / L).
struct CosinePerturbation {
  double mass = 0.0;
  double amplitude = 0.0;
  int k = 1;
};

using InitialData = std::variant<TanhStep, TwoInterface, Constant, CosinePerturbation>;

double initial_value(const InitialData& data, double x, double length);

std::string describe(const InitialData& data);

/// Nodal evaluation on the N-cell grid for params.length().
GridState preset_initial(const InitialData& data, const ModelParams& params, int cells);

}  // namespace satflux
