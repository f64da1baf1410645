#include "satflux/local_bifurcation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "satflux/errors.hpp"
#include "satflux/model.hpp"

namespace satflux {
namespace {

using std::numbers::pi;

void check_mode_and_length(int k, double length) {
  if (k < 1) throw std::invalid_argument("mode index k must be >= 1");
  if (!(length > 0.0)) throw std::invalid_argument("interval length must be positive");
}

void require_spinodal(double mass) {
  if (!(bulk_force_deriv(1, mass) > 0.0)) {
    throw NoBifurcationRegime("f'(M) <= 0 for M = " + std::to_string(mass) +
                              ": no bifurcation from the trivial state");
  }
}

}  // namespace

const char* to_string(PitchforkKind kind) {
  switch (kind) {
    case PitchforkKind::Supercritical:
      return "Supercritical";
    case PitchforkKind::Subcritical:
      return "Subcritical";
    case PitchforkKind::NoBifurcation:
      return "NoBifurcation";
  }
  return "?";
}

double bifurcation_lambda(int k, double length, double mass) {
  check_mode_and_length(k, length);
  require_spinodal(mass);
  const double kp = k * pi;
  return kp * kp / (length * length * bulk_force_deriv(1, mass));
}

std::optional<double> critical_length(int k, double mass) {
  if (k < 1) throw std::invalid_argument("mode index k must be >= 1");
  const double m2 = mass * mass;
  if (!(std::abs(mass) < kCriticalMass)) return std::nullopt;
  return (k * pi / std::numbers::sqrt2) * (1.0 - 3.0 * m2) / std::sqrt(1.0 - 5.0 * m2);
}

HyyyBracket h_yyy_bracket(int k, double length, double mass) {
  const double f1 = bulk_force_deriv(1, mass);
  const double f2 = bulk_force_deriv(2, mass);
  const double f3 = bulk_force_deriv(3, mass);
  const double l2 = length * length;
  const double t1 = 3.0 * k * k * pi * pi * f1 * f1;
  const double t2 = l2 * f3 * f1;
  const double t3 = l2 * f2 * f2 / 3.0;
  return {t1 + t2 + t3, std::abs(t1) + std::abs(t2) + std::abs(t3)};
}

HCoefficients h_coefficients(int k, double length, double mass) {
  check_mode_and_length(k, length);
  require_spinodal(mass);
  const double f1 = bulk_force_deriv(1, mass);
  const double prefactor = 3.0 * k * k * pi * pi / (4.0 * length * length * length * f1 * f1);
  return {prefactor * h_yyy_bracket(k, length, mass).value, length * f1};
}

PitchforkClass classify(int k, double length, double mass, double degenerate_tolerance) {
  check_mode_and_length(k, length);
  PitchforkClass out;
  out.mode = k;
  if (!(bulk_force_deriv(1, mass) > 0.0)) {
    out.kind = PitchforkKind::NoBifurcation;
    out.h_yyy = std::nan("");
    out.h_lambda_y = std::nan("");
    return out;
  }
  out.lambda_k = bifurcation_lambda(k, length, mass);
  out.critical_length = critical_length(k, mass);
  const HCoefficients h = h_coefficients(k, length, mass);
  out.h_yyy = h.h_yyy;
  out.h_lambda_y = h.h_lambda_y;
  const HyyyBracket bracket = h_yyy_bracket(k, length, mass);
  out.degenerate = std::abs(bracket.value) <= degenerate_tolerance * bracket.scale;
  out.kind = (out.h_yyy < 0.0 && !out.degenerate) ? PitchforkKind::Supercritical
                                                  : PitchforkKind::Subcritical;
  return out;
}

double trivial_line_a(double mass) { return mass - mass * mass * mass; }

double bifurcation_point_curve(double lambda, double length) {
  if (!(length > 0.0)) throw std::invalid_argument("interval length must be positive");
  const double r = pi * pi / (length * length * lambda);
  if (!(lambda > 0.0) || r > 1.0) {
    throw BelowFirstBifurcation("lambda = " + std::to_string(lambda) +
                                " lies below pi^2/L^2 = " + std::to_string(pi * pi / (length * length)));
  }
  return std::sqrt(1.0 - r) * (2.0 + r) / (3.0 * std::numbers::sqrt3);
}

ReductionReport verify_reduction(int k, double length, double mass, int quadrature_nodes) {
  check_mode_and_length(k, length);
  require_spinodal(mass);

  const int n = quadrature_nodes > 0 ? quadrature_nodes : std::max(64, 16 * k);
  const double dx = length / n;
  const double lambda_k = bifurcation_lambda(k, length, mass);
  const double f1 = bulk_force_deriv(1, mass);
  const double f2 = bulk_force_deriv(2, mass);
  const double f3 = bulk_force_deriv(3, mass);
  const double w = k * pi / length;

  std::vector<double> x(n + 1), weight(n + 1, dx);
  for (int i = 0; i <= n; ++i) x[i] = i * dx;
  weight.front() = weight.back() = 0.5 * dx;

  // Composite trapezoid; exact for the even trigonometric polynomials below.
  auto integrate = [&](const std::function<double(double)>& g) {
    double s = 0.0;
    for (int i = 0; i <= n; ++i) s += weight[i] * g(x[i]);
    return s;
  };

  auto v = [&](double t) { return std::cos(w * t); };
  auto dv = [&](double t) { return -w * std::sin(w * t); };
  auto ddv = [&](double t) { return -w * w * std::cos(w * t); };
  auto v_star = [&](double t) { return 2.0 * std::cos(w * t); };

  const double ratio = f2 / f1;
  auto l = [&](double t) { return std::cos(w * t) - ratio / 6.0 * std::cos(2.0 * w * t); };
  auto ddl = [&](double t) {
    return -w * w * std::cos(w * t) + ratio / 6.0 * 4.0 * w * w * std::cos(2.0 * w * t);
  };

  // d2G(w1, w2) = lambda_k f'' w1 w2 - (lambda_k / L) int f'' w1 w2.
  auto d2g = [&](const std::function<double(double)>& a, const std::function<double(double)>& b) {
    const double mean = integrate([&](double t) { return f2 * a(t) * b(t); }) / length;
    return [=](double t) { return lambda_k * f2 * a(t) * b(t) - lambda_k * mean; };
  };

  const auto d2g_vv = d2g(v, v);
  ReductionReport report;
  report.nodes = n;
  for (int i = 0; i <= n; ++i) {
    const double residual = ddl(x[i]) + lambda_k * f1 * l(x[i]) - d2g_vv(x[i]);
    report.l_ode_residual = std::max(report.l_ode_residual, std::abs(residual));
  }

  // d3G(v, v, v) = -9 v'' v'^2 + lambda_k f''' v^3 - lambda_k f''' (1/L) int v^3.
  const double mean_v3 = integrate([&](double t) { return v(t) * v(t) * v(t); }) / length;
  auto d3g_vvv = [&](double t) {
    return -9.0 * ddv(t) * dv(t) * dv(t) + lambda_k * f3 * v(t) * v(t) * v(t) -
           lambda_k * f3 * mean_v3;
  };
  const auto d2g_vl = d2g(v, l);
  report.h_yyy_numeric =
      integrate([&](double t) { return v_star(t) * (d3g_vvv(t) - 3.0 * d2g_vl(t)); });

  // dG_lambda(v) = f'(M) v - (1/L) int f'(M) v.
  const double mean_v = integrate(v) / length;
  report.h_lambda_y_numeric =
      integrate([&](double t) { return v_star(t) * (f1 * v(t) - f1 * mean_v); });

  const HCoefficients closed = h_coefficients(k, length, mass);
  report.h_yyy_closed = closed.h_yyy;
  report.h_lambda_y_closed = closed.h_lambda_y;
  report.closed_form_gap = std::max(
      std::abs(report.h_yyy_numeric - closed.h_yyy) / std::max(1.0, std::abs(closed.h_yyy)),
      std::abs(report.h_lambda_y_numeric - closed.h_lambda_y) /
          std::max(1.0, std::abs(closed.h_lambda_y)));
  return report;
}

}  // namespace satflux
