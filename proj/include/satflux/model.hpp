#pragma once

#include <cmath>
#include <numbers>

namespace satflux {

/// Local maximum of f(u) = u - u^3, attained at u = 1/sqrt(3).
inline constexpr double kBistableBound = 2.0 / (3.0 * std::numbers::sqrt3);
/// Spinodal mass: f'(M) > 0 iff |M| < 1/sqrt(3).
inline constexpr double kSpinodalMass = 1.0 / std::numbers::sqrt3;
/// |M| below which the pitchfork direction depends on L.
inline const double kCriticalMass = 1.0 / std::sqrt(5.0);

/// Problem instance: interval (0, L), prescribed mean M, lambda = 1/epsilon.
class ModelParams {
 public:
  ModelParams(double length, double mass, double lambda);

  double length() const { return length_; }
  double mass() const { return mass_; }
  double lambda() const { return lambda_; }
  double epsilon() const { return 1.0 / lambda_; }

 private:
  double length_;
  double mass_;
  double lambda_;
};

/// State (u, u_x) of the first-order ancillary system.
struct PhasePoint {
  double u = 0.0;
  double v = 0.0;
};

/// f(u) = u - u^3.
inline double bulk_force(double u) { return u - u * u * u; }

/// f', f'' or f''' at u. Throws std::invalid_argument for any other order.
double bulk_force_deriv(int order, double u);

/// F(u) = u^2/2 - u^4/4, the antiderivative of f with F(0) = 0.
inline double bulk_primitive(double u) {
  const double u2 = u * u;
  return 0.5 * u2 - 0.25 * u2 * u2;
}

/// F(x) - F(y) in factored form; no cancellation when x is close to y.
inline double bulk_primitive_difference(double x, double y) {
  return 0.25 * (x - y) * (x + y) * (2.0 - x * x - y * y);
}

/// Saturating flux psi(s) = s / sqrt(1 + s^2).
inline double flux(double s) { return s / std::sqrt(1.0 + s * s); }

/// Psi(s) = sqrt(1 + s^2) - 1, evaluated without cancellation near s = 0.
inline double interface_energy(double s) {
  const double s2 = s * s;
  return s2 / (std::sqrt(1.0 + s2) + 1.0);
}

/// H(u, v) = 1/sqrt(1 + v^2) + lambda (a u - F(u)).
double first_integral(PhasePoint p, double lambda, double a);

/// Limit of H(u, v) as |v| -> infinity: lambda (a u - F(u)).
double energy_at_vertical(double u, double lambda, double a);

/// (u', v') = (v, lambda (a - f(u)) (1 + v^2)^{3/2}).
PhasePoint ancillary_rhs(PhasePoint p, double lambda, double a);

}  // namespace satflux
