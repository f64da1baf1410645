#include "satflux/phase_plane.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "satflux/errors.hpp"

namespace satflux {
namespace {

double newton_polish(double u, double a) {
  for (int i = 0; i < 3; ++i) {
    const double d = bulk_force_deriv(1, u);
    if (d == 0.0) break;
    u -= (bulk_force(u) - a) / d;
  }
  return u;
}

template <class F>
double bracketed_root(F f, double lo, double hi) {
  boost::math::tools::eps_tolerance<double> tol(52);
  std::uintmax_t iterations = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, tol, iterations);
  return 0.5 * (a + b);
}

}  // namespace

EquilibriaTriple equilibria(double a) {
  if (!(std::abs(a) < kBistableBound)) {
    throw OutsideBistableRange("|a| = " + std::to_string(std::abs(a)) +
                               " is not below 2/(3 sqrt 3)");
  }
  if (a == 0.0) return {-1.0, 0.0, 1.0};
  // u^3 - u + a = 0 via the trigonometric form of the depressed cubic.
  const double r = 2.0 / std::numbers::sqrt3;
  const double phi = std::acos(std::clamp(-a / kBistableBound, -1.0, 1.0)) / 3.0;
  double roots[3];
  for (int k = 0; k < 3; ++k) {
    roots[k] = newton_polish(r * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0), a);
  }
  std::sort(std::begin(roots), std::end(roots));
  return {roots[0], roots[1], roots[2]};
}

double homoclinic_lambda(double a) {
  if (a == 0.0) {
    throw OutsideBistableRange("homoclinic_lambda needs a != 0; use heteroclinic_lambda");
  }
  if (a < 0.0) return homoclinic_lambda(-a);
  const EquilibriaTriple e = equilibria(a);
  return 1.0 / level_potential_difference(e.c, e.u_r, a);
}

double heteroclinic_lambda() {
  return 1.0 / level_potential_difference(0.0, 1.0, 0.0);
}

double loop_breaking_lambda(double a) {
  return a == 0.0 ? heteroclinic_lambda() : homoclinic_lambda(a);
}

ConfinementValues confinement_values(double lambda, double a) {
  if (a < 0.0) {
    const ConfinementValues m = confinement_values(lambda, -a);
    return {-m.u_star_star, -m.u_star};
  }
  const EquilibriaTriple e = equilibria(a);
  const double threshold = loop_breaking_lambda(a);
  if (!(lambda > threshold)) {
    throw BelowHomoclinicThreshold("lambda = " + std::to_string(lambda) +
                                   " does not exceed the loop-breaking value " +
                                   std::to_string(threshold));
  }
  // Both roots solve level_potential(c) - level_potential(u) = 1/lambda.
  const double target = 1.0 / lambda;
  auto gap = [&](double u) { return level_potential_difference(e.c, u, a) - target; };
  ConfinementValues out;
  out.u_star = bracketed_root(gap, e.u_l, e.c);
  out.u_star_star = bracketed_root(gap, e.c, e.u_r);
  return out;
}

double linearized_period(double lambda, double a) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  const EquilibriaTriple e = equilibria(a);
  return 2.0 * std::numbers::pi / std::sqrt(lambda * bulk_force_deriv(1, e.c));
}

double period_nonexistence_lambda(double length, int n, double a) {
  if (!(length > 0.0) || n < 1) throw std::invalid_argument("need L > 0 and n >= 1");
  const EquilibriaTriple e = equilibria(a);
  const double q = n * std::numbers::pi / length;
  return q * q / bulk_force_deriv(1, e.c);
}

Orbit trace_orbit(PhasePoint start, double lambda, double a, double dx, double x_span,
                  double v_limit) {
  Orbit orbit;
  PhasePoint p = start;
  double x = 0.0;
  orbit.samples.push_back({x, p.u, p.v});
  bool left_axis = false;
  const auto add = [](PhasePoint q, PhasePoint k, double h) {
    return PhasePoint{q.u + h * k.u, q.v + h * k.v};
  };
  while (x < x_span) {
    const PhasePoint k1 = ancillary_rhs(p, lambda, a);
    const PhasePoint k2 = ancillary_rhs(add(p, k1, 0.5 * dx), lambda, a);
    const PhasePoint k3 = ancillary_rhs(add(p, k2, 0.5 * dx), lambda, a);
    const PhasePoint k4 = ancillary_rhs(add(p, k3, dx), lambda, a);
    const PhasePoint next{p.u + dx / 6.0 * (k1.u + 2.0 * k2.u + 2.0 * k3.u + k4.u),
                          p.v + dx / 6.0 * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v)};
    x += dx;
    if (!std::isfinite(next.v) || std::abs(next.v) > v_limit) {
      orbit.stop = OrbitStop::Unbounded;
      return orbit;
    }
    orbit.samples.push_back({x, next.u, next.v});
    if (left_axis && next.v * p.v < 0.0) {
      orbit.stop = OrbitStop::Returned;
      return orbit;
    }
    if (next.v != 0.0) left_axis = true;
    p = next;
  }
  return orbit;
}

}  // namespace satflux
