#pragma once

#include <vector>

#include "satflux/model.hpp"

namespace satflux {

/// Roots of f(u) = a, ordered u_l < c < u_r. (u_l, 0) and (u_r, 0) are
/// saddles of the ancillary system, (c, 0) is a centre.
struct EquilibriaTriple {
  double u_l = 0.0;
  double c = 0.0;
  double u_r = 0.0;
};

/// Throws OutsideBistableRange unless |a| < 2/(3 sqrt 3).
EquilibriaTriple equilibria(double a);

/// a u - F(u); H(u, v) = 1/sqrt(1+v^2) + lambda * level_potential(u, a).
inline double level_potential(double u, double a) { return a * u - bulk_primitive(u); }

/// level_potential(x, a) - level_potential(y, a) without cancellation.
inline double level_potential_difference(double x, double y, double a) {
  return a * (x - y) - bulk_primitive_difference(x, y);
}

/// lambda at which the saddle level H(u_r, 0) meets H(c, +-inf) (a > 0;
/// mirrored for a < 0). Requires 0 < |a| < 2/(3 sqrt 3).
double homoclinic_lambda(double a);

/// a = 0 counterpart: H(1, 0) = H(0, +-inf) gives lambda = 4.
double heteroclinic_lambda();

/// homoclinic_lambda for a != 0, heteroclinic_lambda for a == 0.
double loop_breaking_lambda(double a);

struct ConfinementValues {
  double u_star = 0.0;
  double u_star_star = 0.0;
};

/// u* in (u_l, c) with H(u*, 0) = H(c, inf) and u** in (c, u_r) on the same
/// level. Throws BelowHomoclinicThreshold when lambda <= loop_breaking_lambda(a).
ConfinementValues confinement_values(double lambda, double a);

/// 2 pi / sqrt(lambda f'(c)): period of the linearisation about the centre.
double linearized_period(double lambda, double a);

/// Smallest lambda for which linearized_period < 2L/n. Advisory only: the
/// linearisation says nothing about large-amplitude orbits.
double period_nonexistence_lambda(double length, int n, double a);

struct OrbitSample {
  double x = 0.0;
  double u = 0.0;
  double v = 0.0;
};

enum class OrbitStop { Returned, Unbounded, SpanExhausted };

struct Orbit {
  std::vector<OrbitSample> samples;
  OrbitStop stop = OrbitStop::SpanExhausted;
};

/// Classical RK4 trajectory of the ancillary system from `start`. Stops when v
/// changes sign after leaving the u-axis (Returned), when |v| > v_limit
/// (Unbounded), or after x_span.
Orbit trace_orbit(PhasePoint start, double lambda, double a, double dx, double x_span,
                  double v_limit = 1e6);

}  // namespace satflux
