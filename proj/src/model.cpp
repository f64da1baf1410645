#include "satflux/model.hpp"

#include <stdexcept>
#include <string>

namespace satflux {

ModelParams::ModelParams(double length, double mass, double lambda)
    : length_(length), mass_(mass), lambda_(lambda) {
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw std::invalid_argument("interval length must be positive and finite");
  }
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("lambda must be positive and finite");
  }
  if (!std::isfinite(mass)) {
    throw std::invalid_argument("mass must be finite");
  }
}

double bulk_force_deriv(int order, double u) {
  switch (order) {
    case 1:
      return 1.0 - 3.0 * u * u;
    case 2:
      return -6.0 * u;
    case 3:
      return -6.0;
    default:
      throw std::invalid_argument("bulk_force_deriv: order must be 1, 2 or 3, got " +
                                  std::to_string(order));
  }
}

double first_integral(PhasePoint p, double lambda, double a) {
  return 1.0 / std::sqrt(1.0 + p.v * p.v) + energy_at_vertical(p.u, lambda, a);
}

double energy_at_vertical(double u, double lambda, double a) {
  return lambda * (a * u - bulk_primitive(u));
}

PhasePoint ancillary_rhs(PhasePoint p, double lambda, double a) {
  const double w = 1.0 + p.v * p.v;
  return {p.v, lambda * (a - bulk_force(p.u)) * w * std::sqrt(w)};
}

}  // namespace satflux
