#pragma once

#include <optional>

#include "detail/newton.hpp"

namespace satflux::detail {

/// (length - target_length, mean - target_mass) for the piece through
/// (u_min, 0). Defined on the extended domain, including levels just past
/// blow-up, so it is smooth across g(c) = 0.
std::optional<Vec<2>> piece_equations(double lambda, double a, double u_min,
                                      double target_length, double target_mass);

/// g(c) on the level through (u_min, 0).
double centre_level(double lambda, double a, double u_min);

inline constexpr double kNewtonTolerance = 1e-11;

}  // namespace satflux::detail
