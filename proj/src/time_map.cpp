#include "satflux/time_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "detail/newton.hpp"
#include "detail/piece_equations.hpp"
#include "satflux/errors.hpp"
#include "satflux/local_bifurcation.hpp"
#include "satflux/model.hpp"
#include "satflux/phase_plane.hpp"
#include "satflux/quadrature.hpp"

namespace satflux {
namespace {

constexpr double kPi = PieceMap::kPi;
// Levels with g(c) below this are outside the extended evaluation domain.
constexpr double kExtendedFloor = -0.5;

template <class F>
double bracketed_root(F f, double lo, double hi) {
  boost::math::tools::eps_tolerance<double> tol(52);
  std::uintmax_t iterations = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, tol, iterations);
  return 0.5 * (a + b);
}

// E(u) - E(u_min) = (u - u_min) P(u) / 4 with P the monic cubic below.
double turning_cubic(double u, double u_min, double a) {
  return 4.0 * a - (u + u_min) * (2.0 - u * u - u_min * u_min);
}

double level_g(double u, double lambda, double a, double u_min) {
  return 1.0 - lambda * level_potential_difference(u, u_min, a);
}

// Root of the turning cubic in [c, u_r); nullopt when the level escapes.
std::optional<double> cubic_turning_root(const EquilibriaTriple& e, double a, double u_min) {
  if (u_min == e.c) return e.c;
  const double at_right = turning_cubic(e.u_r, u_min, a);
  if (!(at_right < 0.0)) return std::nullopt;
  const double at_centre = turning_cubic(e.c, u_min, a);
  if (!(at_centre > 0.0)) {
    // Rounding floor at tiny amplitude: the piece is symmetric to leading order.
    return std::min(e.c + (e.c - u_min), e.u_r);
  }
  return bracketed_root([&](double u) { return turning_cubic(u, u_min, a); }, e.c, e.u_r);
}

}  // namespace

double g_function(double u, double lambda, double a, double u_min) {
  return level_g(u, lambda, a, u_min);
}

const char* to_string(TurnKind kind) {
  switch (kind) {
    case TurnKind::Turning:
      return "Turning";
    case TurnKind::BlowUp:
      return "BlowUp";
    case TurnKind::Escape:
      return "Escape";
  }
  return "?";
}

TurningPoint turning_point(double lambda, double a, double u_min) {
  const EquilibriaTriple e = equilibria(a);
  if (!(u_min > e.u_l && u_min <= e.c)) {
    throw std::invalid_argument("u_min = " + std::to_string(u_min) +
                                " is not in (u_l, c] for a = " + std::to_string(a));
  }
  TurningPoint tp;
  tp.centre = e.c;
  tp.g_centre = level_g(e.c, lambda, a, u_min);
  if (u_min == e.c) {
    tp.u_max = e.c;
    return tp;
  }
  if (tp.g_centre <= 0.0) {
    tp.kind = TurnKind::BlowUp;
    return tp;
  }
  const std::optional<double> root = cubic_turning_root(e, a, u_min);
  if (!root) {
    tp.kind = TurnKind::Escape;
    return tp;
  }
  tp.u_max = *root;
  return tp;
}

// ---------------------------------------------------------------------------

std::optional<PieceMap> PieceMap::build(double lambda, double a, double u_min) {
  if (!(lambda > 0.0) || !std::isfinite(lambda) || !std::isfinite(a) || !std::isfinite(u_min)) {
    return std::nullopt;
  }
  if (!(std::abs(a) < kBistableBound)) return std::nullopt;
  const EquilibriaTriple e = equilibria(a);
  if (!(u_min > e.u_l && u_min <= e.c)) return std::nullopt;
  const double gc = level_g(e.c, lambda, a, u_min);
  if (!(gc > kExtendedFloor)) return std::nullopt;
  const std::optional<double> root = cubic_turning_root(e, a, u_min);
  if (!root) return std::nullopt;

  PieceMap p;
  p.lambda_ = lambda;
  p.a_ = a;
  p.u_min_ = u_min;
  p.u_max_ = *root;
  p.centre_ = e.c;
  p.g_centre_ = gc;
  p.mid_ = 0.5 * (u_min + p.u_max_);
  p.half_ = 0.5 * (p.u_max_ - u_min);
  const double r = p.u_max_;
  p.b1_ = u_min + r;
  p.b0_ = (u_min * u_min - 2.0) + r * p.b1_;
  return p;
}

double PieceMap::cofactor(double u) const { return -0.25 * (u * u + b1_ * u + b0_); }

double PieceMap::u_at(double theta) const { return mid_ - half_ * std::cos(theta); }

double PieceMap::g_at(double theta) const {
  const double u = u_at(theta);
  const double s = std::sin(theta);
  return 1.0 - lambda_ * half_ * half_ * s * s * cofactor(u);
}

double PieceMap::dx_dtheta(double theta) const {
  const double u = u_at(theta);
  const double s = std::sin(theta);
  const double R = cofactor(u);
  const double g = 1.0 - lambda_ * half_ * half_ * s * s * R;
  return g / std::sqrt(lambda_ * R * (1.0 + g));
}

double PieceMap::flux_at(double theta) const {
  const double u = u_at(theta);
  const double s = std::sin(theta);
  const double R = cofactor(u);
  const double g = 1.0 - lambda_ * half_ * half_ * s * s * R;
  return half_ * std::abs(s) * std::sqrt(lambda_ * R * (1.0 + g));
}

double PieceMap::slope_at(double theta) const {
  const double g = g_at(theta);
  const double psi = flux_at(theta);
  if (g == 0.0) return std::numeric_limits<double>::infinity();
  return psi / g;
}

PieceMap::Integrals PieceMap::integrate(double lo, double hi) const {
  Integrals out;
  if (hi == lo) {
    out.converged = true;
    return out;
  }
  const double mid = 0.5 * (hi + lo);
  const double rad = 0.5 * (hi - lo);
  auto eval = [&](int order) {
    const GaussRule& rule = gauss_legendre(order);
    CompensatedSum len;
    CompensatedSum mom;
    for (int i = 0; i < order; ++i) {
      const double th = mid + rad * rule.nodes[i];
      const double w = rule.weights[i] * dx_dtheta(th);
      len.add(w);
      mom.add(w * u_at(th));
    }
    return std::pair{rad * len.value(), rad * mom.value()};
  };
  auto [L0, m0] = eval(32);
  const double uscale = std::max({std::abs(u_min_), std::abs(u_max_), 1e-3});
  for (int order = 64; order <= 4096; order *= 2) {
    const auto [L1, m1] = eval(order);
    const bool ok = std::abs(L1 - L0) <= 1e-10 * std::abs(L1) &&
                    std::abs(m1 - m0) <= 1e-10 * std::abs(L1) * uscale;
    L0 = L1;
    m0 = m1;
    out.order = order;
    if (ok) {
      out.converged = true;
      break;
    }
  }
  out.length = L0;
  out.first_moment = m0;
  return out;
}

double PieceMap::theta_at(double x) const {
  const double total = integrate().length;
  if (x <= 0.0) return 0.0;
  if (x >= total) return kPi;
  return bracketed_root([&](double th) { return x_at(th) - x; }, 0.0, kPi);
}

// ---------------------------------------------------------------------------

PieceLengthMass piece_length_and_mass(double lambda, double a, double u_min) {
  const TurningPoint tp = turning_point(lambda, a, u_min);
  PieceLengthMass out;
  out.kind = tp.kind;
  if (tp.kind != TurnKind::Turning) return out;
  out.u_max = tp.u_max;
  if (u_min == tp.centre) {
    out.length = kPi / std::sqrt(lambda * bulk_force_deriv(1, tp.centre));
    out.mass = tp.centre;
    return out;
  }
  const std::optional<PieceMap> piece = PieceMap::build(lambda, a, u_min);
  if (!piece) throw std::logic_error("classical level rejected by PieceMap");
  const PieceMap::Integrals I = piece->integrate();
  out.length = I.length;
  out.mass = I.first_moment / I.length;
  return out;
}

namespace detail {

std::optional<Vec<2>> piece_equations(double lambda, double a, double u_min,
                                      double target_length, double target_mass) {
  const std::optional<PieceMap> piece = PieceMap::build(lambda, a, u_min);
  if (!piece) return std::nullopt;
  const PieceMap::Integrals I = piece->integrate();
  if (!(I.length > 0.0)) return std::nullopt;
  return Vec<2>{I.length - target_length, I.first_moment / I.length - target_mass};
}

double centre_level(double lambda, double a, double u_min) {
  return level_g(equilibria(a).c, lambda, a, u_min);
}

}  // namespace detail

// ---------------------------------------------------------------------------

namespace {

// psi(u_x) at local coordinate x of the piece, continued oddly past both ends.
double reflected_flux(const PieceMap& piece, double length, double x) {
  double sign = 1.0;
  if (x < 0.0) {
    x = -x;
    sign = -1.0;
  } else if (x > length) {
    x = 2.0 * length - x;
    sign = -1.0;
  }
  return sign * piece.flux_at(piece.theta_at(x));
}

}  // namespace

StationaryProfile make_profile(const PieceMap& piece, int inflections, int samples) {
  if (!piece.classical()) throw std::invalid_argument("make_profile needs a classical piece");
  if (inflections < 1) throw std::invalid_argument("inflections must be >= 1");
  samples = std::max(samples, 3);

  StationaryProfile p{.samples = {}, .piece = piece};
  p.lambda = piece.lambda();
  p.a = piece.a();
  p.u_min = piece.u_min();
  p.u_max = piece.u_max();
  p.energy_c = 1.0 + piece.lambda() * level_potential(piece.u_min(), piece.a());
  const PieceMap::Integrals I = piece.integrate();
  p.length = I.length;
  p.mass = I.first_moment / I.length;
  p.inflections = inflections;
  p.domain_length = inflections * p.length;

  // Cumulative x on a uniform theta grid, 24-point rule per cell.
  const GaussRule& rule = gauss_legendre(24);
  p.samples.resize(samples);
  CompensatedSum x;
  const double dth = kPi / (samples - 1);
  for (int j = 0; j < samples; ++j) {
    const double th = j * dth;
    if (j > 0) {
      const double mid = th - 0.5 * dth;
      double cell = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        cell += rule.weights[i] * piece.dx_dtheta(mid + 0.5 * dth * rule.nodes[i]);
      }
      x.add(0.5 * dth * cell);
    }
    p.samples[j] = {x.value(), piece.u_at(th), piece.slope_at(th)};
  }
  p.samples.front().v = 0.0;
  p.samples.back().v = 0.0;

  // Stationary residual with a fourth-order central difference of psi(u_x).
  const double d = 1e-4 * p.length;
  double worst = 0.0;
  for (const ProfileSample& s : p.samples) {
    const double fp1 = reflected_flux(piece, p.length, s.x + d);
    const double fm1 = reflected_flux(piece, p.length, s.x - d);
    const double fp2 = reflected_flux(piece, p.length, s.x + 2.0 * d);
    const double fm2 = reflected_flux(piece, p.length, s.x - 2.0 * d);
    const double dpsi = (-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) / (12.0 * d);
    const double res = dpsi + p.lambda * (bulk_force(s.u) - p.a);
    worst = std::max(worst, std::abs(res));
  }
  p.residual = worst;
  return p;
}

double StationaryProfile::value_at(double x) const {
  x = std::clamp(x, 0.0, domain_length);
  int k = static_cast<int>(std::floor(x / length));
  k = std::clamp(k, 0, inflections - 1);
  const double s = x - k * length;
  const double local = (k % 2 == 0) ? length - s : s;
  return piece.u_at(piece.theta_at(local));
}

std::vector<ProfileSample> StationaryProfile::tiled() const {
  std::vector<ProfileSample> out;
  out.reserve(samples.size() * inflections);
  const std::size_t m = samples.size();
  for (int k = 0; k < inflections; ++k) {
    const double x0 = k * length;
    for (std::size_t j = (k == 0 ? 0 : 1); j < m; ++j) {
      if (k % 2 == 0) {
        const ProfileSample& s = samples[m - 1 - j];
        out.push_back({x0 + (length - s.x), s.u, -s.v});
      } else {
        const ProfileSample& s = samples[j];
        out.push_back({x0 + s.x, s.u, s.v});
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Classical:
      return "Classical";
    case SolveStatus::BlowUp:
      return "BlowUp";
    case SolveStatus::NoConvergence:
      return "NoConvergence";
    case SolveStatus::NoBranchSolution:
      return "NoBranchSolution";
  }
  return "?";
}

namespace {

StationaryOutcome newton_from_seed(double lambda, double length, double mass, int n,
                                   StationarySeed seed, const SolveOptions& options) {
  const double ell = length / n;
  auto f = [&](const detail::Vec<2>& z) {
    return detail::piece_equations(lambda, z[0], z[1], ell, mass);
  };
  const auto res = detail::damped_newton<2>(f, {seed.a, seed.u_min}, {1e-7, 1e-7},
                                            options.tolerance, options.max_iterations);
  StationaryOutcome out;
  out.a = res.z[0];
  out.u_min = res.z[1];
  if (!res.converged) {
    out.status = SolveStatus::NoConvergence;
    out.message = "Newton iteration did not converge from the seed (a = " +
                  std::to_string(seed.a) + ", u_min = " + std::to_string(seed.u_min) + ")";
    return out;
  }
  const std::optional<PieceMap> piece = PieceMap::build(lambda, out.a, out.u_min);
  if (!piece) {
    out.status = SolveStatus::NoConvergence;
    out.message = "converged iterate left the admissible domain";
    return out;
  }
  if (!piece->classical()) {
    out.status = SolveStatus::BlowUp;
    out.message = "only a level past gradient blow-up satisfies the constraints at lambda = " +
                  std::to_string(lambda);
    return out;
  }
  out.status = SolveStatus::Classical;
  out.profile = make_profile(*piece, n, options.samples);
  return out;
}

}  // namespace

StationaryOutcome solve_stationary(double lambda, double length, double mass, int n,
                                   std::optional<StationarySeed> seed,
                                   const SolveOptions& options) {
  ModelParams params(length, mass, lambda);  // validates
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (seed) return newton_from_seed(lambda, length, mass, n, *seed, options);

  StationaryOutcome out;
  if (!(bulk_force_deriv(1, mass) > 0.0)) {
    out.status = SolveStatus::NoBranchSolution;
    out.message = "M = " + std::to_string(mass) +
                  " is outside the spinodal range: no branch bifurcates from u = M";
    return out;
  }
  ContinuationOptions copts;
  copts.lambda_max = std::max(2.0 * lambda, 2.0 * bifurcation_lambda(n, length, mass));
  Branch branch;
  try {
    branch = trace_branch(length, mass, n, copts);
  } catch (const SeedFailure& e) {
    out.status = SolveStatus::NoConvergence;
    out.message = e.what();
    return out;
  }
  out.termination_lambda = branch.termination_lambda;

  // Crossing farthest along the branch.
  const auto& pts = branch.points;
  for (std::size_t i = pts.size(); i-- > 1;) {
    const BranchPoint& p = pts[i - 1];
    const BranchPoint& q = pts[i];
    if ((p.lambda - lambda) * (q.lambda - lambda) > 0.0) continue;
    const double t = q.lambda == p.lambda ? 0.5 : (lambda - p.lambda) / (q.lambda - p.lambda);
    StationarySeed s{p.a + t * (q.a - p.a), p.u_min + t * (q.u_min - p.u_min)};
    StationaryOutcome r = newton_from_seed(lambda, length, mass, n, s, options);
    r.termination_lambda = branch.termination_lambda;
    return r;
  }

  if (pts.size() >= 2 && branch.termination == Termination::BlowUp) {
    const double end = branch.termination_lambda.value_or(pts.back().lambda);
    const double heading = pts.back().lambda - pts[pts.size() - 2].lambda;
    if ((lambda - end) * heading >= 0.0) {
      out.status = SolveStatus::BlowUp;
      out.message = "no classical solution: the n = " + std::to_string(n) +
                    " branch ends in gradient blow-up at lambda_n = " + std::to_string(end);
      return out;
    }
  }
  out.status = SolveStatus::NoBranchSolution;
  out.message = "lambda = " + std::to_string(lambda) + " is not reached by the n = " +
                std::to_string(n) + " branch (onset at " +
                std::to_string(bifurcation_lambda(n, length, mass)) +
                "); only the trivial state u = M is available";
  return out;
}

}  // namespace satflux
