#include <algorithm>
#include <array>
#include <limits>
#include <optional>
#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "detail/newton.hpp"
#include "detail/piece_equations.hpp"
#include "satflux/errors.hpp"
#include "satflux/local_bifurcation.hpp"
#include "satflux/model.hpp"
#include "satflux/phase_plane.hpp"
#include "satflux/time_map.hpp"

namespace satflux {

using detail::Vec;

const char* to_string(Termination t) {
  switch (t) {
    case Termination::BlowUp:
      return "BlowUp";
    case Termination::ReachedLambdaMax:
      return "ReachedLambdaMax";
    case Termination::ReachedTrivial:
      return "ReachedTrivial";
    case Termination::Stalled:
      return "Stalled";
  }
  return "?";
}

namespace {

// Branch state z = (lambda, a, u_min).
using State = Vec<3>;
constexpr int kLambda = 0;
constexpr int kUMin = 2;

class Tracer {
 public:
  Tracer(double ell, double mass) : ell_(ell), mass_(mass) {}

  std::optional<Vec<2>> equations(const State& z) const {
    return detail::piece_equations(z[0], z[1], z[2], ell_, mass_);
  }

  Vec<3> steps(const State& z) const { return {1e-6 * std::max(1.0, z[0]), 1e-7, 1e-7}; }

  // Solves the two piece equations with component p pinned to `value`.
  std::optional<State> correct(State guess, int p, double value) const {
    guess[p] = value;
    auto f = [&](const State& z) -> std::optional<Vec<3>> {
      const auto r = equations(z);
      if (!r) return std::nullopt;
      return Vec<3>{(*r)[0], (*r)[1], z[p] - value};
    };
    const auto res = detail::damped_newton<3>(f, guess, steps(guess), detail::kNewtonTolerance, 30);
    if (!res.converged) return std::nullopt;
    return res.z;
  }

  // Limiting level: the piece equations plus g(c) = 0.
  std::optional<State> polish_blowup(State guess) const {
    auto f = [&](const State& z) -> std::optional<Vec<3>> {
      const auto r = equations(z);
      if (!r) return std::nullopt;
      return Vec<3>{(*r)[0], (*r)[1], detail::centre_level(z[0], z[1], z[2])};
    };
    const auto res = detail::damped_newton<3>(f, guess, steps(guess), detail::kNewtonTolerance, 40);
    if (!res.converged) return std::nullopt;
    return res.z;
  }

  // Unit null vector of the 2x3 Jacobian.
  std::optional<Vec<3>> tangent(const State& z) const {
    const auto r = equations(z);
    if (!r) return std::nullopt;
    const auto J = detail::fd_jacobian<2, 3>([&](const State& q) { return equations(q); }, z, *r,
                                             steps(z));
    if (!J) return std::nullopt;
    const auto& g = (*J)[0];
    const auto& h = (*J)[1];
    Vec<3> t{g[1] * h[2] - g[2] * h[1], g[2] * h[0] - g[0] * h[2], g[0] * h[1] - g[1] * h[0]};
    const double n = std::sqrt(t[0] * t[0] + t[1] * t[1] + t[2] * t[2]);
    if (!(n > 0.0) || !std::isfinite(n)) return std::nullopt;
    for (double& x : t) x /= n;
    return t;
  }

 private:
  double ell_;
  double mass_;
};

BranchPoint make_point(const State& z) {
  BranchPoint p;
  p.lambda = z[0];
  p.a = z[1];
  p.u_min = z[2];
  const std::optional<PieceMap> piece = PieceMap::build(z[0], z[1], z[2]);
  if (piece) {
    p.u_at_0 = piece->u_max();
    p.amplitude = 0.5 * (piece->u_max() - z[2]);
    p.g_centre = piece->g_centre();
  }
  return p;
}

double dot(const Vec<3>& x, const Vec<3>& y) { return x[0] * y[0] + x[1] * y[1] + x[2] * y[2]; }

State add(const State& z, double s, const Vec<3>& t) {
  return {z[0] + s * t[0], z[1] + s * t[1], z[2] + s * t[2]};
}

std::optional<BranchFold> refine_fold(const Tracer& tr, const State& z0, const State& z1,
                                      bool minimum) {
  const double lo = std::min(z0[kUMin], z1[kUMin]);
  const double hi = std::max(z0[kUMin], z1[kUMin]);
  if (!(hi > lo)) return std::nullopt;
  std::optional<State> best;
  auto objective = [&](double w) {
    const double t = (w - z0[kUMin]) / (z1[kUMin] - z0[kUMin]);
    State guess{z0[0] + t * (z1[0] - z0[0]), z0[1] + t * (z1[1] - z0[1]), w};
    const std::optional<State> z = tr.correct(guess, kUMin, w);
    if (!z) return std::numeric_limits<double>::max();
    return minimum ? (*z)[0] : -(*z)[0];
  };
  std::uintmax_t iters = 100;
  const auto [w, val] = boost::math::tools::brent_find_minima(objective, lo, hi, 40, iters);
  if (val == std::numeric_limits<double>::max()) return std::nullopt;
  const double t = (w - z0[kUMin]) / (z1[kUMin] - z0[kUMin]);
  const std::optional<State> z =
      tr.correct({z0[0] + t * (z1[0] - z0[0]), z0[1] + t * (z1[1] - z0[1]), w}, kUMin, w);
  if (!z) return std::nullopt;
  return BranchFold{(*z)[0], (*z)[1], (*z)[2]};
}

}  // namespace

Branch trace_branch(double length, double mass, int n, const ContinuationOptions& options,
                    std::optional<BranchPoint> seed) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (!(length > 0.0)) throw std::invalid_argument("L must be positive");
  const double ell = length / n;
  const Tracer tr(ell, mass);

  Branch branch;
  branch.mode = n;
  branch.length = length;
  branch.mass = mass;

  State z;
  if (seed) {
    const std::optional<State> s =
        tr.correct({seed->lambda, seed->a, seed->u_min}, kUMin, seed->u_min);
    if (!s) throw SeedFailure("could not converge the supplied seed point");
    z = *s;
  } else {
    const PitchforkClass cls = classify(n, length, mass);
    if (cls.kind == PitchforkKind::NoBifurcation) {
      throw NoBifurcationRegime("f'(M) <= 0 at M = " + std::to_string(mass));
    }
    const double sign = cls.kind == PitchforkKind::Supercritical ? 1.0 : -1.0;
    const double w0 = mass - options.seed_amplitude;
    const State guess{*cls.lambda_k * (1.0 + sign * 1e-2), trivial_line_a(mass), w0};
    const std::optional<State> s = tr.correct(guess, kUMin, w0);
    if (!s) throw SeedFailure("small-amplitude seed did not converge at u_min = " +
                              std::to_string(w0));
    z = *s;
  }
  if (!(detail::centre_level(z[0], z[1], z[2]) > 0.0)) {
    throw SeedFailure("seed point is not a classical solution");
  }
  branch.points.push_back(make_point(z));

  std::optional<Vec<3>> t = tr.tangent(z);
  if (!t) throw SeedFailure("tangent undefined at the seed point");
  // Start towards growing amplitude.
  if ((*t)[kUMin] > 0.0) for (double& x : *t) x = -x;

  double ds = options.initial_step;
  int successes = 0;
  const double amp0 = branch.points.front().amplitude;

  while (true) {
    if (static_cast<int>(branch.points.size()) >= options.max_points) {
      branch.termination = Termination::Stalled;
      break;
    }
    const int p = std::abs((*t)[kLambda]) >= std::abs((*t)[kUMin]) ? kLambda : kUMin;
    double step = ds;
    if (std::abs(step * (*t)[kUMin]) > options.max_u_min_step) {
      step = options.max_u_min_step / std::abs((*t)[kUMin]);
    }
    const State pred = add(z, step, *t);
    std::optional<State> next = tr.correct(pred, p, pred[p]);
    if (next) {
      const State d{(*next)[0] - z[0], (*next)[1] - z[1], (*next)[2] - z[2]};
      if (dot(d, *t) <= 0.0 || std::abs(d[kUMin]) > options.max_u_min_step * 1.5) next.reset();
    }
    if (!next) {
      ds *= 0.5;
      successes = 0;
      if (ds < options.min_step) {
        branch.termination = Termination::Stalled;
        break;
      }
      continue;
    }

    if (!(detail::centre_level((*next)[0], (*next)[1], (*next)[2]) > 0.0)) {
      // Bracket the blow-up between the last classical point and this one.
      double s_lo = 0.0;
      double s_hi = step;
      State z_lo = z;
      State z_hi = *next;
      for (int it = 0; it < 80 && std::abs(z_hi[0] - z_lo[0]) > options.termination_width; ++it) {
        const double s = 0.5 * (s_lo + s_hi);
        const State q = add(z, s, *t);
        const std::optional<State> c = tr.correct(q, p, q[p]);
        if (c && detail::centre_level((*c)[0], (*c)[1], (*c)[2]) > 0.0) {
          s_lo = s;
          z_lo = *c;
          branch.points.push_back(make_point(z_lo));
        } else {
          s_hi = s;
          if (c) z_hi = *c;
        }
      }
      branch.termination = Termination::BlowUp;
      branch.bracket_width = std::abs(z_hi[0] - z_lo[0]);
      const std::optional<State> edge = tr.polish_blowup(z_lo);
      const double lo = std::min(z_lo[0], z_hi[0]) - options.termination_width;
      const double hi = std::max(z_lo[0], z_hi[0]) + options.termination_width;
      if (edge && (*edge)[0] >= lo && (*edge)[0] <= hi) {
        branch.termination_lambda = (*edge)[0];
        branch.termination_a = (*edge)[1];
      } else {
        branch.termination_lambda = 0.5 * (z_lo[0] + z_hi[0]);
        branch.termination_a = 0.5 * (z_lo[1] + z_hi[1]);
      }
      break;
    }

    std::optional<Vec<3>> t_next = tr.tangent(*next);
    if (!t_next) {
      ds *= 0.5;
      successes = 0;
      if (ds < options.min_step) {
        branch.termination = Termination::Stalled;
        break;
      }
      continue;
    }
    if (dot(*t_next, *t) < 0.0) for (double& x : *t_next) x = -x;

    if ((*t)[kLambda] * (*t_next)[kLambda] < 0.0) {
      const bool minimum = (*t)[kLambda] < 0.0;
      if (auto fold = refine_fold(tr, z, *next, minimum)) branch.folds.push_back(*fold);
    }

    z = *next;
    t = t_next;
    branch.points.push_back(make_point(z));
    if (++successes >= 3) {
      ds = std::min(2.0 * ds, options.max_step);
      successes = 0;
    }
    if (z[0] > options.lambda_max) {
      branch.termination = Termination::ReachedLambdaMax;
      break;
    }
    if (branch.points.size() > 5 && branch.points.back().amplitude < 0.5 * amp0) {
      branch.termination = Termination::ReachedTrivial;
      break;
    }
  }
  return branch;
}

// ---------------------------------------------------------------------------

namespace {

template <class F>
double bracketed_root(F f, double lo, double hi) {
  boost::math::tools::eps_tolerance<double> tol(50);
  std::uintmax_t iterations = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, tol, iterations);
  return 0.5 * (a + b);
}

// Length of the limiting (g(c) = 0) piece at (lambda, a), minus L.
double limiting_length_gap(double lambda, double a, double length) {
  const ConfinementValues cv = confinement_values(lambda, a);
  const std::optional<PieceMap> piece = PieceMap::build(lambda, a, cv.u_star);
  if (!piece) return std::numeric_limits<double>::quiet_NaN();
  return piece->integrate().length - length;
}

}  // namespace

double blowup_lambda(double a, double length) {
  if (!(a >= 0.0 && a < kBistableBound)) {
    throw OutsideBistableRange("blow-up boundary needs 0 <= a < 2/(3 sqrt 3)");
  }
  const double lh = loop_breaking_lambda(a);
  auto gap = [&](double lam) { return limiting_length_gap(lam, a, length); };
  double lo = lh * (1.0 + 1e-6);
  double g_lo = gap(lo);
  if (!(g_lo > 0.0)) {
    throw NoRoot("limiting piece is already shorter than L just above lambda_h(a) = " +
                 std::to_string(lh));
  }
  for (double hi = lo * 1.25; hi < 1e7; hi *= 1.25) {
    const double g_hi = gap(hi);
    if (std::isnan(g_hi)) break;
    if (g_hi <= 0.0) return g_hi == 0.0 ? hi : bracketed_root(gap, lo, hi);
    lo = hi;
    g_lo = g_hi;
  }
  throw NoRoot("no sign change of the limiting length in the scanned lambda window (a = " +
               std::to_string(a) + ")");
}

std::vector<BoundaryPoint> blowup_boundary(double length, std::span<const double> a_samples) {
  std::vector<BoundaryPoint> out;
  out.reserve(a_samples.size());
  for (double a : a_samples) out.push_back({a, blowup_lambda(a, length)});
  return out;
}

double blowup_boundary_a(double lambda, double length) {
  const double base = blowup_lambda(0.0, length);
  if (lambda < base) {
    throw NoRoot("lambda = " + std::to_string(lambda) + " is below lambda*(0, L) = " +
                 std::to_string(base));
  }
  if (lambda == base) return 0.0;
  auto gap = [&](double a) { return blowup_lambda(a, length) - lambda; };
  double lo = 0.0;
  for (double step = 0.01;; step *= 1.5) {
    const double hi = std::min(lo + step, kBistableBound * (1.0 - 1e-9));
    double g_hi;
    try {
      g_hi = gap(hi);
    } catch (const NoRoot&) {
      // Past the feasible end of the curve; close in on that end.
      double ok = lo;
      double bad = hi;
      std::optional<double> g_ok;
      while (bad - ok > 1e-12) {
        const double mid = 0.5 * (ok + bad);
        try {
          g_ok = gap(mid);
          ok = mid;
          if (*g_ok >= 0.0) return bracketed_root(gap, lo, ok);
        } catch (const NoRoot&) {
          bad = mid;
        }
      }
      break;
    }
    if (g_hi >= 0.0) return bracketed_root(gap, lo, hi);
    if (hi >= kBistableBound * (1.0 - 1e-9)) break;
    lo = hi;
  }
  throw NoRoot("a*(lambda) not resolvable at lambda = " + std::to_string(lambda));
}

}  // namespace satflux
