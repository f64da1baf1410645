#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "satflux/errors.hpp"
#include "satflux/local_bifurcation.hpp"
#include "satflux/model.hpp"
#include "satflux/phase_plane.hpp"
#include "satflux/time_map.hpp"
#include "shooting.hpp"

using namespace satflux;
using doctest::Approx;

TEST_CASE("g along the level") {
  CHECK(g_function(-0.2, 4.0, 0.1, -0.2) == 1.0);
  const TurningPoint tp = turning_point(4.0, 0.1, -0.2);
  REQUIRE(tp.kind == TurnKind::Turning);
  CHECK(tp.u_max == Approx(0.4247737457812).epsilon(1e-12));
  CHECK(g_function(tp.u_max, 4.0, 0.1, -0.2) == Approx(1.0).epsilon(1e-13));
  CHECK(tp.g_centre == Approx(g_function(tp.centre, 4.0, 0.1, -0.2)));
  CHECK(turning_point(6.0, 0.0, -0.5).u_max == Approx(0.5).epsilon(1e-14));
  // u_max depends on (a, u_min) only.
  CHECK(turning_point(9.0, 0.1, -0.2).u_max == Approx(tp.u_max).epsilon(1e-14));
  CHECK(turning_point(40.0, 0.1, -0.6).kind == TurnKind::BlowUp);
  CHECK(turning_point(4.0, 0.1, -0.5).kind == TurnKind::Escape);
  CHECK_THROWS_AS(turning_point(4.0, 0.1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(turning_point(4.0, 0.5, -0.5), OutsideBistableRange);
}

TEST_CASE("frozen piece values") {
  struct Case {
    double lambda, a, w, length, mass;
  };
  for (Case c : {Case{4.0, 0.1, -0.2, 1.5560180488890, 0.1193809467939},
                 Case{15.0, 0.1, -0.2, 0.6226650767648, 0.1224406714194},
                 Case{6.0, 0.0, -0.5, 1.0514908507037, 0.0},
                 Case{9.0, -0.05, -0.3, 0.9673900716577, -0.0554355922565}}) {
    const PieceLengthMass p = piece_length_and_mass(c.lambda, c.a, c.w);
    REQUIRE(p.kind == TurnKind::Turning);
    CHECK(p.length == Approx(c.length).epsilon(1e-10));
    CHECK(std::abs(p.mass - c.mass) < 1e-10);
  }
}

TEST_CASE("zero-amplitude limit of the time map") {
  for (double a : {-0.2, 0.0, 0.1, 0.3}) {
    const double lam = 7.0;
    const double c = equilibria(a).c;
    const PieceLengthMass p = piece_length_and_mass(lam, a, c - 1e-5);
    const double limit = std::numbers::pi / std::sqrt(lam * bulk_force_deriv(1, c));
    CHECK(p.length == Approx(limit).epsilon(1e-4));
    CHECK(p.mass == Approx(c).epsilon(1e-6));
  }
}

TEST_CASE("time map agrees with direct shooting") {
  struct Case {
    double lambda, a, w;
  };
  for (Case c : {Case{4.0, 0.1, -0.2}, Case{15.0, 0.1, -0.2}, Case{6.0, 0.0, -0.5},
                 Case{4.3, 0.0139, -0.80}, Case{25.0, 0.2, 0.1}, Case{3.0, -0.1, -0.9}}) {
    const PieceLengthMass p = piece_length_and_mass(c.lambda, c.a, c.w);
    REQUIRE(p.kind == TurnKind::Turning);
    const oracle::Shot s = oracle::shoot(c.lambda, c.a, c.w);
    CHECK(p.length == Approx(s.length).epsilon(1e-6));
    CHECK(std::abs(p.mass - s.mass) < 1e-6);
    CHECK(p.u_max == Approx(s.u_max).epsilon(1e-6));
  }
}

TEST_CASE("piece map geometry") {
  const auto pm = PieceMap::build(4.0, 0.1, -0.2);
  REQUIRE(pm);
  CHECK(pm->classical());
  CHECK(pm->u_at(0.0) == Approx(-0.2));
  CHECK(pm->u_at(PieceMap::kPi) == Approx(pm->u_max()));
  CHECK(pm->slope_at(0.0) == 0.0);
  const auto in = pm->integrate();
  CHECK(in.converged);
  const double half = pm->x_at(1.3);
  CHECK(pm->theta_at(half) == Approx(1.3).epsilon(1e-10));
  // Extended level past blow-up is built but not classical.
  const auto ext = PieceMap::build(40.0, 0.1, -0.6);
  if (ext) CHECK_FALSE(ext->classical());
}

TEST_CASE("stationary solve and profile invariants") {
  const StationaryOutcome out = solve_stationary(4.0, 1.7, 0.2, 1);
  REQUIRE(out.status == SolveStatus::Classical);
  REQUIRE(out.profile);
  const StationaryProfile& p = *out.profile;
  CHECK(p.a == Approx(0.024230077169).epsilon(1e-9));
  CHECK(p.u_min == Approx(-0.745951433284).epsilon(1e-9));
  CHECK(p.u_max == Approx(0.898115956539).epsilon(1e-9));
  CHECK(p.domain_length == Approx(1.7).epsilon(1e-10));
  CHECK(p.mass == Approx(0.2).epsilon(1e-10));
  CHECK(p.residual < 1e-6);
  REQUIRE(p.samples.size() == 401);
  CHECK(p.samples.front().v == 0.0);
  CHECK(std::abs(p.samples.back().v) < 1e-8);
  for (const ProfileSample& s : p.samples) {
    const double g = g_function(s.u, p.lambda, p.a, p.u_min);
    CHECK(1.0 / std::sqrt(1.0 + s.v * s.v) == Approx(g).epsilon(1e-12));
  }
  // Tiled profile starts at the maximum.
  CHECK(p.value_at(0.0) == Approx(p.u_max));
  CHECK(p.value_at(1.7) == Approx(p.u_min));
  // Trapezoid mean of a fine sampling and the mean of f both check out.
  const int n = 4000;
  double mean_u = 0.0, mean_f = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double wt = (i == 0 || i == n) ? 0.5 : 1.0;
    const double u = p.value_at(1.7 * i / n);
    mean_u += wt * u / n;
    mean_f += wt * bulk_force(u) / n;
  }
  CHECK(std::abs(mean_u - 0.2) < 1e-5);
  CHECK(std::abs(mean_f - p.a) < 1e-5);
}

TEST_CASE("stationary solve: unreachable and past blow-up") {
  CHECK(solve_stationary(5.0, 1.7, 0.2, 1).status == SolveStatus::BlowUp);
  CHECK(solve_stationary(1.0, 1.7, 0.2, 1).status == SolveStatus::NoBranchSolution);
  CHECK(solve_stationary(5.0, 1.7, 1.2, 1).status == SolveStatus::NoBranchSolution);
  // Seeded Newton from the frozen solution reconverges.
  const auto seeded = solve_stationary(4.0, 1.7, 0.2, 1, StationarySeed{0.0242, -0.746});
  REQUIRE(seeded.status == SolveStatus::Classical);
  CHECK(seeded.a == Approx(0.024230077169).epsilon(1e-9));
}

TEST_CASE("mirror symmetry M -> -M") {
  const auto p = solve_stationary(4.0, 1.7, 0.2, 1);
  const auto q = solve_stationary(4.0, 1.7, -0.2, 1);
  REQUIRE(p.profile);
  REQUIRE(q.profile);
  CHECK(q.a == Approx(-p.a).epsilon(1e-9));
  CHECK(q.profile->u_max == Approx(-p.profile->u_min).epsilon(1e-9));
  for (double x : {0.0, 0.3, 0.85, 1.4}) {
    CHECK(q.profile->value_at(x) == Approx(-p.profile->value_at(1.7 - x)).epsilon(1e-8));
  }
}

TEST_CASE("branch endpoints and folds") {
  struct Case {
    double L, M;
    int n;
    double lam, a;
    std::vector<double> folds;
  };
  const std::vector<Case> cases = {
      {1.0, 0.1, 1, 5.6578731967, 0.0289021250, {}},
      {2.5, 0.3, 1, 4.0859738023, 0.0051449422, {}},
      {1.7, 0.2, 1, 4.3032212552, 0.0139269317, {3.5788091921}},
      {2.5, 0.2, 1, 4.0432947439, 0.0023947186, {}},
      {2.5, 0.2, 2, 4.9872157396, 0.0361947665, {4.9714420605}},
  };
  for (const Case& c : cases) {
    CAPTURE(c.L);
    CAPTURE(c.n);
    const Branch b = trace_branch(c.L, c.M, c.n);
    REQUIRE(b.termination == Termination::BlowUp);
    CHECK(*b.termination_lambda == Approx(c.lam).epsilon(1e-7));
    CHECK(*b.termination_a == Approx(c.a).epsilon(1e-6));
    REQUIRE(b.folds.size() == c.folds.size());
    for (size_t i = 0; i < c.folds.size(); ++i) {
      CHECK(b.folds[i].lambda == Approx(c.folds[i]).epsilon(1e-7));
    }
    for (const BranchPoint& p : b.points) {
      CHECK(p.g_centre > -1e-9);
      CHECK(p.u_min < c.M);
    }
  }
  const Branch fold = trace_branch(1.7, 0.2, 1);
  // lambda is quadratic in u_min at a fold, so u_min is fixed only to ~sqrt(eps).
  CHECK(fold.folds.front().u_min == Approx(-0.4268813036).epsilon(1e-5));
}

TEST_CASE("branch tiling: mode n on L equals mode 1 on L/n") {
  const Branch a = trace_branch(2.5, 0.2, 2);
  const Branch b = trace_branch(1.25, 0.2, 1);
  CHECK(*a.termination_lambda == Approx(*b.termination_lambda).epsilon(1e-9));
  const Branch c = trace_branch(3.0, 0.1, 3);
  const Branch d = trace_branch(1.0, 0.1, 1);
  CHECK(*c.termination_lambda == Approx(*d.termination_lambda).epsilon(1e-9));
}

TEST_CASE("supercritical branch near onset") {
  const double l1 = bifurcation_lambda(1, 2.5, 0.2);
  CHECK(solve_stationary(0.95 * l1, 2.5, 0.2, 1).status == SolveStatus::NoBranchSolution);
  const auto out = solve_stationary(1.001 * l1, 2.5, 0.2, 1);
  REQUIRE(out.status == SolveStatus::Classical);
  const HCoefficients h = h_coefficients(1, 2.5, 0.2);
  const double predicted = std::sqrt(0.001 * l1 / (-h.h_yyy / (6.0 * h.h_lambda_y)));
  const double amp = 0.5 * (out.profile->u_max - out.profile->u_min);
  CHECK(amp == Approx(predicted).epsilon(0.05));
}

TEST_CASE("blow-up boundary") {
  CHECK(blowup_lambda(0.0, 1.0) == Approx(5.55065293710474).epsilon(1e-9));
  CHECK(blowup_lambda(0.1, 1.0) == Approx(6.882099919795889).epsilon(1e-9));
  CHECK(blowup_boundary_a(5.6578731967, 1.0) == Approx(0.0289021250).epsilon(1e-6));
  CHECK_THROWS_AS(blowup_boundary_a(5.0, 1.0), NoRoot);
  double prev = 0.0;
  for (double a : {0.02, 0.05, 0.1, 0.2, 0.3, 0.34}) {
    const double ls = blowup_lambda(a, 1.0);
    CHECK(ls > homoclinic_lambda(a));
    CHECK(ls > prev);
    prev = ls;
    CHECK(blowup_boundary_a(ls, 1.0) == Approx(a).epsilon(1e-7));
  }
  // Towards the end of the bistable range the curve runs off to large lambda
  // and then stops: past the last feasible a the limiting piece is already
  // shorter than L at lambda_h(a).
  double last = 0.0;
  bool ended = false;
  for (double a = 0.0; a < kBistableBound; a += 0.005) {
    try {
      last = blowup_lambda(a, 1.0);
    } catch (const NoRoot&) {
      ended = true;
      break;
    }
  }
  CHECK(ended);
  CHECK(last > 10.0 * blowup_lambda(0.0, 1.0));
  const std::vector<double> as = {0.0, 0.1};
  const auto pts = blowup_boundary(1.0, as);
  REQUIRE(pts.size() == 2);
  CHECK(pts[1].lambda == Approx(6.882099919795889).epsilon(1e-9));
}

TEST_CASE("no classical piece has mean of modulus one or more") {
  double worst = 0.0;
  for (double lam : {4.5, 8.0, 20.0, 60.0}) {
    for (double a = -0.38; a <= 0.38; a += 0.02) {
      const EquilibriaTriple e = equilibria(a);
      for (int j = 1; j < 40; ++j) {
        const double w = e.u_l + (e.c - e.u_l) * j / 40.0;
        const PieceLengthMass p = piece_length_and_mass(lam, a, w);
        if (p.kind != TurnKind::Turning) continue;
        worst = std::max(worst, std::abs(p.mass));
      }
    }
  }
  CHECK(worst < 1.0);
  CHECK(worst > 0.3);
}
