#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace satflux {

/// g(u) = 1/sqrt(1 + u_x^2) along the energy level through (u_min, 0):
/// 1 + lambda (a u_min - F(u_min)) - lambda (a u - F(u)).
double g_function(double u, double lambda, double a, double u_min);

enum class TurnKind {
  Turning,  ///< classical: g(c) > 0 and g returns to 1 at u_max
  BlowUp,   ///< g(c) <= 0: u_x reaches infinity at or before the centre
  Escape,   ///< the level passes the right saddle without turning
};

const char* to_string(TurnKind kind);

struct TurningPoint {
  TurnKind kind = TurnKind::Turning;
  double u_max = 0.0;
  double centre = 0.0;
  double g_centre = 0.0;
};

/// Right endpoint of the monotone piece that starts at (u_min, 0) with
/// u_l < u_min <= c. Throws OutsideBistableRange if |a| >= 2/(3 sqrt 3) and
/// std::invalid_argument if u_min lies outside (u_l, c].
TurningPoint turning_point(double lambda, double a, double u_min);

/// One monotone piece of an energy level, in the cosine variable
/// u = m - h cos(theta), theta in [0, pi]. With that substitution the
/// inverse-square-root endpoint singularities of dx/du cancel exactly:
///   dx/dtheta = g / sqrt(lambda R(u) (1 + g)),
/// where 1 - g = lambda h^2 sin^2(theta) R(u) and R is the quadratic cofactor
/// of the turning-point cubic.
///
/// `build` also accepts levels with -1 < g(c) <= 0 (the analytic continuation
/// past blow-up); `classical()` tells the two apart.
class PieceMap {
 public:
  static std::optional<PieceMap> build(double lambda, double a, double u_min);

  double lambda() const { return lambda_; }
  double a() const { return a_; }
  double u_min() const { return u_min_; }
  double u_max() const { return u_max_; }
  double centre() const { return centre_; }
  double g_centre() const { return g_centre_; }
  bool classical() const { return g_centre_ > 0.0; }

  double u_at(double theta) const;
  double g_at(double theta) const;
  /// dx/dtheta.
  double dx_dtheta(double theta) const;
  /// u_x at theta; infinite when g vanishes there.
  double slope_at(double theta) const;
  /// psi(u_x) = sqrt(1 - g^2) on a classical piece.
  double flux_at(double theta) const;

  struct Integrals {
    double length = 0.0;
    double first_moment = 0.0;  ///< integral of u dx
    int order = 0;
    bool converged = false;
  };
  /// Integrals over theta in [lo, hi], Gauss-Legendre with order doubling
  /// until the relative change is at most 1e-10.
  Integrals integrate(double lo = 0.0, double hi = kPi) const;

  double x_at(double theta) const { return integrate(0.0, theta).length; }
  /// Inverse of x_at on [0, length].
  double theta_at(double x) const;

  static constexpr double kPi = 3.14159265358979323846;

 private:
  PieceMap() = default;
  double cofactor(double u) const;

  double lambda_ = 0.0;
  double a_ = 0.0;
  double u_min_ = 0.0;
  double u_max_ = 0.0;
  double centre_ = 0.0;
  double g_centre_ = 0.0;
  double mid_ = 0.0;
  double half_ = 0.0;
  double b1_ = 0.0;
  double b0_ = 0.0;
};

struct PieceLengthMass {
  TurnKind kind = TurnKind::Turning;
  double length = 0.0;
  double mass = 0.0;  ///< mean of u over the piece
  double u_max = 0.0;
};

/// Time map of a classical piece. For BlowUp/Escape only `kind` is meaningful.
PieceLengthMass piece_length_and_mass(double lambda, double a, double u_min);

struct ProfileSample {
  double x = 0.0;
  double u = 0.0;
  double v = 0.0;
};

/// Classical stationary solution built from one monotone piece reflected
/// n-fold onto (0, L). The tiled solution starts at its maximum: u(0) = u_max.
struct StationaryProfile {
  double lambda = 0.0;
  double a = 0.0;
  double u_min = 0.0;
  double u_max = 0.0;
  double energy_c = 0.0;      ///< 1 + lambda (a u_min - F(u_min))
  double length = 0.0;        ///< of the monotone piece
  double mass = 0.0;          ///< mean of u over the piece
  double domain_length = 0.0; ///< L = inflections * length
  int inflections = 1;
  /// Monotone increasing piece, x in [0, length], v >= 0, v = 0 at both ends.
  std::vector<ProfileSample> samples;
  /// max |(psi(u_x))_x + lambda f(u) - lambda a| over the samples.
  double residual = 0.0;
  PieceMap piece;

  /// Tiled solution at x in [0, L].
  double value_at(double x) const;
  /// Tiled samples on [0, L] (each piece reflected as needed).
  std::vector<ProfileSample> tiled() const;
};

/// Builds the profile for a classical piece; `samples` points uniform in theta.
StationaryProfile make_profile(const PieceMap& piece, int inflections, int samples = 401);

enum class SolveStatus {
  Classical,        ///< converged to a classical solution
  BlowUp,           ///< converged only past the blow-up level, or lambda beyond lambda_n
  NoConvergence,    ///< Newton stalled; says nothing about existence
  NoBranchSolution, ///< the traced branch never reaches this lambda (e.g. below onset)
};

const char* to_string(SolveStatus status);

struct StationarySeed {
  double a = 0.0;
  double u_min = 0.0;
};

struct SolveOptions {
  int max_iterations = 60;
  double tolerance = 1e-11;
  int samples = 401;
};

struct StationaryOutcome {
  SolveStatus status = SolveStatus::NoConvergence;
  std::optional<StationaryProfile> profile;
  /// End of the classical branch when known (from a branch trace).
  std::optional<double> termination_lambda;
  std::string message;
  /// Last iterate (meaningful for BlowUp / NoConvergence diagnostics).
  double a = 0.0;
  double u_min = 0.0;
};

/// Finds (a, u_min) with piece length L/n and piece mean M at fixed lambda.
/// With a seed, runs damped Newton from it. Without a seed, traces the
/// n-mode branch from its onset and polishes the crossing of lambda farthest
/// along the branch.
StationaryOutcome solve_stationary(double lambda, double length, double mass, int n,
                                   std::optional<StationarySeed> seed = std::nullopt,
                                   const SolveOptions& options = {});

// ---------------------------------------------------------------------------
// Branch tracing.

struct BranchPoint {
  double lambda = 0.0;
  double a = 0.0;
  double u_min = 0.0;
  double u_at_0 = 0.0;     ///< u_max under the u(0) = u_max convention
  double amplitude = 0.0;  ///< (u_max - u_min) / 2
  double g_centre = 0.0;
};

struct BranchFold {
  double lambda = 0.0;
  double a = 0.0;
  double u_min = 0.0;
};

enum class Termination { BlowUp, ReachedLambdaMax, ReachedTrivial, Stalled };

const char* to_string(Termination t);

struct Branch {
  std::vector<BranchPoint> points;
  std::vector<BranchFold> folds;
  Termination termination = Termination::Stalled;
  /// lambda_n(M, L) for BlowUp terminations.
  std::optional<double> termination_lambda;
  /// a at the termination (the branch meets the blow-up boundary there).
  std::optional<double> termination_a;
  /// Width in lambda of the last success / first failure bracket.
  std::optional<double> bracket_width;
  int mode = 1;
  double length = 0.0;
  double mass = 0.0;
};

struct ContinuationOptions {
  double lambda_max = 200.0;
  double initial_step = 1e-2;
  double min_step = 1e-9;
  double max_step = 0.05;
  double max_u_min_step = 0.02;
  int max_points = 20000;
  double seed_amplitude = 1e-3;
  double termination_width = 1e-4;
};

/// Traces the branch of classical solutions with n inflection points from the
/// pitchfork at lambda_n-onset (or from `seed`) until blow-up. Throws
/// SeedFailure if the first point cannot be converged.
Branch trace_branch(double length, double mass, int n, const ContinuationOptions& options = {},
                    std::optional<BranchPoint> seed = std::nullopt);

// ---------------------------------------------------------------------------
// Blow-up boundary.

struct BoundaryPoint {
  double a = 0.0;
  double lambda = 0.0;
};

/// lambda*(a, L): the lambda at which the limiting level g(c) = 0 yields a
/// monotone piece of length L. Throws NoRoot if the scan finds no sign change.
double blowup_lambda(double a, double length);

/// lambda*(a, L) for each a sample (a in [0, 2/(3 sqrt 3))).
std::vector<BoundaryPoint> blowup_boundary(double length, std::span<const double> a_samples);

/// a*(lambda): inverse of blowup_lambda in a. Throws NoRoot when lambda is
/// below lambda*(0, L) or beyond the resolvable range.
double blowup_boundary_a(double lambda, double length);

}  // namespace satflux
