#pragma once

#include <optional>

namespace satflux {

enum class PitchforkKind { Supercritical, Subcritical, NoBifurcation };

const char* to_string(PitchforkKind kind);

/// Direction of the k-th pitchfork from u = M.
///
/// With h_lambda_y > 0 throughout the spinodal range, the sign of h_yyy alone
/// decides the direction: positive is subcritical, negative supercritical.
struct PitchforkClass {
  PitchforkKind kind = PitchforkKind::NoBifurcation;
  int mode = 1;
  std::optional<double> lambda_k;
  /// Present only for |M| < 1/sqrt(5).
  std::optional<double> critical_length;
  double h_yyy = 0.0;
  double h_lambda_y = 0.0;
  /// h_yyy vanishes to within the classification tolerance (L at L*).
  bool degenerate = false;
};

struct HCoefficients {
  double h_yyy = 0.0;
  double h_lambda_y = 0.0;
};

/// lambda_k = k^2 pi^2 / (L^2 f'(M)). Throws NoBifurcationRegime if f'(M) <= 0.
double bifurcation_lambda(int k, double length, double mass);

/// L* = (k pi / sqrt 2) (1 - 3M^2) / sqrt(1 - 5M^2) for |M| < 1/sqrt(5).
std::optional<double> critical_length(int k, double mass);

/// Closed-form reduced-equation coefficients at (lambda_k, y = 0).
HCoefficients h_coefficients(int k, double length, double mass);

/// The bracketed factor of h_yyy,
/// 3k^2 pi^2 f'^2 + L^2 f''' f' + (L^2/3) f''^2, and the sum of its absolute
/// terms (used to judge cancellation).
struct HyyyBracket {
  double value = 0.0;
  double scale = 0.0;
};
HyyyBracket h_yyy_bracket(int k, double length, double mass);

/// Relative cancellation in the h_yyy bracket below which the pitchfork is
/// reported as degenerate.
inline constexpr double kDefaultDegenerateTolerance = 1e-12;

PitchforkClass classify(int k, double length, double mass,
                        double degenerate_tolerance = kDefaultDegenerateTolerance);

/// a = M - M^3 along the trivial branch.
double trivial_line_a(double mass);

/// a_b(lambda) = (1/(3 sqrt 3)) sqrt(1 - pi^2/(L^2 lambda)) (2 + pi^2/(L^2 lambda)).
/// Throws BelowFirstBifurcation when lambda < pi^2 / L^2.
double bifurcation_point_curve(double lambda, double length);

struct ReductionReport {
  double h_yyy_numeric = 0.0;
  double h_lambda_y_numeric = 0.0;
  double h_yyy_closed = 0.0;
  double h_lambda_y_closed = 0.0;
  /// max of the two relative gaps |numeric - closed| / max(1, |closed|).
  double closed_form_gap = 0.0;
  /// max over nodes of |l'' + lambda_k f'(M) l - d2G(v_k, v_k)|.
  double l_ode_residual = 0.0;
  int nodes = 0;
};

/// Re-derives h_yyy and h_lambda_y by quadrature of the reduction integrands
/// on [0, L]. `quadrature_nodes` <= 0 selects max(64, 16k) intervals.
ReductionReport verify_reduction(int k, double length, double mass, int quadrature_nodes = 0);

}  // namespace satflux
