#pragma once

// Test-side oracle: integrates the ancillary system in x with an adaptive
// Dormand-Prince stepper, independent of the time-map quadrature.

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <boost/numeric/odeint.hpp>

namespace oracle {

using State = std::array<double, 3>;  // u, v, integral of u

struct Shot {
  double length = 0.0;
  double mass = 0.0;
  double u_max = 0.0;
};

struct Ancillary {
  double lambda;
  double a;
  void operator()(const State& s, State& ds, double) const {
    const double w = 1.0 + s[1] * s[1];
    ds[0] = s[1];
    ds[1] = lambda * (a - (s[0] - s[0] * s[0] * s[0])) * w * std::sqrt(w);
    ds[2] = s[0];
  }
};

inline auto dense_stepper(double tol) {
  using namespace boost::numeric::odeint;
  return make_dense_output(tol, tol, runge_kutta_dopri5<State>());
}

/// Integrates from (u_min, 0) until u_x returns to zero.
inline Shot shoot(double lambda, double a, double u_min, double x_max = 50.0) {
  Ancillary rhs{lambda, a};
  auto st = dense_stepper(1e-13);
  st.initialize(State{u_min, 0.0, 0.0}, 0.0, 1e-4);
  bool positive = false;
  while (st.current_time() < x_max) {
    st.do_step(rhs);
    const State& s = st.current_state();
    if (s[1] > 0.0) positive = true;
    if (positive && s[1] <= 0.0) {
      double lo = st.previous_time();
      double hi = st.current_time();
      State mid;
      for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
        const double m = 0.5 * (lo + hi);
        st.calc_state(m, mid);
        (mid[1] > 0.0 ? lo : hi) = m;
      }
      st.calc_state(0.5 * (lo + hi), mid);
      const double x = 0.5 * (lo + hi);
      return {x, mid[2] / x, mid[0]};
    }
  }
  throw std::runtime_error("shooting: no return to v = 0");
}

/// u at each requested x (ascending), started from (u_min, 0).
inline std::vector<double> shoot_profile(double lambda, double a, double u_min,
                                         const std::vector<double>& xs) {
  Ancillary rhs{lambda, a};
  auto st = dense_stepper(1e-13);
  std::vector<double> out;
  out.reserve(xs.size());
  State s{u_min, 0.0, 0.0};
  boost::numeric::odeint::integrate_times(st, rhs, s, xs.begin(), xs.end(), 1e-4,
                                          [&](const State& q, double) { out.push_back(q[0]); });
  return out;
}

}  // namespace oracle
