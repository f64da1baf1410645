#pragma once

#include <stdexcept>
#include <string>

namespace satflux {

/// Base class for all precondition failures raised by the library.
class Error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// f'(M) <= 0: the trivial state u = M admits no bifurcation.
class NoBifurcationRegime : public Error {
 public:
  using Error::Error;
};

/// |a| >= 2/(3 sqrt 3): f(u) = a has fewer than three real roots.
class OutsideBistableRange : public Error {
 public:
  using Error::Error;
};

/// lambda <= lambda_h(a): the homoclinic (or heteroclinic) loop is still intact.
class BelowHomoclinicThreshold : public Error {
 public:
  using Error::Error;
};

/// lambda < pi^2 / L^2 on the bifurcation-point curve.
class BelowFirstBifurcation : public Error {
 public:
  using Error::Error;
};

/// A bracketed search found no sign change in its scan window.
class NoRoot : public Error {
 public:
  using Error::Error;
};

/// Continuation could not converge on its first point.
class SeedFailure : public Error {
 public:
  using Error::Error;
};

/// The explicit scheme produced a non-finite value (time step too large).
class NonFinite : public Error {
 public:
  using Error::Error;
};

}  // namespace satflux
