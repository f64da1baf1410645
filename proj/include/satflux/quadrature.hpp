#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace satflux {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Rule with `order` points. Rules are computed once and cached; the returned
/// reference stays valid for the life of the program.
const GaussRule& gauss_legendre(int order);

/// Compensated (Neumaier) running sum, accumulated in call order.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double compensated_sum(std::span<const double> values);

}  // namespace satflux
