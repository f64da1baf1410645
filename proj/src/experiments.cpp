#include "satflux/experiments.hpp"

#include <stdexcept>
#include <string>

namespace satflux {

std::vector<std::string> preset_names() { return {"exp1-left", "exp1-right", "fig9", "fig11"}; }

ExperimentPreset experiment_preset(std::string_view name) {
  // Monotone step with the interface at 0.4 L; mean 0.2 on (0, 1.7).
  const TanhStep exp1_data{0.3, -0.5, 0.4, 1000.0};
  if (name == "exp1-left") {
    return {"exp1-left", "L = 1.7, M = 0.2, lambda = 4 (below the end of the monotone branch)",
            ModelParams(1.7, 0.2, 4.0), 500, {{"initial", exp1_data}}};
  }
  if (name == "exp1-right") {
    return {"exp1-right", "L = 1.7, M = 0.2, lambda = 5 (beyond the end of the monotone branch)",
            ModelParams(1.7, 0.2, 5.0), 500, {{"initial", exp1_data}}};
  }
  if (name == "fig9") {
    // beta + gamma - 1/2 = M fixes the mean for a falling step.
    return {"fig9", "L = 2.5, M = 0.2, lambda = 8, three interface positions",
            ModelParams(2.5, 0.2, 8.0),
            500,
            {{"gamma0.5", TanhStep{0.2, -0.5, 0.5, 1000.0}},
             {"gamma0.6", TanhStep{0.1, -0.5, 0.6, 1000.0}},
             {"gamma0.9", TanhStep{-0.2, -0.5, 0.9, 1000.0}}}};
  }
  if (name == "fig11") {
    return {"fig11", "L = 2.5, M = 0.2, lambda = 8, non-monotone two-interface data",
            ModelParams(2.5, 0.2, 8.0), 500, {{"initial", TwoInterface{}}}};
  }
  throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
}

}  // namespace satflux
