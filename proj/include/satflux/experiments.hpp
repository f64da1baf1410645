#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "satflux/model.hpp"
#include "satflux/pde_solver.hpp"

namespace satflux {

struct ExperimentRun {
  std::string label;
  InitialData initial;
};

struct ExperimentPreset {
  std::string name;
  std::string description;
  ModelParams params;
  int cells = 500;
  std::vector<ExperimentRun> runs;
};

std::vector<std::string> preset_names();

/// Throws std::invalid_argument for an unknown name.
ExperimentPreset experiment_preset(std::string_view name);

}  // namespace satflux
