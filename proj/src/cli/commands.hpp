#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "CLI11.hpp"

namespace satflux::cli {

struct Context {
  std::ostream* out = nullptr;
  std::ostream* err = nullptr;
  std::string out_dir;
  /// Flags as given, for manifests.
  std::vector<std::string> argv;
};

struct Command {
  CLI::App* app = nullptr;
  std::function<int(Context&)> run;
};

/// Registers every subcommand on `app`. Option storage lives in the returned
/// closures, so the commands must not outlive `app`.
std::vector<Command> register_commands(CLI::App& app);

}  // namespace satflux::cli
