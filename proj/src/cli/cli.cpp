#include "satflux/cli.hpp"

#include <fstream>
#include <ostream>
#include <stdexcept>

#include "cli/commands.hpp"
#include "cli/output.hpp"
#include "satflux/errors.hpp"

namespace satflux::cli {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool has_flag(const std::vector<std::string>& args, const std::string& name) {
  for (const auto& a : args) {
    if (a == name || a.rfind(name + "=", 0) == 0) return true;
  }
  return false;
}

// Pulls "--config FILE" out of args and appends the file's key=value pairs as
// "--key=value" unless the flag is already present (flags win).
std::vector<std::string> apply_config(std::vector<std::string> args) {
  std::string file;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw CLI::ArgumentMismatch("--config needs a file");
      file = args[i + 1];
      args.erase(args.begin() + i, args.begin() + i + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      file = args[i].substr(9);
      args.erase(args.begin() + i);
      break;
    }
  }
  if (file.empty()) return args;
  std::ifstream in(file);
  if (!in) throw CLI::FileError("cannot read config file " + file);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw CLI::ConversionError(file + ":" + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = "--" + trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!has_flag(args, key)) args.push_back(key + "=" + value);
  }
  return args;
}

}  // namespace

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Saturating-flux mass-constrained bistable problem: bifurcation, phase plane, time map and PDE tools",
               "satflux"};
  app.require_subcommand(1);
  app.fallthrough();
  Context ctx;
  ctx.out = &out;
  ctx.err = &err;
  app.add_option("--out-dir", ctx.out_dir, "directory for relative output paths (else $SATFLUX_OUT_DIR)");
  app.add_option("--config", "key=value file; command-line flags take precedence");
  const std::vector<Command> commands = register_commands(app);

  try {
    std::vector<std::string> args = apply_config(raw_args);
    ctx.argv = args;
    std::vector<const char*> argv{"satflux"};
    for (const auto& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  for (const Command& c : commands) {
    if (!c.app->parsed()) continue;
    try {
      return c.run(ctx);
    } catch (const SeedFailure& e) {
      err << "seed failure: " << e.what() << '\n';
      return kSeedFailure;
    } catch (const NonFinite& e) {
      err << "instability: " << e.what() << '\n';
      return kInstability;
    } catch (const NoRoot& e) {
      err << "no solution: " << e.what() << '\n';
      return kNoClassicalSolution;
    } catch (const NoBifurcationRegime& e) {
      err << "no bifurcation: " << e.what() << '\n';
      return kNoClassicalSolution;
    } catch (const Error& e) {
      err << "error: " << e.what() << '\n';
      return kUsage;
    } catch (const std::invalid_argument& e) {
      err << "invalid argument: " << e.what() << '\n';
      return kUsage;
    } catch (const std::exception& e) {
      err << "failure: " << e.what() << '\n';
      return 1;
    }
  }
  return kUsage;
}

}  // namespace satflux::cli
