#include "cli/output.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace satflux::cli {

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  for (const auto& c : table.comments) os << "# " << c << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    os << (i ? "," : "") << table.columns[i];
  }
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << fmt(row[i]);
    os << '\n';
  }
  for (const auto& c : table.footer) os << "# " << c << '\n';
  if (!os) throw std::runtime_error("write failed for " + path.string());
}

std::filesystem::path resolve_output(const std::string& out_dir, const std::string& file) {
  std::filesystem::path p(file);
  if (p.is_absolute()) return p;
  std::string dir = out_dir;
  if (dir.empty()) {
    if (const char* env = std::getenv("SATFLUX_OUT_DIR")) dir = env;
  }
  return dir.empty() ? p : std::filesystem::path(dir) / p;
}

void write_manifest(const std::filesystem::path& path, const Manifest& m) {
  nlohmann::ordered_json j;
  j["command"] = m.command;
  j["parameters"] = m.parameters;
  j["outputs"] = m.outputs;
  j["results"] = m.results;
  j["versions"] = {{"tool", kToolVersion}, {"format", 1}};
  j["wall_time"] = m.wall_time;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  os << j.dump(2) << '\n';
}

}  // namespace satflux::cli
