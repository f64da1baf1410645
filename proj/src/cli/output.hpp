#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace satflux::cli {

/// %.12g; the only float format used in files.
std::string fmt(double x);

struct CsvTable {
  std::vector<std::string> comments;  ///< written as "# ..." lines before the header
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> footer;    ///< "# ..." lines after the rows
};

void write_csv(const std::filesystem::path& path, const CsvTable& table);

/// Joins a relative path onto the output directory (flag, then SATFLUX_OUT_DIR).
std::filesystem::path resolve_output(const std::string& out_dir, const std::string& file);

struct Manifest {
  std::string command;
  std::map<std::string, std::string> parameters;
  std::vector<std::string> outputs;
  std::map<std::string, std::string> results;
  double wall_time = 0.0;
};

void write_manifest(const std::filesystem::path& path, const Manifest& m);

inline constexpr const char* kToolVersion = "1.0.0";

}  // namespace satflux::cli
