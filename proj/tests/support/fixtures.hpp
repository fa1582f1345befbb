#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "roegen/roegen.hpp"

namespace fixtures {

/// Diagram for the default configuration, built once per test binary.
inline const roegen::PhaseDiagram& default_diagram() {
  static const roegen::PhaseDiagram d =
      roegen::build_diagram(roegen::EosParams::reduced(), roegen::SolidModel{}, roegen::GridSpec{});
  return d;
}

inline double rel_diff(double x, double ref) { return std::abs(x - ref) / std::max(std::abs(ref), 1e-300); }

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("roegen-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace fixtures
