#pragma once

/// \file
/// Writes the artifact set of a diagram run into a directory:
///
///   diagram.json
///   curve_boom_crisis.csv, curve_recovery_recession.csv, curve_increase_decrease.csv
///   diagram.svg
///   simulation.json (only with a report)

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "roegen/errors.hpp"
#include "roegen/io/serialize.hpp"
#include "roegen/io/svg.hpp"
#include "roegen/phase_equilibrium.hpp"
#include "roegen/process_sim.hpp"

namespace roegen {

inline std::string curve_csv_name(CurveKind k) { return std::string("curve_") + detail::curve_key(k) + ".csv"; }

inline void write_text_file(const std::filesystem::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + file.string() + "'");
  out << text;
  out.close();
  if (!out) throw IoError("failed writing '" + file.string() + "'");
}

/// Renders everything in memory first, then writes. Returns the paths
/// written, in a fixed order.
inline std::vector<std::filesystem::path> emit_outputs(const PhaseDiagram& d, const SimulationReport* report,
                                                       const std::filesystem::path& out_dir,
                                                       const Dictionary& dict = Dictionary()) {
  std::vector<std::pair<std::string, std::string>> files;
  files.emplace_back("diagram.json", diagram_to_json(d));
  for (CurveKind k : kAllCurves) files.emplace_back(curve_csv_name(k), curve_to_csv(d.curve(k)));
  files.emplace_back("diagram.svg", render_svg(d, 800, 600, dict));
  if (report) files.emplace_back("simulation.json", report_to_json(*report));

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec || !std::filesystem::is_directory(out_dir))
    throw IoError("output directory '" + out_dir.string() + "' is not usable: " +
                  (ec ? ec.message() : std::string("not a directory")));

  std::vector<std::filesystem::path> written;
  for (const auto& [name, text] : files) {
    const auto path = out_dir / name;
    try {
      write_text_file(path, text);
    } catch (const IoError& e) {
      throw IoError("output directory '" + out_dir.string() + "': " + e.what());
    }
    written.push_back(path);
  }
  return written;
}

inline std::vector<std::filesystem::path> emit_outputs(const PhaseDiagram& d, const std::filesystem::path& out_dir) {
  return emit_outputs(d, nullptr, out_dir);
}

inline std::vector<std::filesystem::path> emit_outputs(const PhaseDiagram& d, const SimulationReport& report,
                                                       const std::filesystem::path& out_dir) {
  return emit_outputs(d, &report, out_dir);
}

}  // namespace roegen
