// roegen command-line tool.
//
//   roegen [--config FILE] [--out DIR] <subcommand> [options]
//
// Exit codes: 0 success, 2 configuration/input error, 3 numerical error,
// 4 I/O error.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "roegen/roegen.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

struct Globals {
  std::string config = "./roegen.json";
  bool config_given = false;
  std::string out = "./out";
};

roegen::Config load(const Globals& g) {
  if (!g.config_given && !fs::exists(g.config)) return roegen::Config{};
  return roegen::load_config(g.config);
}

roegen::PhaseDiagram build(const roegen::Config& cfg) {
  return roegen::build_diagram(cfg.eos, cfg.solid, cfg.grid, cfg.tolerances);
}

void print_files(const std::vector<fs::path>& files) {
  for (const auto& f : files) std::cout << f.string() << "\n";
}

std::string join(std::initializer_list<double> xs) {
  std::string out;
  for (double x : xs) out += (out.empty() ? "" : " ") + roegen::format_number(x);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phase diagrams of a Van der Waals economy"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  auto* config_opt = app.add_option("--config", g.config, "JSON configuration (absent default file means defaults)");
  app.add_option("--out", g.out, "output directory");

  auto* diagram = app.add_subcommand("diagram", "build the diagram and write JSON, CSV and SVG artifacts");
  auto* critical = app.add_subcommand("critical", "print I_c P_c Q_c");

  double maxwell_I = 0;
  auto* maxwell = app.add_subcommand("maxwell", "print P_sat Q_low Q_high latent_q at one stability");
  maxwell->add_option("--I", maxwell_I, "internal politics stability")->required();

  double iso_I = 0, qmin = 0, qmax = 0;
  std::size_t iso_n = 0;
  auto* iso = app.add_subcommand("isotherm", "print an isotherm as Q,P CSV");
  iso->add_option("--I", iso_I)->required();
  iso->add_option("--qmin", qmin)->required();
  iso->add_option("--qmax", qmax)->required();
  iso->add_option("--n", iso_n)->required();

  std::string sim_path;
  auto* sim = app.add_subcommand("simulate", "classify a path and detect its curve crossings");
  sim->add_option("--path", sim_path, "CSV with header I,P or I,P,Q")->required();

  std::string laws_path;
  std::size_t laws_segments = 2048;
  auto* laws = app.add_subcommand("laws", "second-law verdict and Pfaff loop residual of an I,Q path");
  laws->add_option("--path", laws_path, "CSV with header I,Q")->required();
  laws->add_option("--segments", laws_segments, "integration segments for the loop residual");

  auto* dictionary = app.add_subcommand("dictionary", "print the thermodynamics-economics dictionary as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }
  g.config_given = config_opt->count() > 0;

  try {
    const roegen::Config cfg = load(g);

    if (*diagram) {
      const auto d = build(cfg);
      print_files(roegen::emit_outputs(d, nullptr, g.out, cfg.dictionary()));
    } else if (*critical) {
      const auto c = roegen::find_critical(cfg.eos);
      std::cout << join({c.I, c.P, c.Q}) << "\n";
    } else if (*maxwell) {
      const auto pt = roegen::maxwell_construction(cfg.eos, maxwell_I, cfg.tolerances);
      std::cout << join({pt.P_sat, pt.Q_low, pt.Q_high, pt.latent_q}) << "\n";
    } else if (*iso) {
      std::cout << roegen::isotherm_to_csv(roegen::isotherm(cfg.eos, iso_I, qmin, qmax, iso_n));
    } else if (*sim) {
      const auto input = roegen::read_ip_path(fs::path(sim_path));
      const auto d = build(cfg);
      const auto report = input.states ? roegen::simulate(d, input.points, *input.states)
                                       : roegen::simulate(d, input.points);
      roegen::emit_outputs(d, &report, g.out, cfg.dictionary());
      std::cout << roegen::report_to_json(report);
    } else if (*laws) {
      auto path = roegen::read_iq_path(fs::path(laws_path));
      const auto verdict = roegen::second_law_check(cfg.eos, path);
      // open paths are closed by the straight return edge
      if (!path.closed() && !path.samples.empty()) path.samples.push_back(path.samples.front());
      const double residual = roegen::pfaff_loop_residual(cfg.eos, path, laws_segments);
      std::cout << "second_law " << roegen::to_string(verdict) << "\n";
      std::cout << "pfaff_loop_residual " << roegen::format_number(residual) << "\n";
    } else if (*dictionary) {
      std::cout << roegen::dictionary_to_csv(cfg.dictionary());
    }
    std::cout.flush();
    if (!std::cout) throw roegen::IoError("cannot write to standard output");
    return kExitOk;
  } catch (const roegen::InputError& e) {
    std::cerr << "roegen: error: " << e.what() << "\n";
    return kExitInput;
  } catch (const roegen::NumericalError& e) {
    std::cerr << "roegen: numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const roegen::IoError& e) {
    std::cerr << "roegen: I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "roegen: internal error: " << e.what() << "\n";
    return 1;
  }
}
