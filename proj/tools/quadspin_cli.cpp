// quadspin: one-axis-twisting dynamics of a quadrupolar spin under Redfield
// relaxation.
//
//   quadspin simulate --preset na23 --out runs/na23
//   quadspin wigner   --preset cs133 --time first-min --grid 181x361 --out runs/w --svg
//   quadspin bounds   --spins 1/2,1,3/2,2,5/2,3,7/2,4,9/2 --out bounds.csv
//   quadspin cat      --preset na23 --out runs/cat
//
// Exit status: 0 success, 1 validation error, 2 numerical-invariant violation.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "quadspin/config.hpp"
#include "quadspin/emit.hpp"
#include "quadspin/error.hpp"
#include "quadspin/runner.hpp"
#include "quadspin/threads.hpp"
#include "quadspin/wigner.hpp"

namespace fs = std::filesystem;
using namespace quadspin;

namespace {

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
}

std::vector<SpinNumber> parse_spin_list(const std::string& text) {
  std::vector<SpinNumber> spins;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    spins.push_back(SpinNumber::parse(text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos)));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return spins;
}

void write_wigner(const DensityMatrix& rho, std::pair<int, int> shape, const fs::path& dir, const std::string& stem,
                  bool svg) {
  const auto grid = wigner_grid(rho, shape.first, shape.second);
  emit_wigner_csv(grid, dir / (stem + ".csv"));
  if (svg) emit_wigner_svg(grid, dir / (stem + ".svg"));
}

struct SimulateArgs {
  std::string preset;
  std::string config;
  bool no_relaxation = false;
  std::string windows;
  int samples_per_window = 0;
  std::string out;
};

int run_simulate(const SimulateArgs& a) {
  SimulationConfig cfg;
  if (!a.config.empty()) {
    cfg = load_config_file(a.config);
    if (!a.preset.empty() && parse_preset(a.preset) != cfg.preset) {
      throw ValidationError("--preset disagrees with the configuration file");
    }
  } else {
    if (a.preset.empty()) throw ValidationError("simulate needs --preset or --config");
    const Preset p = parse_preset(a.preset);
    if (p == Preset::custom) throw ValidationError("custom runs need --config");
    cfg = make_preset_config(p);
  }
  if (a.no_relaxation) cfg.relaxation_enabled = false;
  if (!a.windows.empty()) {
    cfg.grid.scheme = GridScheme::windowed;
    cfg.grid.windows = parse_window_list(a.windows);
  }
  if (a.samples_per_window > 0) cfg.grid.samples_per_window = a.samples_per_window;

  const fs::path dir(a.out);
  ensure_dir(dir);
  const Trajectory traj = run_trajectory(cfg);
  const auto minima = detect_minima(traj.records, Column::xi);

  if (cfg.outputs.config) write_text_file(dir / "config.json", config_to_json(cfg));
  if (cfg.outputs.trajectory) emit_trajectory_csv(traj.records, dir / "trajectory.csv");
  if (cfg.outputs.minima) {
    std::vector<std::pair<double, double>> rows;
    for (const auto& m : minima) rows.emplace_back(m.t, m.value);
    write_text_file(dir / "minima_xi.csv", series_csv("t,xi", rows));
  }
  if (cfg.outputs.derivative && traj.records.size() >= 2) {
    write_text_file(dir / "derivative_prod_pm.csv",
                    series_csv("t,normalized_rate", derivative_series(traj.records, Column::prod_pm)));
  }
  if (cfg.outputs.wigner && !minima.empty()) {
    write_wigner(traj.states[minima.front().index], {cfg.outputs.wigner_theta, cfg.outputs.wigner_phi}, dir,
                 "wigner_first_min", false);
  }

  std::printf("preset %s, spin %s, relaxation %s, %zu samples\n", std::string(preset_name(cfg.preset)).c_str(),
              cfg.spin.to_string().c_str(), cfg.relaxation_enabled ? "on" : "off", traj.records.size());
  for (std::size_t i = 0; i < minima.size() && i < 4; ++i) {
    std::printf("xi minimum %zu: t = %.6g nu_Q^-1, xi = %.6f\n", i + 1, traj.records[minima[i].index].t_over_nuq,
                minima[i].value);
  }
  const auto& last = traj.records.back();
  std::printf("final: xi^2 = %.6f, prod_yz = %.6f, neff_p = %.6f\n", last.xi_sq, last.prod_yz, last.neff_p);
  return 0;
}

struct WignerArgs {
  std::string preset;
  std::string time;
  std::string grid = "181x361";
  std::string out;
  bool svg = false;
  bool no_relaxation = false;
};

int run_wigner(const WignerArgs& a) {
  SimulationConfig cfg = make_preset_config(parse_preset(a.preset));
  if (a.no_relaxation) cfg.relaxation_enabled = false;
  const auto shape = parse_grid_shape(a.grid);

  double t = 0.0;
  if (a.time == "first-min") {
    cfg.grid.windows = {1};
    const auto traj = run_trajectory(cfg);
    const auto minima = detect_minima(traj.records, Column::xi);
    if (minima.empty()) throw ValidationError("no squeezing minimum in the first window");
    t = minima.front().t;
  } else if (a.time.size() > 3 && a.time.ends_with("nuq")) {
    t = std::stod(a.time.substr(0, a.time.size() - 3)) * cfg.period();
  } else {
    t = std::stod(a.time);
  }
  const auto traj = run_trajectory(cfg, TimeGrid::from_samples({t}));
  const fs::path dir(a.out);
  ensure_dir(dir);
  write_wigner(traj.states.front(), shape, dir, "wigner", a.svg);
  std::printf("Wigner grid %dx%d at t = %.9g s (%.6g nu_Q^-1)\n", shape.first, shape.second, t, t / cfg.period());
  return 0;
}

int run_bounds(const std::string& spins, const std::string& out) {
  const fs::path path(out);
  if (path.has_parent_path()) ensure_dir(path.parent_path());
  emit_bounds_table(parse_spin_list(spins), path);
  return 0;
}

int run_cat(const std::string& preset, const std::string& out, const std::string& grid, bool svg) {
  SimulationConfig cfg = make_preset_config(parse_preset(preset));
  cfg.relaxation_enabled = false;
  cfg.grid.scheme = GridScheme::uniform;
  cfg.grid.t_start_nuq = 0.0;
  cfg.grid.t_end_nuq = 0.5;  // t = pi / omega_Q
  cfg.grid.samples = 65;
  const auto traj = run_trajectory(cfg);
  const fs::path dir(out);
  ensure_dir(dir);
  emit_trajectory_csv(traj.records, dir / "trajectory.csv");
  write_wigner(traj.states.back(), parse_grid_shape(grid), dir, "wigner_cat", svg);
  const auto& cat = traj.records.back();
  std::printf("cat state at t = pi/omega_Q: purity = %.12f, neff_p = %.9f (2I = %d)\n", cat.purity, cat.neff_p,
              cfg.spin.two_i());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spin squeezing of quadrupolar nuclei under Redfield relaxation"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Propagate a preset and write the observable trajectory");
  simulate->add_option("--preset", sim.preset, "na23 | cs133");
  simulate->add_option("--config", sim.config, "JSON configuration file")->check(CLI::ExistingFile);
  simulate->add_flag("--no-relaxation", sim.no_relaxation, "Unitary evolution only");
  simulate->add_option("--windows", sim.windows, "Window indices, e.g. 1:10:1001 or 1,21,41");
  simulate->add_option("--samples-per-window", sim.samples_per_window, "Subintervals per window (default 64)")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--out", sim.out, "Output directory")->required();

  WignerArgs wig;
  auto* wigner = app.add_subcommand("wigner", "Evaluate the spherical Wigner function at one time");
  wigner->add_option("--preset", wig.preset, "na23 | cs133")->required();
  wigner->add_option("--time", wig.time, "Seconds, <x>nuq for multiples of 2pi/omega_Q, or first-min")->required();
  wigner->add_option("--grid", wig.grid, "NTHETAxNPHI (default 181x361)");
  wigner->add_option("--out", wig.out, "Output directory")->required();
  wigner->add_flag("--svg", wig.svg, "Also write an SVG heatmap");
  wigner->add_flag("--no-relaxation", wig.no_relaxation, "Unitary evolution only");

  std::string bounds_spins;
  std::string bounds_out;
  auto* bounds = app.add_subcommand("bounds", "Tabulate thermal-equilibrium bounds per spin");
  bounds->add_option("--spins", bounds_spins, "Comma-separated spins, e.g. 1/2,1,3/2")->required();
  bounds->add_option("--out", bounds_out, "Output CSV file")->required();

  std::string cat_preset;
  std::string cat_out;
  std::string cat_grid = "181x361";
  bool cat_svg = false;
  auto* cat = app.add_subcommand("cat", "Relaxation-free run to t = pi/omega_Q plus the Wigner grid");
  cat->add_option("--preset", cat_preset, "na23 | cs133")->required();
  cat->add_option("--out", cat_out, "Output directory")->required();
  cat->add_option("--grid", cat_grid, "NTHETAxNPHI (default 181x361)");
  cat->add_flag("--svg", cat_svg, "Also write an SVG heatmap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    configure_threads_from_env();
    if (*simulate) return run_simulate(sim);
    if (*wigner) return run_wigner(wig);
    if (*bounds) return run_bounds(bounds_spins, bounds_out);
    if (*cat) return run_cat(cat_preset, cat_out, cat_grid, cat_svg);
  } catch (const NumericalError& e) {
    std::cerr << "numerical invariant violated: " << e.what() << " (magnitude " << e.magnitude() << ")\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 1;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
