#pragma once

// Simulation configuration. The on-disk form is a JSON object; every key is
// optional except where noted, and unknown keys are rejected.
//
//   {
//     "preset": "na23" | "cs133" | "custom",          (required)
//     "spin": "3/2",                                   (custom only)
//     "j0_ns": 14, "j1_ns": 4, "j2_ns": 3.4,           (custom only)
//     "c_q_hz2": 1.2e10, "nu_q_hz": 16700,             (custom only)
//     "relaxation": true,
//     "initial": {"theta": 1.5707963267948966, "phi": 0},
//     "grid": {"scheme": "windowed", "windows": "1:10:1001",
//              "samples_per_window": 64}
//           | {"scheme": "uniform", "t_start_nuq": 0, "t_end_nuq": 1, "samples": 65},
//     "outputs": ["trajectory", "minima", "derivative", "wigner", "config"],
//     "wigner_grid": "181x361"
//   }
//
// Presets may restate spin and tabulated values, which must then match exactly.
// Times in the grid block are in units of the quadrupolar period 2 pi / omega_Q.

#include <string>
#include <string_view>
#include <vector>

#include "quadspin/liouville.hpp"
#include "quadspin/propagate.hpp"
#include "quadspin/spin.hpp"

namespace quadspin {

enum class Preset { na23, cs133, custom };

std::string_view preset_name(Preset p);
Preset parse_preset(std::string_view name);

// Relaxation inputs in the units they are tabulated in.
struct TableValues {
  double j0_ns = 0.0;
  double j1_ns = 0.0;
  double j2_ns = 0.0;
  double c_q_hz2 = 0.0;
  double nu_q_hz = 0.0;

  RelaxationParams to_params(std::string label) const;
  friend bool operator==(const TableValues&, const TableValues&) = default;
};

struct GridSpec {
  GridScheme scheme = GridScheme::windowed;
  std::vector<int> windows = default_windows();
  int samples_per_window = 64;  // subintervals per window
  double t_start_nuq = 0.0;
  double t_end_nuq = 1.0;
  int samples = 65;

  TimeGrid build(double period) const;
  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

struct OutputSpec {
  bool trajectory = true;
  bool minima = true;
  bool derivative = true;
  bool wigner = false;  // Wigner grid at the first squeezing minimum
  bool config = true;
  int wigner_theta = 181;
  int wigner_phi = 361;
  friend bool operator==(const OutputSpec&, const OutputSpec&) = default;
};

struct SimulationConfig {
  Preset preset = Preset::na23;
  SpinNumber spin{3};
  TableValues table;
  RelaxationParams relaxation;
  bool relaxation_enabled = true;
  CoherentStateParams initial{1.5707963267948966, 0.0};
  GridSpec grid;
  OutputSpec outputs;

  double period() const;  // 2 pi / omega_Q, seconds
  double nu_q() const;    // Hz
};

TableValues preset_table(Preset p);
SpinNumber preset_spin(Preset p);
SimulationConfig make_preset_config(Preset p);

// Parses "1:10:1001" (start:step:stop, inclusive) or "1,11,21".
std::vector<int> parse_window_list(std::string_view text);
// Parses "181x361".
std::pair<int, int> parse_grid_shape(std::string_view text);

SimulationConfig load_config(std::string_view text);
SimulationConfig load_config_file(const std::string& path);
std::string config_to_json(const SimulationConfig& cfg);

}  // namespace quadspin
