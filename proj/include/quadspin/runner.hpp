#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "quadspin/config.hpp"
#include "quadspin/observables.hpp"
#include "quadspin/propagate.hpp"
#include "quadspin/wigner.hpp"

namespace quadspin {

// One row of the trajectory CSV. window and min_eigenvalue are kept in memory
// only; the CSV column set is fixed by the schema.
struct ObservableRecord {
  double t = 0.0;
  double t_over_nuq = 0.0;
  double xi = 0.0;
  double xi_sq = 0.0;
  double alpha_deg = 0.0;
  double var_iy = 0.0;
  double var_iz = 0.0;
  double var_ip = 0.0;
  double var_im = 0.0;
  double prod_yz = 0.0;
  double prod_pm = 0.0;
  double bound = 0.0;
  double mean_ix = 0.0;
  double mean_iy = 0.0;
  double mean_iz = 0.0;
  double neff_p = 0.0;
  double neff_y = 0.0;
  double purity = 0.0;
  double trace_residual = 0.0;

  int window = 0;
  double min_eigenvalue = 0.0;
  bool degenerate_angle = false;
};

ObservableRecord observe(const DensityMatrix& rho, double t, double nu_q, int window = 0);

struct Trajectory {
  std::vector<ObservableRecord> records;
  std::vector<DensityMatrix> states;
};

// Twisting Hamiltonian plus (optionally) deviation-form quadrupolar relaxation,
// started from the configured coherent state and sampled on the configured grid.
Generator make_generator(const SimulationConfig& cfg);
Trajectory run_trajectory(const SimulationConfig& cfg);
Trajectory run_trajectory(const SimulationConfig& cfg, const TimeGrid& grid);

enum class Column {
  t, t_over_nuq, xi, xi_sq, alpha_deg, var_iy, var_iz, var_ip, var_im, prod_yz, prod_pm, bound,
  mean_ix, mean_iy, mean_iz, neff_p, neff_y, purity, trace_residual
};

Column parse_column(std::string_view name);
double column_value(const ObservableRecord& r, Column c);

struct Extremum {
  std::size_t index;
  double t;
  double value;
};

// Strict local minima by three-point comparison. Runs of values equal within
// 1e-12 * max(1, |v|) are treated as one plateau, reported at its earliest
// sample.
std::vector<Extremum> detect_minima(const std::vector<ObservableRecord>& records, Column column);
std::vector<Extremum> detect_minima(const std::vector<double>& t, const std::vector<double>& values);

// Central differences (one-sided at the ends) divided by the largest |rate|.
std::vector<std::pair<double, double>> derivative_series(const std::vector<ObservableRecord>& records,
                                                         Column column);
std::vector<std::pair<double, double>> derivative_series(const std::vector<double>& t,
                                                         const std::vector<double>& values);

}  // namespace quadspin
