#include "quadspin/runner.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <optional>

#include "quadspin/error.hpp"
#include "quadspin/liouville.hpp"

namespace quadspin {

ObservableRecord observe(const DensityMatrix& rho, double t, double nu_q, int window) {
  const SpinNumber spin = rho.spin();
  const auto sq = squeezing(rho);
  const auto unc = uncertainty_report(rho, sq.alpha);
  const auto ops = make_spin_operators(spin);
  const auto pair = noncartesian_operators(spin, sq.alpha);

  ObservableRecord r;
  r.t = t;
  r.t_over_nuq = t * nu_q;
  r.xi = sq.xi;
  r.xi_sq = sq.xi_squared;
  r.alpha_deg = sq.alpha * 180.0 / std::numbers::pi;
  r.var_iy = unc.var_iy;
  r.var_iz = unc.var_iz;
  r.var_ip = unc.var_ip;
  r.var_im = unc.var_im;
  r.prod_yz = unc.prod_yz;
  r.prod_pm = unc.prod_pm;
  r.bound = unc.bound;
  r.mean_ix = unc.mean_ix;
  r.mean_iy = unc.mean_iy;
  r.mean_iz = unc.mean_iz;
  r.neff_p = macroscopicity(rho, pair.ip, spin, MacroscopicityOperator::ip).n_eff;
  r.neff_y = macroscopicity(rho, ops.iy, spin, MacroscopicityOperator::iy).n_eff;
  r.purity = rho.purity();
  r.trace_residual = rho.trace_residual();
  r.window = window;
  r.min_eigenvalue = rho.min_eigenvalue();
  r.degenerate_angle = sq.degenerate;
  return r;
}

Generator make_generator(const SimulationConfig& cfg) {
  const Operator h = twisting_hamiltonian(cfg.spin, cfg.relaxation.omega_q);
  if (!cfg.relaxation_enabled) return build_generator(h, std::nullopt, std::nullopt);
  return build_generator(h, relaxation_superoperator(cfg.spin, cfg.relaxation), equilibrium_state(cfg.spin));
}

Trajectory run_trajectory(const SimulationConfig& cfg) { return run_trajectory(cfg, cfg.grid.build(cfg.period())); }

Trajectory run_trajectory(const SimulationConfig& cfg, const TimeGrid& grid) {
  const Generator gen = make_generator(cfg);
  const DensityMatrix rho0 = coherent_state(cfg.spin, cfg.initial);
  PropagateOptions options;
  options.enforce_psd = !cfg.relaxation_enabled;
  auto samples = propagate_grid(rho0, gen, grid, options);

  const double nu_q = cfg.nu_q();
  const auto& windows = grid.window_of_sample();
  std::vector<ObservableRecord> records(samples.size());
  std::vector<std::exception_ptr> errors(samples.size());

#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < samples.size(); ++i) {
    try {
      records[i] = observe(samples[i].rho, samples[i].t, nu_q, windows[i]);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!errors[i]) continue;
    const std::string where = " (sample " + std::to_string(i) + ", t = " + std::to_string(samples[i].t) + " s)";
    try {
      std::rethrow_exception(errors[i]);
    } catch (const NumericalError& e) {
      throw NumericalError(e.what() + where, e.magnitude());
    } catch (const ValidationError& e) {
      throw ValidationError(e.what() + where);
    }
  }

  Trajectory out;
  out.records = std::move(records);
  out.states.reserve(samples.size());
  for (auto& s : samples) out.states.push_back(std::move(s.rho));
  return out;
}

Column parse_column(std::string_view name) {
  static const std::pair<std::string_view, Column> table[] = {
      {"t", Column::t},           {"t_over_nuq", Column::t_over_nuq},
      {"xi", Column::xi},         {"xi_sq", Column::xi_sq},
      {"alpha_deg", Column::alpha_deg}, {"var_iy", Column::var_iy},
      {"var_iz", Column::var_iz}, {"var_ip", Column::var_ip},
      {"var_im", Column::var_im}, {"prod_yz", Column::prod_yz},
      {"prod_pm", Column::prod_pm}, {"bound", Column::bound},
      {"mean_ix", Column::mean_ix}, {"mean_iy", Column::mean_iy},
      {"mean_iz", Column::mean_iz}, {"neff_p", Column::neff_p},
      {"neff_y", Column::neff_y}, {"purity", Column::purity},
      {"trace_residual", Column::trace_residual},
  };
  for (const auto& [key, col] : table) {
    if (key == name) return col;
  }
  throw ValidationError("unknown column '" + std::string(name) + "'");
}

double column_value(const ObservableRecord& r, Column c) {
  switch (c) {
    case Column::t: return r.t;
    case Column::t_over_nuq: return r.t_over_nuq;
    case Column::xi: return r.xi;
    case Column::xi_sq: return r.xi_sq;
    case Column::alpha_deg: return r.alpha_deg;
    case Column::var_iy: return r.var_iy;
    case Column::var_iz: return r.var_iz;
    case Column::var_ip: return r.var_ip;
    case Column::var_im: return r.var_im;
    case Column::prod_yz: return r.prod_yz;
    case Column::prod_pm: return r.prod_pm;
    case Column::bound: return r.bound;
    case Column::mean_ix: return r.mean_ix;
    case Column::mean_iy: return r.mean_iy;
    case Column::mean_iz: return r.mean_iz;
    case Column::neff_p: return r.neff_p;
    case Column::neff_y: return r.neff_y;
    case Column::purity: return r.purity;
    case Column::trace_residual: return r.trace_residual;
  }
  return 0.0;
}

namespace {

std::vector<double> extract(const std::vector<ObservableRecord>& records, Column c) {
  std::vector<double> v;
  v.reserve(records.size());
  for (const auto& r : records) v.push_back(column_value(r, c));
  return v;
}

}  // namespace

std::vector<Extremum> detect_minima(const std::vector<double>& t, const std::vector<double>& values) {
  if (t.size() != values.size()) throw ValidationError("time and value series differ in length");
  std::vector<Extremum> out;
  const std::size_t n = values.size();
  if (n < 3) return out;
  auto same = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)); };

  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && same(values[i], values[j + 1])) ++j;
    // plateau [i, j]
    if (i > 0 && j + 1 < n && values[i - 1] > values[i] && !same(values[i - 1], values[i]) &&
        values[j + 1] > values[i] && !same(values[j + 1], values[i])) {
      out.push_back({i, t[i], values[i]});
    }
    i = j + 1;
  }
  return out;
}

std::vector<Extremum> detect_minima(const std::vector<ObservableRecord>& records, Column column) {
  return detect_minima(extract(records, Column::t), extract(records, column));
}

std::vector<std::pair<double, double>> derivative_series(const std::vector<double>& t,
                                                         const std::vector<double>& values) {
  const std::size_t n = t.size();
  if (values.size() != n) throw ValidationError("time and value series differ in length");
  if (n < 2) throw ValidationError("derivative needs at least two records");
  for (std::size_t i = 1; i < n; ++i) {
    if (!(t[i] > t[i - 1])) throw ValidationError("duplicate or decreasing timestamps at record " + std::to_string(i));
  }
  std::vector<double> rate(n);
  rate[0] = (values[1] - values[0]) / (t[1] - t[0]);
  rate[n - 1] = (values[n - 1] - values[n - 2]) / (t[n - 1] - t[n - 2]);
  for (std::size_t i = 1; i + 1 < n; ++i) rate[i] = (values[i + 1] - values[i - 1]) / (t[i + 1] - t[i - 1]);

  double peak = 0.0;
  for (double r : rate) peak = std::max(peak, std::abs(r));
  std::vector<std::pair<double, double>> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(t[i], peak > 0.0 ? rate[i] / peak : 0.0);
  return out;
}

std::vector<std::pair<double, double>> derivative_series(const std::vector<ObservableRecord>& records,
                                                         Column column) {
  return derivative_series(extract(records, Column::t), extract(records, column));
}

}  // namespace quadspin
