#pragma once

// Exact propagation of d rho/dt = -i[H, rho] + R[rho - rho_eq].
//
// The affine term is folded into a (d^2 + 1)-dimensional augmented generator
//   [ L  a ]
//   [ 0  0 ]
// whose exponential carries both e^{Lt} and (int_0^t e^{Ls} ds) a.

#include <optional>
#include <utility>
#include <vector>

#include "quadspin/liouville.hpp"
#include "quadspin/spin.hpp"

namespace quadspin {

class Generator {
 public:
  Generator(SpinNumber spin, Matrix linear, Vector affine, bool relaxation_enabled);

  SpinNumber spin() const noexcept { return spin_; }
  const Matrix& linear() const noexcept { return linear_; }
  const Vector& affine() const noexcept { return affine_; }
  bool relaxation_enabled() const noexcept { return relaxation_enabled_; }

  Matrix augmented() const;
  // ||L vec(rho) + a||_max
  double residual(const DensityMatrix& rho) const;

 private:
  SpinNumber spin_;
  Matrix linear_;
  Vector affine_;
  bool relaxation_enabled_;
};

Generator build_generator(const Operator& hamiltonian, const std::optional<Superoperator>& relaxation,
                          const std::optional<DensityMatrix>& rho_eq);

struct PropagateOptions {
  double trace_tol = 1e-9;
  double psd_tol = 1e-8;
  // The deviation-form relaxation map is not completely positive, so relaxed
  // trajectories from pure states can dip below zero by O(1e-4). Callers that
  // run such trajectories turn this off and track min_eigenvalue themselves.
  bool enforce_psd = true;
};

// Hermitizes (rho + rho^dagger)/2 and validates. Never renormalizes the trace.
DensityMatrix finalize_state(SpinNumber spin, const Vector& vec_rho, const PropagateOptions& options);

DensityMatrix propagate(const DensityMatrix& rho0, const Generator& gen, double t,
                        const PropagateOptions& options = {});

// Equally spaced run of samples t0 + j * dt, j = 0..count-1.
struct GridSegment {
  double t0 = 0.0;
  double dt = 0.0;
  int count = 1;
};

enum class GridScheme { uniform, windowed, explicit_samples };

class TimeGrid {
 public:
  // count samples from t_start to t_end inclusive.
  static TimeGrid uniform(double t_start, double t_end, int count);
  // Windows [k-1, k] * period for each k, each split into `intervals`
  // subintervals (intervals + 1 samples including both ends).
  static TimeGrid windowed(const std::vector<int>& windows, int intervals, double period);
  static TimeGrid from_samples(std::vector<double> samples);

  GridScheme scheme() const noexcept { return scheme_; }
  const std::vector<GridSegment>& segments() const noexcept { return segments_; }
  const std::vector<double>& samples() const noexcept { return samples_; }
  // Window index k for each sample (windowed), 0 otherwise.
  const std::vector<int>& window_of_sample() const noexcept { return window_of_sample_; }
  std::size_t size() const noexcept { return samples_.size(); }

 private:
  TimeGrid(GridScheme scheme, std::vector<GridSegment> segments, std::vector<int> windows);

  GridScheme scheme_;
  std::vector<GridSegment> segments_;
  std::vector<double> samples_;
  std::vector<int> window_of_sample_;
};

// Default window indices 1, 11, 21, ..., 1001.
std::vector<int> default_windows();

struct PropagatedSample {
  double t;
  DensityMatrix rho;
};

// Samples are produced segment-parallel (OpenMP): each segment restarts from a
// direct exponential and chains a cached step propagator, restarting every
// `kChainLength` steps.
std::vector<PropagatedSample> propagate_grid(const DensityMatrix& rho0, const Generator& gen,
                                             const TimeGrid& grid, const PropagateOptions& options = {});

// Serial reference: one direct exponential per sample.
std::vector<PropagatedSample> propagate_grid_reference(const DensityMatrix& rho0, const Generator& gen,
                                                       const TimeGrid& grid,
                                                       const PropagateOptions& options = {});

inline constexpr int kChainLength = 64;

}  // namespace quadspin
