#include "quadspin/propagate.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>

#include "quadspin/error.hpp"
#include "quadspin/expm.hpp"

namespace quadspin {

// ------------------------------------------------------------------ Generator

Generator::Generator(SpinNumber spin, Matrix linear, Vector affine, bool relaxation_enabled)
    : spin_(spin),
      linear_(std::move(linear)),
      affine_(std::move(affine)),
      relaxation_enabled_(relaxation_enabled) {
  const int n = spin.dimension() * spin.dimension();
  if (linear_.rows() != n || linear_.cols() != n || affine_.size() != n) {
    throw ValidationError("generator shape does not match spin " + spin.to_string());
  }
}

Matrix Generator::augmented() const {
  const auto n = linear_.rows();
  Matrix m = Matrix::Zero(n + 1, n + 1);
  m.topLeftCorner(n, n) = linear_;
  m.topRightCorner(n, 1) = affine_;
  return m;
}

double Generator::residual(const DensityMatrix& rho) const {
  require_same_spin(spin_, rho.spin(), "generator residual");
  return (linear_ * vectorize(rho.op()) + affine_).cwiseAbs().maxCoeff();
}

Generator build_generator(const Operator& hamiltonian, const std::optional<Superoperator>& relaxation,
                          const std::optional<DensityMatrix>& rho_eq) {
  const SpinNumber spin = hamiltonian.spin();
  const int n = spin.dimension() * spin.dimension();
  Matrix linear = Complex(0.0, -1.0) * commutator_superoperator(hamiltonian);
  Vector affine = Vector::Zero(n);
  if (relaxation.has_value() != rho_eq.has_value()) {
    throw ValidationError("relaxation superoperator and equilibrium state must be given together");
  }
  if (relaxation) {
    require_same_spin(spin, relaxation->spin(), "build_generator");
    require_same_spin(spin, rho_eq->spin(), "build_generator");
    linear += relaxation->matrix();
    affine = -(relaxation->matrix() * vectorize(rho_eq->op()));
  }
  return Generator(spin, std::move(linear), std::move(affine), relaxation.has_value());
}

// ---------------------------------------------------------------- propagation

DensityMatrix finalize_state(SpinNumber spin, const Vector& vec_rho, const PropagateOptions& options) {
  const int d = spin.dimension();
  const Matrix raw = Eigen::Map<const Matrix>(vec_rho.data(), d, d);
  const Matrix herm = 0.5 * (raw + raw.adjoint());
  StateTolerance tol;
  tol.hermitian = 1e-12;
  tol.trace = options.trace_tol;
  tol.psd = options.psd_tol;
  tol.check_psd = options.enforce_psd;
  return DensityMatrix(Operator(spin, herm), tol);
}

namespace {

Vector augmented_state(const DensityMatrix& rho) {
  const Vector v = vectorize(rho.op());
  Vector aug(v.size() + 1);
  aug.head(v.size()) = v;
  aug(v.size()) = 1.0;
  return aug;
}

void require_time(double t) {
  if (!std::isfinite(t) || t < 0.0) throw ValidationError("propagation time must be finite and >= 0");
}

}  // namespace

DensityMatrix propagate(const DensityMatrix& rho0, const Generator& gen, double t,
                        const PropagateOptions& options) {
  require_same_spin(rho0.spin(), gen.spin(), "propagate");
  require_time(t);
  const Matrix step = expm(gen.augmented() * t);
  const Vector out = step * augmented_state(rho0);
  return finalize_state(gen.spin(), out.head(out.size() - 1), options);
}

// ------------------------------------------------------------------- TimeGrid

TimeGrid::TimeGrid(GridScheme scheme, std::vector<GridSegment> segments, std::vector<int> windows)
    : scheme_(scheme), segments_(std::move(segments)) {
  for (std::size_t s = 0; s < segments_.size(); ++s) {
    const auto& seg = segments_[s];
    for (int j = 0; j < seg.count; ++j) {
      samples_.push_back(seg.t0 + j * seg.dt);
      window_of_sample_.push_back(windows.empty() ? 0 : windows[s]);
    }
  }
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (!std::isfinite(samples_[i]) || samples_[i] < 0.0) {
      throw ValidationError("time grid samples must be finite and non-negative");
    }
    if (i > 0 && !(samples_[i] > samples_[i - 1])) {
      throw ValidationError("time grid samples must be strictly increasing");
    }
  }
}

TimeGrid TimeGrid::uniform(double t_start, double t_end, int count) {
  if (count < 1) throw ValidationError("uniform grid needs at least one sample");
  if (count == 1) return TimeGrid(GridScheme::uniform, {{t_start, 0.0, 1}}, {});
  if (!(t_end > t_start)) throw ValidationError("uniform grid needs t_end > t_start");
  return TimeGrid(GridScheme::uniform, {{t_start, (t_end - t_start) / (count - 1), count}}, {});
}

TimeGrid TimeGrid::windowed(const std::vector<int>& windows, int intervals, double period) {
  if (windows.empty()) throw ValidationError("window list is empty");
  if (intervals < 1) throw ValidationError("samples per window must be >= 1");
  if (!(period > 0.0)) throw ValidationError("window period must be positive");
  std::vector<GridSegment> segments;
  for (std::size_t i = 0; i < windows.size(); ++i) {
    if (windows[i] < 1) throw ValidationError("window indices start at 1");
    if (i > 0 && windows[i] <= windows[i - 1]) {
      throw ValidationError("window indices must be strictly increasing");
    }
    if (i > 0 && windows[i] == windows[i - 1] + 1) {
      // Adjacent windows share an endpoint; drop the duplicate first sample.
      segments.push_back({(windows[i] - 1) * period + period / intervals, period / intervals, intervals});
      continue;
    }
    segments.push_back({(windows[i] - 1) * period, period / intervals, intervals + 1});
  }
  return TimeGrid(GridScheme::windowed, std::move(segments), windows);
}

TimeGrid TimeGrid::from_samples(std::vector<double> samples) {
  if (samples.empty()) throw ValidationError("time grid is empty");
  std::vector<GridSegment> segments;
  segments.reserve(samples.size());
  for (double t : samples) segments.push_back({t, 0.0, 1});
  return TimeGrid(GridScheme::explicit_samples, std::move(segments), {});
}

std::vector<int> default_windows() {
  std::vector<int> k;
  for (int w = 1; w <= 1001; w += 10) k.push_back(w);
  return k;
}

// --------------------------------------------------------------- grid kernels

namespace {

struct Chunk {
  std::size_t first_sample;
  double t0;
  double dt;
  int count;
};

std::vector<Chunk> chunk_segments(const TimeGrid& grid) {
  std::vector<Chunk> chunks;
  std::size_t offset = 0;
  for (const auto& seg : grid.segments()) {
    for (int start = 0; start < seg.count; start += kChainLength) {
      const int count = std::min(kChainLength, seg.count - start);
      chunks.push_back({offset + static_cast<std::size_t>(start), seg.t0 + start * seg.dt, seg.dt, count});
    }
    offset += static_cast<std::size_t>(seg.count);
  }
  return chunks;
}

[[noreturn]] void rethrow_with_sample(const std::exception_ptr& error, std::size_t index, double t) {
  const std::string where = " (sample " + std::to_string(index) + ", t = " + std::to_string(t) + " s)";
  try {
    std::rethrow_exception(error);
  } catch (const NumericalError& e) {
    throw NumericalError(e.what() + where, e.magnitude());
  } catch (const ValidationError& e) {
    throw ValidationError(e.what() + where);
  }
}

}  // namespace

std::vector<PropagatedSample> propagate_grid(const DensityMatrix& rho0, const Generator& gen,
                                             const TimeGrid& grid, const PropagateOptions& options) {
  require_same_spin(rho0.spin(), gen.spin(), "propagate_grid");
  const auto chunks = chunk_segments(grid);
  const Matrix aug = gen.augmented();
  const Vector start = augmented_state(rho0);
  const auto& times = grid.samples();
  std::vector<Vector> states(times.size());

#pragma omp parallel for schedule(dynamic)
  for (std::size_t c = 0; c < chunks.size(); ++c) {
    const Chunk& chunk = chunks[c];
    Vector v = expm(aug * chunk.t0) * start;
    states[chunk.first_sample] = v;
    if (chunk.count > 1) {
      const Matrix step = expm(aug * chunk.dt);
      for (int j = 1; j < chunk.count; ++j) {
        v = step * v;
        states[chunk.first_sample + static_cast<std::size_t>(j)] = v;
      }
    }
  }

  std::vector<PropagatedSample> out;
  out.reserve(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    try {
      out.push_back({times[i], finalize_state(gen.spin(), states[i].head(states[i].size() - 1), options)});
    } catch (const std::exception&) {
      rethrow_with_sample(std::current_exception(), i, times[i]);
    }
  }
  return out;
}

std::vector<PropagatedSample> propagate_grid_reference(const DensityMatrix& rho0, const Generator& gen,
                                                       const TimeGrid& grid,
                                                       const PropagateOptions& options) {
  std::vector<PropagatedSample> out;
  out.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid.samples()[i];
    try {
      out.push_back({t, propagate(rho0, gen, t, options)});
    } catch (const std::exception&) {
      rethrow_with_sample(std::current_exception(), i, t);
    }
  }
  return out;
}

}  // namespace quadspin
