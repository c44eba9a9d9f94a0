#pragma once

// Spherical Wigner function from the multipole expansion of rho:
//   W(theta, phi) = sqrt(d / 4 pi) * sum_{l,m} rho_lm Y_lm(theta, phi),
//   rho_lm = Tr(rho T_lm^dagger),
// normalized so that the integral over the sphere is 1. theta is the usual
// polar angle from +z, so a coherent state peaks at its mean-spin direction.

#include <vector>

#include "quadspin/spin.hpp"

namespace quadspin {

// Orthonormal Y_lm (Condon-Shortley phase) for all l <= lmax at one point,
// indexed l*l + l + m.
std::vector<Complex> spherical_harmonics(int lmax, double theta, double phi);

class MultipoleMoments {
 public:
  MultipoleMoments(SpinNumber spin, std::vector<Complex> values);

  SpinNumber spin() const noexcept { return spin_; }
  int max_rank() const noexcept { return spin_.two_i(); }
  Complex at(int l, int m) const;
  const std::vector<Complex>& values() const noexcept { return values_; }
  // sum |rho_lm|^2
  double squared_norm() const;

 private:
  SpinNumber spin_;
  std::vector<Complex> values_;
};

MultipoleMoments multipole_moments(const DensityMatrix& rho, const TensorBasis& basis);

// Throws NumericalError if the imaginary residue exceeds 1e-10.
double wigner_at(const MultipoleMoments& moments, double theta, double phi);

struct WignerGrid {
  int n_theta = 0;
  int n_phi = 0;
  std::vector<double> theta;   // j * pi / (n_theta - 1)
  std::vector<double> phi;     // k * 2 pi / n_phi
  std::vector<double> values;  // row-major, theta-major
  // sum W sin(theta) dtheta dphi
  double quadrature_norm = 0.0;

  double at(int j, int k) const { return values[static_cast<std::size_t>(j * n_phi + k)]; }
};

// Data-parallel over theta rows (OpenMP). The normalization is enforced to
// 1e-3 + dtheta^2 when the grid resolves every harmonic (n_phi > 4I,
// n_theta >= 91).
WignerGrid wigner_grid(const DensityMatrix& rho, int n_theta, int n_phi);

// Serial node-by-node evaluation through wigner_at.
WignerGrid wigner_grid_reference(const DensityMatrix& rho, int n_theta, int n_phi);

}  // namespace quadspin
