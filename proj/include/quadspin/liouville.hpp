#pragma once

// Coherent Hamiltonians, the quadrupolar Redfield relaxation superoperator and
// the equilibrium state. Superoperators act on column-stacked operators:
// vec(X)[i + d*j] = X(i, j).

#include <string>

#include "quadspin/spin.hpp"

namespace quadspin {

struct RelaxationParams {
  double j0 = 0.0;       // s
  double j1 = 0.0;       // s
  double j2 = 0.0;       // s
  double c_q = 0.0;      // Hz^2
  double omega_q = 0.0;  // rad/s
  std::string label;

  // J(p omega) with the even-parity convention J(-p) = J(p).
  double spectral_density(int p) const;
  void validate() const;
};

class Superoperator {
 public:
  Superoperator(SpinNumber spin, Matrix matrix);

  SpinNumber spin() const noexcept { return spin_; }
  const Matrix& matrix() const noexcept { return matrix_; }
  Operator apply(const Operator& x) const;

 private:
  SpinNumber spin_;
  Matrix matrix_;
};

Vector vectorize(const Operator& x);
Operator unvectorize(SpinNumber spin, const Vector& v);

// Matrix of X -> [A, X] on vec(X).
Matrix commutator_superoperator(const Operator& a);

// -(omega_L - omega_rf) Iz + (omega_Q / 6)(3 Iz^2 - I^2)
Operator lab_hamiltonian(SpinNumber spin, double omega_l, double omega_rf, double omega_q);
// (omega_Q / 2) Iz^2
Operator twisting_hamiltonian(SpinNumber spin, double omega_q);

// R[X] = -C_Q sum_p (-1)^p J_|p| [[X, Q(p)], Q(-p)]. This is the trace-dual
// of the Heisenberg-side rate equation
//   d<T>/dt = -C_Q sum_p (-1)^p J_|p| <[Q(p), [Q(-p), T]]>.
Superoperator relaxation_superoperator(SpinNumber spin, const RelaxationParams& params);

// (Iz + I) / Tr(Iz + I)
DensityMatrix equilibrium_state(SpinNumber spin);

}  // namespace quadspin
