#include "quadspin/liouville.hpp"

#include <cmath>
#include <utility>

#include "quadspin/error.hpp"

namespace quadspin {

double RelaxationParams::spectral_density(int p) const {
  switch (std::abs(p)) {
    case 0:
      return j0;
    case 1:
      return j1;
    case 2:
      return j2;
    default:
      throw ValidationError("spectral density order must satisfy |p| <= 2");
  }
}

void RelaxationParams::validate() const {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(j0) || !positive(j1) || !positive(j2)) {
    throw ValidationError("spectral densities j0, j1, j2 must be positive");
  }
  if (!std::isfinite(c_q) || c_q < 0.0) throw ValidationError("c_q must be non-negative");
  if (!positive(omega_q)) throw ValidationError("omega_q must be positive");
}

Superoperator::Superoperator(SpinNumber spin, Matrix matrix)
    : spin_(spin), matrix_(std::move(matrix)) {
  const int n = spin.dimension() * spin.dimension();
  if (matrix_.rows() != n || matrix_.cols() != n) {
    throw ValidationError("superoperator shape does not match spin " + spin.to_string());
  }
}

Operator Superoperator::apply(const Operator& x) const {
  require_same_spin(spin_, x.spin(), "superoperator application");
  return unvectorize(spin_, matrix_ * vectorize(x));
}

Vector vectorize(const Operator& x) {
  const Matrix& m = x.matrix();
  return Eigen::Map<const Vector>(m.data(), m.size());
}

Operator unvectorize(SpinNumber spin, const Vector& v) {
  const int d = spin.dimension();
  if (v.size() != d * d) throw ValidationError("vector length does not match spin " + spin.to_string());
  return Operator(spin, Eigen::Map<const Matrix>(v.data(), d, d));
}

Matrix commutator_superoperator(const Operator& a) {
  // vec(A X B) = (B^T kron A) vec(X); [A, X] = A X I - I X A.
  const int d = a.dimension();
  const Matrix& m = a.matrix();
  Matrix out = Matrix::Zero(d * d, d * d);
  for (int j = 0; j < d; ++j) {
    out.block(j * d, j * d, d, d) += m;
    for (int l = 0; l < d; ++l) {
      const Complex coeff = m(l, j);  // (A^T)(j, l)
      if (coeff == Complex{}) continue;
      out.block(j * d, l * d, d, d).diagonal().array() -= coeff;
    }
  }
  return out;
}

Operator lab_hamiltonian(SpinNumber spin, double omega_l, double omega_rf, double omega_q) {
  const auto ops = make_spin_operators(spin);
  return (-(omega_l - omega_rf)) * ops.iz + (omega_q / 6.0) * (3.0 * (ops.iz * ops.iz) - ops.isq);
}

Operator twisting_hamiltonian(SpinNumber spin, double omega_q) {
  if (!(omega_q > 0.0) || !std::isfinite(omega_q)) {
    throw ValidationError("omega_q must be positive");
  }
  const auto ops = make_spin_operators(spin);
  return (0.5 * omega_q) * (ops.iz * ops.iz);
}

Superoperator relaxation_superoperator(SpinNumber spin, const RelaxationParams& params) {
  params.validate();
  const auto q = make_quadrupole_tensors(spin);
  const int n = spin.dimension() * spin.dimension();
  Matrix total = Matrix::Zero(n, n);
  for (int p = -2; p <= 2; ++p) {
    // [[X, Qp], Q-p] = [Q-p, [Qp, X]]
    const double weight = ((p % 2 == 0) ? 1.0 : -1.0) * params.spectral_density(p);
    total += weight * (commutator_superoperator(q.at(-p)) * commutator_superoperator(q.at(p)));
  }
  return Superoperator(spin, -params.c_q * total);
}

DensityMatrix equilibrium_state(SpinNumber spin) {
  const int d = spin.dimension();
  const int n = spin.two_i();
  // (I + m) = n - k for row k; sum over rows = n (n + 1) / 2.
  const double norm = 0.5 * n * (n + 1);
  Matrix rho = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k) rho(k, k) = (n - k) / norm;
  return DensityMatrix(Operator(spin, rho));
}

}  // namespace quadspin
