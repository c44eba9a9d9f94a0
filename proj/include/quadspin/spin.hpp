#pragma once

// Single-spin operator algebra. Matrices are expressed in the Zeeman basis
// ordered |I,I>, |I,I-1>, ..., |I,-I> (descending m). hbar = 1.

#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace quadspin {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Spin quantum number stored as the integer 2I.
class SpinNumber {
 public:
  explicit SpinNumber(int two_i);

  // Accepts "3/2", "7/2", "1", "2" ...
  static SpinNumber parse(std::string_view text);

  int two_i() const noexcept { return two_i_; }
  int dimension() const noexcept { return two_i_ + 1; }
  double value() const noexcept { return 0.5 * two_i_; }
  // m value of basis row `index` (index 0 is m = I).
  double m_of(int index) const noexcept { return value() - index; }
  std::string to_string() const;

  friend bool operator==(SpinNumber a, SpinNumber b) { return a.two_i_ == b.two_i_; }

 private:
  int two_i_;
};

// d x d complex matrix tagged with the spin it acts on.
class Operator {
 public:
  Operator(SpinNumber spin, Matrix entries);

  static Operator zero(SpinNumber spin);
  static Operator identity(SpinNumber spin);

  SpinNumber spin() const noexcept { return spin_; }
  const Matrix& matrix() const noexcept { return entries_; }
  int dimension() const noexcept { return spin_.dimension(); }

  Operator adjoint() const;
  bool is_hermitian(double tol = 1e-10) const;
  // Largest |entry| of (A - A^dagger).
  double hermiticity_residual() const;

  Operator& operator+=(const Operator& rhs);
  Operator& operator-=(const Operator& rhs);
  Operator& operator*=(Complex s);

 private:
  SpinNumber spin_;
  Matrix entries_;
};

Operator operator+(Operator lhs, const Operator& rhs);
Operator operator-(Operator lhs, const Operator& rhs);
Operator operator*(const Operator& lhs, const Operator& rhs);
Operator operator*(Complex s, Operator op);
Operator operator*(double s, Operator op);
Operator commutator(const Operator& a, const Operator& b);
Operator anticommutator(const Operator& a, const Operator& b);
Complex trace(const Operator& op);
// max |a_ij - b_ij|
double max_abs_diff(const Operator& a, const Operator& b);

void require_same_spin(SpinNumber a, SpinNumber b, std::string_view context);

struct StateTolerance {
  double hermitian = 1e-10;
  double trace = 1e-10;
  double psd = 1e-10;
  bool check_psd = true;
};

// Hermitian, unit-trace, positive semidefinite operator. Construction throws
// NumericalError when an invariant fails at the given tolerance.
class DensityMatrix {
 public:
  explicit DensityMatrix(Operator op, StateTolerance tol = {});

  static DensityMatrix maximally_mixed(SpinNumber spin);
  static DensityMatrix pure(SpinNumber spin, const Vector& amplitudes);

  const Operator& op() const noexcept { return op_; }
  const Matrix& matrix() const noexcept { return op_.matrix(); }
  SpinNumber spin() const noexcept { return op_.spin(); }
  const StateTolerance& tolerance() const noexcept { return tol_; }

  double purity() const;
  double min_eigenvalue() const;
  double trace_residual() const;

 private:
  Operator op_;
  StateTolerance tol_;
};

// Uhlmann fidelity; reduces to |<a|b>|^2 for pure states.
double fidelity(const DensityMatrix& a, const DensityMatrix& b);

struct SpinOperators {
  Operator ix, iy, iz, iplus, iminus, isq;
};

SpinOperators make_spin_operators(SpinNumber spin);

struct TensorElement {
  int l;
  int m;
  Operator op;
};

// Irreducible tensor basis T_{l,m}, l = 0..2I, m = -l..l, trace-orthonormal,
// stored with index tensor_index(l, m) = l*l + l + m.
class TensorBasis {
 public:
  explicit TensorBasis(SpinNumber spin);

  SpinNumber spin() const noexcept { return spin_; }
  int max_rank() const noexcept { return spin_.two_i(); }
  std::size_t size() const noexcept { return elements_.size(); }
  const TensorElement& at(int l, int m) const;
  const std::vector<TensorElement>& elements() const noexcept { return elements_; }

  static std::size_t index(int l, int m) noexcept {
    return static_cast<std::size_t>(l * l + l + m);
  }

 private:
  SpinNumber spin_;
  std::vector<TensorElement> elements_;
};

TensorBasis make_tensor_basis(SpinNumber spin);

// Rank-2 quadrupolar tensors Q(p), p = -2..2, with the eQ/(2I(2I-1)) prefactor
// stripped (it lives inside C_Q). Index with QuadrupoleTensors::at(p).
struct QuadrupoleTensors {
  std::vector<Operator> by_order;  // p + 2
  const Operator& at(int p) const { return by_order.at(static_cast<std::size_t>(p + 2)); }
};

QuadrupoleTensors make_quadrupole_tensors(SpinNumber spin);

struct CoherentStateParams {
  double theta = 0.0;  // [0, pi], measured so that theta = 0 is |I,-I>
  double phi = 0.0;    // [0, 2 pi]
};

Vector coherent_amplitudes(SpinNumber spin, CoherentStateParams params);
DensityMatrix coherent_state(SpinNumber spin, CoherentStateParams params);

// Tr(rho O).
Complex expectation(const DensityMatrix& rho, const Operator& o);
// Real part of Tr(rho O) for Hermitian O; throws if the imaginary residue
// exceeds 1e-10.
double mean(const DensityMatrix& rho, const Operator& o);
// <O^2> - <O>^2, clamped at 0 within -1e-10. O must be Hermitian.
double variance(const DensityMatrix& rho, const Operator& o);

}  // namespace quadspin
