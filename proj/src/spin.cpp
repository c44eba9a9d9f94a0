#include "quadspin/spin.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <utility>

#include "quadspin/error.hpp"

namespace quadspin {

namespace {

Eigen::VectorXd hermitian_eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace

// ---------------------------------------------------------------- SpinNumber

SpinNumber::SpinNumber(int two_i) : two_i_(two_i) {
  if (two_i < 1) {
    throw ValidationError("spin must be at least 1/2 (got 2I = " + std::to_string(two_i) + ")");
  }
}

SpinNumber SpinNumber::parse(std::string_view text) {
  auto to_int = [&](std::string_view s) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
      throw ValidationError("cannot parse spin '" + std::string(text) + "'");
    }
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return SpinNumber(2 * to_int(text));
  if (to_int(text.substr(slash + 1)) != 2) {
    throw ValidationError("spin denominator must be 2 in '" + std::string(text) + "'");
  }
  return SpinNumber(to_int(text.substr(0, slash)));
}

std::string SpinNumber::to_string() const {
  if (two_i_ % 2 == 0) return std::to_string(two_i_ / 2);
  return std::to_string(two_i_) + "/2";
}

// ------------------------------------------------------------------ Operator

Operator::Operator(SpinNumber spin, Matrix entries) : spin_(spin), entries_(std::move(entries)) {
  if (entries_.rows() != spin.dimension() || entries_.cols() != spin.dimension()) {
    throw ValidationError("operator shape " + std::to_string(entries_.rows()) + "x" +
                          std::to_string(entries_.cols()) + " does not match spin " +
                          spin.to_string());
  }
}

Operator Operator::zero(SpinNumber spin) {
  return Operator(spin, Matrix::Zero(spin.dimension(), spin.dimension()));
}

Operator Operator::identity(SpinNumber spin) {
  return Operator(spin, Matrix::Identity(spin.dimension(), spin.dimension()));
}

Operator Operator::adjoint() const { return Operator(spin_, entries_.adjoint()); }

double Operator::hermiticity_residual() const {
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
}

bool Operator::is_hermitian(double tol) const { return hermiticity_residual() <= tol; }

Operator& Operator::operator+=(const Operator& rhs) {
  require_same_spin(spin_, rhs.spin_, "operator addition");
  entries_ += rhs.entries_;
  return *this;
}

Operator& Operator::operator-=(const Operator& rhs) {
  require_same_spin(spin_, rhs.spin_, "operator subtraction");
  entries_ -= rhs.entries_;
  return *this;
}

Operator& Operator::operator*=(Complex s) {
  entries_ *= s;
  return *this;
}

Operator operator+(Operator lhs, const Operator& rhs) { return lhs += rhs; }
Operator operator-(Operator lhs, const Operator& rhs) { return lhs -= rhs; }

Operator operator*(const Operator& lhs, const Operator& rhs) {
  require_same_spin(lhs.spin(), rhs.spin(), "operator product");
  return Operator(lhs.spin(), lhs.matrix() * rhs.matrix());
}

Operator operator*(Complex s, Operator op) { return op *= s; }
Operator operator*(double s, Operator op) { return op *= Complex(s, 0.0); }

Operator commutator(const Operator& a, const Operator& b) { return a * b - b * a; }
Operator anticommutator(const Operator& a, const Operator& b) { return a * b + b * a; }

Complex trace(const Operator& op) { return op.matrix().trace(); }

double max_abs_diff(const Operator& a, const Operator& b) {
  require_same_spin(a.spin(), b.spin(), "operator comparison");
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

void require_same_spin(SpinNumber a, SpinNumber b, std::string_view context) {
  if (!(a == b)) {
    throw ValidationError(std::string(context) + ": spin mismatch (" + a.to_string() + " vs " +
                          b.to_string() + ")");
  }
}

// ------------------------------------------------------------- DensityMatrix

DensityMatrix::DensityMatrix(Operator op, StateTolerance tol) : op_(std::move(op)), tol_(tol) {
  const double herm = op_.hermiticity_residual();
  if (herm > tol_.hermitian) {
    throw NumericalError("density matrix is not Hermitian (residual " + std::to_string(herm) + ")",
                         herm);
  }
  const double tr = trace_residual();
  if (tr > tol_.trace) {
    throw NumericalError("density matrix trace deviates from 1 by " + std::to_string(tr), tr);
  }
  if (tol_.check_psd) {
    const double lowest = min_eigenvalue();
    if (lowest < -tol_.psd) {
      throw NumericalError("density matrix has negative eigenvalue " + std::to_string(lowest),
                           lowest);
    }
  }
}

DensityMatrix DensityMatrix::maximally_mixed(SpinNumber spin) {
  return DensityMatrix((1.0 / spin.dimension()) * Operator::identity(spin));
}

DensityMatrix DensityMatrix::pure(SpinNumber spin, const Vector& amplitudes) {
  const Vector psi = amplitudes / amplitudes.norm();
  return DensityMatrix(Operator(spin, psi * psi.adjoint()));
}

double DensityMatrix::purity() const {
  return (op_.matrix() * op_.matrix()).trace().real();
}

double DensityMatrix::min_eigenvalue() const { return hermitian_eigenvalues(op_.matrix()).minCoeff(); }

double DensityMatrix::trace_residual() const { return std::abs(trace(op_) - Complex(1.0, 0.0)); }

double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  require_same_spin(a.spin(), b.spin(), "fidelity");
  // Eigenvalues at roundoff level would otherwise contribute O(sqrt(eps)) each.
  constexpr double kCut = 1e-14;
  const Eigen::SelfAdjointEigenSolver<Matrix> ea(a.matrix());
  const Eigen::SelfAdjointEigenSolver<Matrix> eb(b.matrix());
  const auto rank = [&](const Eigen::VectorXd& w) { return (w.array() > kCut * w.maxCoeff()).count(); };
  const bool swap = rank(eb.eigenvalues()) < rank(ea.eigenvalues());
  const auto& es = swap ? eb : ea;
  const Matrix& other = swap ? a.matrix() : b.matrix();

  // Restrict sqrt(rho) sigma sqrt(rho) to the support of rho.
  const Eigen::VectorXd& w = es.eigenvalues();
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (w(i) > kCut * w.maxCoeff()) keep.push_back(i);
  }
  const auto r = static_cast<Eigen::Index>(keep.size());
  Matrix basis(w.size(), r);
  for (Eigen::Index c = 0; c < r; ++c) basis.col(c) = es.eigenvectors().col(keep[static_cast<std::size_t>(c)]) *
                                                       std::sqrt(w(keep[static_cast<std::size_t>(c)]));
  Matrix inner = basis.adjoint() * other * basis;
  inner = (0.5 * (inner + inner.adjoint())).eval();
  const Eigen::VectorXd mu = Eigen::SelfAdjointEigenSolver<Matrix>(inner, Eigen::EigenvaluesOnly).eigenvalues();
  const double top = std::max(mu.maxCoeff(), 0.0);
  double s = 0.0;
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    if (mu(i) > kCut * top) s += std::sqrt(mu(i));
  }
  return s * s;
}

// ------------------------------------------------------------ spin operators

SpinOperators make_spin_operators(SpinNumber spin) {
  const int d = spin.dimension();
  const double i_val = spin.value();
  Matrix iz = Matrix::Zero(d, d);
  Matrix ip = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    iz(k, k) = spin.m_of(k);
  }
  // <m+1| I+ |m> sits at row k-1, column k.
  for (int k = 1; k < d; ++k) {
    const double m = spin.m_of(k);
    ip(k - 1, k) = std::sqrt(i_val * (i_val + 1.0) - m * (m + 1.0));
  }
  const Matrix im = ip.adjoint();
  const Complex two_i_unit(0.0, 2.0);
  return SpinOperators{
      Operator(spin, 0.5 * (ip + im)),
      Operator(spin, (ip - im) / two_i_unit),
      Operator(spin, iz),
      Operator(spin, ip),
      Operator(spin, im),
      Operator(spin, i_val * (i_val + 1.0) * Matrix::Identity(d, d)),
  };
}

// --------------------------------------------------------------- tensor basis

TensorBasis::TensorBasis(SpinNumber spin) : spin_(spin) {
  const auto ops = make_spin_operators(spin);
  const int top = spin.two_i();
  elements_.reserve(static_cast<std::size_t>((top + 1) * (top + 1)));
  for (int l = 0; l <= top; ++l) {
    for (int m = -l; m <= l; ++m) elements_.push_back({l, m, Operator::zero(spin)});
  }

  auto normalized = [](Matrix x) { return Matrix(x / std::sqrt(x.squaredNorm())); };
  for (int l = 0; l <= top; ++l) {
    Matrix current = Matrix::Identity(spin.dimension(), spin.dimension());
    for (int k = 0; k < l; ++k) current = ops.iplus.matrix() * current;
    current = normalized(current);
    std::vector<Matrix> family(static_cast<std::size_t>(2 * l + 1));
    family[static_cast<std::size_t>(2 * l)] = current;
    for (int m = l; m > -l; --m) {
      // [I-, T_{l,m}] = sqrt((l+m)(l-m+1)) T_{l,m-1}
      current = ops.iminus.matrix() * current - current * ops.iminus.matrix();
      current = normalized(current);
      family[static_cast<std::size_t>(m - 1 + l)] = current;
    }
    // Sign convention: <I,I| T_{l,0} |I,I> > 0, so T_{l,m} transforms like the
    // Condon-Shortley Y_{l,m}.
    const double sign = family[static_cast<std::size_t>(l)](0, 0).real() < 0.0 ? -1.0 : 1.0;
    for (int m = -l; m <= l; ++m) {
      elements_[index(l, m)].op = Operator(spin, sign * family[static_cast<std::size_t>(m + l)]);
    }
  }
}

const TensorElement& TensorBasis::at(int l, int m) const {
  if (l < 0 || l > max_rank() || m < -l || m > l) {
    throw ValidationError("tensor index (" + std::to_string(l) + "," + std::to_string(m) +
                          ") out of range");
  }
  return elements_[index(l, m)];
}

TensorBasis make_tensor_basis(SpinNumber spin) { return TensorBasis(spin); }

// ---------------------------------------------------------- quadrupole tensors

QuadrupoleTensors make_quadrupole_tensors(SpinNumber spin) {
  if (spin.two_i() < 2) {
    throw ValidationError("no quadrupole coupling for spin 1/2");
  }
  const auto ops = make_spin_operators(spin);
  const double c = std::sqrt(6.0) / 2.0;
  const Operator& iz = ops.iz;
  const Operator& ip = ops.iplus;
  const Operator& im = ops.iminus;
  QuadrupoleTensors q;
  q.by_order = {
      c * (im * im),
      c * (iz * im + im * iz),
      3.0 * (iz * iz) - ops.isq,
      -c * (iz * ip + ip * iz),
      c * (ip * ip),
  };
  return q;
}

// ------------------------------------------------------------ coherent state

Vector coherent_amplitudes(SpinNumber spin, CoherentStateParams params) {
  if (!std::isfinite(params.theta) || !std::isfinite(params.phi) || params.theta < 0.0 ||
      params.theta > std::numbers::pi || params.phi < 0.0 || params.phi > 2.0 * std::numbers::pi) {
    throw ValidationError("coherent state angles out of range: theta in [0, pi], phi in [0, 2 pi]");
  }
  const int d = spin.dimension();
  const int n = spin.two_i();
  Vector amps = Vector::Zero(d);
  if (params.theta == std::numbers::pi) {
    amps(0) = 1.0;  // zeta -> infinity limit: |I, +I>
    return amps;
  }
  // zeta^{I+m} / (1+|zeta|^2)^I = sin^{I+m}(theta/2) cos^{I-m}(theta/2) e^{-i (I+m) phi}
  const double s = std::sin(0.5 * params.theta);
  const double c = std::cos(0.5 * params.theta);
  for (int k = 0; k < d; ++k) {
    const int up = n - k;  // I + m
    const int down = k;    // I - m
    const double magnitude =
        std::exp(0.5 * log_binomial(n, up)) * std::pow(s, up) * std::pow(c, down);
    amps(k) = std::polar(magnitude, -params.phi * up);
  }
  return amps;
}

DensityMatrix coherent_state(SpinNumber spin, CoherentStateParams params) {
  const Vector psi = coherent_amplitudes(spin, params);
  return DensityMatrix(Operator(spin, psi * psi.adjoint()));
}

// ------------------------------------------------------------- expectations

Complex expectation(const DensityMatrix& rho, const Operator& o) {
  require_same_spin(rho.spin(), o.spin(), "expectation");
  // Tr(rho O) without forming the product.
  return (rho.matrix().transpose().cwiseProduct(o.matrix())).sum();
}

double mean(const DensityMatrix& rho, const Operator& o) {
  const Complex value = expectation(rho, o);
  if (o.is_hermitian(1e-10) && std::abs(value.imag()) > 1e-10) {
    throw NumericalError("expectation of Hermitian operator has imaginary part " +
                             std::to_string(value.imag()),
                         value.imag());
  }
  return value.real();
}

double variance(const DensityMatrix& rho, const Operator& o) {
  if (!o.is_hermitian(1e-10)) {
    throw ValidationError("variance requires a Hermitian operator");
  }
  const double first = mean(rho, o);
  const double second = mean(rho, o * o);
  const double var = second - first * first;
  if (var < -1e-10) {
    throw NumericalError("negative variance " + std::to_string(var), var);
  }
  return var < 0.0 ? 0.0 : var;
}

}  // namespace quadspin
