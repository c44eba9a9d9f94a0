#pragma once

#include <random>

#include "quadspin/liouville.hpp"
#include "quadspin/spin.hpp"

namespace testing {

using quadspin::Complex;
using quadspin::Matrix;

inline std::vector<quadspin::SpinNumber> all_spins() {
  std::vector<quadspin::SpinNumber> out;
  for (int n = 1; n <= 9; ++n) out.emplace_back(n);
  return out;
}

inline Matrix random_complex(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

// Hermitian, unit trace, not necessarily positive.
inline quadspin::Operator random_hermitian_unit_trace(quadspin::SpinNumber s, std::mt19937_64& rng) {
  const int d = s.dimension();
  Matrix m = random_complex(d, rng);
  m = (m + m.adjoint()).eval() * 0.5;
  m -= Matrix::Identity(d, d) * ((m.trace() - 1.0) / static_cast<double>(d));
  return quadspin::Operator(s, m);
}

// Random full-rank density matrix G G^dagger / Tr.
inline quadspin::DensityMatrix random_state(quadspin::SpinNumber s, std::mt19937_64& rng) {
  const Matrix g = random_complex(s.dimension(), rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace();
  rho = (rho + rho.adjoint()).eval() * 0.5;
  return quadspin::DensityMatrix(quadspin::Operator(s, rho));
}

inline quadspin::DensityMatrix random_pure(quadspin::SpinNumber s, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  quadspin::Vector v(s.dimension());
  for (int i = 0; i < v.size(); ++i) v(i) = Complex(g(rng), g(rng));
  return quadspin::DensityMatrix::pure(s, v.normalized());
}

// Classical RK4 on dy/dt = f(y), fixed step.
template <class F>
quadspin::Vector rk4(F&& f, quadspin::Vector y, double t, int steps) {
  const double h = t / steps;
  for (int i = 0; i < steps; ++i) {
    const quadspin::Vector k1 = f(y);
    const quadspin::Vector k2 = f(y + 0.5 * h * k1);
    const quadspin::Vector k3 = f(y + 0.5 * h * k2);
    const quadspin::Vector k4 = f(y + h * k3);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return y;
}

inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace testing
