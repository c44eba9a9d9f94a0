#include "quadspin/wigner.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "quadspin/error.hpp"

namespace quadspin {

namespace {

constexpr double kImagResidue = 1e-10;

std::size_t lm_index(int l, int m) { return static_cast<std::size_t>(l * l + l + m); }

// Normalized associated Legendre functions Pbar_lm(cos theta), m >= 0, with
// Y_lm = Pbar_lm e^{i m phi}. Indexed l*(l+1)/2 + m.
std::vector<double> legendre_table(int lmax, double theta) {
  const double x = std::cos(theta);
  const double s = std::sin(theta);
  std::vector<double> p(static_cast<std::size_t>((lmax + 1) * (lmax + 2) / 2), 0.0);
  auto idx = [](int l, int m) { return static_cast<std::size_t>(l * (l + 1) / 2 + m); };

  double pmm = std::sqrt(1.0 / (4.0 * std::numbers::pi));
  for (int m = 0; m <= lmax; ++m) {
    if (m > 0) pmm *= -std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s;
    p[idx(m, m)] = pmm;
    if (m + 1 <= lmax) p[idx(m + 1, m)] = std::sqrt(2.0 * m + 3.0) * x * pmm;
    for (int l = m + 2; l <= lmax; ++l) {
      const double a = std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l * l) - m * m));
      const double b = std::sqrt((static_cast<double>((l - 1) * (l - 1)) - m * m) /
                                 (4.0 * (l - 1) * (l - 1) - 1.0));
      p[idx(l, m)] = a * (x * p[idx(l - 1, m)] - b * p[idx(l - 2, m)]);
    }
  }
  return p;
}

double row_sum(const MultipoleMoments& moments, const std::vector<double>& legendre,
               const std::vector<Complex>& phases, double* imag_out) {
  // sum_l [ rho_l0 P_l0 + sum_{m>0} P_lm (rho_lm e^{im phi} + rho_l,-m (-1)^m e^{-im phi}) ]
  Complex total{};
  const int lmax = moments.max_rank();
  for (int l = 0; l <= lmax; ++l) {
    const auto base = static_cast<std::size_t>(l * (l + 1) / 2);
    total += moments.at(l, 0) * legendre[base];
    for (int m = 1; m <= l; ++m) {
      const Complex e = phases[static_cast<std::size_t>(m)];
      const double sign = (m % 2 == 0) ? 1.0 : -1.0;
      total += legendre[base + static_cast<std::size_t>(m)] *
               (moments.at(l, m) * e + sign * moments.at(l, -m) * std::conj(e));
    }
  }
  if (imag_out) *imag_out = total.imag();
  return total.real();
}

WignerGrid make_axes(int n_theta, int n_phi) {
  if (n_theta < 2 || n_phi < 2) {
    throw ValidationError("Wigner grid needs n_theta >= 2 and n_phi >= 2");
  }
  WignerGrid g;
  g.n_theta = n_theta;
  g.n_phi = n_phi;
  for (int j = 0; j < n_theta; ++j) g.theta.push_back(j * std::numbers::pi / (n_theta - 1));
  for (int k = 0; k < n_phi; ++k) g.phi.push_back(k * 2.0 * std::numbers::pi / n_phi);
  g.values.assign(static_cast<std::size_t>(n_theta) * static_cast<std::size_t>(n_phi), 0.0);
  return g;
}

void finish_grid(WignerGrid& g, SpinNumber spin) {
  const double dtheta = std::numbers::pi / (g.n_theta - 1);
  const double dphi = 2.0 * std::numbers::pi / g.n_phi;
  double sum = 0.0;
  for (int j = 0; j < g.n_theta; ++j) {
    double row = 0.0;
    for (int k = 0; k < g.n_phi; ++k) row += g.at(j, k);
    sum += row * std::sin(g.theta[static_cast<std::size_t>(j)]);
  }
  g.quadrature_norm = sum * dtheta * dphi;
  const bool resolved = g.n_phi > 2 * spin.two_i() && g.n_theta >= 91;
  const double tol = 1e-3 + dtheta * dtheta;
  if (resolved && std::abs(g.quadrature_norm - 1.0) > tol) {
    throw NumericalError("Wigner grid normalization off by " + std::to_string(g.quadrature_norm - 1.0),
                         g.quadrature_norm - 1.0);
  }
}

}  // namespace

std::vector<Complex> spherical_harmonics(int lmax, double theta, double phi) {
  if (lmax < 0) throw ValidationError("lmax must be non-negative");
  const auto p = legendre_table(lmax, theta);
  std::vector<Complex> y(static_cast<std::size_t>((lmax + 1) * (lmax + 1)));
  for (int l = 0; l <= lmax; ++l) {
    for (int m = 0; m <= l; ++m) {
      const Complex v = p[static_cast<std::size_t>(l * (l + 1) / 2 + m)] * std::polar(1.0, m * phi);
      y[lm_index(l, m)] = v;
      if (m > 0) y[lm_index(l, -m)] = ((m % 2 == 0) ? 1.0 : -1.0) * std::conj(v);
    }
  }
  return y;
}

MultipoleMoments::MultipoleMoments(SpinNumber spin, std::vector<Complex> values)
    : spin_(spin), values_(std::move(values)) {
  const auto expected = static_cast<std::size_t>(spin.dimension() * spin.dimension());
  if (values_.size() != expected) throw ValidationError("multipole moment count does not match spin");
}

Complex MultipoleMoments::at(int l, int m) const { return values_[lm_index(l, m)]; }

double MultipoleMoments::squared_norm() const {
  double s = 0.0;
  for (const auto& v : values_) s += std::norm(v);
  return s;
}

MultipoleMoments multipole_moments(const DensityMatrix& rho, const TensorBasis& basis) {
  require_same_spin(rho.spin(), basis.spin(), "multipole_moments");
  std::vector<Complex> values(basis.size());
  for (const auto& el : basis.elements()) {
    // Tr(rho T^dagger) = sum_ij rho_ij conj(T_ij)
    values[TensorBasis::index(el.l, el.m)] = (rho.matrix().cwiseProduct(el.op.matrix().conjugate())).sum();
  }
  return MultipoleMoments(rho.spin(), std::move(values));
}

double wigner_at(const MultipoleMoments& moments, double theta, double phi) {
  const int lmax = moments.max_rank();
  const auto y = spherical_harmonics(lmax, theta, phi);
  Complex total{};
  for (int l = 0; l <= lmax; ++l) {
    for (int m = -l; m <= l; ++m) total += moments.at(l, m) * y[lm_index(l, m)];
  }
  total *= std::sqrt(moments.spin().dimension() / (4.0 * std::numbers::pi));
  if (std::abs(total.imag()) > kImagResidue) {
    throw NumericalError("Wigner function has imaginary residue " + std::to_string(total.imag()),
                         total.imag());
  }
  return total.real();
}

WignerGrid wigner_grid(const DensityMatrix& rho, int n_theta, int n_phi) {
  const SpinNumber spin = rho.spin();
  WignerGrid g = make_axes(n_theta, n_phi);
  const TensorBasis basis(spin);
  const MultipoleMoments moments = multipole_moments(rho, basis);
  const int lmax = spin.two_i();
  const double prefactor = std::sqrt(spin.dimension() / (4.0 * std::numbers::pi));

  std::vector<std::vector<Complex>> phases(static_cast<std::size_t>(n_phi));
  for (int k = 0; k < n_phi; ++k) {
    auto& row = phases[static_cast<std::size_t>(k)];
    for (int m = 0; m <= lmax; ++m) row.push_back(std::polar(1.0, m * g.phi[static_cast<std::size_t>(k)]));
  }

  double worst_imag = 0.0;
#pragma omp parallel for schedule(static) reduction(max : worst_imag)
  for (int j = 0; j < n_theta; ++j) {
    const auto legendre = legendre_table(lmax, g.theta[static_cast<std::size_t>(j)]);
    for (int k = 0; k < n_phi; ++k) {
      double imag = 0.0;
      const double w = row_sum(moments, legendre, phases[static_cast<std::size_t>(k)], &imag);
      g.values[static_cast<std::size_t>(j * n_phi + k)] = prefactor * w;
      worst_imag = std::max(worst_imag, std::abs(prefactor * imag));
    }
  }
  if (worst_imag > kImagResidue) {
    throw NumericalError("Wigner grid has imaginary residue " + std::to_string(worst_imag), worst_imag);
  }
  finish_grid(g, spin);
  return g;
}

WignerGrid wigner_grid_reference(const DensityMatrix& rho, int n_theta, int n_phi) {
  const SpinNumber spin = rho.spin();
  WignerGrid g = make_axes(n_theta, n_phi);
  const MultipoleMoments moments = multipole_moments(rho, TensorBasis(spin));
  for (int j = 0; j < n_theta; ++j) {
    for (int k = 0; k < n_phi; ++k) {
      g.values[static_cast<std::size_t>(j * n_phi + k)] =
          wigner_at(moments, g.theta[static_cast<std::size_t>(j)], g.phi[static_cast<std::size_t>(k)]);
    }
  }
  finish_grid(g, spin);
  return g;
}

}  // namespace quadspin
