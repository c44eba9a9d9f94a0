#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "quadspin/config.hpp"
#include "quadspin/error.hpp"
#include "quadspin/observables.hpp"
#include "quadspin/propagate.hpp"
#include "quadspin/runner.hpp"
#include "quadspin/wigner.hpp"

using namespace quadspin;
using std::numbers::pi;

namespace {

struct Peak {
  int j = 0;
  int k = 0;
  double value = -1e300;
};

Peak argmax(const WignerGrid& g) {
  Peak p;
  for (int j = 0; j < g.n_theta; ++j)
    for (int k = 0; k < g.n_phi; ++k)
      if (g.at(j, k) > p.value) p = {j, k, g.at(j, k)};
  return p;
}

Eigen::Vector3d direction(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

double great_circle(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  return std::acos(std::clamp(a.dot(b), -1.0, 1.0));
}

DensityMatrix cat_state(SpinNumber spin) {
  const auto gen = build_generator(twisting_hamiltonian(spin, 1.0), std::nullopt, std::nullopt);
  return propagate(coherent_state(spin, {pi / 2, 0.0}), gen, pi);
}

}  // namespace

TEST_CASE("spherical harmonics match the standard library up to l = 7") {
  for (double theta : {0.0, 0.1, 0.7, pi / 2, 2.3, pi}) {
    for (double phi : {0.0, 0.4, 3.0, 5.9}) {
      const auto y = spherical_harmonics(7, theta, phi);
      REQUIRE(y.size() == 64);
      for (int l = 0; l <= 7; ++l) {
        for (int m = -l; m <= l; ++m) {
          const int am = std::abs(m);
          Complex want = std::sph_legendre(l, am, theta) * std::exp(Complex(0.0, am * phi));
          if (m < 0) want = ((am % 2) ? -1.0 : 1.0) * std::conj(want);
          CHECK(std::abs(y[static_cast<std::size_t>(l * l + l + m)] - want) < 1e-12);
        }
      }
    }
  }
  CHECK_THROWS_AS(spherical_harmonics(-1, 0.0, 0.0), ValidationError);
}

TEST_CASE("multipole moments") {
  for (auto spin : testing::all_spins()) {
    const auto basis = make_tensor_basis(spin);
    const auto mm = multipole_moments(DensityMatrix::maximally_mixed(spin), basis);
    CHECK(std::abs(mm.at(0, 0) - 1.0 / std::sqrt(spin.dimension())) < 1e-15);
    for (const auto& t : basis.elements()) {
      if (t.l > 0) CHECK(std::abs(mm.at(t.l, t.m)) < 1e-15);
    }
    const auto eq = multipole_moments(equilibrium_state(spin), basis);
    for (const auto& t : basis.elements()) {
      if (t.m != 0) CHECK(std::abs(eq.at(t.l, t.m)) < 1e-15);
    }
  }
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const SpinNumber spin(1 + trial % 9);
    const auto basis = make_tensor_basis(spin);
    const auto pure = testing::random_pure(spin, rng);
    CHECK(std::abs(multipole_moments(pure, basis).squared_norm() - 1.0) < 1e-12);
    const auto mixed = testing::random_state(spin, rng);
    const auto mm = multipole_moments(mixed, basis);
    CHECK(std::abs(mm.squared_norm() - mixed.purity()) < 1e-12);
    // Hermiticity in moment space: rho_{l,-m} = (-1)^m conj(rho_lm).
    for (const auto& t : basis.elements()) {
      const double sign = (t.m % 2 == 0) ? 1.0 : -1.0;
      CHECK(std::abs(mm.at(t.l, -t.m) - sign * std::conj(mm.at(t.l, t.m))) < 1e-14);
    }
  }
  CHECK_THROWS_AS(multipole_moments(DensityMatrix::maximally_mixed(SpinNumber(3)), make_tensor_basis(SpinNumber(5))),
                  ValidationError);
}

TEST_CASE("maximally mixed state is flat at 1/(4 pi)") {
  for (auto spin : testing::all_spins()) {
    const auto g = wigner_grid(DensityMatrix::maximally_mixed(spin), 181, 361);
    for (double v : g.values) CHECK(std::abs(v - 1.0 / (4.0 * pi)) < 1e-14);
    CHECK(std::abs(g.quadrature_norm - 1.0) < 1e-3);
  }
}

TEST_CASE("normalization, reality, linearity, and parallel vs serial grids") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 8; ++trial) {
    const SpinNumber spin(2 + trial);
    const auto a = testing::random_state(spin, rng);
    const auto b = testing::random_pure(spin, rng);
    const auto ga = wigner_grid(a, 181, 361);
    const auto gb = wigner_grid(b, 181, 361);
    CHECK(std::abs(ga.quadrature_norm - 1.0) <= 1e-3);
    CHECK(std::abs(gb.quadrature_norm - 1.0) <= 1e-3);

    const double w = 0.3;
    const DensityMatrix mix(w * a.op() + (1.0 - w) * b.op());
    const auto gm = wigner_grid(mix, 181, 361);
    double lin = 0.0;
    for (std::size_t i = 0; i < gm.values.size(); ++i) {
      lin = std::max(lin, std::abs(gm.values[i] - (w * ga.values[i] + (1.0 - w) * gb.values[i])));
    }
    CHECK(lin < 1e-12);

    const auto ref = wigner_grid_reference(a, 37, 73);
    const auto par = wigner_grid(a, 37, 73);
    double diff = 0.0;
    for (std::size_t i = 0; i < ref.values.size(); ++i) diff = std::max(diff, std::abs(ref.values[i] - par.values[i]));
    CHECK(diff < 1e-13);
  }
  CHECK_THROWS_AS(wigner_grid(DensityMatrix::maximally_mixed(SpinNumber(3)), 1, 10), ValidationError);
  CHECK_THROWS_AS(wigner_grid(DensityMatrix::maximally_mixed(SpinNumber(3)), 10, 1), ValidationError);
}

TEST_CASE("grid axes") {
  const auto g = wigner_grid(DensityMatrix::maximally_mixed(SpinNumber(3)), 181, 361);
  CHECK(g.theta.front() == 0.0);
  CHECK(g.theta.back() == doctest::Approx(pi));
  CHECK(g.phi.front() == 0.0);
  CHECK(g.phi.back() < 2.0 * pi);
  CHECK(g.values.size() == 181u * 361u);
}

TEST_CASE("coherent states peak at their mean-spin direction") {
  // The coherent-state polar angle is measured from -z, so the mean spin
  // points at (pi - theta0, phi0) in standard spherical coordinates.
  const std::pair<double, double> dirs[] = {{pi / 2, 0.0},         {pi / 2, pi / 2},     {pi / 2, pi},
                                            {pi / 4, 1.0},         {3 * pi / 4, 4.0},    {pi / 3, 5.5},
                                            {2 * pi / 3, 2.5},     {0.2, 3.3}};
  for (int n : {3, 7}) {
    const SpinNumber spin(n);
    for (const auto& [theta0, phi0] : dirs) {
      CAPTURE(theta0);
      CAPTURE(phi0);
      const auto g = wigner_grid(coherent_state(spin, {theta0, phi0}), 181, 361);
      const auto p = argmax(g);
      const double cell = pi / 180.0;
      const double off = great_circle(direction(g.theta[static_cast<std::size_t>(p.j)], g.phi[static_cast<std::size_t>(p.k)]),
                                      direction(pi - theta0, phi0));
      CHECK(off <= cell * std::sqrt(2.0));
    }
  }
}

TEST_CASE("cat state shows two antipodal equatorial lobes") {
  for (int n : {3, 5, 7}) {
    const SpinNumber spin(n);
    CAPTURE(spin.to_string());
    const auto g = wigner_grid(cat_state(spin), 181, 361);
    const auto first = argmax(g);
    const Eigen::Vector3d d1 = direction(g.theta[static_cast<std::size_t>(first.j)], g.phi[static_cast<std::size_t>(first.k)]);
    Peak second;
    for (int j = 0; j < g.n_theta; ++j) {
      for (int k = 0; k < g.n_phi; ++k) {
        const Eigen::Vector3d d = direction(g.theta[static_cast<std::size_t>(j)], g.phi[static_cast<std::size_t>(k)]);
        if (great_circle(d, d1) > pi / 2 && g.at(j, k) > second.value) second = {j, k, g.at(j, k)};
      }
    }
    const Eigen::Vector3d d2 = direction(g.theta[static_cast<std::size_t>(second.j)], g.phi[static_cast<std::size_t>(second.k)]);
    const double cell = pi / 180.0;
    CHECK(std::abs(g.theta[static_cast<std::size_t>(first.j)] - pi / 2) <= cell);
    CHECK(std::abs(g.theta[static_cast<std::size_t>(second.j)] - pi / 2) <= cell);
    CHECK(great_circle(d1, -d2) <= cell);
    CHECK(std::abs(first.value - second.value) < 1e-6);
  }
}

TEST_CASE("equilibrium Wigner function is axially symmetric") {
  for (auto spin : testing::all_spins()) {
    const auto g = wigner_grid(equilibrium_state(spin), 181, 361);
    double worst = 0.0;
    for (int j = 0; j < g.n_theta; ++j) {
      double lo = 1e300, hi = -1e300;
      for (int k = 0; k < g.n_phi; ++k) {
        lo = std::min(lo, g.at(j, k));
        hi = std::max(hi, g.at(j, k));
      }
      worst = std::max(worst, hi - lo);
    }
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("squeezed-state ridge follows the squeezing angle") {
  for (Preset p : {Preset::na23, Preset::cs133}) {
    CAPTURE(preset_name(p));
    auto cfg = make_preset_config(p);
    cfg.grid.windows = {1};
    const auto traj = run_trajectory(cfg);
    const auto minima = detect_minima(traj.records, Column::xi);
    REQUIRE_FALSE(minima.empty());
    const auto& rho = traj.states[minima.front().index];
    const auto sq = squeezing(rho);
    REQUIRE(sq.xi < 1.0);

    const auto g = wigner_grid(rho, 181, 361);
    const double dt = g.theta[1] - g.theta[0];
    const double dp = g.phi[1] - g.phi[0];
    double myy = 0.0, mzz = 0.0, myz = 0.0;
    for (int j = 0; j < g.n_theta; ++j) {
      for (int k = 0; k < g.n_phi; ++k) {
        const auto d = direction(g.theta[static_cast<std::size_t>(j)], g.phi[static_cast<std::size_t>(k)]);
        const double w = g.at(j, k) * std::sin(g.theta[static_cast<std::size_t>(j)]) * dt * dp;
        myy += w * d.y() * d.y();
        mzz += w * d.z() * d.z();
        myz += w * d.y() * d.z();
      }
    }
    // Narrowest axis u = (cos phi, -sin phi) in the (y, z) plane, i.e. the
    // operator Iy cos phi - Iz sin phi.
    const double phi_narrow = 0.5 * std::atan2(-2.0 * myz, myy - mzz) + pi / 2;
    const double expected = sq.a > 0 ? sq.alpha : sq.alpha + pi / 2;
    double gap = std::fmod(phi_narrow - expected, pi);
    if (gap < 0) gap += pi;
    gap = std::min(gap, pi - gap);
    CHECK(gap * 180.0 / pi <= 3.0);
  }
}
