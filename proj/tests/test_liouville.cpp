#include <doctest.h>

#include <numbers>

#include "helpers.hpp"
#include "quadspin/config.hpp"
#include "quadspin/error.hpp"
#include "quadspin/liouville.hpp"
#include "quadspin/propagate.hpp"

using namespace quadspin;
using testing::max_abs;

namespace {

RelaxationParams preset_params(Preset p) { return preset_table(p).to_params(std::string(preset_name(p))); }

// Rate of <T> computed literally from nested commutators, without vectorization.
Complex literal_rate(const DensityMatrix& rho, const Operator& t, const QuadrupoleTensors& q,
                     const RelaxationParams& par) {
  Complex sum = 0.0;
  for (int p = -2; p <= 2; ++p) {
    const Matrix& qp = q.at(p).matrix();
    const Matrix& qm = q.at(-p).matrix();
    const Matrix inner = qm * t.matrix() - t.matrix() * qm;
    const Matrix outer = qp * inner - inner * qp;
    const double sign = (p % 2 == 0) ? 1.0 : -1.0;
    sum += sign * par.spectral_density(p) * (rho.matrix() * outer).trace();
  }
  return -par.c_q * sum;
}

}  // namespace

TEST_CASE("vectorization is column-major and commutators lift correctly") {
  std::mt19937_64 rng(1);
  const SpinNumber s(3);
  const Operator a(s, testing::random_complex(4, rng));
  const Operator x(s, testing::random_complex(4, rng));
  const Vector v = vectorize(x);
  CHECK(v(1) == x.matrix()(1, 0));
  CHECK(v(4) == x.matrix()(0, 1));
  CHECK(max_abs_diff(unvectorize(s, v), x) == 0.0);
  const Vector lifted = commutator_superoperator(a) * v;
  CHECK(max_abs_diff(unvectorize(s, lifted), commutator(a, x)) < 1e-13);
  CHECK_THROWS_AS(unvectorize(s, Vector::Zero(15)), ValidationError);
}

TEST_CASE("lab and twisting Hamiltonians") {
  const SpinNumber s32(3);
  const auto h = lab_hamiltonian(s32, 5.0, 5.0, 1.0);
  const double want[] = {0.5, -0.5, -0.5, 0.5};
  for (int k = 0; k < 4; ++k) CHECK(std::abs(h.matrix()(k, k) - want[k]) < 1e-15);

  const auto z = lab_hamiltonian(SpinNumber(1), 1.0, 0.0, 0.0);
  CHECK(std::abs(z.matrix()(0, 0) + 0.5) < 1e-15);
  CHECK(std::abs(z.matrix()(1, 1) - 0.5) < 1e-15);

  const auto h7 = lab_hamiltonian(SpinNumber(7), 3.0, 1.0, 2.0);
  Matrix off = h7.matrix();
  off.diagonal().setZero();
  CHECK(max_abs(off) == 0.0);
  CHECK(h7.matrix().diagonal().imag().cwiseAbs().maxCoeff() == 0.0);

  const auto t32 = twisting_hamiltonian(s32, 2.0);
  const double want_t[] = {2.25, 0.25, 0.25, 2.25};
  for (int k = 0; k < 4; ++k) CHECK(std::abs(t32.matrix()(k, k) - want_t[k]) < 1e-15);

  const double wq = 2.0 * std::numbers::pi * 5970.0;
  const auto t72 = twisting_hamiltonian(SpinNumber(7), wq);
  CHECK(t72.matrix().real().maxCoeff() == doctest::Approx(0.5 * wq * 3.5 * 3.5).epsilon(1e-15));

  CHECK_THROWS_AS(twisting_hamiltonian(s32, 0.0), ValidationError);
  CHECK_THROWS_AS(twisting_hamiltonian(s32, -1.0), ValidationError);
}

TEST_CASE("twisting and on-resonance lab Hamiltonians differ by a constant and give the same trajectory") {
  std::mt19937_64 rng(2);
  for (auto spin : testing::all_spins()) {
    const double wq = 2.0 * std::numbers::pi * 16700.0;
    const auto h1 = lab_hamiltonian(spin, 1e8, 1e8, wq);
    const auto h2 = twisting_hamiltonian(spin, wq);
    const double c = wq / 6.0 * spin.value() * (spin.value() + 1.0);
    CHECK(max_abs_diff(h1, h2 - c * Operator::identity(spin)) < 1e-9 * wq);

    const auto rho0 = testing::random_pure(spin, rng);
    const auto g1 = build_generator(h1, std::nullopt, std::nullopt);
    const auto g2 = build_generator(h2, std::nullopt, std::nullopt);
    for (double frac : {0.1, 0.37, 0.8}) {
      const double t = frac * 2.0 * std::numbers::pi / wq;
      const auto r1 = propagate(rho0, g1, t);
      const auto r2 = propagate(rho0, g2, t);
      CHECK(fidelity(r1, r2) == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(max_abs_diff(r1.op(), r2.op()) < 1e-12);
    }
  }
}

TEST_CASE("relaxation parameters are validated") {
  RelaxationParams p = preset_params(Preset::na23);
  CHECK_NOTHROW(p.validate());
  CHECK(p.spectral_density(-2) == p.spectral_density(2));
  CHECK(p.spectral_density(-1) == p.spectral_density(1));
  CHECK_THROWS(p.spectral_density(3));
  RelaxationParams bad = p;
  bad.j1 = 0.0;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  bad = p;
  bad.c_q = -1.0;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  bad = p;
  bad.omega_q = 0.0;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  CHECK_THROWS_AS(relaxation_superoperator(SpinNumber(1), p), ValidationError);
}

TEST_CASE("relaxation annihilates the identity and the trace, and preserves Hermiticity") {
  std::mt19937_64 rng(3);
  for (Preset pr : {Preset::na23, Preset::cs133}) {
    const SpinNumber spin = preset_spin(pr);
    const auto par = preset_params(pr);
    const auto r = relaxation_superoperator(spin, par);
    const double scale = par.c_q * par.j0;
    CHECK(max_abs(r.apply(Operator::identity(spin)).matrix()) < 1e-12 * scale);
    for (int trial = 0; trial < 20; ++trial) {
      const Operator x(spin, testing::random_complex(spin.dimension(), rng));
      const Operator rx = r.apply(x);
      const double norm = max_abs(x.matrix()) * scale;
      CHECK(std::abs(trace(rx)) < 1e-12 * norm * spin.dimension() * 100);
      CHECK(max_abs_diff(r.apply(x.adjoint()), rx.adjoint()) < 1e-12 * norm * 100);
    }
  }
}

TEST_CASE("relaxation matches the literal double-commutator rates for every tensor element") {
  std::mt19937_64 rng(4);
  for (Preset pr : {Preset::na23, Preset::cs133}) {
    const SpinNumber spin = preset_spin(pr);
    const auto par = preset_params(pr);
    const auto r = relaxation_superoperator(spin, par);
    const auto basis = make_tensor_basis(spin);
    const auto q = make_quadrupole_tensors(spin);
    StateTolerance loose;
    loose.check_psd = false;
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      const DensityMatrix rho(testing::random_hermitian_unit_trace(spin, rng), loose);
      const Operator rr = r.apply(rho.op());
      // Error relative to the largest rate for this state: conserved elements have a
      // true rate of zero, where an elementwise ratio only measures roundoff.
      std::vector<Complex> got, want;
      double scale = 0.0;
      for (const auto& t : basis.elements()) {
        got.push_back(trace(t.op * rr));
        want.push_back(literal_rate(rho, t.op, q, par));
        scale = std::max(scale, std::abs(want.back()));
      }
      for (std::size_t i = 0; i < got.size(); ++i) worst = std::max(worst, std::abs(got[i] - want[i]) / scale);
    }
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("relaxation preserves coherence order") {
  for (int n = 2; n <= 9; ++n) {
    const SpinNumber spin(n);
    auto par = preset_params(Preset::na23);
    const auto r = relaxation_superoperator(spin, par);
    const auto basis = make_tensor_basis(spin);
    const double scale = par.c_q * par.j0;
    for (const auto& x : basis.elements()) {
      const Operator rx = r.apply(x.op);
      for (const auto& t : basis.elements()) {
        if (t.m == x.m) continue;
        CHECK(std::abs(trace(t.op.adjoint() * rx)) < 1e-12 * scale);
      }
    }
  }
}

TEST_CASE("relaxation spectrum is dissipative") {
  for (Preset pr : {Preset::na23, Preset::cs133}) {
    const SpinNumber spin = preset_spin(pr);
    const auto par = preset_params(pr);
    const auto r = relaxation_superoperator(spin, par);
    const Eigen::ComplexEigenSolver<Matrix> es(r.matrix());
    const double scale = par.c_q * par.j0;
    CHECK(es.eigenvalues().real().maxCoeff() <= 1e-12 * scale);
    // Only the identity survives: exactly one zero mode.
    int zeros = 0;
    for (int k = 0; k < es.eigenvalues().size(); ++k) {
      if (std::abs(es.eigenvalues()(k)) < 1e-9 * scale) ++zeros;
    }
    CHECK(zeros == 1);
  }
}

TEST_CASE("equilibrium state populations") {
  const auto e32 = equilibrium_state(SpinNumber(3));
  const double want32[] = {0.5, 1.0 / 3.0, 1.0 / 6.0, 0.0};
  for (int k = 0; k < 4; ++k) CHECK(std::abs(e32.matrix()(k, k) - want32[k]) < 1e-16);
  const auto e72 = equilibrium_state(SpinNumber(7));
  for (int k = 0; k < 8; ++k) CHECK(std::abs(e72.matrix()(k, k) - (7.0 - k) / 28.0) < 1e-16);
  const auto e12 = equilibrium_state(SpinNumber(1));
  CHECK(e12.matrix()(0, 0) == Complex(1.0));
  CHECK(e12.matrix()(1, 1) == Complex(0.0));
  for (auto spin : testing::all_spins()) CHECK(equilibrium_state(spin).trace_residual() < 1e-15);
}

TEST_CASE("superoperator shape is checked") {
  CHECK_THROWS_AS(Superoperator(SpinNumber(3), Matrix::Zero(4, 4)), ValidationError);
}
