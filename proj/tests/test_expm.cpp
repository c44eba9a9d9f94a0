#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include "helpers.hpp"
#include "quadspin/config.hpp"
#include "quadspin/expm.hpp"
#include "quadspin/runner.hpp"

using namespace quadspin;
using testing::max_abs;

TEST_CASE("expm of zero and diagonal matrices") {
  CHECK(max_abs(expm(Matrix::Zero(5, 5)) - Matrix::Identity(5, 5)) == 0.0);
  Eigen::VectorXcd diag(4);
  diag << Complex(0.5, 1.0), Complex(-3.0, 0.0), Complex(0.0, -20.0), Complex(7.0, 2.0);
  const Matrix e = expm(Matrix(diag.asDiagonal()));
  for (int k = 0; k < 4; ++k) CHECK(std::abs(e(k, k) - std::exp(diag(k))) < 1e-13 * std::abs(std::exp(diag(k))));
}

TEST_CASE("expm matches Eigen MatrixFunctions across norm ranges") {
  std::mt19937_64 rng(11);
  for (double scale : {1e-6, 1e-3, 0.1, 0.5, 1.0, 3.0, 10.0, 50.0}) {
    for (int d : {2, 4, 16, 64}) {
      CAPTURE(scale);
      CAPTURE(d);
      Matrix a = testing::random_complex(d, rng);
      a *= scale / a.cwiseAbs().colwise().sum().maxCoeff();
      const Matrix want = a.exp();
      const Matrix got = expm(a);
      CHECK(max_abs(got - want) <= 1e-11 * std::max(1.0, max_abs(want)));
    }
  }
}

TEST_CASE("expm of an anti-Hermitian generator is unitary and matches the eigen-decomposition") {
  std::mt19937_64 rng(12);
  Matrix h = testing::random_complex(8, rng);
  h = (h + h.adjoint()).eval() * 40.0;
  const Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const Matrix want = es.eigenvectors() *
                      es.eigenvalues().unaryExpr([](double x) { return std::exp(Complex(0.0, -x)); }).asDiagonal() *
                      es.eigenvectors().adjoint();
  const Matrix u = expm(Complex(0.0, -1.0) * h);
  CHECK(max_abs(u - want) < 1e-10);
  CHECK(max_abs(u * u.adjoint() - Matrix::Identity(8, 8)) < 1e-12);
}

TEST_CASE("expm of a preset Liouvillian agrees with an RK4 integration") {
  for (Preset p : {Preset::na23, Preset::cs133}) {
    const auto cfg = make_preset_config(p);
    const Generator gen = make_generator(cfg);
    const Matrix aug = gen.augmented();
    const double t = 0.37 * cfg.period();
    const Matrix e = expm(aug * t);

    Vector y0 = Vector::Zero(aug.rows());
    y0.head(aug.rows() - 1) = vectorize(coherent_state(cfg.spin, cfg.initial).op());
    y0(aug.rows() - 1) = 1.0;
    const Vector rk = testing::rk4([&](const Vector& y) { return Vector(aug * y); }, y0, t, 20000);
    CHECK((e * y0 - rk).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("expm rejects non-square and non-finite input") {
  CHECK_THROWS(expm(Matrix::Zero(2, 3)));
  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS(expm(bad));
}
