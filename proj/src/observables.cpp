#include "quadspin/observables.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "quadspin/error.hpp"

namespace quadspin {

namespace {

constexpr double kRobertsonSlack = 1e-9;
constexpr double kRadicandSlack = 1e-10;
// |(A, B)| below this fraction of I(I+1) counts as isotropic.
constexpr double kDegenerateFraction = 1e-10;

}  // namespace

double squeezing_angle(double a, double b, double scale) {
  if (std::hypot(a, b) <= kDegenerateFraction * scale) return 0.0;
  if (a == 0.0) return std::copysign(0.25 * std::numbers::pi, b);
  return 0.5 * std::atan(b / a);
}

SqueezingResult squeezing(const DensityMatrix& rho) {
  const SpinNumber spin = rho.spin();
  const auto ops = make_spin_operators(spin);
  const Operator iy2 = ops.iy * ops.iy;
  const Operator iz2 = ops.iz * ops.iz;

  SqueezingResult r;
  r.a = mean(rho, iz2 - iy2);
  r.b = mean(rho, anticommutator(ops.iz, ops.iy));
  r.c = mean(rho, iz2 + iy2);

  const double i_val = spin.value();
  const double scale = i_val * (i_val + 1.0);
  double radicand = 0.5 * r.c - 0.5 * std::hypot(r.a, r.b);
  if (radicand < 0.0) {
    if (radicand < -kRadicandSlack) {
      throw NumericalError("squeezing radicand is negative: " + std::to_string(radicand), radicand);
    }
    radicand = 0.0;
  }
  r.xi_squared = radicand / (0.5 * i_val);
  r.xi = std::sqrt(r.xi_squared);
  r.degenerate = std::hypot(r.a, r.b) <= kDegenerateFraction * scale;
  r.alpha = squeezing_angle(r.a, r.b, scale);
  return r;
}

NonCartesianPair noncartesian_operators(SpinNumber spin, double alpha) {
  if (!std::isfinite(alpha)) throw ValidationError("squeezing angle must be finite");
  const auto ops = make_spin_operators(spin);
  const double c = std::cos(alpha);
  const double s = std::sin(alpha);
  return {c * ops.iy - s * ops.iz, (-s) * ops.iy - c * ops.iz};
}

UncertaintyReport uncertainty_report(const DensityMatrix& rho, double alpha) {
  const SpinNumber spin = rho.spin();
  const auto ops = make_spin_operators(spin);
  const auto pair = noncartesian_operators(spin, alpha);

  UncertaintyReport r;
  r.mean_ix = mean(rho, ops.ix);
  r.mean_iy = mean(rho, ops.iy);
  r.mean_iz = mean(rho, ops.iz);
  r.var_iy = variance(rho, ops.iy);
  r.var_iz = variance(rho, ops.iz);
  r.var_ip = variance(rho, pair.ip);
  r.var_im = variance(rho, pair.im);
  r.prod_yz = std::sqrt(r.var_iy * r.var_iz);
  r.prod_pm = std::sqrt(r.var_ip * r.var_im);
  r.bound = 0.5 * std::abs(r.mean_ix);

  if (r.prod_yz < r.bound - kRobertsonSlack) {
    throw NumericalError("Robertson bound violated for (Iy, Iz): " + std::to_string(r.prod_yz) +
                             " < " + std::to_string(r.bound),
                         r.bound - r.prod_yz);
  }
  if (r.prod_pm < r.bound - kRobertsonSlack) {
    throw NumericalError("Robertson bound violated for (Ip, Im): " + std::to_string(r.prod_pm) +
                             " < " + std::to_string(r.bound),
                         r.bound - r.prod_pm);
  }
  return r;
}

MacroscopicityResult macroscopicity(const DensityMatrix& rho, const Operator& o, SpinNumber spin,
                                    MacroscopicityOperator label) {
  require_same_spin(rho.spin(), spin, "macroscopicity");
  return {2.0 / spin.value() * variance(rho, o), label};
}

EquilibriumBounds equilibrium_bounds(SpinNumber spin) {
  const double i = spin.value();
  EquilibriumBounds b{spin};
  b.xi_sq = 2.0 * (i + 1.0) / 3.0;
  b.prod = (i + 1.0) * std::sqrt((2.0 * i - 1.0) * i) / (3.0 * std::sqrt(3.0));
  b.n_eff_eq = 2.0 * (i + 1.0) / 3.0;
  b.n_eff_cat = 2.0 * i;
  b.n_eff_loss = 2.0 * (2.0 * i - 1.0) / 3.0;
  return b;
}

}  // namespace quadspin
