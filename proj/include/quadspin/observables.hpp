#pragma once

#include <string>
#include <utility>
#include <vector>

#include "quadspin/spin.hpp"

namespace quadspin {

struct SqueezingResult {
  double a = 0.0;  // <Iz^2 - Iy^2>
  double b = 0.0;  // <Iz Iy + Iy Iz>
  double c = 0.0;  // <Iz^2 + Iy^2>
  double xi = 0.0;
  double xi_squared = 0.0;
  double alpha = 0.0;  // radians, (-pi/4, pi/4]
  bool degenerate = false;  // A = B = 0 within tolerance; alpha set to 0
};

// Squeezing parameter for a mean spin along +x:
//   xi^2 = (C - sqrt(A^2 + B^2)) / I,  alpha = arctan(B / A) / 2.
SqueezingResult squeezing(const DensityMatrix& rho);

// alpha = arctan(B / A) / 2, with A = 0 mapped to +-pi/4 and A = B = 0 to 0.
double squeezing_angle(double a, double b, double scale);

struct NonCartesianPair {
  Operator ip;  // Iy cos(alpha) - Iz sin(alpha)
  Operator im;  // -Iy sin(alpha) - Iz cos(alpha)
};

NonCartesianPair noncartesian_operators(SpinNumber spin, double alpha);

struct UncertaintyReport {
  double var_iy = 0.0;
  double var_iz = 0.0;
  double var_ip = 0.0;
  double var_im = 0.0;
  double prod_yz = 0.0;  // Delta Iy * Delta Iz
  double prod_pm = 0.0;  // Delta Ip * Delta Im
  double bound = 0.0;    // |<Ix>| / 2
  double mean_ix = 0.0;
  double mean_iy = 0.0;
  double mean_iz = 0.0;
};

// Throws NumericalError when either product falls below the bound by more
// than 1e-9.
UncertaintyReport uncertainty_report(const DensityMatrix& rho, double alpha);

enum class MacroscopicityOperator { ip, im, iy, iz, custom };

struct MacroscopicityResult {
  double n_eff = 0.0;
  MacroscopicityOperator label = MacroscopicityOperator::custom;
};

// N_eff = (2 / I) Var(O)
MacroscopicityResult macroscopicity(const DensityMatrix& rho, const Operator& o, SpinNumber spin,
                                    MacroscopicityOperator label = MacroscopicityOperator::custom);

struct EquilibriumBounds {
  SpinNumber spin;
  double xi_sq = 0.0;      // 2(I+1)/3
  double prod = 0.0;       // (I+1) sqrt((2I-1) I) / (3 sqrt 3)
  double n_eff_eq = 0.0;   // 2(I+1)/3
  double n_eff_cat = 0.0;  // 2I
  double n_eff_loss = 0.0; // 2(2I-1)/3
};

EquilibriumBounds equilibrium_bounds(SpinNumber spin);

}  // namespace quadspin
