#pragma once

#include <Eigen/Dense>

namespace quadspin {

// exp(A) for a dense complex matrix: scaling and squaring with a diagonal
// Pade approximant of degree 3, 5, 7, 9 or 13, picked from the 1-norm of A.
Eigen::MatrixXcd expm(const Eigen::MatrixXcd& a);

}  // namespace quadspin
