#include "quadspin/expm.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace quadspin {

namespace {

using Matrix = Eigen::MatrixXcd;

// Largest 1-norm for which the degree-m approximant meets unit roundoff
// (Higham 2005, Table 2.3).
constexpr std::array<int, 5> kDegrees = {3, 5, 7, 9, 13};
constexpr std::array<double, 5> kTheta = {1.495585217958292e-2, 2.539398330063230e-1,
                                          9.504178996162932e-1, 2.097847961257068e0,
                                          5.371920351148152e0};

// b_j = (2m - j)! m! / ((2m)! j! (m - j)!)
std::vector<double> pade_coefficients(int m) {
  std::vector<double> b(static_cast<std::size_t>(m + 1));
  b[0] = 1.0;
  for (int j = 1; j <= m; ++j) {
    b[static_cast<std::size_t>(j)] =
        b[static_cast<std::size_t>(j - 1)] * (m - j + 1) / (static_cast<double>(j) * (2 * m - j + 1));
  }
  return b;
}

double one_norm(const Matrix& a) { return a.cwiseAbs().colwise().sum().maxCoeff(); }

// Returns exp(a) approximated by r_m(a) = q(a)^{-1} p(a).
Matrix pade(const Matrix& a, int m) {
  const auto b = pade_coefficients(m);
  const auto n = a.rows();
  const Matrix ident = Matrix::Identity(n, n);
  const Matrix a2 = a * a;
  Matrix u, v;
  if (m == 13) {
    const Matrix a4 = a2 * a2;
    const Matrix a6 = a4 * a2;
    const Matrix inner_u = b[13] * a6 + b[11] * a4 + b[9] * a2;
    const Matrix inner_v = b[12] * a6 + b[10] * a4 + b[8] * a2;
    u = a * (a6 * inner_u + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident);
    v = a6 * inner_v + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident;
  } else {
    // Even powers a^0, a^2, ..., a^{m-1}.
    Matrix odd = b[1] * ident;
    Matrix even = b[0] * ident;
    Matrix power = ident;
    for (int k = 2; k <= m; k += 2) {
      power = power * a2;
      even += b[static_cast<std::size_t>(k)] * power;
      if (k + 1 <= m) odd += b[static_cast<std::size_t>(k + 1)] * power;
    }
    u = a * odd;
    v = even;
  }
  return (v - u).partialPivLu().solve(v + u);
}

}  // namespace

Matrix expm(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("expm: matrix must be square");
  if (a.size() == 0) return a;
  if (!a.allFinite()) throw std::invalid_argument("expm: non-finite input");

  const double norm = one_norm(a);
  for (std::size_t i = 0; i + 1 < kDegrees.size(); ++i) {
    if (norm <= kTheta[i]) return pade(a, kDegrees[i]);
  }
  int squarings = 0;
  if (norm > kTheta[4]) {
    squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm / kTheta[4]))));
  }
  Matrix result = pade(a / std::ldexp(1.0, squarings), 13);
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

}  // namespace quadspin
