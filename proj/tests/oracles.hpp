#pragma once

// Reference implementations used only by the tests. They share no code with
// the library: dense matrix exponentials, explicit coherent superpositions
// and plain double loops.

#include <cmath>
#include <complex>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

using C = std::complex<double>;

inline Eigen::MatrixXcd lowering(int dim) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

// exp(g a^dag - g^* a) on a padded space, cropped back to dim.
inline Eigen::MatrixXcd displacement_expm(C g, int dim, int pad = 80) {
  const int big = dim + pad;
  const Eigen::MatrixXcd a = lowering(big);
  const Eigen::MatrixXcd gen = g * a.adjoint() - std::conj(g) * a;
  const Eigen::MatrixXcd d = gen.exp();
  return d.topLeftCorner(dim, dim);
}

// e^{-|a|^2/2} a^n / sqrt(n!) with the factorial accumulated term by term.
inline Eigen::VectorXcd coherent_series(C a, int dim) {
  Eigen::VectorXcd v(dim);
  C term = std::exp(-0.5 * std::norm(a));
  for (int n = 0; n < dim; ++n) {
    v(n) = term;
    term *= a / std::sqrt(static_cast<double>(n + 1));
  }
  return v;
}

// Sum_j i^{-jk} |i^j beta>, normalized on the truncation.
inline Eigen::VectorXcd four_cat_superposition(C beta, int k, int dim) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  const C i(0.0, 1.0);
  for (int j = 0; j < 4; ++j) v += std::pow(i, -j * k) * coherent_series(std::pow(i, j) * beta, dim);
  return v / v.norm();
}

inline double binomial(int n, int k) {
  double c = 1.0;
  for (int j = 1; j <= k; ++j) c = c * (n - k + j) / j;
  return c;
}

}  // namespace oracle
