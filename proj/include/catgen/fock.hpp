#pragma once

// Truncated Fock-space primitives for one and two bosonic modes.
//
// Two-mode objects use a single index convention throughout the library:
// the amplitude of |n1, n2> lives at n1 * dim + n2 (row-major in (n1, n2)).
// Mode indices are 1-based, matching the physics notation (mode 1, mode 2).

#include <complex>
#include <Eigen/Dense>

#include "catgen/errors.hpp"

namespace catgen {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RowMajorCMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Norm (or trace) below which normalization is refused.
inline constexpr double kZeroNormThreshold = 1e-14;

struct TruncationConfig {
  int dim = 20;             ///< Fock levels 0..dim-1
  double tail_tol = 1e-10;  ///< maximum acceptable discarded probability

  /// Throws ArgumentError unless dim >= 2 and tail_tol in [0, 1).
  void validate() const;

  /// Default dimension for states whose largest coherent amplitude is
  /// `amplitude`: max(20, ceil(|a|^2 + 8|a| + 12)).
  static TruncationConfig for_amplitude(double amplitude, double tail_tol = 1e-10);

  friend bool operator==(const TruncationConfig&, const TruncationConfig&) = default;
};

/// Flat index of |n1, n2> in a two-mode vector.
inline int two_mode_index(int n1, int n2, int dim) { return n1 * dim + n2; }

/// Throws ArgumentError unless mode is 1 or 2.
void validate_mode(int mode);

class FockState {
 public:
  FockState(CVector amplitudes, TruncationConfig trunc, double discarded_tail = 0.0);

  static FockState basis(int n, const TruncationConfig& trunc);

  const CVector& amplitudes() const { return amplitudes_; }
  const TruncationConfig& truncation() const { return trunc_; }
  int dim() const { return trunc_.dim; }
  Complex operator[](int n) const { return amplitudes_(n); }

  double norm() const { return amplitudes_.norm(); }
  /// <this|other>
  Complex inner(const FockState& other) const;
  /// Probability mass that the constructor had to drop above the cutoff.
  double discarded_tail() const { return discarded_tail_; }

 private:
  CVector amplitudes_;
  TruncationConfig trunc_;
  double discarded_tail_ = 0.0;
};

class Operator {
 public:
  Operator(CMatrix matrix, TruncationConfig trunc);

  const CMatrix& matrix() const { return matrix_; }
  const TruncationConfig& truncation() const { return trunc_; }
  int dim() const { return trunc_.dim; }

 private:
  CMatrix matrix_;
  TruncationConfig trunc_;
};

class DensityMatrix {
 public:
  DensityMatrix(CMatrix matrix, TruncationConfig trunc);

  const CMatrix& matrix() const { return matrix_; }
  const TruncationConfig& truncation() const { return trunc_; }
  int dim() const { return trunc_.dim; }
  double trace() const { return matrix_.trace().real(); }
  /// Smallest eigenvalue of the Hermitian part.
  double min_eigenvalue() const;
  /// Largest |rho - rho^dagger| entry.
  double hermiticity_error() const;

 private:
  CMatrix matrix_;
  TruncationConfig trunc_;
};

class TwoModeState {
 public:
  TwoModeState(CVector amplitudes, TruncationConfig trunc);

  const CVector& amplitudes() const { return amplitudes_; }
  const TruncationConfig& truncation() const { return trunc_; }
  int dim() const { return trunc_.dim; }
  Complex amplitude(int n1, int n2) const { return amplitudes_(two_mode_index(n1, n2, trunc_.dim)); }
  double norm() const { return amplitudes_.norm(); }

  /// Amplitudes arranged as C(n1, n2).
  CMatrix coefficients() const;

 private:
  CVector amplitudes_;
  TruncationConfig trunc_;
};

class TwoModeOperator {
 public:
  TwoModeOperator(CMatrix matrix, TruncationConfig trunc);

  const CMatrix& matrix() const { return matrix_; }
  const TruncationConfig& truncation() const { return trunc_; }
  int dim() const { return trunc_.dim; }

 private:
  CMatrix matrix_;
  TruncationConfig trunc_;
};

class TwoModeDensity {
 public:
  TwoModeDensity(CMatrix matrix, TruncationConfig trunc);

  const CMatrix& matrix() const { return matrix_; }
  const TruncationConfig& truncation() const { return trunc_; }
  int dim() const { return trunc_.dim; }
  double trace() const { return matrix_.trace().real(); }

 private:
  CMatrix matrix_;
  TruncationConfig trunc_;
};

template <typename T>
struct Normalized {
  T state;
  double norm;  ///< vector norm, or trace for density matrices
};

// Ladder algebra.
Operator annihilation_op(const TruncationConfig& trunc);
Operator creation_op(const TruncationConfig& trunc);
Operator number_op(const TruncationConfig& trunc);
Operator identity_op(const TruncationConfig& trunc);

/// Matrix-vector product; the result is not renormalized.
FockState apply(const Operator& op, const FockState& state);
TwoModeState apply(const TwoModeOperator& op, const TwoModeState& state);

TwoModeState tensor(const FockState& a, const FockState& b);
TwoModeOperator tensor(const Operator& a, const Operator& b);

DensityMatrix density(const FockState& state);
TwoModeDensity density(const TwoModeState& state);

/// Reduced state of mode `keep` (1 or 2).
DensityMatrix partial_trace(const TwoModeDensity& rho, int keep);

Normalized<FockState> normalize(const FockState& state);
Normalized<TwoModeState> normalize(const TwoModeState& state);
Normalized<DensityMatrix> normalize(const DensityMatrix& rho);

}  // namespace catgen
