#include "catgen/fock.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace catgen {

namespace {

void require_same(const TruncationConfig& a, const TruncationConfig& b, const char* what) {
  if (!(a == b)) {
    throw ArgumentError(std::string(what) + ": mismatched truncation (dim " + std::to_string(a.dim) +
                        " vs " + std::to_string(b.dim) + ")");
  }
}

void require_size(Eigen::Index got, Eigen::Index want, const char* what) {
  if (got != want) {
    throw ArgumentError(std::string(what) + ": expected size " + std::to_string(want) + ", got " +
                        std::to_string(got));
  }
}

void require_square(const CMatrix& m, Eigen::Index n, const char* what) {
  if (m.rows() != n || m.cols() != n) {
    throw ArgumentError(std::string(what) + ": expected " + std::to_string(n) + "x" + std::to_string(n) +
                        " matrix");
  }
}

}  // namespace

void TruncationConfig::validate() const {
  if (dim < 2) throw ArgumentError("truncation dim must be >= 2");
  if (!(tail_tol >= 0.0 && tail_tol < 1.0)) throw ArgumentError("tail_tol must lie in [0, 1)");
}

TruncationConfig TruncationConfig::for_amplitude(double amplitude, double tail_tol) {
  const double a = std::abs(amplitude);
  const int heuristic = static_cast<int>(std::ceil(a * a + 8.0 * a + 12.0));
  return TruncationConfig{std::max(20, heuristic), tail_tol};
}

void validate_mode(int mode) {
  if (mode != 1 && mode != 2) throw ArgumentError("mode index must be 1 or 2, got " + std::to_string(mode));
}

FockState::FockState(CVector amplitudes, TruncationConfig trunc, double discarded_tail)
    : amplitudes_(std::move(amplitudes)), trunc_(trunc), discarded_tail_(discarded_tail) {
  trunc_.validate();
  require_size(amplitudes_.size(), trunc_.dim, "FockState");
  if (!amplitudes_.allFinite()) throw NumericalError("FockState: non-finite amplitude");
}

FockState FockState::basis(int n, const TruncationConfig& trunc) {
  trunc.validate();
  if (n < 0 || n >= trunc.dim) throw ArgumentError("basis index outside truncation");
  CVector v = CVector::Zero(trunc.dim);
  v(n) = 1.0;
  return FockState(std::move(v), trunc);
}

Complex FockState::inner(const FockState& other) const {
  require_same(trunc_, other.trunc_, "inner");
  return amplitudes_.dot(other.amplitudes_);  // Eigen's dot conjugates the left operand
}

Operator::Operator(CMatrix matrix, TruncationConfig trunc) : matrix_(std::move(matrix)), trunc_(trunc) {
  trunc_.validate();
  require_square(matrix_, trunc_.dim, "Operator");
  if (!matrix_.allFinite()) throw NumericalError("Operator: non-finite entry");
}

DensityMatrix::DensityMatrix(CMatrix matrix, TruncationConfig trunc) : matrix_(std::move(matrix)), trunc_(trunc) {
  trunc_.validate();
  require_square(matrix_, trunc_.dim, "DensityMatrix");
  if (!matrix_.allFinite()) throw NumericalError("DensityMatrix: non-finite entry");
}

double DensityMatrix::min_eigenvalue() const {
  const CMatrix herm = 0.5 * (matrix_ + matrix_.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(herm, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double DensityMatrix::hermiticity_error() const { return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff(); }

TwoModeState::TwoModeState(CVector amplitudes, TruncationConfig trunc)
    : amplitudes_(std::move(amplitudes)), trunc_(trunc) {
  trunc_.validate();
  require_size(amplitudes_.size(), static_cast<Eigen::Index>(trunc_.dim) * trunc_.dim, "TwoModeState");
  if (!amplitudes_.allFinite()) throw NumericalError("TwoModeState: non-finite amplitude");
}

CMatrix TwoModeState::coefficients() const {
  return Eigen::Map<const RowMajorCMatrix>(amplitudes_.data(), trunc_.dim, trunc_.dim);
}

TwoModeOperator::TwoModeOperator(CMatrix matrix, TruncationConfig trunc)
    : matrix_(std::move(matrix)), trunc_(trunc) {
  trunc_.validate();
  require_square(matrix_, static_cast<Eigen::Index>(trunc_.dim) * trunc_.dim, "TwoModeOperator");
}

TwoModeDensity::TwoModeDensity(CMatrix matrix, TruncationConfig trunc)
    : matrix_(std::move(matrix)), trunc_(trunc) {
  trunc_.validate();
  require_square(matrix_, static_cast<Eigen::Index>(trunc_.dim) * trunc_.dim, "TwoModeDensity");
  if (!matrix_.allFinite()) throw NumericalError("TwoModeDensity: non-finite entry");
}

Operator annihilation_op(const TruncationConfig& trunc) {
  trunc.validate();
  CMatrix a = CMatrix::Zero(trunc.dim, trunc.dim);
  for (int n = 1; n < trunc.dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return Operator(std::move(a), trunc);
}

Operator creation_op(const TruncationConfig& trunc) {
  return Operator(annihilation_op(trunc).matrix().adjoint(), trunc);
}

Operator number_op(const TruncationConfig& trunc) {
  trunc.validate();
  CMatrix n = CMatrix::Zero(trunc.dim, trunc.dim);
  for (int k = 0; k < trunc.dim; ++k) n(k, k) = static_cast<double>(k);
  return Operator(std::move(n), trunc);
}

Operator identity_op(const TruncationConfig& trunc) {
  trunc.validate();
  return Operator(CMatrix::Identity(trunc.dim, trunc.dim), trunc);
}

FockState apply(const Operator& op, const FockState& state) {
  require_same(op.truncation(), state.truncation(), "apply");
  return FockState(op.matrix() * state.amplitudes(), state.truncation());
}

TwoModeState apply(const TwoModeOperator& op, const TwoModeState& state) {
  require_same(op.truncation(), state.truncation(), "apply");
  return TwoModeState(op.matrix() * state.amplitudes(), state.truncation());
}

TwoModeState tensor(const FockState& a, const FockState& b) {
  require_same(a.truncation(), b.truncation(), "tensor");
  const int d = a.dim();
  CVector out(static_cast<Eigen::Index>(d) * d);
  for (int n1 = 0; n1 < d; ++n1) {
    for (int n2 = 0; n2 < d; ++n2) out(two_mode_index(n1, n2, d)) = a[n1] * b[n2];
  }
  return TwoModeState(std::move(out), a.truncation());
}

TwoModeOperator tensor(const Operator& a, const Operator& b) {
  require_same(a.truncation(), b.truncation(), "tensor");
  const int d = a.dim();
  const Eigen::Index big = static_cast<Eigen::Index>(d) * d;
  CMatrix out(big, big);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) out.block(i * d, j * d, d, d) = a.matrix()(i, j) * b.matrix();
  }
  return TwoModeOperator(std::move(out), a.truncation());
}

DensityMatrix density(const FockState& state) {
  return DensityMatrix(state.amplitudes() * state.amplitudes().adjoint(), state.truncation());
}

TwoModeDensity density(const TwoModeState& state) {
  return TwoModeDensity(state.amplitudes() * state.amplitudes().adjoint(), state.truncation());
}

DensityMatrix partial_trace(const TwoModeDensity& rho, int keep) {
  validate_mode(keep);
  const int d = rho.dim();
  const CMatrix& m = rho.matrix();
  CMatrix out = CMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      Complex acc = 0.0;
      for (int t = 0; t < d; ++t) {
        acc += keep == 1 ? m(two_mode_index(i, t, d), two_mode_index(j, t, d))
                         : m(two_mode_index(t, i, d), two_mode_index(t, j, d));
      }
      out(i, j) = acc;
    }
  }
  return DensityMatrix(std::move(out), rho.truncation());
}

Normalized<FockState> normalize(const FockState& state) {
  const double n = state.norm();
  if (!(n >= kZeroNormThreshold)) throw ZeroNormError("cannot normalize a state of norm " + error_number(n));
  return {FockState(state.amplitudes() / n, state.truncation(), state.discarded_tail()), n};
}

Normalized<TwoModeState> normalize(const TwoModeState& state) {
  const double n = state.norm();
  if (!(n >= kZeroNormThreshold)) throw ZeroNormError("cannot normalize a state of norm " + error_number(n));
  return {TwoModeState(state.amplitudes() / n, state.truncation()), n};
}

Normalized<DensityMatrix> normalize(const DensityMatrix& rho) {
  const double t = rho.trace();
  if (!(t >= kZeroNormThreshold)) throw ZeroNormError("cannot normalize a density matrix of trace " + error_number(t));
  return {DensityMatrix(rho.matrix() / t, rho.truncation()), t};
}

}  // namespace catgen
