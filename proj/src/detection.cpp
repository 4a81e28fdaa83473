#include "catgen/detection.hpp"

#include <cmath>
#include <string>

#include "catgen/optics.hpp"

namespace catgen {

namespace {

constexpr double kDiagonalTol = 1e-15;
constexpr double kTraceDeficitTol = 1e-9;

// Coefficient matrix with the measured mode along the columns.
CMatrix measured_columns(const TwoModeState& psi, int measured_mode) {
  validate_mode(measured_mode);
  CMatrix c = psi.coefficients();
  if (measured_mode == 1) c.transposeInPlace();
  return c;
}

bool is_diagonal(const CMatrix& m) {
  const CMatrix off = m - CMatrix(m.diagonal().asDiagonal());
  return off.cwiseAbs().maxCoeff() <= kDiagonalTol;
}

void check_povm_element(const Operator& povm) {
  const CMatrix herm = 0.5 * (povm.matrix() + povm.matrix().adjoint());
  if ((herm - povm.matrix()).cwiseAbs().maxCoeff() > 1e-12) throw ArgumentError("POVM element is not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(herm, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -1e-12 || solver.eigenvalues().maxCoeff() > 1.0 + 1e-12) {
    throw ArgumentError("POVM element eigenvalues must lie in [0, 1]");
  }
}

CMatrix povm_sqrt(const Operator& povm) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(0.5 * (povm.matrix() + povm.matrix().adjoint()));
  const Eigen::VectorXd root = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return solver.eigenvectors() * root.cast<Complex>().asDiagonal() * solver.eigenvectors().adjoint();
}

Conditioned finish(CMatrix reduced, const TruncationConfig& trunc) {
  const double p = reduced.trace().real();
  if (!(p >= kZeroNormThreshold)) throw ZeroNormError("condition_on_povm: outcome probability " + error_number(p));
  reduced /= p;
  return {p, DensityMatrix(std::move(reduced), trunc)};
}

double binomial_weight(int n, int k, double eta) {
  const double logc = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
  return std::exp(logc) * std::pow(eta, k) * std::pow(1.0 - eta, n - k);
}

}  // namespace

const DensityMatrix& HeraldRecord::state() const {
  if (!conditional) throw ZeroNormError("outcome n=" + std::to_string(n) + " has zero probability");
  return *conditional;
}

void DetectorModel::validate() const {
  if (!(eta >= 0.0 && eta <= 1.0)) throw ArgumentError("detector efficiency must lie in [0, 1]");
  if (m < 1) throw ArgumentError("detector count m must be >= 1");
  if (kind == DetectorKind::onoff && m != 1) throw ArgumentError("a single on-off detector has m = 1");
}

Operator DetectorModel::click_povm(const TruncationConfig& trunc) const {
  validate();
  if (kind == DetectorKind::pnrd) throw ArgumentError("click_povm: pnrd outcomes are photon counts, use count_povm");
  return lossy_povm(onoff_click_povm(m, trunc), eta);
}

Operator DetectorModel::count_povm(int n, const TruncationConfig& trunc) const {
  validate();
  if (kind != DetectorKind::pnrd) throw ArgumentError("count_povm: only defined for a pnrd");
  if (n < 0 || n >= trunc.dim) throw ArgumentError("count_povm: outcome outside truncation");
  CMatrix e = CMatrix::Zero(trunc.dim, trunc.dim);
  e(n, n) = 1.0;
  return lossy_povm(Operator(std::move(e), trunc), eta);
}

HeraldRecord pnrd_project(const TwoModeState& psi, int measured_mode, int n) {
  const CMatrix c = measured_columns(psi, measured_mode);
  if (n < 0 || n >= psi.dim()) throw ArgumentError("pnrd_project: outcome outside truncation");
  const CVector v = c.col(n);
  HeraldRecord rec{n, v.squaredNorm(), std::nullopt};
  if (rec.probability >= kZeroNormThreshold) {
    const CVector u = v / std::sqrt(rec.probability);
    rec.conditional.emplace(u * u.adjoint(), psi.truncation());
  }
  return rec;
}

OutcomeDistribution pnrd_outcome_distribution(const TwoModeState& psi, int measured_mode, double eta, int n_cutoff) {
  const CMatrix c = measured_columns(psi, measured_mode);
  const int d = psi.dim();
  if (n_cutoff < 0 || n_cutoff >= d) throw ArgumentError("pnrd_outcome_distribution: n_cutoff must be < dim");
  const LossChannel channel = LossChannel::for_level(eta, d - 1);
  channel.validate();

  // Weight of K_l (I (x) K_l) applied to the joint state, column by column.
  double kept_weight = 0.0;
  for (int m = 0; m < d; ++m) {
    double w = 0.0;
    for (int l = 0; l <= std::min(m, channel.kraus_cutoff); ++l) w += binomial_weight(m, m - l, eta);
    kept_weight += c.col(m).squaredNorm() * w;
  }
  const double deficit = std::abs(c.squaredNorm() - kept_weight);
  if (deficit > kTraceDeficitTol) {
    throw TraceLossError("pnrd_outcome_distribution: loss channel trace deficit " + error_number(deficit));
  }

  OutcomeDistribution dist;
  dist.records.reserve(static_cast<std::size_t>(n_cutoff) + 1);
  double total = 0.0;
  for (int n = 0; n <= n_cutoff; ++n) {
    CMatrix rho = CMatrix::Zero(d, d);
    for (int l = 0; l <= channel.kraus_cutoff && n + l < d; ++l) {
      const double k = std::sqrt(binomial_weight(n + l, n, eta));
      if (k == 0.0) continue;
      const CVector v = k * c.col(n + l);
      rho.noalias() += v * v.adjoint();
    }
    HeraldRecord rec{n, rho.trace().real(), std::nullopt};
    total += rec.probability;
    if (rec.probability >= kZeroNormThreshold) rec.conditional.emplace(rho / rec.probability, psi.truncation());
    dist.records.push_back(std::move(rec));
  }
  dist.residual = 1.0 - total;
  return dist;
}

Operator onoff_click_povm(int m, const TruncationConfig& trunc) {
  if (m < 1) throw ArgumentError("onoff_click_povm: m must be >= 1");
  trunc.validate();
  CMatrix e = CMatrix::Zero(trunc.dim, trunc.dim);
  double w = 1.0;
  for (int n = 1; n < trunc.dim; ++n) {
    e(n, n) = w;
    w /= m;
  }
  return Operator(std::move(e), trunc);
}

Operator lossy_povm(const Operator& povm, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw ArgumentError("lossy_povm: eta must lie in [0, 1]");
  if (!is_diagonal(povm.matrix())) throw ArgumentError("lossy_povm: only diagonal POVM elements are supported");
  if (eta == 1.0) return povm;
  const int d = povm.dim();
  CMatrix out = CMatrix::Zero(d, d);
  for (int n = 0; n < d; ++n) {
    double acc = 0.0;
    for (int k = 0; k <= n; ++k) acc += binomial_weight(n, k, eta) * povm.matrix()(k, k).real();
    out(n, n) = acc;
  }
  return Operator(std::move(out), povm.truncation());
}

Conditioned condition_on_povm(const TwoModeDensity& rho, int measured_mode, const Operator& povm) {
  validate_mode(measured_mode);
  if (!(rho.truncation() == povm.truncation())) throw ArgumentError("condition_on_povm: mismatched truncation");
  check_povm_element(povm);
  const int d = rho.dim();
  const CMatrix& m = rho.matrix();

  if (is_diagonal(povm.matrix())) {
    CMatrix reduced = CMatrix::Zero(d, d);
    for (int k = 0; k < d; ++k) {
      const double w = povm.matrix()(k, k).real();
      if (w == 0.0) continue;
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
          reduced(i, j) += w * (measured_mode == 2 ? m(two_mode_index(i, k, d), two_mode_index(j, k, d))
                                                   : m(two_mode_index(k, i, d), two_mode_index(k, j, d)));
        }
      }
    }
    return finish(std::move(reduced), rho.truncation());
  }

  const Operator root(povm_sqrt(povm), povm.truncation());
  const Operator id = identity_op(rho.truncation());
  const CMatrix big = (measured_mode == 2 ? tensor(id, root) : tensor(root, id)).matrix();
  const TwoModeDensity conditioned(big * m * big.adjoint(), rho.truncation());
  return finish(partial_trace(conditioned, measured_mode == 2 ? 1 : 2).matrix(), rho.truncation());
}

Conditioned condition_on_povm(const TwoModeState& psi, int measured_mode, const Operator& povm) {
  if (!(psi.truncation() == povm.truncation())) throw ArgumentError("condition_on_povm: mismatched truncation");
  check_povm_element(povm);
  const CMatrix c = measured_columns(psi, measured_mode);
  if (is_diagonal(povm.matrix())) {
    const Eigen::VectorXd w = povm.matrix().diagonal().real();
    return finish(c * w.cast<Complex>().asDiagonal() * c.adjoint(), psi.truncation());
  }
  const CMatrix conditioned = c * povm_sqrt(povm).transpose();
  return finish(conditioned * conditioned.adjoint(), psi.truncation());
}

double success_probability_closed_form(Complex beta) {
  const double x = std::norm(beta);
  const double e1 = std::exp(-x);
  const double e2 = std::exp(-2.0 * x);
  return e1 * (1.0 + e2 + 2.0 * e1 * std::cos(x)) / ((1.0 + e2) * (1.0 + e2));
}

}  // namespace catgen
