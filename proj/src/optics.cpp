#include "catgen/optics.hpp"

#include <cmath>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

namespace catgen {

namespace {

constexpr double kTraceDeficitTol = 1e-9;
constexpr double kKrausTailTol = 1e-12;

double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// <m - l| K_l |m>
double kraus_element(double eta, int m, int l) {
  return std::sqrt(std::exp(log_binomial(m, l)) * std::pow(eta, m - l) * std::pow(1.0 - eta, l));
}

}  // namespace

BeamSplitter::BeamSplitter(const TruncationConfig& trunc, double theta) : trunc_(trunc), theta_(theta) {
  trunc_.validate();
  blocks_.reserve(static_cast<std::size_t>(trunc_.dim));
  for (int total = 0; total < trunc_.dim; ++total) {
    Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(total + 1, total + 1);
    for (int j = 0; j <= total; ++j) {
      // a1^dag a2 |j, N-j> and -a1 a2^dag |j, N-j>
      if (j < total) gen(j + 1, j) = std::sqrt((j + 1.0) * (total - j));
      if (j > 0) gen(j - 1, j) = -std::sqrt(j * (total - j + 1.0));
    }
    const Eigen::MatrixXd scaled = theta_ * gen;
    blocks_.push_back(scaled.exp());
  }
}

TwoModeState BeamSplitter::apply(const TwoModeState& state) const {
  if (!(state.truncation() == trunc_)) throw ArgumentError("BeamSplitter::apply: mismatched truncation");
  const int d = trunc_.dim;
  CVector out = CVector::Zero(state.amplitudes().size());
  CVector in_block;
  for (int total = 0; total < d; ++total) {
    in_block.resize(total + 1);
    for (int j = 0; j <= total; ++j) in_block(j) = state.amplitude(j, total - j);
    const CVector out_block = blocks_[static_cast<std::size_t>(total)].cast<Complex>() * in_block;
    for (int j = 0; j <= total; ++j) out(two_mode_index(j, total - j, d)) = out_block(j);
  }
  return TwoModeState(std::move(out), trunc_);
}

TwoModeOperator BeamSplitter::matrix() const {
  const int d = trunc_.dim;
  const Eigen::Index big = static_cast<Eigen::Index>(d) * d;
  CMatrix u = CMatrix::Zero(big, big);
  for (int total = 0; total < d; ++total) {
    const Eigen::MatrixXd& b = blocks_[static_cast<std::size_t>(total)];
    for (int i = 0; i <= total; ++i) {
      for (int j = 0; j <= total; ++j) {
        u(two_mode_index(i, total - i, d), two_mode_index(j, total - j, d)) = b(i, j);
      }
    }
  }
  return TwoModeOperator(std::move(u), trunc_);
}

double BeamSplitter::leakage(const TwoModeState& state) const {
  const int d = trunc_.dim;
  double lost = 0.0;
  for (int n1 = 0; n1 < d; ++n1) {
    for (int n2 = d - n1; n2 < d; ++n2) lost += std::norm(state.amplitude(n1, n2));
  }
  return lost;
}

TwoModeOperator beam_splitter_unitary(const TruncationConfig& trunc) { return BeamSplitter(trunc).matrix(); }

TwoModeState interfere(const FockState& a, const FockState& b) {
  return BeamSplitter(a.truncation()).apply(tensor(a, b));
}

void LossChannel::validate() const {
  if (!(eta >= 0.0 && eta <= 1.0)) throw ArgumentError("loss channel transmission must lie in [0, 1]");
  if (kraus_cutoff < 0) throw ArgumentError("kraus_cutoff must be >= 0");
}

LossChannel LossChannel::for_level(double eta, int max_level) {
  return LossChannel{eta, default_kraus_cutoff(eta, max_level)};
}

int default_kraus_cutoff(double eta, int max_level) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw ArgumentError("loss channel transmission must lie in [0, 1]");
  if (max_level <= 0 || eta == 1.0) return 0;
  if (eta == 0.0) return max_level;
  // Binomial(max_level, 1 - eta) upper tail.
  double tail = 1.0;
  for (int l = 0; l < max_level; ++l) {
    tail -= std::exp(log_binomial(max_level, l) + (max_level - l) * std::log(eta) + l * std::log1p(-eta));
    if (tail < kKrausTailTol) return l;
  }
  return max_level;
}

std::vector<Operator> loss_kraus_operators(const LossChannel& channel, const TruncationConfig& trunc) {
  channel.validate();
  trunc.validate();
  const int d = trunc.dim;
  const int cutoff = std::min(channel.kraus_cutoff, d - 1);
  std::vector<Operator> ops;
  ops.reserve(static_cast<std::size_t>(cutoff) + 1);
  for (int l = 0; l <= cutoff; ++l) {
    CMatrix k = CMatrix::Zero(d, d);
    for (int m = l; m < d; ++m) k(m - l, m) = kraus_element(channel.eta, m, l);
    ops.emplace_back(std::move(k), trunc);
  }
  return ops;
}

DensityMatrix apply_loss(const DensityMatrix& rho, const LossChannel& channel) {
  const auto kraus = loss_kraus_operators(channel, rho.truncation());
  CMatrix out = CMatrix::Zero(rho.dim(), rho.dim());
  for (const auto& k : kraus) out += k.matrix() * rho.matrix() * k.matrix().adjoint();
  const double deficit = std::abs(rho.trace() - out.trace().real());
  if (deficit > kTraceDeficitTol) {
    throw TraceLossError("apply_loss: trace deficit " + error_number(deficit) + " with kraus_cutoff " +
                         std::to_string(channel.kraus_cutoff));
  }
  return DensityMatrix(std::move(out), rho.truncation());
}

TwoModeDensity apply_loss(const TwoModeDensity& rho, int mode, const LossChannel& channel) {
  validate_mode(mode);
  const auto& trunc = rho.truncation();
  const auto kraus = loss_kraus_operators(channel, trunc);
  const Operator id = identity_op(trunc);
  CMatrix out = CMatrix::Zero(rho.matrix().rows(), rho.matrix().cols());
  for (const auto& k : kraus) {
    const CMatrix big = (mode == 1 ? tensor(k, id) : tensor(id, k)).matrix();
    out += big * rho.matrix() * big.adjoint();
  }
  const double deficit = std::abs(rho.trace() - out.trace().real());
  if (deficit > kTraceDeficitTol) {
    throw TraceLossError("apply_loss: trace deficit " + error_number(deficit) + " with kraus_cutoff " +
                         std::to_string(channel.kraus_cutoff));
  }
  return TwoModeDensity(std::move(out), trunc);
}

Operator displacement(Complex gamma, const TruncationConfig& trunc) {
  trunc.validate();
  const int d = trunc.dim;
  CMatrix m = CMatrix::Zero(d, d);
  // First column is the coherent state; the rest follows from
  // D|n> = (a^dag - gamma^*) D|n-1> / sqrt(n).
  Complex c = std::exp(-0.5 * std::norm(gamma));
  for (int row = 0; row < d; ++row) {
    m(row, 0) = c;
    c *= gamma / std::sqrt(row + 1.0);
  }
  const Complex gc = std::conj(gamma);
  for (int col = 1; col < d; ++col) {
    const double inv = 1.0 / std::sqrt(static_cast<double>(col));
    m(0, col) = -gc * m(0, col - 1) * inv;
    for (int row = 1; row < d; ++row) {
      m(row, col) = (std::sqrt(static_cast<double>(row)) * m(row - 1, col - 1) - gc * m(row, col - 1)) * inv;
    }
  }
  return Operator(std::move(m), trunc);
}

}  // namespace catgen
