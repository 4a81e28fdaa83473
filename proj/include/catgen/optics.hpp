#pragma once

// Circuit elements: the balanced beam splitter, the bosonic loss channel
// and the displacement operator.

#include <numbers>
#include <vector>

#include "catgen/fock.hpp"

namespace catgen {

/// Beam splitter exp(theta (a1^dag a2 - a1 a2^dag)), stored as one real
/// orthogonal block per total photon number N. Phase convention: coherent
/// inputs |a>|g> leave as |(a + g)/sqrt2>|(g - a)/sqrt2> at theta = pi/4,
/// so (|a> + |-a>)(|ia> + |-ia>) maps onto |b>|ib> + |-ib>|-b> + |ib>|b> +
/// |-b>|-ib> with b = a e^{i pi/4}.
///
/// Only blocks N <= dim-1 fit completely inside the truncation; amplitude in
/// the incomplete blocks N >= dim is dropped (see leakage()).
class BeamSplitter {
 public:
  explicit BeamSplitter(const TruncationConfig& trunc, double theta = std::numbers::pi / 4.0);

  const TruncationConfig& truncation() const { return trunc_; }
  double theta() const { return theta_; }

  /// Orthogonal block acting on |j, N - j>, j = 0..N.
  const Eigen::MatrixXd& block(int total) const { return blocks_.at(static_cast<std::size_t>(total)); }

  TwoModeState apply(const TwoModeState& state) const;
  TwoModeOperator matrix() const;

  /// Squared norm of the part of `state` living in incomplete blocks.
  double leakage(const TwoModeState& state) const;

 private:
  TruncationConfig trunc_;
  double theta_;
  std::vector<Eigen::MatrixXd> blocks_;
};

/// Dense balanced beam splitter on the two-mode truncated space.
TwoModeOperator beam_splitter_unitary(const TruncationConfig& trunc);

/// U_BS (a (x) b).
TwoModeState interfere(const FockState& a, const FockState& b);

struct LossChannel {
  double eta = 1.0;      ///< transmission
  int kraus_cutoff = 0;  ///< largest number of lost photons kept

  void validate() const;
  /// Channel whose cutoff keeps the binomial loss tail of the top occupied
  /// level below 1e-12.
  static LossChannel for_level(double eta, int max_level);
};

/// Smallest L with P(more than L of `max_level` photons lost) < 1e-12.
int default_kraus_cutoff(double eta, int max_level);

/// K_l = sqrt((1-eta)^l / l!) eta^{n/2} a^l for l = 0..kraus_cutoff.
std::vector<Operator> loss_kraus_operators(const LossChannel& channel, const TruncationConfig& trunc);

/// Sum_l K_l rho K_l^dag. Throws TraceLossError when the trace deficit
/// exceeds 1e-9.
DensityMatrix apply_loss(const DensityMatrix& rho, const LossChannel& channel);

/// Loss on one mode of a two-mode density matrix.
TwoModeDensity apply_loss(const TwoModeDensity& rho, int mode, const LossChannel& channel);

/// D(gamma) = exp(gamma a^dag - gamma^* a), built from the exact
/// infinite-space matrix elements restricted to the truncation.
Operator displacement(Complex gamma, const TruncationConfig& trunc);

}  // namespace catgen
