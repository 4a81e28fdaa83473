#pragma once

// Detector models and heralded conditional states.

#include <optional>
#include <vector>

#include "catgen/fock.hpp"

namespace catgen {

/// One measurement outcome on the heralding mode.
struct HeraldRecord {
  int n = 0;
  double probability = 0.0;
  /// Normalized state of the unmeasured mode; empty when the outcome has
  /// probability below the zero-norm threshold.
  std::optional<DensityMatrix> conditional;

  /// The conditional state, or ZeroNormError for an impossible outcome.
  const DensityMatrix& state() const;
};

struct OutcomeDistribution {
  std::vector<HeraldRecord> records;  ///< outcomes n = 0..n_cutoff in order
  double residual = 0.0;              ///< 1 - sum of probabilities (outcomes beyond the cutoff and truncation)
};

enum class DetectorKind { pnrd, onoff, multiplexed_onoff };

struct DetectorModel {
  DetectorKind kind = DetectorKind::pnrd;
  double eta = 1.0;
  int m = 1;  ///< number of on-off detectors (multiplexed only)

  void validate() const;

  /// POVM element of the heralding event: exactly one click for the on-off
  /// kinds, with the efficiency folded in as binomial photon loss.
  Operator click_povm(const TruncationConfig& trunc) const;
  /// POVM element of "n photons counted" for the pnrd kind.
  Operator count_povm(int n, const TruncationConfig& trunc) const;
};

/// Ideal projection of `measured_mode` onto |n>.
HeraldRecord pnrd_project(const TwoModeState& psi, int measured_mode, int n);

/// Transmission-eta loss on the measured mode followed by an ideal PNRD;
/// outcomes n = 0..n_cutoff. Loss acts on the joint state, so conditionals
/// keep the correlations carried away by the lost photons.
OutcomeDistribution pnrd_outcome_distribution(const TwoModeState& psi, int measured_mode, double eta,
                                              int n_cutoff = 20);

/// Exactly-one-click POVM of m multiplexed on-off detectors:
/// sum_{n>=1} m^{-(n-1)} |n><n|. For m = 1 this is I - |0><0|.
Operator onoff_click_povm(int m, const TruncationConfig& trunc);

/// Binomial-loss image of a diagonal POVM: E'(n) = sum_k C(n,k) eta^k (1-eta)^(n-k) E(k).
Operator lossy_povm(const Operator& povm, double eta);

struct Conditioned {
  double probability;
  DensityMatrix conditional;
};

/// probability = Tr[(E on measured mode) rho]; conditional is the
/// normalized reduced state of the other mode after sqrt(E) conditioning.
Conditioned condition_on_povm(const TwoModeDensity& rho, int measured_mode, const Operator& povm);
/// Same for a pure joint state without forming the two-mode density matrix.
Conditioned condition_on_povm(const TwoModeState& psi, int measured_mode, const Operator& povm);

/// Probability of projecting the heralding mode of the ideal cat circuit
/// onto vacuum.
double success_probability_closed_form(Complex beta);

}  // namespace catgen
