#pragma once

// Figures of merit: pure-target and Uhlmann fidelity, the Wigner function
// and the displacement quantum Fisher information.

#include <optional>
#include <vector>

#include "catgen/fock.hpp"

namespace catgen {

/// <target| rho |target>, clamped to [0, 1].
double fidelity_pure(const DensityMatrix& rho, const FockState& target);

/// (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2, evaluated as the squared nuclear
/// norm of sqrt(rho) sqrt(sigma). Eigenvalues in [-1e-6, 0) are clamped to
/// zero; anything more negative raises NonPositiveError.
double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

struct WignerGridSpec {
  double x_min = -4.0, x_max = 4.0;
  double p_min = -4.0, p_max = 4.0;
  int n_x = 81, n_p = 81;

  void validate() const;
  double x(int i) const;
  double p(int j) const;
};

struct WignerGrid {
  WignerGridSpec spec;
  Eigen::MatrixXd values;  ///< n_p x n_x, row j is quadrature p(j)
  bool reliable = true;    ///< false if some |gamma|^2 > dim/4
  double max_imag_residue = 0.0;

  /// Trapezoidal integral over the grid with the measure d^2 gamma =
  /// dx dp / 2 under which W is normalized to one.
  double integral() const;
};

/// W(x, p) = (2/pi) Tr[rho D(gamma) P D(gamma)^dag], gamma = (x + i p)/sqrt2,
/// P the photon-number parity. Uses D(gamma) P D(gamma)^dag = D(2 gamma) P.
WignerGrid wigner(const DensityMatrix& rho, const WignerGridSpec& spec);

/// Single-point evaluation.
double wigner_at(const DensityMatrix& rho, double x, double p);

struct QfiEstimate {
  double value = 0.0;
  double epsilon_used = 0.0;
  double phi = 0.0;
  double richardson_residual = 0.0;
};

inline constexpr double kDefaultQfiEpsilon = 1e-3;

/// 8 (1 - sqrt F(rho, D rho D^dag)) / eps^2 with D = D(eps e^{i phi}),
/// evaluated at eps and eps/2 and Richardson-extrapolated.
QfiEstimate qfi_displacement(const DensityMatrix& rho, double phi, double epsilon = kDefaultQfiEpsilon);

struct OutcomeFidelity {
  int n;
  double probability;
  double fidelity;
};

struct HeraldedFidelity {
  double mean = 0.0;
  double std = 0.0;
  double total_probability = 0.0;  ///< probability mass of the outcomes averaged over
  std::vector<OutcomeFidelity> per_outcome;
};

/// Probability-weighted fidelity of the cat circuit's heralded states with
/// |Phi_{n mod 4}(alpha e^{i pi/4})> for a PNRD of efficiency eta, outcomes
/// n = 0..min(n_cutoff, dim - 1). When `residue` is set only outcomes n = residue (mod 4)
/// enter the average.
HeraldedFidelity mean_heralded_fidelity(double alpha, double eta, int n_cutoff = 20,
                                        std::optional<int> residue = std::nullopt,
                                        std::optional<TruncationConfig> trunc = std::nullopt);

}  // namespace catgen
