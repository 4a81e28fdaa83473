#pragma once

// Figure-reproduction runners and the squeezed-input optimizer.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "catgen/detection.hpp"
#include "catgen/fock.hpp"
#include "catgen/metrics.hpp"

namespace catgen {

/// Tabular experiment output. Rows are written in grid order regardless of
/// how many threads computed them.
struct SweepResult {
  std::vector<std::string> schema;
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<std::string, std::string>> metadata;

  void add_meta(std::string key, std::string value) { metadata.emplace_back(std::move(key), std::move(value)); }
};

/// Shared knobs of every sweep.
struct SweepOptions {
  std::optional<int> dim;  ///< fixed Hilbert dimension; per-row heuristic otherwise
  double tail_tol = 1e-10;
  int n_cutoff = 20;
  int threads = 1;

  /// Truncation for a row whose largest amplitude is `amplitude`.
  TruncationConfig truncation_for(double amplitude) const;
  /// Truncation for the two-mode cat circuit at input amplitude alpha.
  TruncationConfig circuit_truncation_for(double alpha) const;
};

// ---------------------------------------------------------------------------
// Photon-subtracted squeezed inputs

/// Lower and upper end of the squeezing search interval.
inline constexpr double kSqueezeMin = 0.01;
inline constexpr double kSqueezeMax = 2.5;

/// Outcome n heralds a superposition of |n-2> and |n+2>, so the matching
/// four-component cat class is (n + 2) mod 4.
int subtracted_target_class(int n);

/// a1 S1 |0> (x) a2 S2^dag |0> through the beam splitter, mode 2 projected
/// on |n>. The inputs use exact Fock amplitudes and the beam splitter only
/// needs total-photon blocks up to 2n + 2, so the result is exact for any r
/// independently of how heavy the squeezed tails are. The conditional is
/// returned in `trunc` (requires n + 2 < trunc.dim).
HeraldRecord herald_from_subtracted(double r, int n, const TruncationConfig& trunc);

/// Unnormalized analytic heralded state
/// sqrt(n(n-1)) |n-2> - sqrt((n+2)(n+1)) tanh^2(r) |n+2>.
CVector subtracted_herald_analytic(double r, int n, int dim);

struct OptimizationResult {
  double r_star = 0.0;
  double fidelity_at_r_star = 0.0;
  double probability_at_r_star = 0.0;
  double r_lo = 0.0;
  double r_hi = 0.0;
  int iterations = 0;
  int k_target = 0;
  bool flat = false;  ///< objective independent of r (n < 2)
};

/// Fidelity of the subtracted-input herald (outcome n, squeezing r) with
/// |Phi_{(n+2) mod 4}(beta_target e^{i pi/4})>.
double subtracted_fidelity(double r, int n, double beta_target);

/// Maximizes subtracted_fidelity over r in [0.01, 2.5]: 64-point scan, then
/// golden-section refinement to a bracket below 1e-5.
OptimizationResult optimize_squeezing(double beta_target, int n);

// ---------------------------------------------------------------------------
// Figure runners

/// Columns abs_beta, eta, mean_fidelity, std_fidelity.
SweepResult run_fig2(const std::vector<double>& beta_list, const std::vector<double>& eta_grid,
                     const SweepOptions& opts = {});

struct WignerPanel {
  std::string label;
  double abs_beta;
  double eta;
  WignerGrid grid;
};

/// State heralded by the class n = residue (mod 4), outcomes up to n_cutoff:
/// the probability-weighted mixture of the individual conditionals.
DensityMatrix heralded_class_state(double alpha, double eta, int residue, int n_cutoff,
                                   const TruncationConfig& trunc);

/// Wigner panels (i)-(iv): class n = 0 (mod 4) at eta = 0.9 for |beta| = 1.5
/// and 2.5, then the same amplitudes at eta = 1.
std::vector<WignerPanel> fig2_wigner_panels(const WignerGridSpec& grid, const SweepOptions& opts = {});

/// Columns abs_beta, eta, phi, qfi, richardson_residual. The qfi is that of
/// the class n = 0 (mod 4) heralded state. Rows with eta = -1 are the
/// coherent-state reference |alpha = |beta||.
SweepResult run_fig3(const std::vector<double>& beta_grid, const std::vector<double>& eta_list,
                     const std::vector<double>& phi_samples, const SweepOptions& opts = {});

/// Columns abs_alpha, m, fidelity, probability for the exactly-one-click
/// herald of m multiplexed on-off detectors.
SweepResult run_fig4(const std::vector<double>& alpha_grid, const std::vector<int>& m_list,
                     const SweepOptions& opts = {});

/// Fidelity of the one-click herald against the best-matching |Phi_k>.
struct ClickHerald {
  double fidelity;
  double probability;
  int k_best;
};
ClickHerald click_herald(double alpha, int m, const TruncationConfig& trunc);

/// Columns n, beta_target, r_star, fidelity, outcome_probability.
SweepResult run_fig5(const std::vector<int>& n_list, const std::vector<double>& beta_grid,
                     const SweepOptions& opts = {});

// ---------------------------------------------------------------------------
// Serialization

/// Header row, comma separator, %.12g numbers, LF line endings.
std::string to_csv(const SweepResult& result);
/// {"schema": [...], "rows": [[...]], "metadata": {...}}
std::string to_json(const SweepResult& result);
/// {"dim": d, "amplitudes": [[re, im], ...], "metadata": {...}}
std::string state_to_json(const FockState& state, const std::vector<std::pair<std::string, std::string>>& metadata);
std::string format_number(double value);

}  // namespace catgen
