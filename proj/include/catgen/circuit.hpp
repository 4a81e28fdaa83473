#pragma once

// The four-component cat generator: two orthogonal-axis even cats of
// amplitude alpha on a balanced beam splitter, heralded on mode 2.

#include "catgen/fock.hpp"

namespace catgen {

/// Heralding mode of the circuit.
inline constexpr int kHeraldMode = 2;

/// Output cat amplitude beta = alpha e^{i pi/4}.
Complex output_amplitude(double alpha);

/// Truncation sized for the joint two-mode state: the default heuristic
/// evaluated at the total-photon amplitude sqrt(2) |alpha|, enlarged so that
/// every outcome n <= max_outcome still leaves the single-mode heuristic's
/// worth of levels for the heralded mode.
TruncationConfig circuit_truncation(double alpha, double tail_tol = 1e-10, int max_outcome = 20);

/// U_BS [ (|a> + |-a>) (x) (|ia> + |-ia>) ], normalized inputs.
TwoModeState cat_circuit(double alpha, const TruncationConfig& trunc);

/// Ideal state heralded by n photons: |Phi_{n mod 4}(alpha e^{i pi/4})>.
FockState cat_target(double alpha, int n, const TruncationConfig& trunc);

}  // namespace catgen
