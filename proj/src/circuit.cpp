#include "catgen/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "catgen/optics.hpp"
#include "catgen/states.hpp"

namespace catgen {

Complex output_amplitude(double alpha) { return alpha * std::polar(1.0, std::numbers::pi / 4.0); }

TruncationConfig circuit_truncation(double alpha, double tail_tol, int max_outcome) {
  if (max_outcome < 0) throw ArgumentError("circuit_truncation: max_outcome must be >= 0");
  TruncationConfig joint = TruncationConfig::for_amplitude(std::numbers::sqrt2 * alpha, tail_tol);
  // Outcome n leaves mode 1 with levels up to dim - 1 - n.
  joint.dim = std::max(joint.dim, TruncationConfig::for_amplitude(alpha, tail_tol).dim + max_outcome);
  return joint;
}

TwoModeState cat_circuit(double alpha, const TruncationConfig& trunc) {
  const FockState first = two_cat(alpha, {CatAxis::real, CatParity::even}, trunc);
  const FockState second = two_cat(alpha, {CatAxis::imaginary, CatParity::even}, trunc);
  return interfere(first, second);
}

FockState cat_target(double alpha, int n, const TruncationConfig& trunc) {
  return four_cat(output_amplitude(alpha), n % 4, trunc);
}

}  // namespace catgen
