#pragma once

// Constructors for the input and target states of the four-component cat
// circuit. Every constructor renormalizes inside the truncated space and
// records the discarded tail; a tail above trunc.tail_tol is a
// TruncationError.

#include "catgen/fock.hpp"

namespace catgen {

enum class CatAxis { real, imaginary };  ///< components +-alpha or +-i*alpha
enum class CatParity { even, odd };
enum class SqueezeSign { S, S_dagger };  ///< S = exp(r/2 (a^2 - a^dag^2)), or its inverse

struct CatPhase {
  CatAxis axis = CatAxis::real;
  CatParity parity = CatParity::even;
};

FockState coherent(Complex alpha, const TruncationConfig& trunc);

/// (|c> + |-c>) or (|c> - |-c>), normalized; c = alpha or i*alpha.
FockState two_cat(Complex alpha, CatPhase phase, const TruncationConfig& trunc);

/// Closed-form normalization of |alpha> +- |-alpha>:
/// sqrt(2 (1 +- exp(-2|alpha|^2))).
double two_cat_normalization(Complex alpha, CatParity parity);

/// Four-component cat |Phi_k(beta)>, support on n = k (mod 4).
FockState four_cat(Complex beta, int k, const TruncationConfig& trunc);

/// Squeezed vacuum from the closed-form Fock series
/// amplitude(2n) = (-+tanh r)^n sqrt((2n)!) / (2^n n! sqrt(cosh r)).
FockState squeezed_vacuum(double r, SqueezeSign sign, const TruncationConfig& trunc);

/// Same state via scaling-and-squaring exponentiation of the quadratic
/// generator on a padded space, then truncated back to trunc.dim. The pad
/// defaults to a size that pushes the top-level leakage below tail_tol.
FockState squeezed_vacuum_expm(double r, SqueezeSign sign, const TruncationConfig& trunc, int pad = -1);

/// Unnormalized squeezed-vacuum amplitudes, exact level by level (no
/// truncation renormalization). Used where only low blocks matter.
CVector squeezed_vacuum_series(double r, SqueezeSign sign, int levels);

struct Subtracted {
  FockState state;  ///< normalized a|psi>
  double weight;    ///< ||a|psi>|| before normalization
};

/// Normalized a|psi>. ZeroNormError on the vacuum or any other kernel state.
Subtracted photon_subtract(const FockState& state);

}  // namespace catgen
