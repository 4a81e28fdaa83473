#include "catgen/states.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

namespace catgen {

namespace {

constexpr int kMaxPaddedDim = 2000;

void check_tail(double tail, const TruncationConfig& trunc, const char* what) {
  if (tail > trunc.tail_tol) {
    throw TruncationError(std::string(what) + ": discarded tail " + error_number(tail) + " exceeds tail_tol " +
                          error_number(trunc.tail_tol) + " at dim " + std::to_string(trunc.dim));
  }
}

// Normalized state proportional to sum_{n = residue (mod modulus)} c^n / sqrt(n!) |n>.
// The common factor c^residue is divided out (keeping its phase) so that the
// recursion never underflows for tiny |c|; the infinite-series norm is
// accumulated past the cutoff to measure the discarded tail.
FockState fock_comb(Complex c, int modulus, int residue, const TruncationConfig& trunc, const char* what) {
  trunc.validate();
  const int d = trunc.dim;
  const double mag = std::abs(c);
  if (mag == 0.0) {
    if (residue != 0) throw ZeroNormError(std::string(what) + ": zero amplitude with nonzero residue class");
    return FockState::basis(0, trunc);
  }

  CVector amps = CVector::Zero(d);
  Complex term = 1.0;  // c^(n - residue) sqrt(residue! / n!)
  double kept = 0.0;
  double dropped = 0.0;
  const double peak = mag * mag;
  for (int n = residue;; ++n) {
    if ((n - residue) % modulus == 0) {
      const double w = std::norm(term);
      if (n < d) {
        amps(n) = term;
        kept += w;
      } else {
        dropped += w;
        if (n > peak && w <= std::numeric_limits<double>::epsilon() * 1e-4 * (kept + dropped)) break;
      }
    }
    term *= c / std::sqrt(static_cast<double>(n + 1));
    if (n > d + 100000) break;
  }
  const double tail = dropped / (kept + dropped);
  check_tail(tail, trunc, what);

  const Complex phase = std::pow(c / mag, residue);
  amps *= phase / std::sqrt(kept);
  return FockState(std::move(amps), trunc, tail);
}

}  // namespace

FockState coherent(Complex alpha, const TruncationConfig& trunc) { return fock_comb(alpha, 1, 0, trunc, "coherent"); }

FockState two_cat(Complex alpha, CatPhase phase, const TruncationConfig& trunc) {
  const Complex c = phase.axis == CatAxis::real ? alpha : Complex(0.0, 1.0) * alpha;
  return fock_comb(c, 2, phase.parity == CatParity::even ? 0 : 1, trunc, "two_cat");
}

double two_cat_normalization(Complex alpha, CatParity parity) {
  const double overlap = std::exp(-2.0 * std::norm(alpha));
  return std::sqrt(2.0 * (parity == CatParity::even ? 1.0 + overlap : 1.0 - overlap));
}

FockState four_cat(Complex beta, int k, const TruncationConfig& trunc) {
  if (k < 0 || k > 3) throw ArgumentError("four_cat: k must be in 0..3");
  return fock_comb(beta, 4, k, trunc, "four_cat");
}

CVector squeezed_vacuum_series(double r, SqueezeSign sign, int levels) {
  if (r < 0.0) throw ArgumentError("squeezing parameter must be >= 0");
  CVector amps = CVector::Zero(levels);
  const double t = (sign == SqueezeSign::S ? -1.0 : 1.0) * std::tanh(r);
  double a = 1.0 / std::sqrt(std::cosh(r));
  for (int n = 0; 2 * n < levels; ++n) {
    amps(2 * n) = a;
    a *= t * std::sqrt((2.0 * n + 1.0) / (2.0 * n + 2.0));
  }
  return amps;
}

FockState squeezed_vacuum(double r, SqueezeSign sign, const TruncationConfig& trunc) {
  trunc.validate();
  CVector amps = squeezed_vacuum_series(r, sign, trunc.dim);
  const double kept = amps.squaredNorm();
  const double tail = std::max(0.0, 1.0 - kept);
  check_tail(tail, trunc, "squeezed_vacuum");
  amps /= std::sqrt(kept);
  return FockState(std::move(amps), trunc, tail);
}

FockState squeezed_vacuum_expm(double r, SqueezeSign sign, const TruncationConfig& trunc, int pad) {
  trunc.validate();
  if (r < 0.0) throw ArgumentError("squeezing parameter must be >= 0");
  if (pad < 0) {
    const double t = std::tanh(r);
    const double target = std::max(trunc.tail_tol, 1e-300) * 1e-2;
    const int needed = t > 0.0 ? static_cast<int>(std::ceil(2.0 * std::log(target) / std::log(t))) : 0;
    pad = std::max(needed - trunc.dim, 8);
  }
  const int big = trunc.dim + pad;
  if (big > kMaxPaddedDim) throw TruncationError("squeezed_vacuum_expm: padded dimension too large");

  const TruncationConfig padded{big, trunc.tail_tol};
  const CMatrix a = annihilation_op(padded).matrix();
  CMatrix generator = 0.5 * r * (a * a - a.adjoint() * a.adjoint());
  if (sign == SqueezeSign::S_dagger) generator = -generator;
  const CMatrix u = generator.exp();
  const CVector column = u.col(0);

  CVector amps = column.head(trunc.dim);
  const double kept = amps.squaredNorm();
  const double tail = std::max(0.0, column.squaredNorm() - kept);
  check_tail(tail, trunc, "squeezed_vacuum_expm");
  amps /= std::sqrt(kept);
  return FockState(std::move(amps), trunc, tail);
}

Subtracted photon_subtract(const FockState& state) {
  const FockState lowered = apply(annihilation_op(state.truncation()), state);
  const double weight = lowered.norm();
  if (!(weight >= kZeroNormThreshold)) throw ZeroNormError("photon_subtract: state is annihilated");
  return {FockState(lowered.amplitudes() / weight, state.truncation(), state.discarded_tail()), weight};
}

}  // namespace catgen
