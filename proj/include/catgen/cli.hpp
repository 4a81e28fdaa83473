#pragma once

// Command-line front end: figure sweeps, state dumps, Wigner grids and QFI.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "catgen/fock.hpp"

namespace catgen {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

/// Parses "a,b,c" where each item is a number or an inclusive range
/// lo:hi:step (hi is kept if reached within 1e-12).
std::vector<double> parse_grid(const std::string& text);
std::vector<int> parse_int_grid(const std::string& text);

/// "45deg" or a plain number of radians.
double parse_angle(const std::string& text);

/// A state named on the command line, e.g. "coherent:1.0",
/// "four_cat:1.5@45deg:0", "herald:2.5:0.9:0".
struct StateSpec {
  std::string kind;
  std::vector<std::string> args;
  std::string text;

  static StateSpec parse(const std::string& text);
  /// Truncation used when --dim is not given.
  TruncationConfig default_truncation(double tail_tol) const;
  DensityMatrix build(const TruncationConfig& trunc, int n_cutoff) const;
  /// Only for the pure kinds.
  FockState build_pure(const TruncationConfig& trunc) const;
  bool is_pure() const;
};

/// Entry point behind the catgen executable; returns the process exit code.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace catgen
