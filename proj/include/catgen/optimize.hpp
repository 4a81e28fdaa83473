#pragma once

#include <functional>

namespace catgen {

struct ScalarMaximum {
  double x = 0.0;
  double value = 0.0;
  double lo = 0.0;  ///< final bracket
  double hi = 0.0;
  int iterations = 0;
};

/// Golden-section search for the maximum of a unimodal f on [lo, hi],
/// stopping once the bracket is narrower than x_tol.
ScalarMaximum golden_section_maximize(const std::function<double(double)>& f, double lo, double hi,
                                      double x_tol = 1e-6, int max_iterations = 200);

/// Coarse scan of `points` equally spaced samples on [lo, hi] followed by
/// golden-section refinement inside the two cells around the best sample.
ScalarMaximum grid_then_golden_maximize(const std::function<double(double)>& f, double lo, double hi, int points,
                                        double x_tol = 1e-6);

}  // namespace catgen
