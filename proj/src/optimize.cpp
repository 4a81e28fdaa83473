#include "catgen/optimize.hpp"

#include <algorithm>
#include <cmath>

#include "catgen/errors.hpp"

namespace catgen {

ScalarMaximum golden_section_maximize(const std::function<double(double)>& f, double lo, double hi, double x_tol,
                                      int max_iterations) {
  if (!(hi >= lo)) throw ArgumentError("golden_section_maximize: empty bracket");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  int it = 0;
  while (b - a > x_tol && it < max_iterations) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    ++it;
  }
  ScalarMaximum best{fc >= fd ? c : d, std::max(fc, fd), a, b, it};
  // The bracket ends are never evaluated inside the loop; keep them honest.
  for (double edge : {a, b}) {
    const double fe = f(edge);
    if (fe > best.value) {
      best.x = edge;
      best.value = fe;
    }
  }
  return best;
}

ScalarMaximum grid_then_golden_maximize(const std::function<double(double)>& f, double lo, double hi, int points,
                                        double x_tol) {
  if (points < 3) throw ArgumentError("grid_then_golden_maximize: need at least 3 grid points");
  if (!(hi > lo)) throw ArgumentError("grid_then_golden_maximize: empty interval");
  const double step = (hi - lo) / (points - 1);
  int best = 0;
  double best_value = f(lo);
  for (int i = 1; i < points; ++i) {
    const double v = f(lo + step * i);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  const double a = lo + step * std::max(0, best - 1);
  const double b = lo + step * std::min(points - 1, best + 1);
  ScalarMaximum refined = golden_section_maximize(f, a, b, x_tol);
  if (best_value > refined.value) {
    refined.x = lo + step * best;
    refined.value = best_value;
    refined.lo = refined.hi = refined.x;
  }
  refined.iterations += points;
  return refined;
}

}  // namespace catgen
