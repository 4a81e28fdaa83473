#include "catgen/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "catgen/circuit.hpp"
#include "catgen/detection.hpp"
#include "catgen/optics.hpp"

namespace catgen {

namespace {

constexpr double kClampTol = 1e-6;
constexpr double kPurityTol = 1e-12;
// Eigenvalues below this (relative to the trace) are outside the support;
// their square roots would otherwise inject ~1e-8 noise into the fidelity.
constexpr double kSupportTol = 1e-14;

struct Spectrum {
  Eigen::VectorXd values;
  CMatrix vectors;
};

Spectrum clamped_spectrum(const DensityMatrix& rho, const char* which) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(0.5 * (rho.matrix() + rho.matrix().adjoint()));
  if (solver.info() != Eigen::Success) throw NumericalError("uhlmann_fidelity: eigendecomposition failed");
  Eigen::VectorXd w = solver.eigenvalues();
  if (w.minCoeff() < -kClampTol) {
    throw NonPositiveError(std::string("uhlmann_fidelity: ") + which + " has eigenvalue " +
                           error_number(w.minCoeff()));
  }
  const double floor = kSupportTol * std::max(1.0, w.maxCoeff());
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (w(i) < floor) w(i) = 0.0;
  }
  return {std::move(w), solver.eigenvectors()};
}

CMatrix support_root(const Spectrum& s) {
  // Columns sqrt(lambda_i) v_i for the nonzero eigenvalues only.
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < s.values.size(); ++i) {
    if (s.values(i) > 0.0) keep.push_back(i);
  }
  CMatrix out(s.vectors.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    out.col(static_cast<Eigen::Index>(c)) = std::sqrt(s.values(keep[c])) * s.vectors.col(keep[c]);
  }
  return out;
}

double clamp01(double f) { return std::clamp(f, 0.0, 1.0); }

double quadratic_form(const CMatrix& m, const CVector& v) { return v.dot(m * v).real(); }

}  // namespace

double fidelity_pure(const DensityMatrix& rho, const FockState& target) {
  if (!(rho.truncation() == target.truncation())) throw ArgumentError("fidelity_pure: mismatched truncation");
  return clamp01(quadratic_form(rho.matrix(), target.amplitudes()));
}

double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (!(rho.truncation() == sigma.truncation())) throw ArgumentError("uhlmann_fidelity: mismatched truncation");
  const Spectrum a = clamped_spectrum(rho, "rho");
  const Spectrum b = clamped_spectrum(sigma, "sigma");

  // A pure argument reduces the fidelity to an expectation value.
  const Eigen::Index ia = a.values.size() - 1;
  const Eigen::Index ib = b.values.size() - 1;
  if (a.values(ia) >= 1.0 - kPurityTol) return clamp01(quadratic_form(sigma.matrix(), a.vectors.col(ia)));
  if (b.values(ib) >= 1.0 - kPurityTol) return clamp01(quadratic_form(rho.matrix(), b.vectors.col(ib)));

  // sqrt(rho) sqrt(sigma) = Ra Va^dag Vb Rb^dag restricted to the supports;
  // its singular values equal those of Ra^dag Rb.
  const CMatrix ra = support_root(a);
  const CMatrix rb = support_root(b);
  if (ra.cols() == 0 || rb.cols() == 0) return 0.0;
  const CMatrix overlap = ra.adjoint() * rb;
  Eigen::JacobiSVD<CMatrix> svd(overlap);
  const double nuclear = svd.singularValues().sum();
  return clamp01(nuclear * nuclear);
}

void WignerGridSpec::validate() const {
  if (n_x < 1 || n_p < 1) throw ArgumentError("wigner grid needs at least one point per axis");
  if (!(std::isfinite(x_min) && std::isfinite(x_max) && std::isfinite(p_min) && std::isfinite(p_max))) {
    throw ArgumentError("wigner grid bounds must be finite");
  }
  if (x_max < x_min || p_max < p_min) throw ArgumentError("wigner grid bounds are inverted");
}

double WignerGridSpec::x(int i) const { return n_x == 1 ? x_min : x_min + (x_max - x_min) * i / (n_x - 1); }
double WignerGridSpec::p(int j) const { return n_p == 1 ? p_min : p_min + (p_max - p_min) * j / (n_p - 1); }

double WignerGrid::integral() const {
  const double dx = spec.n_x > 1 ? (spec.x_max - spec.x_min) / (spec.n_x - 1) : 0.0;
  const double dp = spec.n_p > 1 ? (spec.p_max - spec.p_min) / (spec.n_p - 1) : 0.0;
  double acc = 0.0;
  for (int j = 0; j < spec.n_p; ++j) {
    const double wp = (j == 0 || j == spec.n_p - 1) ? 0.5 : 1.0;
    for (int i = 0; i < spec.n_x; ++i) {
      const double wx = (i == 0 || i == spec.n_x - 1) ? 0.5 : 1.0;
      acc += wp * wx * values(j, i);
    }
  }
  return 0.5 * acc * dx * dp;
}

namespace {

Complex wigner_raw(const CMatrix& rho, Complex gamma, const TruncationConfig& trunc) {
  const CMatrix d2 = displacement(2.0 * gamma, trunc).matrix();
  Complex acc = 0.0;
  for (int i = 0; i < trunc.dim; ++i) {
    const Complex diag = rho.row(i).transpose().cwiseProduct(d2.col(i)).sum();
    acc += (i % 2 == 0) ? diag : -diag;
  }
  return acc * (2.0 / std::numbers::pi);
}

}  // namespace

WignerGrid wigner(const DensityMatrix& rho, const WignerGridSpec& spec) {
  spec.validate();
  WignerGrid grid{spec, Eigen::MatrixXd(spec.n_p, spec.n_x), true, 0.0};
  const double reliable_radius2 = rho.dim() / 4.0;
  for (int j = 0; j < spec.n_p; ++j) {
    for (int i = 0; i < spec.n_x; ++i) {
      const Complex gamma = Complex(spec.x(i), spec.p(j)) / std::numbers::sqrt2;
      if (std::norm(gamma) > reliable_radius2) grid.reliable = false;
      const Complex w = wigner_raw(rho.matrix(), gamma, rho.truncation());
      grid.max_imag_residue = std::max(grid.max_imag_residue, std::abs(w.imag()));
      grid.values(j, i) = w.real();
    }
  }
  if (grid.max_imag_residue > 1e-9) grid.reliable = false;
  return grid;
}

double wigner_at(const DensityMatrix& rho, double x, double p) {
  return wigner_raw(rho.matrix(), Complex(x, p) / std::numbers::sqrt2, rho.truncation()).real();
}

QfiEstimate qfi_displacement(const DensityMatrix& rho, double phi, double epsilon) {
  if (!(epsilon >= 1e-4 && epsilon <= 1e-1)) throw ArgumentError("qfi_displacement: epsilon must lie in [1e-4, 1e-1]");
  auto estimate = [&](double eps) {
    const CMatrix d = displacement(std::polar(eps, phi), rho.truncation()).matrix();
    const DensityMatrix shifted(d * rho.matrix() * d.adjoint(), rho.truncation());
    const double f = uhlmann_fidelity(rho, shifted);
    return 8.0 * (1.0 - std::sqrt(f)) / (eps * eps);
  };
  const double coarse = estimate(epsilon);
  const double fine = estimate(0.5 * epsilon);
  const double extrapolated = (4.0 * fine - coarse) / 3.0;
  return {extrapolated, epsilon, phi, std::abs(extrapolated - fine)};
}

HeraldedFidelity mean_heralded_fidelity(double alpha, double eta, int n_cutoff, std::optional<int> residue,
                                        std::optional<TruncationConfig> trunc) {
  if (residue && (*residue < 0 || *residue > 3)) throw ArgumentError("mean_heralded_fidelity: residue must be 0..3");
  const TruncationConfig tc = trunc.value_or(circuit_truncation(alpha, 1e-10, n_cutoff));
  const TwoModeState psi = cat_circuit(alpha, tc);
  const OutcomeDistribution dist = pnrd_outcome_distribution(psi, kHeraldMode, eta, std::min(n_cutoff, tc.dim - 1));

  HeraldedFidelity out;
  double weighted = 0.0;
  for (const auto& rec : dist.records) {
    if (residue && rec.n % 4 != *residue) continue;
    if (!rec.conditional) continue;
    const double f = fidelity_pure(*rec.conditional, cat_target(alpha, rec.n, tc));
    out.per_outcome.push_back({rec.n, rec.probability, f});
    out.total_probability += rec.probability;
    weighted += rec.probability * f;
  }
  if (!(out.total_probability >= kZeroNormThreshold)) throw ZeroNormError("mean_heralded_fidelity: no outcome");
  out.mean = weighted / out.total_probability;
  double var = 0.0;
  for (const auto& o : out.per_outcome) var += o.probability * (o.fidelity - out.mean) * (o.fidelity - out.mean);
  out.std = std::sqrt(std::max(0.0, var / out.total_probability));
  return out;
}

}  // namespace catgen
