#include <doctest.h>

#include <numbers>
#include <random>

#include "catgen/circuit.hpp"
#include "catgen/metrics.hpp"
#include "catgen/optics.hpp"
#include "catgen/states.hpp"
#include "oracles.hpp"

using namespace catgen;
using doctest::Approx;

namespace {

constexpr double kTwoOverPi = 2.0 / std::numbers::pi;

CMatrix random_psd(int dim, int rank, std::mt19937& rng) {
  std::normal_distribution<double> g;
  CMatrix a(dim, rank);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < rank; ++j) a(i, j) = Complex(g(rng), g(rng));
  }
  const CMatrix m = a * a.adjoint();
  return m / m.trace().real();
}

// (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2 through explicit matrix square roots.
double fidelity_by_sqrtm(const CMatrix& rho, const CMatrix& sigma) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho);
  const Eigen::VectorXd w = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const CMatrix root = es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
  const CMatrix inner = root * sigma * root;
  const Eigen::VectorXd m = Eigen::SelfAdjointEigenSolver<CMatrix>(0.5 * (inner + inner.adjoint())).eigenvalues();
  const double t = m.cwiseMax(0.0).cwiseSqrt().sum();
  return t * t;
}

// Generator of D(eps e^{i phi}) = exp(-i eps G).
CMatrix displacement_generator(double phi, int dim) {
  const CMatrix a = oracle::lowering(dim);
  const Complex e = std::polar(1.0, phi);
  return Complex(0.0, 1.0) * (e * a.adjoint() - std::conj(e) * a);
}

// Symmetric-logarithmic-derivative QFI: 2 sum (l_i - l_j)^2 / (l_i + l_j) |G_ij|^2.
double sld_qfi(const CMatrix& rho, const CMatrix& gen) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho);
  const Eigen::VectorXd l = es.eigenvalues();
  const CMatrix g = es.eigenvectors().adjoint() * gen * es.eigenvectors();
  double q = 0.0;
  for (int i = 0; i < l.size(); ++i) {
    for (int j = 0; j < l.size(); ++j) {
      const double s = l(i) + l(j);
      if (s > 1e-12) q += 2.0 * (l(i) - l(j)) * (l(i) - l(j)) / s * std::norm(g(i, j));
    }
  }
  return q;
}

double variance_qfi(const CVector& psi, const CMatrix& gen) {
  const Complex m1 = psi.dot(gen * psi);
  const Complex m2 = psi.dot(gen * (gen * psi));
  return 4.0 * (m2 - m1 * m1).real();
}

}  // namespace

TEST_CASE("pure-target fidelity") {
  const TruncationConfig t{6, 1e-10};
  CHECK(fidelity_pure(density(FockState::basis(2, t)), FockState::basis(2, t)) == Approx(1.0));
  CHECK(fidelity_pure(density(FockState::basis(0, t)), FockState::basis(1, t)) == 0.0);
  CMatrix mix = CMatrix::Zero(6, 6);
  mix(0, 0) = mix(1, 1) = 0.5;
  CHECK(fidelity_pure(DensityMatrix(mix, t), FockState::basis(0, t)) == Approx(0.5));
  CHECK_THROWS_AS(fidelity_pure(DensityMatrix(mix, t), FockState::basis(0, TruncationConfig{7, 1e-10})), ArgumentError);
}

TEST_CASE("Uhlmann fidelity against explicit square roots") {
  std::mt19937 rng(7);
  const TruncationConfig t{6, 1e-10};
  for (int trial = 0; trial < 5; ++trial) {
    const CMatrix r = random_psd(6, 6, rng), s = random_psd(6, 6, rng);
    const double f = uhlmann_fidelity(DensityMatrix(r, t), DensityMatrix(s, t));
    CHECK(f == Approx(fidelity_by_sqrtm(r, s)).epsilon(1e-9));
    CHECK(f == Approx(uhlmann_fidelity(DensityMatrix(s, t), DensityMatrix(r, t))).epsilon(1e-9));
    CHECK(uhlmann_fidelity(DensityMatrix(r, t), DensityMatrix(r, t)) == Approx(1.0).epsilon(1e-9));
    const CMatrix low = random_psd(6, 3, rng);
    CHECK(uhlmann_fidelity(DensityMatrix(r, t), DensityMatrix(low, t)) ==
          Approx(fidelity_by_sqrtm(r, low)).epsilon(1e-7));
  }
}

TEST_CASE("Uhlmann fidelity reduces to the pure-target fidelity") {
  std::mt19937 rng(11);
  const TruncationConfig t{6, 1e-10};
  for (int trial = 0; trial < 5; ++trial) {
    const CMatrix r = random_psd(6, 4, rng);
    CVector psi = random_psd(6, 1, rng).col(0);
    psi /= psi.norm();
    const FockState target(psi, t);
    const double pure = fidelity_pure(DensityMatrix(r, t), target);
    CHECK(std::abs(uhlmann_fidelity(DensityMatrix(r, t), density(target)) - pure) < 1e-10);
    CHECK(std::abs(uhlmann_fidelity(density(target), DensityMatrix(r, t)) - pure) < 1e-10);
  }
  CHECK(uhlmann_fidelity(density(FockState::basis(0, t)), density(FockState::basis(1, t))) == 0.0);
}

TEST_CASE("Uhlmann fidelity of commuting states") {
  const TruncationConfig t{4, 1e-10};
  const Eigen::Vector4d p(0.1, 0.2, 0.3, 0.4), q(0.4, 0.3, 0.2, 0.1);
  const double ref = std::pow(p.cwiseProduct(q).cwiseSqrt().sum(), 2);
  const DensityMatrix a(CMatrix(p.cast<Complex>().asDiagonal()), t);
  const DensityMatrix b(CMatrix(q.cast<Complex>().asDiagonal()), t);
  CHECK(uhlmann_fidelity(a, b) == Approx(ref).epsilon(1e-12));
}

TEST_CASE("Uhlmann fidelity rejects non-positive input") {
  const TruncationConfig t{3, 1e-10};
  CMatrix bad = CMatrix::Zero(3, 3);
  bad(0, 0) = 1.01;
  bad(1, 1) = -0.01;
  CHECK_THROWS_AS(uhlmann_fidelity(DensityMatrix(bad, t), density(FockState::basis(0, t))), NonPositiveError);
  CMatrix drift = CMatrix::Zero(3, 3);
  drift(0, 0) = 0.5;
  drift(1, 1) = 0.5 + 1e-8;
  drift(2, 2) = -1e-8;
  CHECK_NOTHROW(uhlmann_fidelity(DensityMatrix(drift, t), DensityMatrix(drift, t)));
}

TEST_CASE("Wigner function at the origin and its bound") {
  const TruncationConfig t{40, 1e-10};
  CHECK(wigner_at(density(FockState::basis(0, t)), 0.0, 0.0) == Approx(kTwoOverPi).epsilon(1e-12));
  CHECK(wigner_at(density(FockState::basis(1, t)), 0.0, 0.0) == Approx(-kTwoOverPi).epsilon(1e-12));
  CHECK(wigner_at(density(FockState::basis(4, t)), 0.0, 0.0) == Approx(kTwoOverPi).epsilon(1e-12));

  // Coherent state: (2/pi) exp(-2 |gamma - alpha|^2).
  const Complex alpha(0.8, -0.5);
  const DensityMatrix c = density(coherent(alpha, t));
  for (double x : {-1.0, 0.3, 1.5}) {
    for (double p : {-0.7, 0.0, 0.4}) {
      const Complex g = Complex(x, p) / std::numbers::sqrt2;
      CHECK(wigner_at(c, x, p) == Approx(kTwoOverPi * std::exp(-2.0 * std::norm(g - alpha))).epsilon(1e-10));
    }
  }

  const WignerGridSpec spec{-3, 3, -3, 3, 25, 25};
  const WignerGrid g = wigner(density(four_cat(std::polar(1.5, 0.785), 2, t)), spec);
  CHECK(g.values.cwiseAbs().maxCoeff() <= kTwoOverPi + 1e-9);
  CHECK(g.values.minCoeff() < 0.0);
  CHECK(g.reliable);
  CHECK(g.max_imag_residue < 1e-9);
}

TEST_CASE("Wigner function integrates to one") {
  const TruncationConfig t = TruncationConfig::for_amplitude(1.5);
  const Complex beta = std::polar(1.5, std::numbers::pi / 4.0);
  const WignerGrid g = wigner(density(four_cat(beta, 0, t)), WignerGridSpec{-6, 6, -6, 6, 201, 201});
  CHECK(g.integral() == Approx(1.0).epsilon(0.01));
}

TEST_CASE("Wigner grid geometry and reliability") {
  const WignerGridSpec s{-1, 1, 0, 2, 3, 5};
  CHECK(s.x(0) == -1.0);
  CHECK(s.x(2) == 1.0);
  CHECK(s.p(4) == 2.0);
  CHECK(WignerGridSpec{0.5, 1, 0, 1, 1, 1}.x(0) == 0.5);
  CHECK_THROWS_AS((WignerGridSpec{1, -1, 0, 1, 3, 3}.validate()), ArgumentError);
  CHECK_THROWS_AS((WignerGridSpec{-1, 1, 0, 1, 0, 3}.validate()), ArgumentError);
  CHECK_THROWS_AS((WignerGridSpec{-1, std::nan(""), 0, 1, 3, 3}.validate()), ArgumentError);

  const TruncationConfig small{8, 1e-10};
  const WignerGrid far = wigner(density(FockState::basis(0, small)), WignerGridSpec{-5, 5, 0, 0, 3, 1});
  CHECK_FALSE(far.reliable);
  CHECK(far.values.rows() == 1);
  CHECK(far.values.cols() == 3);
}

TEST_CASE("coherent-state QFI is four") {
  for (double a : {0.0, 1.0, 2.0}) {
    const TruncationConfig t = TruncationConfig::for_amplitude(a);
    for (double phi : {0.0, std::numbers::pi / 4.0}) {
      const QfiEstimate q = qfi_displacement(density(coherent(a, t)), phi);
      CHECK(q.value == Approx(4.0).epsilon(0.0025));
      CHECK(q.epsilon_used == kDefaultQfiEpsilon);
      CHECK(q.phi == phi);
      CHECK(q.richardson_residual < 1e-3);
    }
  }
}

TEST_CASE("pure-state QFI matches the generator variance") {
  const TruncationConfig t = TruncationConfig::for_amplitude(2.0);
  const Complex beta = std::polar(2.0, std::numbers::pi / 4.0);
  for (int k : {0, 1}) {
    const FockState cat = four_cat(beta, k, t);
    double last = 0.0;
    for (double phi : {0.0, std::numbers::pi / 3.0}) {
      const double ref = variance_qfi(cat.amplitudes(), displacement_generator(phi, t.dim));
      const QfiEstimate q = qfi_displacement(density(cat), phi);
      CHECK(q.value == Approx(ref).epsilon(0.01));
      if (last != 0.0) CHECK(q.value == Approx(last).epsilon(0.005));
      last = q.value;
    }
  }
  const FockState sq = squeezed_vacuum(0.4, SqueezeSign::S, TruncationConfig{60, 1e-10});
  CHECK(qfi_displacement(density(sq), 0.0).value ==
        Approx(variance_qfi(sq.amplitudes(), displacement_generator(0.0, 60))).epsilon(0.01));
}

TEST_CASE("mixed-state QFI matches the SLD formula") {
  const TruncationConfig t = TruncationConfig::for_amplitude(1.5);
  const DensityMatrix rho =
      apply_loss(density(four_cat(std::polar(1.5, 0.785), 0, t)), LossChannel::for_level(0.9, t.dim - 1));
  for (double phi : {0.0, 0.9}) {
    const double ref = sld_qfi(rho.matrix(), displacement_generator(phi, t.dim));
    CHECK(qfi_displacement(rho, phi).value == Approx(ref).epsilon(0.01));
  }
  CHECK_THROWS_AS(qfi_displacement(rho, 0.0, 1e-5), ArgumentError);
  CHECK_THROWS_AS(qfi_displacement(rho, 0.0, 0.2), ArgumentError);
}

TEST_CASE("heralded fidelity of the ideal circuit") {
  const HeraldedFidelity h = mean_heralded_fidelity(1.5, 1.0);
  CHECK(h.mean == Approx(1.0).epsilon(1e-9));
  CHECK(h.std < 1e-9);
  CHECK(h.total_probability <= 1.0 + 1e-12);
  for (const auto& o : h.per_outcome) CHECK(o.fidelity == Approx(1.0).epsilon(1e-9));

  const HeraldedFidelity zero = mean_heralded_fidelity(1.5, 1.0, 20, 0);
  for (const auto& o : zero.per_outcome) CHECK(o.n % 4 == 0);
  CHECK_THROWS_AS(mean_heralded_fidelity(1.5, 1.0, 20, 4), ArgumentError);
}

TEST_CASE("heralded fidelity under detector loss") {
  const HeraldedFidelity h = mean_heralded_fidelity(2.5, 0.9, 20, 0);
  CHECK(h.mean == Approx(0.54).epsilon(0.03 / 0.54));
  const HeraldedFidelity spread = mean_heralded_fidelity(2.0, 0.9);
  double lo = 1.0, hi = 0.0;
  for (const auto& o : spread.per_outcome) {
    lo = std::min(lo, o.fidelity);
    hi = std::max(hi, o.fidelity);
  }
  CHECK(hi - lo < 0.05);
  CHECK(spread.std <= hi - lo);
}
