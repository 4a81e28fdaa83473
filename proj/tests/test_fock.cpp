#include <doctest.h>

#include "catgen/fock.hpp"

using namespace catgen;

namespace {
const TruncationConfig kT{8, 1e-10};
}

TEST_CASE("truncation heuristic") {
  CHECK(TruncationConfig::for_amplitude(0.0).dim == 20);
  CHECK(TruncationConfig::for_amplitude(1.0).dim == 21);
  CHECK(TruncationConfig::for_amplitude(3.0).dim == 45);
  CHECK(TruncationConfig::for_amplitude(-3.0).dim == 45);
  CHECK_THROWS_AS((TruncationConfig{1, 1e-10}.validate()), ArgumentError);
  CHECK_THROWS_AS((TruncationConfig{10, 1.0}.validate()), ArgumentError);
  CHECK_THROWS_AS((TruncationConfig{10, -1e-3}.validate()), ArgumentError);
  CHECK_NOTHROW((TruncationConfig{2, 0.0}.validate()));
}

TEST_CASE("ladder operators") {
  const CMatrix a = annihilation_op(kT).matrix();
  const CMatrix ad = creation_op(kT).matrix();
  CHECK((ad - a.adjoint()).norm() == 0.0);
  CHECK((number_op(kT).matrix() - ad * a).norm() < 1e-14);
  CHECK((identity_op(kT).matrix() - CMatrix::Identity(8, 8)).norm() == 0.0);

  // [a, a^dag] = 1 except at the truncation edge.
  const CMatrix comm = a * ad - ad * a;
  for (int n = 0; n < 7; ++n) CHECK(comm(n, n).real() == doctest::Approx(1.0));
  CHECK(comm(7, 7).real() == doctest::Approx(-7.0));

  const FockState three = FockState::basis(3, kT);
  const FockState lowered = apply(annihilation_op(kT), three);
  CHECK(lowered[2].real() == doctest::Approx(std::sqrt(3.0)));
  CHECK(lowered.norm() == doctest::Approx(std::sqrt(3.0)));
  CHECK_THROWS_AS(FockState::basis(8, kT), ArgumentError);
}

TEST_CASE("two-mode indexing and tensor products") {
  CHECK(two_mode_index(0, 0, 8) == 0);
  CHECK(two_mode_index(2, 3, 8) == 19);
  const TwoModeState s = tensor(FockState::basis(2, kT), FockState::basis(3, kT));
  CHECK(s.amplitudes()(19) == Complex(1.0, 0.0));
  CHECK(s.amplitude(2, 3) == Complex(1.0, 0.0));
  CHECK(s.coefficients()(2, 3) == Complex(1.0, 0.0));
  CHECK(s.norm() == doctest::Approx(1.0));

  const TwoModeOperator a1 = tensor(annihilation_op(kT), identity_op(kT));
  const TwoModeState t = apply(a1, s);
  CHECK(t.amplitude(1, 3).real() == doctest::Approx(std::sqrt(2.0)));

  CHECK_THROWS_AS(validate_mode(0), ArgumentError);
  CHECK_THROWS_AS(validate_mode(3), ArgumentError);
}

TEST_CASE("partial trace of a product state") {
  CVector u = CVector::Zero(8), v = CVector::Zero(8);
  u(0) = 0.6;
  u(1) = Complex(0.0, 0.8);
  v(2) = 1.0;
  const TwoModeDensity rho = density(tensor(FockState(u, kT), FockState(v, kT)));
  CHECK(rho.trace() == doctest::Approx(1.0));
  const DensityMatrix r1 = partial_trace(rho, 1);
  const DensityMatrix r2 = partial_trace(rho, 2);
  CHECK((r1.matrix() - u * u.adjoint()).norm() < 1e-14);
  CHECK((r2.matrix() - v * v.adjoint()).norm() < 1e-14);
  CHECK_THROWS_AS(partial_trace(rho, 0), ArgumentError);
}

TEST_CASE("partial trace of an entangled state is mixed") {
  CVector bell = CVector::Zero(64);
  bell(two_mode_index(0, 1, 8)) = 1.0 / std::sqrt(2.0);
  bell(two_mode_index(1, 0, 8)) = 1.0 / std::sqrt(2.0);
  const DensityMatrix r = partial_trace(density(TwoModeState(bell, kT)), 2);
  CHECK(r.matrix()(0, 0).real() == doctest::Approx(0.5));
  CHECK(r.matrix()(1, 1).real() == doctest::Approx(0.5));
  CHECK(std::abs(r.matrix()(0, 1)) < 1e-15);
}

TEST_CASE("normalization") {
  CVector v = CVector::Zero(8);
  v(1) = 3.0;
  v(4) = Complex(0.0, 4.0);
  const auto n = normalize(FockState(v, kT));
  CHECK(n.norm == doctest::Approx(5.0));
  CHECK(n.state.norm() == doctest::Approx(1.0));

  CHECK_THROWS_AS(normalize(FockState(CVector::Zero(8), kT)), ZeroNormError);
  CVector tiny = CVector::Zero(8);
  tiny(0) = 1e-15;
  CHECK_THROWS_AS(normalize(FockState(tiny, kT)), ZeroNormError);

  const auto r = normalize(DensityMatrix(2.0 * CMatrix::Identity(8, 8), kT));
  CHECK(r.norm == doctest::Approx(16.0));
  CHECK(r.state.trace() == doctest::Approx(1.0));
  CHECK_THROWS_AS(normalize(DensityMatrix(CMatrix::Zero(8, 8), kT)), ZeroNormError);
}

TEST_CASE("shape checks") {
  CHECK_THROWS_AS(FockState(CVector::Zero(7), kT), ArgumentError);
  CHECK_THROWS_AS(DensityMatrix(CMatrix::Zero(8, 7), kT), ArgumentError);
  CHECK_THROWS_AS(TwoModeState(CVector::Zero(8), kT), ArgumentError);
}

TEST_CASE("density matrix diagnostics") {
  CMatrix m = CMatrix::Zero(8, 8);
  m(0, 0) = 0.5;
  m(1, 1) = 0.5;
  m(0, 1) = Complex(0.0, 0.5);
  m(1, 0) = Complex(0.0, -0.5);
  const DensityMatrix rho(m, kT);
  CHECK(rho.hermiticity_error() < 1e-16);
  CHECK(rho.min_eigenvalue() == doctest::Approx(0.0).epsilon(1e-12));
  m(1, 0) = 0.0;
  CHECK(DensityMatrix(m, kT).hermiticity_error() == doctest::Approx(0.5));
}
