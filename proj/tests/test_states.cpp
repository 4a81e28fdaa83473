#include <doctest.h>

#include <numbers>

#include "catgen/states.hpp"
#include "oracles.hpp"

using namespace catgen;
using doctest::Approx;

namespace {

double max_diff(const CVector& a, const CVector& b) { return (a - b).cwiseAbs().maxCoeff(); }

// Equal up to a global phase.
double overlap2(const CVector& a, const CVector& b) { return std::norm(a.dot(b)); }

}  // namespace

TEST_CASE("coherent state matches the Poisson series") {
  const TruncationConfig t = TruncationConfig::for_amplitude(2.0);
  const Complex alpha = std::polar(2.0, 0.7);
  const FockState s = coherent(alpha, t);
  CHECK(s.norm() == Approx(1.0));
  CHECK(s.discarded_tail() < 1e-10);
  const CVector ref = oracle::coherent_series(alpha, t.dim);
  CHECK(max_diff(s.amplitudes(), ref / ref.norm()) < 1e-13);

  // Mean photon number |alpha|^2.
  double mean = 0.0;
  for (int n = 0; n < t.dim; ++n) mean += n * std::norm(s[n]);
  CHECK(mean == Approx(4.0).epsilon(1e-8));
}

TEST_CASE("coherent vacuum is |0>") {
  const FockState s = coherent(0.0, TruncationConfig{});
  CHECK(s[0] == Complex(1.0, 0.0));
  CHECK(s.amplitudes().tail(19).norm() == 0.0);
}

TEST_CASE("coherent tail above tolerance raises") {
  CHECK_THROWS_AS(coherent(3.0, TruncationConfig{12, 1e-10}), TruncationError);
  CHECK_NOTHROW(coherent(3.0, TruncationConfig{12, 0.5}));
}

TEST_CASE("two-component cats") {
  const TruncationConfig t = TruncationConfig::for_amplitude(1.3);
  const double a = 1.3;
  const FockState even = two_cat(a, {CatAxis::real, CatParity::even}, t);
  const FockState odd = two_cat(a, {CatAxis::real, CatParity::odd}, t);
  for (int n = 1; n < t.dim; n += 2) CHECK(std::abs(even[n]) < 1e-15);
  for (int n = 0; n < t.dim; n += 2) CHECK(std::abs(odd[n]) < 1e-15);
  CHECK(std::abs(even.inner(odd)) < 1e-15);

  const CVector sum = oracle::coherent_series(a, t.dim) + oracle::coherent_series(-a, t.dim);
  CHECK(sum.norm() == Approx(two_cat_normalization(a, CatParity::even)).epsilon(1e-12));
  CHECK(max_diff(even.amplitudes(), sum / sum.norm()) < 1e-13);

  const Complex ia(0.0, a);
  const FockState imag = two_cat(a, {CatAxis::imaginary, CatParity::even}, t);
  const CVector isum = oracle::coherent_series(ia, t.dim) + oracle::coherent_series(-ia, t.dim);
  CHECK(max_diff(imag.amplitudes(), isum / isum.norm()) < 1e-13);

  CHECK(two_cat_normalization(1.0, CatParity::odd) == Approx(std::sqrt(2.0 * (1.0 - std::exp(-2.0)))));
  CHECK_THROWS_AS(two_cat(0.0, {CatAxis::real, CatParity::odd}, t), ZeroNormError);
  CHECK(two_cat(0.0, {CatAxis::real, CatParity::even}, t)[0].real() == Approx(1.0));
}

TEST_CASE("four-component cats agree with the coherent superposition") {
  const TruncationConfig t = TruncationConfig::for_amplitude(2.0);
  const Complex beta = std::polar(2.0, std::numbers::pi / 4.0);
  for (int k = 0; k < 4; ++k) {
    const FockState s = four_cat(beta, k, t);
    CHECK(s.norm() == Approx(1.0));
    CHECK(overlap2(s.amplitudes(), oracle::four_cat_superposition(beta, k, t.dim)) == Approx(1.0).epsilon(1e-12));
    for (int n = 0; n < t.dim; ++n) {
      if (n % 4 != k) CHECK(std::abs(s[n]) < 1e-15);
    }
  }
}

TEST_CASE("four-cat family is orthonormal and spans the coherent cross") {
  const TruncationConfig t = TruncationConfig::for_amplitude(1.5);
  const Complex beta = std::polar(1.5, 0.3);
  CMatrix cats(t.dim, 4);
  for (int k = 0; k < 4; ++k) cats.col(k) = four_cat(beta, k, t).amplitudes();
  CHECK((cats.adjoint() * cats - CMatrix::Identity(4, 4)).norm() < 1e-12);

  // Each |i^j beta> lies in the span: the projection keeps its full norm.
  for (int j = 0; j < 4; ++j) {
    CVector c = oracle::coherent_series(beta * std::pow(Complex(0.0, 1.0), j), t.dim);
    c /= c.norm();
    CHECK((cats.adjoint() * c).norm() == Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("four-cat small amplitude limit is the Fock state |k>") {
  const TruncationConfig t{20, 1e-10};
  for (int k = 0; k < 4; ++k) {
    const FockState s = four_cat(1e-3, k, t);
    CHECK(std::norm(s[k]) == Approx(1.0).epsilon(1e-9));
  }
  CHECK_THROWS_AS(four_cat(1.0, 4, t), ArgumentError);
  CHECK_THROWS_AS(four_cat(1.0, -1, t), ArgumentError);
  CHECK_THROWS_AS(four_cat(0.0, 1, t), ZeroNormError);
  CHECK(std::abs(four_cat(0.0, 0, t)[0]) == Approx(1.0));
}

TEST_CASE("squeezed vacuum closed form versus padded matrix exponential") {
  for (double r : {0.1, 0.5, 1.0}) {
    for (SqueezeSign sign : {SqueezeSign::S, SqueezeSign::S_dagger}) {
      const TruncationConfig t{140, 1e-10};
      const FockState closed = squeezed_vacuum(r, sign, t);
      const FockState expm = squeezed_vacuum_expm(r, sign, t);
      CHECK(closed.norm() == Approx(1.0));
      CHECK(max_diff(closed.amplitudes(), expm.amplitudes()) < 1e-9);
    }
  }
}

TEST_CASE("squeezed vacuum sign convention and statistics") {
  const TruncationConfig t{80, 1e-10};
  const double r = 0.8;
  const FockState s = squeezed_vacuum(r, SqueezeSign::S, t);
  const FockState sd = squeezed_vacuum(r, SqueezeSign::S_dagger, t);
  // S = exp(r/2 (a^2 - a^dag^2)) puts -tanh(r) on the |2> amplitude ratio.
  CHECK((s[2] / s[0]).real() == Approx(-std::tanh(r) / std::sqrt(2.0)));
  CHECK((sd[2] / sd[0]).real() == Approx(std::tanh(r) / std::sqrt(2.0)));
  double mean = 0.0;
  for (int n = 0; n < t.dim; ++n) mean += n * std::norm(s[n]);
  CHECK(mean == Approx(std::sinh(r) * std::sinh(r)).epsilon(1e-8));
  for (int n = 1; n < t.dim; n += 2) CHECK(s[n] == Complex(0.0, 0.0));

  CHECK(squeezed_vacuum(0.0, SqueezeSign::S, t)[0] == Complex(1.0, 0.0));
  CHECK_THROWS_AS(squeezed_vacuum(2.5, SqueezeSign::S, TruncationConfig{40, 1e-10}), TruncationError);
  CHECK_THROWS_AS(squeezed_vacuum(-0.1, SqueezeSign::S, t), ArgumentError);
}

TEST_CASE("squeezed series is unnormalized but exact") {
  const double r = 2.0;
  const CVector raw = squeezed_vacuum_series(r, SqueezeSign::S, 7);
  CHECK(raw(0).real() == Approx(1.0 / std::sqrt(std::cosh(r))));
  CHECK(raw(6).real() == Approx(-std::pow(std::tanh(r), 3) * std::sqrt(720.0) / (8.0 * 6.0) / std::sqrt(std::cosh(r))));
}

TEST_CASE("photon subtraction") {
  const TruncationConfig t = TruncationConfig::for_amplitude(1.2);
  const FockState c = coherent(1.2, t);
  const Subtracted s = photon_subtract(c);
  // a|alpha> = alpha|alpha>.
  CHECK(s.weight == Approx(1.2).epsilon(1e-9));
  CHECK(std::norm(s.state.inner(c)) == Approx(1.0).epsilon(1e-9));

  const Subtracted one = photon_subtract(FockState::basis(1, t));
  CHECK(std::abs(one.state[0]) == Approx(1.0));
  CHECK_THROWS_AS(photon_subtract(FockState::basis(0, t)), ZeroNormError);

  // Subtracting from an even squeezed vacuum gives an odd state.
  const FockState sq = squeezed_vacuum(0.5, SqueezeSign::S, TruncationConfig{40, 1e-10});
  const Subtracted ss = photon_subtract(sq);
  for (int n = 0; n < 40; n += 2) CHECK(std::abs(ss.state[n]) < 1e-15);
  CHECK(ss.weight == Approx(std::sinh(0.5)).epsilon(1e-9));
}
