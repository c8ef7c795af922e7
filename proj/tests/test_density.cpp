// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>
#include <cstring>
#include <vector>

#include "mod1/density.hpp"
#include "mod1/distributions.hpp"

using namespace mod1;

namespace {

// Box of height m centred at 1/8 without its closed-form coefficient, so
// every coefficient goes through quadrature.
CircleDensity box_by_quadrature(double m) {
  const double half = 0.5 / m;
  return CircleDensity::continuous(
      [=](double x) {
        const double d = reduce(x - 0.125 + 0.5) - 0.5;
        return std::abs(d) <= half ? m : 0.0;
      },
      {0.125 - half, 0.125 + half}, {}, "box-quad");
}

}  // namespace

TEST(CircleDensity, UniformCoefficients) {
  auto u = CircleDensity::uniform();
  EXPECT_EQ(fourier_coefficient(u, 0), Complex(1.0));
  EXPECT_EQ(fourier_coefficient(u, 1), Complex(0.0));
}

TEST(CircleDensity, PointMassCoefficient) {
  // delta at 1/4, n = 2: e^{-2 pi i * 2/4} = -1
  auto d = CircleDensity::point_mass(0.25);
  Complex c = fourier_coefficient(d, 2);
  EXPECT_NEAR(c.real(), -1.0, 1e-15);
  EXPECT_NEAR(c.imag(), 0.0, 1e-15);
}

TEST(CircleDensity, BoxCoefficientQuadratureMatchesClosedForm) {
  // Frozen mpmath value: 0.63661977236758134308 - 0.63661977236758134308 i
  Complex q = fourier_coefficient(box_by_quadrature(4.0), 1);
  EXPECT_NEAR(q.real(), 0.63661977236758134308, 1e-10);
  EXPECT_NEAR(q.imag(), -0.63661977236758134308, 1e-10);
  Complex closed = fourier_coefficient(box_density(4.0), 1);
  EXPECT_NEAR(std::abs(q - closed), 0.0, 1e-10);
}

TEST(CircleDensity, RejectsBadAtoms) {
  EXPECT_THROW(CircleDensity::atomic({{0.1, 0.5}, {0.2, 0.4}}), DomainError);
  EXPECT_THROW(CircleDensity::atomic({{0.1, 1.0}, {0.2, 0.0}}), DomainError);
  EXPECT_THROW(CircleDensity::atomic(std::vector<Atom>{}), DomainError);
}

TEST(CircleDensity, AtomLocationsReduced) {
  auto d = CircleDensity::atomic({{1.25, 0.5}, {-0.25, 0.5}});
  EXPECT_DOUBLE_EQ(d.atoms()[0].location, 0.25);
  EXPECT_DOUBLE_EQ(d.atoms()[1].location, 0.75);
  EXPECT_EQ(CircleDensity::point_mass(1.0).atoms()[0].location, 0.0);
}

TEST(CircleDensity, RejectsUnnormalizedContinuous) {
  EXPECT_THROW(CircleDensity::continuous([](double) { return 2.0; }), DomainError);
}

TEST(CircleDensity, PointwiseEvaluationOfAtomsIsUsageError) {
  EXPECT_THROW(CircleDensity::point_mass(0.5).evaluate(0.5), UsageError);
}

TEST(Spectrum, UniformAndPointMassAtZero) {
  Spectrum u = spectrum(CircleDensity::uniform(), 3);
  EXPECT_EQ(u.truncation(), 3);
  EXPECT_EQ(u[0], Complex(1.0));
  for (long n = 1; n <= 3; ++n) {
    EXPECT_EQ(u[n], Complex(0.0));
    EXPECT_EQ(u[-n], Complex(0.0));
  }
  Spectrum d0 = spectrum(CircleDensity::point_mass(0.0), 2);
  for (long n = -2; n <= 2; ++n) EXPECT_EQ(d0[n], Complex(1.0));
}

TEST(Spectrum, BoxTwoMatchesQuadratureOracle) {
  // phi_2 wraps around 0; frozen mpmath quadrature values for n = 0..5.
  const double expected[6][2] = {{1.0, 0.0},
                                 {0.45015815807855303, -0.45015815807855303},
                                 {0.0, 0.0},
                                 {0.15005271935951768, 0.15005271935951768},
                                 {0.0, 0.0},
                                 {-0.090031631615710607, 0.090031631615710607}};
  Spectrum closed = spectrum(box_density(2.0), 5);
  Spectrum quadrature = spectrum(box_by_quadrature(2.0), 5);
  for (long n = 0; n <= 5; ++n) {
    EXPECT_NEAR(closed[n].real(), expected[n][0], 1e-12) << n;
    EXPECT_NEAR(closed[n].imag(), expected[n][1], 1e-12) << n;
    EXPECT_NEAR(quadrature[n].real(), expected[n][0], 1e-10) << n;
    EXPECT_NEAR(quadrature[n].imag(), expected[n][1], 1e-10) << n;
  }
  EXPECT_EQ(closed[-3], std::conj(closed[3]));
}

TEST(Spectrum, RejectsZeroTruncation) {
  EXPECT_THROW(spectrum(CircleDensity::uniform(), 0), DomainError);
}

TEST(Spectrum, QuadratureFailureCarriesFrequency) {
  // Deterministic noise of amplitude 3e-8: the mass passes its 1e-8 check,
  // but no refinement brings the coefficient error below 1e-10.
  auto noisy = CircleDensity::continuous(
      [](double x) {
        std::uint64_t bits;
        std::memcpy(&bits, &x, sizeof bits);
        bits ^= bits >> 33;
        bits *= 0xff51afd7ed558ccdULL;
        bits ^= bits >> 33;
        return 1.0 + 3e-8 * (static_cast<double>(bits >> 11) * 0x1.0p-53 - 0.5);
      },
      {}, {}, "noisy");
  try {
    spectrum(noisy, 3);
    FAIL() << "expected NumericalFailure";
  } catch (const NumericalFailure& e) {
    EXPECT_NE(std::string(e.what()).find("n=0"), std::string::npos) << e.what();
    EXPECT_GT(e.error_estimate(), 1e-10);
  }
}

TEST(FejerMean, UniformIsOne) {
  Spectrum u = Spectrum::uniform(8);
  for (double x : {0.0, 0.1, 0.5, 0.99}) EXPECT_NEAR(fejer_mean(u, x), 1.0, 1e-15);
}

TEST(FejerMean, KernelPeakAtAtom) {
  Spectrum s = spectrum(CircleDensity::point_mass(0.5), 4);
  EXPECT_NEAR(fejer_mean(s, 0.5), 4.0, 1e-12);
}

TEST(FejerMean, BoxTwoMatchesDirectConvolution) {
  // Oracle: (phi_2 * F_64)(1/8) on a 2^14-point grid = 1.990055241612749
  Spectrum s = spectrum(box_density(2.0), 64);
  EXPECT_NEAR(fejer_mean(s, 0.125), 1.990055241612749, 0.05);
}

TEST(FejerMean, AsymmetricSpectrumIsConsistencyError) {
  std::vector<Complex> table{Complex(0.0, 0.3), Complex(1.0), Complex(0.0, 0.3)};
  Spectrum bad = Spectrum::from_table(1, table);
  // N = 1 has no interior terms, so use N = 2.
  std::vector<Complex> table2{0.0, Complex(0.0, 0.3), 1.0, Complex(0.0, 0.3), 0.0};
  Spectrum bad2 = Spectrum::from_table(2, table2);
  EXPECT_NO_THROW(fejer_mean(bad, 0.2));
  EXPECT_THROW(fejer_mean(bad2, 0.2), ConsistencyError);
}

TEST(Reflect, UniformAndPointMass) {
  Spectrum u = spectrum(reflect(CircleDensity::uniform()), 4);
  for (long n = 1; n <= 4; ++n) EXPECT_EQ(u[n], Complex(0.0));
  auto r = reflect(CircleDensity::point_mass(0.25));
  ASSERT_TRUE(r.is_atomic());
  EXPECT_DOUBLE_EQ(r.atoms()[0].location, 0.75);
  EXPECT_EQ(reflect(CircleDensity::point_mass(0.0)).atoms()[0].location, 0.0);
}

TEST(Reflect, BoxConjugatesByQuadrature) {
  auto box = box_by_quadrature(4.0);
  auto mirrored = reflect(box);
  // Centred at 7/8 now.
  EXPECT_DOUBLE_EQ(mirrored.evaluate(0.875), 4.0);
  EXPECT_DOUBLE_EQ(mirrored.evaluate(0.125), 0.0);
  Complex a = fourier_coefficient(box, 1);
  Complex b = fourier_coefficient(mirrored, 1);
  EXPECT_NEAR(std::abs(b - std::conj(a)), 0.0, 1e-10);
}

TEST(Reflect, ClosedFormIsConjugated) {
  auto mirrored = reflect(box_density(4.0));
  ASSERT_TRUE(mirrored.has_analytic_coefficient());
  Complex a = fourier_coefficient(box_density(4.0), 3);
  EXPECT_EQ(fourier_coefficient(mirrored, 3), std::conj(a));
}

TEST(Reflect, RationalAtomsStayExact) {
  std::vector<Rational> loc{{1, 3}, {0, 1}};
  std::vector<double> w{0.5, 0.5};
  auto r = reflect(CircleDensity::atomic(loc, w));
  auto exact = r.exact_locations();
  ASSERT_TRUE(exact.has_value());
  EXPECT_EQ((*exact)[0].p, 2);
  EXPECT_EQ((*exact)[0].q, 3);
  EXPECT_EQ((*exact)[1].p, 0);
}
