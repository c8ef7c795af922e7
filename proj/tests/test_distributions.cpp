// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "mod1/distributions.hpp"

using namespace mod1;

namespace {

Complex coefficient_by_quadrature(const CircleDensity& d, long n) {
  quad::Options o;
  o.abs_tol = 1e-12;
  o.initial_pieces = std::max(1L, std::labs(n));
  auto f = [&](double x) { return d.evaluate(x) * turn(-static_cast<double>(n) * x); };
  return quad::integrate(f, 0.0, 1.0, d.breakpoints(), o).value;
}

}  // namespace

TEST(Box, ClosedFormMatchesQuadrature) {
  for (double m : {1.5, 2.0, 4.0, 7.3, 100.0}) {
    const CircleDensity d = box_density(m);
    for (long n = -6; n <= 6; ++n)
      EXPECT_NEAR(std::abs(box_spectrum_coefficient(m, n) - coefficient_by_quadrature(d, n)), 0.0, 1e-10)
          << "m=" << m << " n=" << n;
  }
}

TEST(Box, ExactZerosAtMultiplesOfHeight) {
  EXPECT_EQ(box_spectrum_coefficient(4.0, 4), Complex(0.0));
  EXPECT_EQ(box_spectrum_coefficient(4.0, -8), Complex(0.0));
  EXPECT_EQ(box_spectrum_coefficient(2.0, 2), Complex(0.0));
  EXPECT_NE(box_spectrum_coefficient(4.0, 3), Complex(0.0));
}

TEST(Box, NarrowBoxModulus) {
  const double r = std::abs(box_spectrum_coefficient(1331.0, 1));
  EXPECT_NEAR(r, 0.99999907147786125296, 1e-15);
  EXPECT_GE(r, 0.99999907147760260684);
}

TEST(Box, DegeneratesToPointMass) {
  const CircleDensity d = box_density(std::pow(11.0, 400.0));  // +inf
  ASSERT_TRUE(d.is_atomic());
  EXPECT_EQ(d.atoms()[0].location, kBoxCenter);
  EXPECT_EQ(std::abs(fourier_coefficient(d, 3)), 1.0);
  EXPECT_EQ(sample_box_log_mantissa(1e300, 0.9), kBoxCenter);
}

TEST(Box, Rejects) {
  EXPECT_THROW(box_density(0.5), DomainError);
  EXPECT_THROW(box_spectrum_coefficient(std::nan(""), 1), DomainError);
}

TEST(Box, SamplerStaysInSupport) {
  for (double u : {1e-12, 0.25, 0.5, 0.75, 1.0 - 1e-12}) {
    const double y = sample_box_log_mantissa(4.0, u);
    EXPECT_GE(y, 0.0);
    EXPECT_LE(y, 0.25);
  }
  // wraps for m = 2: support [7/8, 1) U [0, 3/8]
  EXPECT_NEAR(sample_box_log_mantissa(2.0, 0.01), 0.88, 1e-15);
}

TEST(RaisedCosine, Coefficients) {
  const CircleDensity d = raised_cosine_density(0.6, 0.2);
  EXPECT_NEAR(std::abs(fourier_coefficient(d, 1) - coefficient_by_quadrature(d, 1)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(fourier_coefficient(d, 1)), 0.3, 1e-15);
  EXPECT_EQ(fourier_coefficient(d, 2), Complex(0.0));
  EXPECT_THROW(raised_cosine_density(1.5, 0.0), DomainError);
}

TEST(RaisedCosine, SamplerInvertsCdf) {
  const double a = -0.8, c = 0.3;
  for (double u : {0.001, 0.2, 0.5, 0.77, 0.999}) {
    const double x = sample_raised_cosine(a, c, u);
    const double cdf = x + a / kTwoPi * (std::sin(kTwoPi * (x - c)) + std::sin(kTwoPi * c));
    EXPECT_NEAR(cdf, u, 1e-13) << u;
  }
}

TEST(Pareto, DensityValues) {
  const double e = std::numbers::e;
  EXPECT_NEAR(pareto_density(2.0, e), 0.73575888234288464319, 1e-15);
  EXPECT_NEAR(pareto_density(2.0, e * e), 0.033833820809153172973, 1e-16);
  EXPECT_EQ(pareto_density(2.0, 2.0), 0.0);
  EXPECT_THROW(pareto_density(0.0, 3.0), DomainError);
}

TEST(Pareto, NormalizedInLogSpace) {
  // int_e^inf f dx = int_1^inf alpha y^{-alpha-1} dy; substitute y = 1/v
  for (double alpha : {1.5, 2.0, 3.0}) {
    quad::Options o;
    o.abs_tol = 1e-13;
    const auto r = quad::integrate(
        [&](double v) { return v > 0.0 ? pareto_log_density(alpha, 1.0 / v) / (v * v) : 0.0; }, 0.0, 1.0, {}, o);
    EXPECT_NEAR(r.value, 1.0, 1e-10) << alpha;
  }
}

TEST(Pareto, Sampler) {
  EXPECT_NEAR(sample_pareto(2.0, 0.5), 4.1132503787829275172, 1e-14);
  EXPECT_NEAR(sample_pareto(1.0, 0.9), 22026.465794806716517, 1e-9);
  EXPECT_NEAR(pareto_cdf(2.0, sample_pareto(2.0, 0.3)), 0.3, 1e-15);
  EXPECT_THROW(sample_pareto(2.0, 0.0), DomainError);
  EXPECT_THROW(sample_pareto(2.0, 1.0), DomainError);
}

TEST(Pareto, LogMantissaSamplerNeverOverflows) {
  const double y = sample_pareto_log_mantissa(1.1, Base::integer(10), 1.0 - 1e-16);
  EXPECT_GE(y, 0.0);
  EXPECT_LT(y, 1.0);
}

TEST(ParetoMantissa, DensityAndCdfValues) {
  const auto f1 = pareto_mantissa_density(2.0, 1.0, 2000);
  EXPECT_NEAR(f1.value, 2.4041138063191885708, f1.tail_bound);
  const auto f2 = pareto_mantissa_density(2.0, 2.0, 2000);
  EXPECT_NEAR(f2.value, 0.30511512125279437972, f2.tail_bound);
  const auto cdf = pareto_mantissa_cdf(2.0, 2.0, 2000);
  EXPECT_NEAR(cdf.value, 0.8475405328737297791, cdf.tail_bound);
  EXPECT_LE(0.8475405328737297791 - cdf.value, cdf.tail_bound);
}

TEST(ParetoMantissa, Endpoints) {
  const auto lo = pareto_mantissa_cdf(2.0, 1.0, 100);
  EXPECT_EQ(lo.value, 0.0);
  const auto hi = pareto_mantissa_cdf(2.0, std::numbers::e, 100);
  EXPECT_NEAR(hi.value, 1.0, hi.tail_bound);
  EXPECT_THROW(pareto_mantissa_cdf(1.0, 2.0, 100), DomainError);
  EXPECT_THROW(pareto_mantissa_cdf(2.0, 3.0, 100), DomainError);
}

TEST(ParetoMantissa, DensityIntegratesToCdf) {
  quad::Options o;
  o.abs_tol = 1e-11;
  const auto r = quad::integrate([](double s) { return pareto_mantissa_density(2.0, s, 4000).value; }, 1.0, 2.0, {}, o);
  EXPECT_NEAR(r.value, pareto_mantissa_cdf(2.0, 2.0, 4000).value, 1e-6);
}

TEST(ParetoLogMantissa, EulerModuli) {
  const double expected[8] = {0.27930381680897491, 0.15266991299610774, 0.10402633450459855,
                              0.078673547357027333, 0.063192022354544651, 0.052777333530311129,
                              0.045299178755644659, 0.039671990533421426};
  const CircleDensity d = pareto_log_mantissa_density(2.0, Base::euler());
  for (long n = 1; n <= 8; ++n) EXPECT_NEAR(std::abs(fourier_coefficient(d, n)), expected[n - 1], 1e-7) << n;
}

TEST(ParetoLogMantissa, DecimalModuli) {
  const double expected[4] = {0.49682573609963263, 0.31201599411631859, 0.22408850186047275, 0.17372528126371088};
  const CircleDensity d = pareto_log_mantissa_density(2.0, Base::integer(10));
  for (long n = 1; n <= 4; ++n) EXPECT_NEAR(std::abs(fourier_coefficient(d, n)), expected[n - 1], 1e-7) << n;
}

TEST(ParetoLogMantissa, DigitLawMatchesSeries) {
  // in base e the circle density's mass on [0, ln 2) is F(2)
  const CircleDensity d = pareto_log_mantissa_density(2.0, Base::euler());
  quad::Options o;
  o.abs_tol = 1e-11;
  const auto r = quad::integrate([&](double t) { return d.evaluate(t); }, 0.0, std::log(2.0), d.breakpoints(), o);
  EXPECT_NEAR(r.value, 0.8475405328737297791, 1e-7);
}

TEST(Pushforward, ParetoMatchesSeries) {
  const auto law = pareto_positive_law(2.0);
  const auto r = mantissa_pushforward_cdf(law, 2.0, Base::euler(), 2000, 1e-6);
  EXPECT_NEAR(r.value, 0.8475405328737297791, r.tail_bound + 1e-9);
  EXPECT_THROW(mantissa_pushforward_cdf(law, 2.0, Base::euler(), 10), RangeError);
}

TEST(Pushforward, UniformOnOneToTen) {
  // X uniform on [1, 10): P(digit < s) = (s - 1) / 9
  const auto law = PositiveLaw::from_pdf([](double x) { return x >= 1.0 && x < 10.0 ? 1.0 / 9.0 : 0.0; }, 1.0, 10.0);
  const auto r = mantissa_pushforward_cdf(law, 4.0, Base::integer(10), 2);
  EXPECT_NEAR(r.value, 3.0 / 9.0, 1e-10);
  EXPECT_EQ(r.tail_bound, 0.0);
}

TEST(Pushforward, UncertifiableTail) {
  const auto law = PositiveLaw::from_pdf([](double x) { return std::exp(-x); }, 0.0, INFINITY);
  EXPECT_THROW(mantissa_pushforward_cdf(law, 2.0, Base::integer(10), 3), RangeError);
}
