#include <gtest/gtest.h>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <random>

#include "ouembed/profile.hpp"

using namespace ouembed;
using Big = boost::multiprecision::cpp_bin_float_50;

namespace {

// 50-digit tail erfc(t/sqrt2)/2, independent of the library's double path.
double oracle_tail(double t) {
  Big x = Big(t) / boost::multiprecision::sqrt(Big(2));
  return static_cast<double>(boost::math::erfc(x) / 2);
}

double oracle_inverse(double p) {
  return -boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

// Theta(s) = sqrt(2 pi) int_0^x e^{t^2/2} dt with x the upper quantile of s.
double oracle_theta(double s) {
  const double x = oracle_inverse(s);
  auto f = [](double t) { return std::exp(0.5 * t * t); };
  return kSqrt2Pi * boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, x, 15, 1e-14);
}

}  // namespace

TEST(GaussTail, SymmetryAtZero) { EXPECT_DOUBLE_EQ(gauss_tail(0.0), 0.5); }

TEST(GaussTail, ReflectionSumsToOne) {
  for (double t : {0.1, 0.7, 1.5, 3.0, 6.0}) EXPECT_NEAR(gauss_tail(t) + gauss_tail(-t), 1.0, 1e-15);
}

TEST(GaussTail, MatchesMultiprecisionOracle) {
  for (double t = -5.0; t <= 37.0; t += 0.37) {
    const double want = oracle_tail(t);
    EXPECT_NEAR(gauss_tail(t) / want, 1.0, 1e-12) << "t=" << t;
  }
  EXPECT_NEAR(gauss_tail(4.75342) / 1.0e-6, 1.0, 1e-4);
}

TEST(GaussTailInverse, FixedPoints) {
  EXPECT_NEAR(gauss_tail_inverse(0.5), 0.0, 1e-15);
  EXPECT_NEAR(gauss_tail_inverse(gauss_tail(2.0)), 2.0, 1e-12);
  EXPECT_NEAR(gauss_tail_inverse(1e-6), 4.75342, 1e-5);
}

TEST(GaussTailInverse, MatchesBoostQuantile) {
  for (double p : {0.49, 0.3, 0.1, 1e-3, 1e-8, 1e-15, 1e-40, 1e-100, 1e-250}) {
    EXPECT_NEAR(gauss_tail_inverse(p) / oracle_inverse(p), 1.0, 1e-12) << "p=" << p;
  }
}

TEST(GaussTailInverse, RoundTripProperty) {
  std::mt19937_64 rng(0x5EED);
  std::uniform_real_distribution<double> expo(-290.0, -0.31);
  for (int i = 0; i < 500; ++i) {
    const double p = std::pow(10.0, expo(rng));
    EXPECT_NEAR(gauss_tail(gauss_tail_inverse(p)) / p, 1.0, 1e-10) << "p=" << p;
  }
}

TEST(IsoProfile, KnownValues) {
  EXPECT_NEAR(iso_profile(0.5), kInvSqrt2Pi, 1e-15);
  EXPECT_NEAR(iso_profile(0.1), iso_profile(0.9), 1e-14);
  const double want = boost::math::pdf(boost::math::normal_distribution<double>(), oracle_inverse(1e-6));
  EXPECT_NEAR(iso_profile(1e-6) / want, 1.0, 1e-10);
}

TEST(IsoProfile, AsymptoticRatioShrinks) {
  auto gap = [](double s) { return std::fabs(iso_profile(s) / (s * std::sqrt(2.0 * ell(s))) - 1.0); };
  EXPECT_LT(gap(1e-12), 0.1);
  EXPECT_LT(gap(1e-12), gap(1e-6));
}

TEST(Theta, EndpointAndQuadratureOracle) {
  EXPECT_DOUBLE_EQ(theta(0.5), 0.0);
  EXPECT_NEAR(theta(0.25), 1.83, 0.005);
  for (double s : {0.4, 0.25, 1e-2, 1e-5, 1e-9}) EXPECT_NEAR(theta(s) / oracle_theta(s), 1.0, 1e-9) << "s=" << s;
}

TEST(Theta, WeightLimitApproaches) {
  auto gap = [](double s) { return std::fabs(2.0 * s * ell(s) * theta(s) - 1.0); };
  EXPECT_LT(gap(1e-7), gap(1e-4));
  EXPECT_LT(gap(1e-10), gap(1e-7));
}

TEST(LogWeights, DirectSubstitution) {
  const auto one = log_weights(1.0);
  EXPECT_DOUBLE_EQ(one.ell, 1.0);
  EXPECT_DOUBLE_EQ(one.ellell, 1.0);
  EXPECT_DOUBLE_EQ(one.ell_bar, 1.0);
  const auto e = log_weights(std::exp(-1.0));
  EXPECT_NEAR(e.ell, 2.0, 1e-15);
  EXPECT_NEAR(e.ellell, 1.0 + std::log(2.0), 1e-15);
  EXPECT_NEAR(e.ell_bar, 2.0, 1e-15);
  const auto two = log_weights(2.0);
  EXPECT_DOUBLE_EQ(two.ell_bar, 1.0);
  EXPECT_TRUE(std::isnan(two.ell));
}

TEST(LogWeights, LoglogInverseRoundTrip) {
  for (double y : {1.0, 1.5, 2.0, 3.0, 4.0}) EXPECT_NEAR(ellell(ellell_inverse(y)), y, 1e-12);
}
