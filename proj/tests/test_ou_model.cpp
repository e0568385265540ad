#include <gtest/gtest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <random>

#include "ouembed/profile.hpp"
#include "ouembed/ridge.hpp"

using namespace ouembed;

namespace {

StepFunction random_half(std::mt19937_64& rng, std::size_t cells = 30) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> b = geometric_breaks(std::pow(10.0, -2.0 - 6.0 * u(rng)), 0.5, cells - 1);
  std::vector<double> v(b.size() - 1);
  for (auto& x : v) x = u(rng) < 0.2 ? 0.0 : 2.0 * u(rng);
  return StepFunction(b, v);
}

RidgeOptions small() {
  RidgeOptions o;
  o.cells = 1024;
  return o;
}

}  // namespace

TEST(Ridge, ConstantDatumMatchesQuadrature) {
  const auto sol = RidgeSolution::build(StepFunction::constant(1.0, 0.5), small());
  EXPECT_NEAR(sol.f_norm(), 1.0, 1e-15);
  boost::math::quadrature::tanh_sinh<double> ts;
  for (double s : {1e-9, 1e-4, 0.01, 0.2, 0.45}) {
    const double want = ts.integrate([](double r) { return r / std::pow(iso_profile(r), 2); }, s, 0.5);
    EXPECT_NEAR(sol.u_profile(s) / want, 1.0, 1e-8) << s;
  }
}

TEST(Ridge, ConstantDatumGradientClosedForm) {
  const auto sol = RidgeSolution::build(StepFunction::constant(1.0, 0.5), small());
  auto G = [](double p) { return p / iso_profile(p); };
  for (double s : {1e-6, 0.1, 0.5, 0.9}) EXPECT_NEAR(sol.gradient_star(s) / G((1.0 - s) / 2.0), 1.0, 1e-6) << s;
  EXPECT_NEAR(sol.gradient_star(1e-12), kSqrt2Pi / 2.0, 1e-6);
}

TEST(Ridge, ZeroDatumIsZero) {
  const auto sol = RidgeSolution::build(StepFunction::constant(0.0, 0.5), small());
  EXPECT_DOUBLE_EQ(sol.f_norm(), 0.0);
  for (double s : {1e-6, 0.3}) {
    EXPECT_DOUBLE_EQ(sol.u_star(s), 0.0);
    EXPECT_DOUBLE_EQ(sol.gradient_star(s), 0.0);
  }
}

TEST(Ridge, TwoRoutesAgree) {
  std::mt19937_64 rng(31);
  for (int k = 0; k < 10; ++k) {
    const auto sol = RidgeSolution::build(random_half(rng), small());
    for (int i = 0; i < 64; ++i) {
      const double s = std::pow(10.0, -12.0 + 11.5 * i / 63.0) * 0.5;
      EXPECT_NEAR(sol.u_profile(s) / sol.u_profile_theta(s), 1.0, 1e-6) << s;
    }
  }
}

TEST(Ridge, EstimatesHoldOnRandomData) {
  std::mt19937_64 rng(32);
  for (int k = 0; k < 5; ++k) {
    const auto rep = check_estimates(RidgeSolution::build(random_half(rng), small()));
    EXPECT_LE(rep.u_violation, 1e-6);
    EXPECT_LE(rep.gradient_violation, 1e-6);
  }
}

TEST(Extremal, UnitMassAndLowerBounds) {
  for (double delta : {0.25, 0.125, 1e-3, 1e-7}) {
    const auto sol = extremal_family(delta, small());
    EXPECT_NEAR(sol.f_norm(), 1.0, 1e-12);
    const double level = 0.5 * theta(delta), grad_level = 1.0 / (4.0 * iso_profile(delta / 2.0));
    for (double t : {1e-6, 0.3, 0.9, 0.999}) {
      EXPECT_GE(sol.u_star(2.0 * delta * t), level * (1.0 - 1e-9)) << delta << " " << t;
      EXPECT_GE(sol.gradient_star(delta * t), grad_level * (1.0 - 1e-9)) << delta << " " << t;
    }
  }
}

TEST(Extremal, ConcentrationRaisesThePeak) {
  const auto wide = extremal_family(0.25, small()), narrow = extremal_family(0.125, small());
  for (double s : {1e-8, 1e-4, 1e-2}) EXPECT_GT(narrow.u_star(s), wide.u_star(s));
}

TEST(Extremal, WeakRatioStaysBounded) {
  double lo = 1e300, hi = 0.0;
  for (int k = 3; k <= 30; k += 3) {
    const auto rep = check_estimates(extremal_family(std::ldexp(1.0, -k), small()));
    lo = std::min(lo, rep.weak_u_ratio);
    hi = std::max(hi, rep.weak_u_ratio);
  }
  EXPECT_LT(hi / lo, 2.0);
}

TEST(Extremal, SerialAndParallelBatchAgree) {
  const std::vector<double> deltas{0.25, 1e-2, 1e-5};
  const auto a = check_estimates_batch(deltas, small(), false), b = check_estimates_batch(deltas, small(), true);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].u_violation, b[i].u_violation);
    EXPECT_EQ(a[i].weak_u_ratio, b[i].weak_u_ratio);
    EXPECT_EQ(a[i].weak_gradient_ratio, b[i].weak_gradient_ratio);
  }
}
