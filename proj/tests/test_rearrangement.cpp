#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "ouembed/step_function.hpp"

using namespace ouembed;

namespace {

StepFunction thirds(double a, double b, double c) { return StepFunction({0.0, 1.0 / 3, 2.0 / 3, 1.0}, {a, b, c}); }

// Random step function with ties and zero cells.
StepFunction random_step(std::mt19937_64& rng, bool nonneg) {
  std::uniform_int_distribution<int> cells(1, 40), pick(0, 5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int n = cells(rng);
  std::vector<double> cuts(n - 1);
  for (auto& c : cuts) c = u(rng);
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> b{0.0};
  for (double c : cuts)
    if (c > b.back() + 1e-9) b.push_back(c);
  b.push_back(1.0);
  std::vector<double> v(b.size() - 1);
  for (auto& x : v) {
    const int k = pick(rng);
    x = k == 0 ? 0.0 : k == 1 ? 1.0 : (nonneg ? 3.0 * u(rng) : 6.0 * u(rng) - 3.0);
  }
  return StepFunction(b, v);
}

// Brute-force rearrangement: sort (value, width) pairs.
double brute_star(const StepFunction& f, double s) {
  std::vector<std::pair<double, double>> cells;
  for (std::size_t i = 0; i < f.size(); ++i) cells.emplace_back(std::fabs(f.value(i)), f.width(i));
  std::sort(cells.begin(), cells.end(), [](auto& x, auto& y) { return x.first > y.first; });
  double acc = 0.0;
  for (auto& [v, w] : cells) {
    acc += w;
    if (s < acc) return v;
  }
  return cells.back().first;
}

}  // namespace

TEST(Rearrangement, SortsThirds) {
  const auto r = decreasing_rearrangement(thirds(3, 1, 2));
  EXPECT_DOUBLE_EQ(r(0.1), 3.0);
  EXPECT_DOUBLE_EQ(r(0.5), 2.0);
  EXPECT_DOUBLE_EQ(r(0.9), 1.0);
}

TEST(Rearrangement, IndicatorOfScatteredSet) {
  const StepFunction f({0.0, 0.2, 0.3, 0.7, 0.8, 1.0}, {0, 1, 0, 1, 0});
  const auto r = decreasing_rearrangement(f);
  EXPECT_DOUBLE_EQ(r(0.19), 1.0);
  EXPECT_DOUBLE_EQ(r(0.21), 0.0);
}

TEST(Rearrangement, IdentityBecomesReflection) {
  const auto f = StepFunction::sample([](double s) { return s; }, geometric_breaks(1e-6, 1.0, 400));
  const auto r = decreasing_rearrangement(f);
  for (double s : {0.01, 0.3, 0.5, 0.8}) EXPECT_NEAR(r(s), 1.0 - s, 0.02);
}

TEST(Rearrangement, SignedKeepsSign) {
  const StepFunction f({0.0, 0.5, 1.0}, {-1.0, 2.0});
  const auto r = signed_rearrangement(f);
  EXPECT_DOUBLE_EQ(r(0.25), 2.0);
  EXPECT_DOUBLE_EQ(r(0.75), -1.0);
}

TEST(Rearrangement, SignedEqualsDecreasingForNonnegative) {
  std::mt19937_64 rng(1);
  for (int k = 0; k < 20; ++k) {
    const auto f = random_step(rng, true);
    const auto a = signed_rearrangement(f), b = decreasing_rearrangement(f);
    for (double s = 0.005; s < 1.0; s += 0.01) EXPECT_DOUBLE_EQ(a(s), b(s));
  }
}

TEST(Rearrangement, MatchesBruteForceAndPreservesIntegral) {
  std::mt19937_64 rng(2);
  for (int k = 0; k < 50; ++k) {
    const auto f = random_step(rng, false);
    const auto r = decreasing_rearrangement(f);
    EXPECT_NEAR(r.integral(), f.abs().integral(), 1e-12);
    for (double s = 0.0031; s < 1.0; s += 0.0173) EXPECT_DOUBLE_EQ(r(s), brute_star(f, s)) << "s=" << s;
  }
}

TEST(Median, IdentityIsOneHalf) {
  const auto f = StepFunction::sample([](double s) { return s; }, geometric_breaks(1e-6, 1.0, 1000));
  EXPECT_NEAR(median(f), 0.5, 0.01);
}

TEST(Median, IndicatorAndConstant) {
  const auto chi = StepFunction::indicator(0.1);
  EXPECT_DOUBLE_EQ(median(chi), 0.0);
  EXPECT_NEAR(mean(chi), 0.1, 1e-15);
  EXPECT_DOUBLE_EQ(median(StepFunction::constant(2.5)), 2.5);
  EXPECT_DOUBLE_EQ(mean(StepFunction::constant(2.5)), 2.5);
}

TEST(Median, OddSymmetricSampleIsZero) {
  // Values vanish at the centre, so the right-continuous value at 1/2 is 0.
  const StepFunction f({0.0, 0.1, 0.3, 0.5, 0.7, 0.9, 1.0}, {3, 1, 0, 0, -1, -3});
  EXPECT_DOUBLE_EQ(median(f), 0.0);
  const auto g = StepFunction::sample([](double s) { return 0.5 - s; }, geometric_breaks(1e-6, 1.0, 2000));
  EXPECT_NEAR(median(g), 0.0, 2e-3);
}

TEST(Median, JumpAtCentreTakesRightValue) {
  const StepFunction f({0.0, 0.25, 0.5, 0.75, 1.0}, {2, 1, -1, -2});
  EXPECT_DOUBLE_EQ(median(f), -1.0);
}

TEST(Maximal, IndicatorAndConstant) {
  const auto m = maximal_function(StepFunction::indicator(0.2));
  for (double s : {0.05, 0.2, 0.4, 0.9}) EXPECT_NEAR(m(s), std::min(1.0, 0.2 / s), 1e-14);
  const auto c = maximal_function(StepFunction::constant(1.7));
  for (double s : {1e-9, 0.3, 1.0}) EXPECT_NEAR(c(s), 1.7, 1e-14);
}

TEST(Maximal, DominatesRearrangementAndIsSubadditive) {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 30; ++k) {
    const auto f = random_step(rng, false), g = random_step(rng, false);
    const auto mf = maximal_function(f), mg = maximal_function(g), mfg = maximal_function(f + g);
    for (int i = 1; i <= 1000; ++i) {
      const double s = i / 1000.0;
      EXPECT_LE(mf.rearranged()(s), mf(s) + 1e-12);
      EXPECT_LE(mfg(s), mf(s) + mg(s) + 1e-12);
    }
  }
}

TEST(Pairing, HardyLittlewoodTwoSided) {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 40; ++k) {
    const auto f = random_step(rng, false), g = random_step(rng, false);
    const auto fs = decreasing_rearrangement(f), gs = decreasing_rearrangement(g);
    const double lower = pairing(fs, gs.reversed()), upper = pairing(fs, gs), mid = pairing(f, g);
    EXPECT_LE(lower, mid + 1e-12);
    EXPECT_LE(mid, upper + 1e-12);
  }
}

TEST(Pairing, TrivialCases) {
  EXPECT_NEAR(pairing(StepFunction::indicator(0.3), StepFunction::indicator(0.3)), 0.3, 1e-15);
  const StepFunction g({0.0, 0.4, 1.0}, {-2.0, 0.5});
  EXPECT_NEAR(pairing(StepFunction::constant(1.0), g), g.abs().integral(), 1e-15);
}

TEST(StepCsv, RoundTrip) {
  std::mt19937_64 rng(5);
  const auto f = random_step(rng, false);
  std::stringstream buf(to_csv(f));
  const auto g = read_csv(buf);
  ASSERT_EQ(g.size(), f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    EXPECT_DOUBLE_EQ(g.value(i), f.value(i));
    EXPECT_DOUBLE_EQ(g.right(i), f.right(i));
  }
}
