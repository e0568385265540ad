#include <gtest/gtest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>

#include "ouembed/errors.hpp"
#include "ouembed/norms.hpp"
#include "ouembed/optimal.hpp"
#include "ouembed/profile.hpp"

using namespace ouembed;

namespace {

// One A_L build for t^2 shared by the tests below.
const OrliczTargetBuild& square_target() {
  static const OrliczTargetBuild b = build_orlicz_target(young::power(2.0));
  return b;
}

}  // namespace

TEST(GaugeTable, ClosedFormBelowOne) {
  const auto& g = *square_target().g;
  for (double tau : {1e-6, 1e-3, 0.1, 0.5, 1.0}) EXPECT_NEAR(g(tau) / (0.5 * std::sqrt(tau)), 1.0, 1e-8) << tau;
}

TEST(GaugeTable, ValueAtTwoFromOracle) {
  boost::math::quadrature::tanh_sinh<double> ts;
  const double j = ts.integrate([](double r) { return 1.0 / std::pow(r * ell(r), 2); }, 0.5, 1.0);
  const double want = 0.5 * std::sqrt(1.0 + j);
  EXPECT_NEAR(square_target().g->direct(0.5) / want, 1.0, 1e-9);
}

TEST(GaugeTable, InterpolantTracksDirectNorm) {
  // Log-log interpolation at 12 nodes per decade: about 1e-3 between nodes.
  const auto& g = *square_target().g;
  for (double tau = 1e-3; tau <= 1e8; tau *= 1.37) EXPECT_NEAR(g(tau) / g.direct(1.0 / tau), 1.0, 1e-3) << tau;
}

TEST(GaugeTable, MonotoneAndSublinear) {
  const auto& g = *square_target().g;
  const auto& tau = g.taus();
  const auto& val = g.values();
  for (std::size_t i = 1; i < tau.size(); ++i) {
    EXPECT_GE(val[i], val[i - 1]);
    EXPECT_LE(val[i] / tau[i], val[i - 1] / tau[i - 1] * (1.0 + 1e-12));
  }
}

TEST(GaugeTable, FlatBeyondSupport) {
  // omega = 1/r on (0, 4), 0 beyond: G vanishes once 1/tau >= 4, and
  // G(1/2) = 1/4 from int_2^4 dr / (4 r^2 lambda^2) = 1.
  Weight w;
  w.omega = [](double r) { return r < 4.0 ? 1.0 / r : 0.0; };
  w.kinks = {4.0};
  w.tag = "1/r on (0,4)";
  const auto g = build_G_omega(young::power(2.0), w);
  // Nodes sit at 10^(k/12); the support edge 1/4 falls inside the cell
  // (10^(-8/12), 10^(-7/12)), below which the table is exactly zero.
  for (double tau : {1e-6, 1e-3, 0.1, 0.2}) EXPECT_EQ((*g)(tau), 0.0) << tau;
  EXPECT_EQ(g->direct(4.0), 0.0);
  EXPECT_NEAR(g->direct(2.0), 0.25, 1e-9);
  // sqrt onset at the edge: inside the first positive cell the log-log
  // interpolant is off by about 10% (tau = 0.3); from the next cell on it
  // tracks the direct norm.
  for (double tau : {0.5, 0.8, 3.0}) EXPECT_NEAR((*g)(tau) / g->direct(1.0 / tau), 1.0, 1e-2) << tau;
}

TEST(GaugeTable, RejectsWeightVanishingNearInfinity) {
  Weight w;
  w.omega = [](double r) { return r < 1.0 ? 1.0 : 0.0; };
  w.kinks = {1.0};
  w.tag = "chi_(0,1)";
  EXPECT_THROW(build_G_omega(young::power(2.0), w), PreconditionError);
}

TEST(OrliczTarget, SquareGivesLogSquaredBand) {
  const auto& a = square_target().a_omega;
  EXPECT_DOUBLE_EQ(a(0.0), 0.0);
  double lo = 1e300, hi = 0.0;
  for (double t = 10.0; t <= 1e6; t *= 1.2) {
    const double r = a(t) / std::pow(t * std::log(t), 2);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  EXPECT_LT(hi / lo, 10.0);
  EXPECT_TRUE(looks_like_young(a, 1e-3, 1e6));
}

TEST(Dominates, PowerComparisons) {
  const auto t2 = young::power(2.0), t3 = young::power(3.0);
  const auto self = dominates(t2, t2);
  EXPECT_EQ(self.verdict, Verdict::yes);
  EXPECT_NEAR(self.c, 1.0, 1e-6);
  EXPECT_EQ(dominates(t3, t2).verdict, Verdict::yes);
  EXPECT_EQ(dominates(t2, t3).verdict, Verdict::no);
  EXPECT_EQ(dominates(square_target().a_omega, young::power(2.0, 2.0)).verdict, Verdict::yes);
}

TEST(OrliczVerdict, ExampleRows) {
  const auto target = std::make_shared<const OrliczTargetBuild>(square_target());
  EXPECT_EQ(orlicz_embedding_verdict(young::power(2.0), young::power(2.0, 2.0), target).verdict, EmbedVerdict::embeds);
  EXPECT_EQ(orlicz_embedding_verdict(young::power(2.0), young::power(3.0), target).verdict, EmbedVerdict::fails);
  EXPECT_EQ(orlicz_embedding_verdict(young::exp_power(1.0), young::exp_power(1.0)).verdict, EmbedVerdict::embeds);
}

TEST(LzTarget, TableCases) {
  EXPECT_EQ(lz_optimal_target(1, 1, 0, 2).describe(), make_lz(1, 1, 0, 1).describe());
  EXPECT_EQ(lz_optimal_target(2, 2, 0, 0).describe(), make_lz(2, 2, 1, 0).describe());
  EXPECT_EQ(lz_optimal_target(3, 1.5, -0.5, 2).describe(), make_lz(3, 1.5, 0.5, 2).describe());
  EXPECT_EQ(lz_optimal_target(INFINITY, INFINITY, 0, 0).describe(), make_lz(INFINITY, INFINITY, 0, -1).describe());
  EXPECT_THROW(lz_optimal_target(1, 1, 0, 0.5), Rejected);
}

TEST(MarcinkiewiczTarget, EndpointBands) {
  struct Case {
    PowerLog phi;
    std::function<double(double)> want;
  };
  const std::vector<Case> cases{
      {{0, 0, 0}, [](double s) { return s / (s * ellell(s)); }},  // psi ~ s ll, so psi_bar ~ 1/ll
      {{0, -1, 0}, [](double s) { return 1.0 / ell(s); }},
      {{0.5, 0, 0}, [](double s) { return std::sqrt(s) * ell(s); }},
  };
  for (const auto& c : cases) {
    const MarcinkiewiczTarget m(Quasiconcave::preset(c.phi));
    double lo = 1e300, hi = 0.0;
    for (double s = 1e-10; s <= 0.4; s *= 1.3) {
      const double r = m.psi_bar(s) / c.want(s);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    EXPECT_LT(hi / lo, 10.0) << c.phi.str();
  }
}

TEST(MarcinkiewiczTarget, RejectsWhenRangeConditionFails) {
  EXPECT_THROW(MarcinkiewiczTarget(Quasiconcave::preset({1, 0, 0})), Rejected);
}

TEST(MarcinkiewiczDomain, ZeroAndQuadratureOracle) {
  const auto theta_lin = Quasiconcave::preset({1, 0, 0});
  EXPECT_DOUBLE_EQ(marcinkiewicz_optimal_domain_norm(StepFunction::constant(0.0), theta_lin), 0.0);
  boost::math::quadrature::tanh_sinh<double> ts;
  for (double a : {0.3, 1e-3, 1e-8}) {
    // The bracket increases in s here, so the sup sits at s = 1.
    const double want = ts.integrate([](double r) { return 1.0 / ell(r); }, 0.0, a) + a * (ellell(a) - 1.0);
    EXPECT_NEAR(marcinkiewicz_optimal_domain_norm(StepFunction::indicator(a), theta_lin) / want, 1.0, 1e-6) << a;
  }
}

TEST(ConditionChecks, LebesgueAndExpExp) {
  EXPECT_FALSE(condition_checks(make_lebesgue(1.0)).target_ok);
  EXPECT_TRUE(condition_checks(make_lebesgue(2.0)).target_ok);
  EXPECT_TRUE(condition_checks(make_orlicz(young::expexp_power(1.0))).domain_ok);
  EXPECT_THROW(condition_checks(make_weak(Quasiconcave::preset({0.5, 0, 0}))), Rejected);
}

TEST(EmbedReport, LebesgueQueries) {
  EXPECT_EQ(embed_report(make_lebesgue(1.0), make_lebesgue(1.0)).verdict, EmbedVerdict::fails);
  const auto good = embed_report(make_lebesgue(2.0), make_lz(2, 2, 1, 0));
  EXPECT_EQ(good.verdict, EmbedVerdict::embeds);
  ASSERT_TRUE(good.optimal_target.has_value());
  EXPECT_EQ(good.optimal_target->describe(), make_lz(2, 2, 1, 0).describe());
  EXPECT_EQ(embed_report(make_lebesgue(2.0), make_lz(2, 2, 1.5, 0)).verdict, EmbedVerdict::fails);
}
