#include <gtest/gtest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <random>

#include "ouembed/errors.hpp"
#include "ouembed/norms.hpp"
#include "ouembed/profile.hpp"

using namespace ouembed;

namespace {

StepFunction random_step(std::mt19937_64& rng, std::size_t cells = 64) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> b{0.0};
  for (std::size_t i = 1; i < cells; ++i) b.push_back(static_cast<double>(i) / cells + 0.3 * u(rng) / cells);
  b.push_back(1.0);
  std::vector<double> v(cells);
  for (auto& x : v) x = u(rng) < 0.15 ? 0.0 : 4.0 * u(rng) - 1.0;
  return StepFunction(b, v);
}

}  // namespace

TEST(YoungConjugate, ClosedFormPairs) {
  const auto half_square = young::scaled_power(2.0, 0.5);
  const auto conj = young_conjugate(half_square);
  for (double t : {0.1, 1.0, 3.0, 50.0}) EXPECT_NEAR(conj(t), 0.5 * t * t, 1e-12 * t * t);
  const double p = 3.0, q = 1.5;
  const auto tp = young::scaled_power(p, 1.0 / p);
  const auto tq = young_conjugate(tp);
  for (double t : {0.2, 1.0, 7.0}) EXPECT_NEAR(tq(t) / (std::pow(t, q) / q), 1.0, 1e-12);
}

TEST(YoungConjugate, NumericLegendreMatchesClosedForm) {
  const auto a = young::scaled_power(3.0, 1.0 / 3.0);
  const auto numeric = legendre_conjugate(a);
  for (double t : {0.05, 0.5, 2.0, 30.0}) EXPECT_NEAR(numeric(t) / (std::pow(t, 1.5) / 1.5), 1.0, 1e-6) << t;
}

TEST(YoungConjugate, InverseSandwich) {
  for (const auto& a : {young::power(2.0), young::power(1.5, 1.0), young::exp_power(1.0), young::power(3.0)}) {
    const auto c = young_conjugate(a);
    for (double t = 1e-3; t <= 1e6; t *= 1.7) {
      const double prod = a.inverse(t) * c.inverse(t);
      EXPECT_GE(prod, t * (1.0 - 1e-8)) << a.tag << " t=" << t;
      EXPECT_LE(prod, 2.0 * t * (1.0 + 1e-8)) << a.tag << " t=" << t;
    }
  }
}

TEST(Luxemburg, PowerGaugeIsLebesgue) {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 10; ++k) {
    const auto g = random_step(rng);
    for (double p : {1.0, 2.0, 3.5}) EXPECT_NEAR(luxemburg_norm(g, young::power(p)) / lebesgue_norm(g, p), 1.0, 1e-8);
  }
}

TEST(Luxemburg, ConstantCollapsesToInverse) {
  const auto one = StepFunction::constant(1.0);
  EXPECT_NEAR(luxemburg_norm(one, young::exp_power(1.0)), 1.0 / std::log(2.0), 1e-12);
  const auto a = young::power(2.0, 1.0);
  EXPECT_NEAR(luxemburg_norm(StepFunction::constant(3.0), a), 3.0 / a.inverse(1.0), 1e-10);
  EXPECT_DOUBLE_EQ(luxemburg_norm(StepFunction::constant(0.0), a), 0.0);
}

TEST(LorentzZygmund, IndicatorValues) {
  EXPECT_NEAR(lorentz_zygmund_norm(StepFunction::indicator(0.25), 2, 2, 0, 0), 0.5, 1e-12);
  boost::math::quadrature::tanh_sinh<double> ts;
  for (double a : {0.5, 1e-2, 1e-6}) {
    const double want = std::sqrt(ts.integrate([](double s) { return std::pow(ell(s), 2); }, 0.0, a));
    EXPECT_NEAR(lorentz_zygmund_norm(StepFunction::indicator(a), 2, 2, 1, 0) / want, 1.0, 1e-8) << a;
  }
}

TEST(LorentzZygmund, WeakL2OfInverseRoot) {
  const auto g = StepFunction::sample([](double s) { return s < 1e-6 ? 0.0 : 1.0 / std::sqrt(s); },
                                      geometric_breaks(1e-6, 1.0, 4000));
  EXPECT_NEAR(lorentz_zygmund_norm(g, 2, INFINITY, 0, 0), 1.0, 5e-3);
}

TEST(LorentzZygmund, RejectsExcludedCorner) {
  EXPECT_THROW(make_lz(1, 1, 0, 0), Rejected);
  EXPECT_NO_THROW(make_lz(1, 1, 0, 0.5));
  EXPECT_THROW(make_lz(1, 2, 0, 0), Rejected);
}

TEST(Endpoint, IndicatorGivesFundamentalFunction) {
  const auto phi = Quasiconcave::preset({0.5, 1.0, 0.0});
  for (double a : {1e-8, 1e-3, 0.3, 1.0}) {
    const auto chi = StepFunction::indicator(a);
    EXPECT_NEAR(endpoint_norm(chi, phi, EndpointKind::lambda) / phi(a), 1.0, 1e-10);
    EXPECT_NEAR(endpoint_norm(chi, phi, EndpointKind::marcinkiewicz) / phi(a), 1.0, 1e-10);
  }
}

TEST(Endpoint, LinearMarcinkiewiczIsL1) {
  std::mt19937_64 rng(8);
  const auto phi = Quasiconcave::preset({1.0, 0.0, 0.0});
  for (int k = 0; k < 10; ++k) {
    const auto g = random_step(rng);
    EXPECT_NEAR(endpoint_norm(g, phi, EndpointKind::marcinkiewicz) / lebesgue_norm(g, 1.0), 1.0, 1e-12);
  }
}

TEST(Endpoint, WeakProductOfReciprocals) {
  // phi = 1/l and g* = l: the product is 1 except inside the first cell,
  // where the sample holds l(5e-13) while phi keeps decreasing.
  const auto g = StepFunction::sample([](double s) { return ell(s); }, geometric_breaks(1e-12, 1.0, 4000));
  const auto phi = Quasiconcave::preset({0.0, -1.0, 0.0});
  const double v = endpoint_norm(g, phi, EndpointKind::weak);
  EXPECT_GE(v, 1.0 - 1e-12);
  EXPECT_LE(v, ell(5e-13) / ell(1e-12) * (1.0 + 1e-9));
}

TEST(RiNorm, LebesgueOneAndRearrangementInvariance) {
  std::mt19937_64 rng(9);
  const std::vector<std::string> specs{"Lp:1", "Lp:3", "Lp:inf", "LZ:2,2,1,0", "LZ:3,1.5,-0.5,2", "Orlicz:exp^1",
                                       "Orlicz:power:2,1", "Lambda:s^0.5*l^1", "M:s^0.5", "weak:s^0.5"};
  for (int k = 0; k < 5; ++k) {
    const auto f = random_step(rng);
    EXPECT_NEAR(ri_norm(f, parse_space_spec("Lp:1")), f.abs().integral(), 1e-12);
    for (const auto& s : specs) {
      const auto x = parse_space_spec(s);
      EXPECT_NEAR(ri_norm(f, x) / ri_norm(f.abs(), x), 1.0, 1e-12) << s;
      EXPECT_NEAR(ri_norm(f, x) / ri_norm(decreasing_rearrangement(f), x), 1.0, 1e-9) << s;
    }
  }
}

TEST(RiNorm, HolderAgainstAssociate) {
  std::mt19937_64 rng(10);
  const std::vector<std::pair<std::string, double>> specs{
      {"Lp:1", 1.0}, {"Lp:2", 1.0}, {"Lp:4", 1.0}, {"Orlicz:power:2,0", 2.0}, {"Orlicz:exp^1", 2.0},
      {"Lambda:s^0.5*l^1", 1.0}, {"LZ:2,2,1,0", 1.0}};
  for (const auto& [s, k] : specs) {
    const auto x = parse_space_spec(s), xa = associate_spec(x);
    for (int i = 0; i < 10; ++i) {
      const auto f = random_step(rng), g = random_step(rng);
      EXPECT_LE(pairing(f, g), k * ri_norm(f, x) * ri_norm(g, xa) * (1.0 + 1e-9)) << s;
    }
  }
}

TEST(Associate, ClosedForms) {
  EXPECT_EQ(associate_spec(parse_space_spec("Lp:2")).describe(), "Lp:2");
  EXPECT_EQ(associate_spec(parse_space_spec("Lambda:s^0.5*l^1")).describe(), "M:s^0.5*l^-1*ll^0");
  const auto sq = associate_spec(parse_space_spec("Orlicz:power:2,0"));
  const auto& conj = std::get<Orlicz>(sq.kind).young;
  for (double t : {0.3, 2.0, 10.0}) EXPECT_NEAR(conj(t), t * t / 4.0, 1e-12 * t * t);
  EXPECT_THROW(associate_spec(parse_space_spec("weak:s^0.5")), Rejected);
}

TEST(Fundamental, KnownFormsAndDualityIdentity) {
  for (double t = 1e-6; t <= 1.0; t *= 1.15) {
    EXPECT_NEAR(fundamental_function(make_lebesgue(3.0), t), std::cbrt(t), 1e-12);
    const auto phi = Quasiconcave::preset({0.5, 0.5, 0.0});
    EXPECT_NEAR(fundamental_function(make_marcinkiewicz(phi), t) / phi(t), 1.0, 1e-10);
    for (const char* s : {"Lp:1.5", "Lp:inf", "Lambda:s^0.5*l^0.5", "M:l^-1"}) {
      const auto x = parse_space_spec(s);
      EXPECT_NEAR(fundamental_function(x, t) * fundamental_function(associate_spec(x), t) / t, 1.0, 1e-10) << s;
    }
  }
}

TEST(Parser, AcceptsGrammar) {
  EXPECT_EQ(parse_space_spec("Lp:2").describe(), "Lp:2");
  EXPECT_EQ(parse_space_spec("LZ:2,2,1,0:max").describe(), "LZ:2,2,1,0:max");
  EXPECT_EQ(parse_space_spec("Orlicz:exp^2").describe(), "Orlicz:exp^2");
  EXPECT_EQ(parse_space_spec("M:1").describe(), "M:s^0*l^0*ll^0");
}

TEST(Parser, ReportsPosition) {
  try {
    parse_space_spec("LZ:2,2");
    FAIL() << "no throw";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position, 6u);
    EXPECT_NE(e.expected_tokens.find(','), std::string::npos);
  }
  EXPECT_THROW(parse_space_spec("Foo:1"), ParseError);
  EXPECT_THROW(parse_space_spec("M:s^x"), ParseError);
}
