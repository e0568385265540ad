#include "ouembed/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include <boost/math/special_functions/erf.hpp>

#include "ouembed/calderon.hpp"
#include "ouembed/errors.hpp"
#include "ouembed/norms.hpp"
#include "ouembed/optimal.hpp"
#include "ouembed/profile.hpp"
#include "ouembed/quadrature.hpp"
#include "ouembed/ridge.hpp"
#include "ouembed/step_function.hpp"

namespace ouembed {

namespace {

using Rows = std::vector<ReportRow>;
using Rng = std::mt19937_64;
using Meta = std::map<std::string, std::string>;

std::string num(double x) { return format_number(x); }

// Each group draws from its own stream so that groups can run in any order.
Rng stream(const VerifyOptions& opt, std::uint64_t salt) { return Rng(opt.seed ^ (salt * 0x9E3779B97F4A7C15ULL)); }

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

StepFunction random_step(Rng& rng, double length, bool nonnegative, std::size_t min_cells = 4,
                         std::size_t max_cells = 40) {
  const auto n = std::uniform_int_distribution<std::size_t>(min_cells, max_cells)(rng);
  std::vector<double> cuts;
  for (std::size_t i = 0; i + 1 < n; ++i) cuts.push_back(uniform(rng, 0.0, length));
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> breaks{0.0};
  for (double c : cuts)
    if (c > breaks.back() + 1e-9 * length && c < length * (1.0 - 1e-9)) breaks.push_back(c);
  breaks.push_back(length);
  std::vector<double> values;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    // Some zero cells and repeated values, to exercise ties.
    const double u = uniform(rng, 0.0, 1.0);
    if (u < 0.15) values.push_back(0.0);
    else if (u < 0.25 && !values.empty()) values.push_back(values.back());
    else values.push_back(nonnegative ? uniform(rng, 0.0, 3.0) : uniform(rng, -3.0, 3.0));
  }
  return StepFunction(breaks, values);
}

// min and max of f over a log grid of [lo, hi].
std::pair<double, double> range_over(const std::function<double(double)>& f, double lo, double hi, int points = 201) {
  double mn = std::numeric_limits<double>::infinity(), mx = -mn;
  for (int k = 0; k < points; ++k) {
    const double x = lo * std::pow(hi / lo, static_cast<double>(k) / (points - 1));
    const double v = f(x);
    mn = std::min(mn, v);
    mx = std::max(mx, v);
  }
  return {mn, mx};
}

double flag(bool b) { return b ? 1.0 : 0.0; }

// ---- profile -------------------------------------------------------------

Rows profile_iso_limit(const VerifyOptions&) {
  auto dev = [](double s) { return std::fabs(iso_profile(s) / (s * std::sqrt(2.0 * ell(s))) - 1.0); };
  const double d12 = dev(1e-12), d6 = dev(1e-6);
  return {make_row("profile", "iso_limit_at_1e-12", d12, 0.1, Polarity::below),
          make_row("profile", "iso_limit_decreasing", d12, d6, Polarity::below, {{"deviation_at_1e-6", num(d6)}})};
}

Rows profile_theta_limit(const VerifyOptions&) {
  auto dev = [](double s) { return std::fabs(2.0 * s * ell(s) * theta(s) - 1.0); };
  const double d4 = dev(1e-4), d7 = dev(1e-7), d10 = dev(1e-10);
  return {make_row("profile", "theta_limit_at_1e-10", d10, 0.1, Polarity::below),
          make_row("profile", "theta_limit_decreasing_1e-7", d7, d4, Polarity::below),
          make_row("profile", "theta_limit_decreasing_1e-10", d10, d7, Polarity::below)};
}

Rows profile_tail(const VerifyOptions&) {
  Rows rows;
  // Boost's erfc is an implementation independent of gauss_tail.
  const double ref = 0.5 * boost::math::erfc(4.75342 / std::sqrt(2.0));
  rows.push_back(make_row("profile", "tail_4.75342_vs_erfc", std::fabs(gauss_tail(4.75342) / ref - 1.0), 1e-12));
  rows.push_back(make_row("profile", "tail_4.75342_near_1e-6", std::fabs(gauss_tail(4.75342) / 1e-6 - 1.0), 1e-4));

  double round_trip = 0.0;
  for (int k = 0; k <= 300; ++k) {
    const double p = std::pow(10.0, -290.0 * k / 300.0) * 0.999;  // above the 1e-300 clamp
    round_trip = std::max(round_trip, std::fabs(gauss_tail(gauss_tail_inverse(p)) / p - 1.0));
  }
  rows.push_back(make_row("profile", "tail_round_trip", round_trip, 1e-10));

  double reflection = 0.0, derivative = 0.0;
  for (int k = 0; k <= 600; ++k) {
    const double t = -3.0 + 6.0 * k / 600.0;
    reflection = std::max(reflection, std::fabs(gauss_tail(t) + gauss_tail(-t) - 1.0));
    const double eps = 1e-5;
    const double fd = (gauss_tail(t + eps) - gauss_tail(t - eps)) / (2.0 * eps);
    const double exact = -iso_profile(gauss_tail(t));
    derivative = std::max(derivative, std::fabs(fd / exact - 1.0));
  }
  rows.push_back(make_row("profile", "tail_reflection", reflection, 1e-14));
  rows.push_back(make_row("profile", "derivative_identity", derivative, 1e-6));

  int monotone_breaks = 0;
  double prev = 0.0;
  for (int k = 1; k < 1000; ++k) {
    const double s = 0.5 * k / 1000.0;
    const double g = s / iso_profile(s);
    if (!(g > prev)) ++monotone_breaks;
    prev = g;
  }
  rows.push_back(make_row("profile", "s_over_I_increasing_breaks", monotone_breaks, 0.0));

  double symmetry = 0.0;
  for (int k = 1; k < 100; ++k) {
    const double s = k / 200.0;
    symmetry = std::max(symmetry, std::fabs(iso_profile(s) / iso_profile(1.0 - s) - 1.0));
  }
  rows.push_back(make_row("profile", "iso_symmetry", symmetry, 1e-12));
  return rows;
}

// ---- rearrangement --------------------------------------------------------

double distribution(const StepFunction& f, double level) {
  double m = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (std::fabs(f.value(i)) > level) m += f.width(i);
  return m;
}

Rows rearrangement_calculus(const VerifyOptions& opt) {
  Rows rows;
  constexpr int kSamples = 100;
  constexpr double kTol = 1e-12;
  Rng rng = stream(opt, 10);

  int hl = 0, sub = 0, split = 0, hardy = 0, hardy_premise = 0, equi = 0, median_mean = 0;
  double mm_lo = std::numeric_limits<double>::infinity(), mm_hi = 0.0;
  const std::vector<SpaceSpec> mm_spaces{make_lebesgue(1.0), make_lebesgue(2.0), make_lz(2.0, 2.0, 1.0, 0.0)};

  for (int n = 0; n < kSamples; ++n) {
    const StepFunction f = random_step(rng, 1.0, false);
    const StepFunction g = random_step(rng, 1.0, false);
    const StepFunction fs = decreasing_rearrangement(f), gs = decreasing_rearrangement(g);

    // Hardy-Littlewood, both sides.
    const double mid = pairing(f, g);
    const double upper = pairing(fs, gs);
    const double lower = pairing(fs, gs.reversed());
    const double scale = std::max(upper, 1.0);
    if (mid > upper + kTol * scale || mid < lower - kTol * scale) ++hl;

    // ** subadditivity at 10 points.
    const MaximalFunction mf(f), mg(g), mfg(f + g);
    for (int k = 1; k <= 10; ++k) {
      const double s = k / 10.0 - 0.05 * uniform(rng, 0.0, 1.0);
      if (mfg.primitive(s) > mf.primitive(s) + mg.primitive(s) + kTol * scale) ++sub;
    }

    // Splitting on a grid.
    const StepFunction fgs = decreasing_rearrangement(f + g);
    for (int k = 1; k < 200; ++k) {
      const double s = k / 200.0;
      if (fgs(s) > fs(0.5 * s) + gs(0.5 * s) + kTol * scale) ++split;
    }

    // Hardy's lemma: g1 a cell permutation of equal-width cells, g2 = g1*.
    {
      const std::size_t cells = std::uniform_int_distribution<std::size_t>(4, 32)(rng);
      std::vector<double> breaks(cells + 1), v1(cells);
      for (std::size_t i = 0; i <= cells; ++i) breaks[i] = static_cast<double>(i) / cells;
      breaks.back() = 1.0;
      for (auto& v : v1) v = uniform(rng, 0.0, 2.0);
      std::vector<double> v2 = v1;
      std::sort(v2.begin(), v2.end(), std::greater<>());
      const StepFunction g1(breaks, v1), g2(breaks, v2);
      for (std::size_t i = 1; i <= cells; ++i)
        if (g1.integral_to(breaks[i]) > g2.integral_to(breaks[i]) + kTol) ++hardy_premise;
      StepFunction h = decreasing_rearrangement(random_step(rng, 1.0, true));
      if (pairing(g1, h) > pairing(g2, h) + kTol * std::max(1.0, pairing(g2, h))) ++hardy;
    }

    // Equimeasurability at every value level.
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double level = std::fabs(f.value(i)) * (1.0 - 1e-15);
      if (std::fabs(distribution(f, level) - distribution(fs, level)) > kTol) ++equi;
    }

    // Median versus mean.
    const double med = median(f), mv = mean(f);
    for (const auto& x : mm_spaces) {
      const double around_mean = ri_norm(f.shifted(-mv), x);
      const double around_median = ri_norm(f.shifted(-med), x);
      if (!(around_mean > 0.0)) continue;
      const double r = around_median / around_mean;
      mm_lo = std::min(mm_lo, r);
      mm_hi = std::max(mm_hi, r);
      if (r < 0.5 * (1.0 - kTol) || r > 3.0 * (1.0 + kTol)) ++median_mean;
    }
  }
  const Meta samples{{"samples", std::to_string(kSamples)}, {"tolerance", num(kTol)}};
  rows.push_back(make_row("rearrangement", "hardy_littlewood_violations", hl, 0.0, Polarity::at_most, samples));
  rows.push_back(make_row("rearrangement", "maximal_subadditivity_violations", sub, 0.0, Polarity::at_most, samples));
  rows.push_back(make_row("rearrangement", "splitting_violations", split, 0.0, Polarity::at_most, samples));
  rows.push_back(make_row("rearrangement", "hardy_lemma_premise_violations", hardy_premise, 0.0));
  rows.push_back(make_row("rearrangement", "hardy_lemma_violations", hardy, 0.0, Polarity::at_most, samples));
  rows.push_back(make_row("rearrangement", "equimeasurability_violations", equi, 0.0, Polarity::at_most, samples));
  rows.push_back(make_row("rearrangement", "median_mean_violations", median_mean, 0.0, Polarity::at_most,
                          {{"spaces", "L1, L2, LZ(2,2,1,0)"}, {"ratio_min", num(mm_lo)}, {"ratio_max", num(mm_hi)}}));
  return rows;
}

// ---- calderon -------------------------------------------------------------

Rows calderon_self_adjoint(const VerifyOptions& opt) {
  Rng rng = stream(opt, 20);
  constexpr int kPairs = 20;
  std::vector<StepFunction> gs, hs;
  for (int i = 0; i < kPairs; ++i) {
    gs.push_back(random_step(rng, 1.0, true));
    hs.push_back(random_step(rng, 1.0, true));
  }
  std::vector<double> err(kPairs);
  for_each_index(
      kPairs,
      [&](std::size_t i) {
        const double a = pairing(apply_S(gs[i]), hs[i]);
        const double b = pairing(apply_S(hs[i]), gs[i]);
        err[i] = std::fabs(a - b) / std::max(std::fabs(a), std::fabs(b));
      },
      opt.exec);
  return {make_row("calderon", "self_adjoint_max_relative_error", *std::max_element(err.begin(), err.end()), opt.tol,
                   Polarity::at_most, {{"pairs", std::to_string(kPairs)}})};
}

Rows calderon_kernel(const VerifyOptions& opt) {
  Rng rng = stream(opt, 21);
  double worst = 0.0;
  for (int n = 0; n < 5; ++n) {
    const StepFunction g = random_step(rng, 1.0, true, 3, 12);
    const Evaluator sg = apply_S(g);
    for (int k = 0; k < 20; ++k) {
      const double s = std::pow(10.0, -12.0 * k / 19.0) * 0.999;
      const double near = 1.0 / (s * ell(s));
      double kernel = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i) {
        const double a = g.left(i), b = g.right(i), v = g.value(i);
        if (v == 0.0) continue;
        if (a < s) kernel += v * near * (std::min(b, s) - a);
        if (b > s)
          kernel += v * integrate([](double r) { return 1.0 / (r * ell(r)); }, std::max(a, s), b, 1e-13);
      }
      const double two_term = sg(s);
      if (kernel > 0.0) worst = std::max(worst, std::fabs(two_term / kernel - 1.0));
    }
  }
  return {make_row("calderon", "kernel_form_max_relative_error", worst, 1e-8)};
}

Rows calderon_hl_domination(const VerifyOptions& opt) {
  Rng rng = stream(opt, 22);
  int violations = 0;
  double worst = 0.0;
  for (int n = 0; n < 10; ++n) {
    const StepFunction g = random_step(rng, 1.0, true);
    const Evaluator sg = apply_S(g), sgs = apply_S(decreasing_rearrangement(g));
    const auto grid = s_output_grid(g, 256, opt.smin);
    for (double s : grid) {
      if (!(s > 0.0) || s >= 1.0) continue;
      const double a = sg(s), b = sgs(s);
      const double excess = (a - b) / b;
      worst = std::max(worst, excess);
      if (excess > 1e-12) ++violations;
    }
  }
  return {make_row("calderon", "hardy_littlewood_domination_violations", violations, 0.0, Polarity::at_most,
                   {{"max_relative_excess", num(worst)}})};
}

Rows calderon_duality(const VerifyOptions& opt) {
  Rng rng = stream(opt, 23);
  const Weight w = canonical_weight();
  double worst = 0.0;
  for (int n = 0; n < 20; ++n) {
    const StepFunction g = random_step(rng, 1.0, true), h = random_step(rng, 1.0, true);
    const double a = pairing(apply_R(g, w), h);
    const double b = pairing(apply_R_adjoint(h, w), g);
    worst = std::max(worst, std::fabs(a - b) / std::max(a, b));
  }
  return {make_row("calderon", "r_adjoint_duality_max_relative_error", worst, 1e-8)};
}

Rows calderon_admissible(const VerifyOptions&) {
  const auto canonical = admissible_check(canonical_weight());
  const auto inverse = admissible_check(power_weight(-1.0));
  const auto increasing = admissible_check(power_weight(1.0));
  return {make_row("calderon", "canonical_weight_admissible", flag(canonical.admissible), 1.0, Polarity::at_least),
          make_row("calderon", "inverse_weight_admissible", flag(inverse.admissible), 1.0, Polarity::at_least),
          make_row("calderon", "increasing_weight_rejected", flag(!increasing.admissible), 1.0, Polarity::at_least,
                   {{"violation_at", num(increasing.violation_at)}})};
}

// S against R o P for non-increasing g on s <= 1/2: the ratio range on two
// grids.  The constant is reported; stability across the grids is asserted.
Rows calderon_s_vs_rp(const VerifyOptions& opt) {
  Rng rng = stream(opt, 24);
  std::vector<StepFunction> gs{StepFunction::constant(1.0)};
  for (int n = 0; n < 4; ++n) gs.push_back(decreasing_rearrangement(random_step(rng, 1.0, true)));
  const Weight w = canonical_weight();
  auto constant_on = [&](int points) {
    std::vector<double> cs(gs.size());
    for_each_index(
        gs.size(),
        [&](std::size_t i) {
          const Evaluator sg = apply_S(gs[i]);
          const Evaluator rp = apply_R(apply_P(gs[i]), w);
          double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
          for (int k = 0; k < points; ++k) {
            const double s = 0.5 * std::pow(1e-12, static_cast<double>(k) / (points - 1));
            const double r = rp(s) / sg(s);
            lo = std::min(lo, r);
            hi = std::max(hi, r);
          }
          cs[i] = std::max(hi, 1.0 / lo);
        },
        opt.exec);
    return *std::max_element(cs.begin(), cs.end());
  };
  const double coarse = constant_on(60), fine = constant_on(240);
  return {info_row("calderon", "s_vs_rp_constant", fine, {{"coarse_grid_constant", num(coarse)}, {"range", "s <= 1/2"}}),
          make_row("calderon", "s_vs_rp_grid_stability", std::fabs(fine / coarse - 1.0), 0.05)};
}

Rows calderon_l1_failure(const VerifyOptions& opt) {
  const ConditionChecks c = condition_checks(make_lebesgue(1.0));
  const ScanResult scan = operator_ratio_scan(s_operator(opt.grid_size, opt.smin), make_lebesgue(1.0),
                                              make_lebesgue(1.0), Family::indicator, dyadic_sizes(2, 40), {}, opt.exec);
  return {make_row("calderon", "l1_target_condition_ok", flag(c.target_ok), 0.0, Polarity::at_most,
                   {{"note", c.target_note}}),
          make_row("calderon", "l1_scan_last_over_first", scan.last_over_first, 2.0, Polarity::at_least,
                   {{"max_over_min", num(scan.max_over_min)}})};
}

// ---- ou -------------------------------------------------------------------

RidgeOptions ridge_options(const VerifyOptions& opt) {
  RidgeOptions r;
  r.cells = opt.grid_size;
  r.smin = opt.smin;
  return r;
}

std::vector<StepFunction> random_data(const VerifyOptions& opt, int count) {
  Rng rng = stream(opt, 30);
  std::vector<StepFunction> out;
  for (int i = 0; i < count; ++i) out.push_back(random_step(rng, 0.5, true, 8, 32));
  return out;
}

Rows ou_routes(const VerifyOptions& opt) {
  const auto data = random_data(opt, 10);
  std::vector<double> worst(data.size());
  for_each_index(
      data.size(),
      [&](std::size_t i) {
        const RidgeSolution sol = RidgeSolution::build(data[i], ridge_options(opt));
        double w = 0.0;
        for (int j = 0; j < 64; ++j) {
          const double s = 0.5 * std::pow(1e-12, (j + 0.5) / 64.0);
          const double a = sol.u_profile(s), b = sol.u_profile_theta(s);
          if (b > 0.0) w = std::max(w, std::fabs(a - b) / b);
        }
        worst[i] = w;
      },
      opt.exec);
  return {make_row("ou", "route_agreement_max_relative_error", *std::max_element(worst.begin(), worst.end()), opt.tol,
                   Polarity::at_most, {{"data", "10"}, {"probes", "64"}})};
}

Rows ou_estimates(const VerifyOptions& opt) {
  Rows rows;
  std::vector<StepFunction> data = random_data(opt, 10);
  data.push_back(StepFunction::constant(1.0, 0.5));
  for (double d : {0.25, 1.0 / 64, 1.0 / 4096}) data.push_back(StepFunction({0.0, d, 0.5}, {0.5 / d, 0.0}));
  std::vector<EstimateReport> reports(data.size());
  for_each_index(
      data.size(), [&](std::size_t i) { reports[i] = check_estimates(RidgeSolution::build(data[i], ridge_options(opt))); },
      opt.exec);
  double u_viol = 0.0, g_viol = 0.0, u_slack = 0.0, u_slack_any = 0.0, mass = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    u_viol = std::max(u_viol, reports[i].u_violation);
    g_viol = std::max(g_viol, reports[i].gradient_violation);
    // Equality needs g = g*; the random data only give the inequality.
    const auto& v = data[i].values();
    if (std::is_sorted(v.rbegin(), v.rend())) u_slack = std::max(u_slack, reports[i].u_slack);
    else u_slack_any = std::max(u_slack_any, reports[i].u_slack);
    mass = std::max(mass, std::fabs(reports[i].f_norm - 2.0 * data[i].integral()));
  }
  rows.push_back(make_row("ou", "u_rearrangement_violation", u_viol, opt.tol));
  rows.push_back(make_row("ou", "u_rearrangement_slack_monotone_data", u_slack, opt.tol));
  rows.push_back(info_row("ou", "u_rearrangement_slack_random_data", u_slack_any));
  rows.push_back(make_row("ou", "gradient_rearrangement_violation", g_viol, opt.tol));
  rows.push_back(make_row("ou", "f_mass_identity_error", mass, 1e-14));

  // g = 1: |grad u|*(s) = G((1-s)/2) with G(p) = p/I(p).
  const RidgeSolution one = RidgeSolution::build(StepFunction::constant(1.0, 0.5), ridge_options(opt));
  double closed = 0.0;
  for (int k = 0; k < 400; ++k) {
    const double s = k < 200 ? std::pow(10.0, -12.0 + 11.0 * k / 199.0) : 0.1 + 0.899 * (k - 200) / 199.0;
    const double p = 0.5 * (1.0 - s);
    const double exact = p / iso_profile(p);
    closed = std::max(closed, std::fabs(one.gradient_star(s) / exact - 1.0));
  }
  rows.push_back(make_row("ou", "gradient_closed_form_constant_datum", closed, opt.tol,
                          Polarity::at_most, {{"monotone", one.gradient_monotone() ? "yes" : "no"}}));
  return rows;
}

std::vector<double> delta_family() {
  std::vector<double> d;
  for (int k = 3; k <= 30; ++k) d.push_back(std::ldexp(1.0, -k));
  return d;
}

struct WeakSups {
  double apr20, ll, apr30, l06, w11;
};

std::vector<WeakSups> weak_sups(const std::vector<double>& deltas, const RidgeOptions& ro, Exec exec) {
  std::vector<WeakSups> out(deltas.size());
  for_each_index(
      deltas.size(),
      [&](std::size_t i) {
        const RidgeSolution sol = extremal_family(deltas[i], ro);
        const EstimateReport e = check_estimates(sol);
        out[i].apr20 = e.weak_u_ratio;
        out[i].apr30 = e.weak_gradient_ratio;
        out[i].w11 = e.w11_ratio;
        out[i].ll = weighted_sup(sol, RidgeProfile::u, [](double s) { return s * ell(s) * ellell(s); }) / e.f_norm;
        out[i].l06 = weighted_sup(sol, RidgeProfile::gradient, [](double s) { return s * std::pow(ell(s), 0.6); }) /
                     e.f_norm;
      },
      exec);
  return out;
}

Rows ou_weak_type(const VerifyOptions& opt) {
  Rows rows;
  const auto deltas = delta_family();
  const auto sups = weak_sups(deltas, ridge_options(opt), opt.exec);
  auto spread = [&](double WeakSups::*m) {
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (const auto& s : sups) {
      lo = std::min(lo, s.*m);
      hi = std::max(hi, s.*m);
    }
    return std::pair{lo, hi};
  };
  const Meta range{{"delta", "2^-3 .. 2^-30"}};
  const auto [a20lo, a20hi] = spread(&WeakSups::apr20);
  rows.push_back(make_row("ou", "weak_u_sup_max_over_min", a20hi / a20lo, 2.0, Polarity::below,
                          {{"min", num(a20lo)}, {"max", num(a20hi)}}));
  rows.push_back(make_row("ou", "weak_u_loglog_weight_growth", sups.back().ll / sups.front().ll, 2.0,
                          Polarity::at_least, {{"first", num(sups.front().ll)}, {"last", num(sups.back().ll)}}));
  const auto [a30lo, a30hi] = spread(&WeakSups::apr30);
  rows.push_back(make_row("ou", "weak_gradient_sup_max_over_min", a30hi / a30lo, 2.0, Polarity::below,
                          {{"min", num(a30lo)}, {"max", num(a30hi)}}));
  rows.push_back(make_row("ou", "weak_gradient_l06_weight_growth", sups.back().l06 / sups.front().l06, 2.0,
                          Polarity::at_least, {{"first", num(sups.front().l06)}, {"last", num(sups.back().l06)}}));
  const auto [wlo, whi] = spread(&WeakSups::w11);
  rows.push_back(info_row("ou", "w11_ratio_max", whi, {{"min", num(wlo)}}));

  // Lower bounds along the family: u* >= Theta(delta)/2 on (0, 2 delta) and
  // |grad u|* >= 1/(4 I(delta/2)) on (0, delta).
  int lower = 0;
  for (double d : {0.25, 1.0 / 64, std::ldexp(1.0, -20), std::ldexp(1.0, -30)}) {
    const RidgeSolution sol = extremal_family(d, ridge_options(opt));
    for (int k = 0; k < 50; ++k) {
      const double s = 2.0 * d * std::pow(1e-3, (k + 0.5) / 50.0);
      if (sol.u_star(s) < 0.5 * theta(d) * (1.0 - 1e-9)) ++lower;
      const double t = 0.5 * s;
      if (sol.gradient_star(t) < 1.0 / (4.0 * iso_profile(0.5 * d)) * (1.0 - 1e-9)) ++lower;
    }
  }
  rows.push_back(make_row("ou", "extremal_lower_bound_violations", lower, 0.0));
  return rows;
}

Rows ou_refinement(const VerifyOptions& opt) {
  const auto deltas = delta_family();
  RidgeOptions coarse = ridge_options(opt), fine = coarse;
  fine.cells = 4 * coarse.cells;
  const auto a = weak_sups(deltas, coarse, opt.exec), b = weak_sups(deltas, fine, opt.exec);
  double u_lo = 0.0, u_hi = 0.0, g_lo = 0.0, g_hi = 0.0;
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    u_lo = std::max(u_lo, a[i].apr20);
    u_hi = std::max(u_hi, b[i].apr20);
    g_lo = std::max(g_lo, a[i].apr30);
    g_hi = std::max(g_hi, b[i].apr30);
  }
  return {make_row("ou", "weak_u_sup_refinement_change", std::fabs(u_hi / u_lo - 1.0), 0.2, Polarity::at_most,
                   {{"cells", std::to_string(coarse.cells) + " -> " + std::to_string(fine.cells)}}),
          make_row("ou", "weak_gradient_sup_refinement_change", std::fabs(g_hi / g_lo - 1.0), 0.2)};
}

// ---- orlicz ---------------------------------------------------------------

Rows orlicz_target(const VerifyOptions& opt) {
  Rows rows;
  const OrliczTargetBuild b = build_orlicz_target(young::power(2.0), opt.exec);
  const auto [lo, hi] = range_over(
      [&](double t) { return b.a_omega(t) / (t * t * std::pow(std::log(t), 2)); }, 10.0, 1e6);
  rows.push_back(make_row("orlicz", "target_band_t2_log2", hi / lo, 10.0, Polarity::below,
                          {{"min", num(lo)}, {"max", num(hi)}, {"range", "[10, 1e6]"}}));
  int sandwich = 0;
  for (int k = 0; k <= 200; ++k) {
    const double t = 1e-3 * std::pow(1e9, k / 200.0);
    const double gi = b.g->inverse(t);
    if (!(b.a_omega(t) <= gi * (1.0 + 1e-12) && gi <= b.a_omega(2.0 * t) * (1.0 + 1e-12))) ++sandwich;
  }
  rows.push_back(make_row("orlicz", "sandwich_violations", sandwich, 0.0));
  int monotone = 0;
  const auto& tau = b.g->taus();
  const auto& val = b.g->values();
  for (std::size_t i = 1; i < tau.size(); ++i) {
    if (val[i] < val[i - 1]) ++monotone;
    if (val[i] / tau[i] > val[i - 1] / tau[i - 1] * (1.0 + 1e-12)) ++monotone;
  }
  rows.push_back(make_row("orlicz", "gauge_table_monotonicity_violations", monotone, 0.0));
  rows.push_back(info_row("orlicz", "gauge_table_vs_direct_at_2", std::fabs((*b.g)(2.0) / b.g->direct(0.5) - 1.0)));
  return rows;
}

double verdict_flag(EmbedVerdict v, EmbedVerdict want) { return flag(v == want); }

Rows orlicz_verdicts(const VerifyOptions& opt) {
  Rows rows;
  const auto sq = orlicz_embedding_verdict(young::power(2.0), young::power(2.0, 2.0), opt.exec);
  rows.push_back(make_row("orlicz", "t2_into_t2log2_embeds", verdict_flag(sq.verdict, EmbedVerdict::embeds), 1.0,
                          Polarity::at_least, {{"reason", sq.reason}}));
  const auto cube = orlicz_embedding_verdict(young::power(2.0), young::power(3.0), opt.exec);
  rows.push_back(make_row("orlicz", "t2_into_t3_fails", verdict_flag(cube.verdict, EmbedVerdict::fails), 1.0,
                          Polarity::at_least, {{"reason", cube.reason}}));
  const auto ex = orlicz_embedding_verdict(young::exp_power(1.0), young::exp_power(1.0), opt.exec);
  rows.push_back(make_row("orlicz", "exp_into_exp_embeds", verdict_flag(ex.verdict, EmbedVerdict::embeds), 1.0,
                          Polarity::at_least, {{"reason", ex.reason}}));

  // An embedding verdict must come with G(tau) <= c B^{-1}(tau) on the grid.
  const YoungFunction target = young::power(2.0, 2.0);
  const auto [lo, hi] = range_over([&](double tau) { return (*sq.target->g)(tau) / target.inverse(tau); }, 1.0, 1e9);
  rows.push_back(make_row("orlicz", "weak_target_consistency_max_over_min", hi / lo, 10.0, Polarity::below,
                          {{"max_c", num(hi)}}));
  return rows;
}

Rows orlicz_fundamental(const VerifyOptions&) {
  Rows rows;
  std::vector<double> ts;
  for (int k = 0; k < 100; ++k) ts.push_back(std::pow(10.0, -10.0 + 10.0 * k / 99.0));

  double lebesgue = 0.0;
  for (double p : {1.0, 1.5, 2.0, 4.0, std::numeric_limits<double>::infinity()}) {
    const SpaceSpec x = make_lebesgue(p), xp = associate_spec(x);
    for (double t : ts)
      lebesgue = std::max(lebesgue, std::fabs(fundamental_function(x, t) * fundamental_function(xp, t) / t - 1.0));
  }
  rows.push_back(make_row("orlicz", "fundamental_identity_lebesgue", lebesgue, 1e-10));

  double endpoint = 0.0;
  for (PowerLog pl : {PowerLog{0.5, 0, 0}, PowerLog{0.5, 0.5, 0}, PowerLog{0, -1, 0}, PowerLog{0, 0, -1}}) {
    const Quasiconcave phi = Quasiconcave::preset(pl);
    for (const SpaceSpec& x : {make_lambda(phi), make_marcinkiewicz(phi)}) {
      const SpaceSpec xp = associate_spec(x);
      for (double t : ts)
        endpoint = std::max(endpoint, std::fabs(fundamental_function(x, t) * fundamental_function(xp, t) / t - 1.0));
    }
  }
  rows.push_back(make_row("orlicz", "fundamental_identity_lambda_m", endpoint, 1e-10));

  // Orlicz: Luxemburg norm on X, associate (Orlicz) norm on X'.
  auto orlicz_pairs = [&](const std::vector<YoungFunction>& as, double& lo, double& hi, double& lux_lo) {
    for (const YoungFunction& a : as) {
      const YoungFunction conj = young_conjugate(a);
      for (std::size_t k = 0; k < ts.size(); k += 3) {
        const double t = ts[k];
        const StepFunction chi = StepFunction::indicator(t);
        const double phi_x = luxemburg_norm(chi, a);
        const double r = phi_x * orlicz_norm(chi, conj) / t;
        lo = std::min(lo, r);
        hi = std::max(hi, r);
        lux_lo = std::min(lux_lo, phi_x * luxemburg_norm(chi, conj) / t);
      }
    }
  };
  const double inf = std::numeric_limits<double>::infinity();
  double lo = inf, hi = 0.0, lux_lo = inf;
  orlicz_pairs({young::power(2.0), young::power(3.0), young::power(1.5), young::exp_power(1.0)}, lo, hi, lux_lo);
  rows.push_back(make_row("orlicz", "fundamental_orlicz_lower", lo, 1.0 - 1e-10, Polarity::at_least,
                          {{"conjugates", "closed form"}}));
  rows.push_back(make_row("orlicz", "fundamental_orlicz_upper", hi, 2.0));
  // t^{3/2} log(e+t) has no closed-form conjugate; the numeric Legendre
  // transform is good to about 1e-8.
  double nlo = inf, nhi = 0.0;
  orlicz_pairs({young::power(1.5, 1.0)}, nlo, nhi, lux_lo);
  rows.push_back(make_row("orlicz", "fundamental_orlicz_lower_numeric_conjugate", nlo, 1.0 - 1e-8,
                          Polarity::at_least));
  rows.push_back(make_row("orlicz", "fundamental_orlicz_upper_numeric_conjugate", nhi, 2.0));
  rows.push_back(info_row("orlicz", "fundamental_orlicz_both_luxemburg_min", lux_lo));
  return rows;
}

Rows orlicz_conjugate(const VerifyOptions&) {
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (const YoungFunction& a : {young::power(2.0), young::power(1.5, 1.0), young::exp_power(1.0), young::loglog(1.0)}) {
    const YoungFunction conj = young_conjugate(a);
    for (int k = 0; k <= 120; ++k) {
      const double t = std::pow(10.0, -6.0 + 18.0 * k / 120.0);
      const double r = a.inverse(t) * conj.inverse(t) / t;
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
  }
  return {make_row("orlicz", "conjugate_inverse_lower", lo, 1.0 - 1e-6, Polarity::at_least),
          make_row("orlicz", "conjugate_inverse_upper", hi, 2.0 + 1e-6)};
}

// ---- lz -------------------------------------------------------------------

Rows lz_table(const VerifyOptions&) {
  struct Case {
    double p, q, a, b;
    double tp, tq, ta, tb;
  };
  const double inf = std::numeric_limits<double>::infinity();
  const std::vector<Case> cases{{1, 1, 0, 2, 1, 1, 0, 1},     {1, 1, 1, 0, 1, 1, 1, 0},
                                {2, 2, 0, 0, 2, 2, 1, 0},     {3, 1.5, -0.5, 2, 3, 1.5, 0.5, 2},
                                {inf, inf, -1, 0, inf, inf, -1, 0}, {inf, inf, 0, 0, inf, inf, 0, -1}};
  Rows rows;
  int index = 0;
  for (const auto& c : cases) {
    ++index;
    const SpaceSpec t = lz_optimal_target(c.p, c.q, c.a, c.b);
    const auto* lz = std::get_if<LorentzZygmund>(&t.kind);
    const bool match = lz && lz->p == c.tp && lz->q == c.tq && lz->alpha == c.ta && lz->beta == c.tb;
    rows.push_back(make_row("lz", "table_row_" + std::to_string(index), flag(match), 1.0, Polarity::at_least,
                            {{"domain", make_lz(c.p, c.q, c.a, c.b).describe()}, {"target", t.describe()}}));
  }
  bool rejected = false;
  try {
    lz_optimal_target(1, 1, 0, 0.5);
  } catch (const Rejected&) {
    rejected = true;
  }
  rows.push_back(make_row("lz", "uncovered_corner_rejected", flag(rejected), 1.0, Polarity::at_least));
  return rows;
}

Rows lz_scan(const VerifyOptions& opt) {
  const auto sizes = dyadic_sizes(2, 40);
  const Operator op = s_operator(opt.grid_size, opt.smin);
  const ScanResult optimal =
      operator_ratio_scan(op, make_lz(2, 2, 0, 0), make_lz(2, 2, 1, 0), Family::indicator, sizes, {}, opt.exec);
  const ScanResult improved =
      operator_ratio_scan(op, make_lz(2, 2, 0, 0), make_lz(2, 2, 1.5, 0), Family::indicator, sizes, {}, opt.exec);
  return {make_row("lz", "optimal_target_max_over_min", optimal.max_over_min, 10.0, Polarity::below,
                   {{"target", "LZ(2,2,1,0)"}, {"sizes", "2^-2 .. 2^-40"}}),
          make_row("lz", "improved_target_last_over_first", improved.last_over_first, 2.0, Polarity::at_least,
                   {{"target", "LZ(2,2,1.5,0)"}})};
}

Rows lz_consistency(const VerifyOptions&) {
  // Marcinkiewicz target of s^{1/2} against the fundamental function of the
  // Lorentz-Zygmund target of L^{2,inf}.
  const MarcinkiewiczTarget m = marcinkiewicz_optimal_target(Quasiconcave::preset({0.5, 0, 0}));
  const SpaceSpec lz = lz_optimal_target(2, std::numeric_limits<double>::infinity(), 0, 0);
  const auto [lo, hi] = range_over([&](double s) { return m.psi_bar(s) / fundamental_function(lz, s); }, 1e-10, 0.4);
  return {make_row("lz", "marcinkiewicz_vs_lz_target_max_over_min", hi / lo, 10.0, Polarity::below,
                   {{"lz_target", lz.describe()}})};
}

// ---- marcinkiewicz --------------------------------------------------------

Rows marcinkiewicz_psi(const VerifyOptions&) {
  Rows rows;
  const Quasiconcave one = Quasiconcave::preset({0, 0, 0});
  const MarcinkiewiczTarget m1 = marcinkiewicz_optimal_target(one);
  const auto [a, b] = range_over([&](double s) { return m1.psi(s) / (s * ellell(s)); }, 1e-10, 0.4);
  rows.push_back(make_row("marcinkiewicz", "psi_constant_phi_max_over_min", b / a, 10.0, Polarity::below,
                          {{"min", num(a)}, {"max", num(b)}}));
  const Quasiconcave inv_l = Quasiconcave::preset({0, -1, 0});
  const MarcinkiewiczTarget m2 = marcinkiewicz_optimal_target(inv_l);
  const auto [c, d] = range_over([&](double s) { return m2.psi_bar(s) / inv_l(s); }, 1e-10, 0.4);
  rows.push_back(make_row("marcinkiewicz", "psi_bar_self_optimal_max_over_min", d / c, 10.0, Polarity::below,
                          {{"min", num(c)}, {"max", num(d)}}));
  const MarcinkiewiczTarget m3 = marcinkiewicz_optimal_target(Quasiconcave::preset({0.5, 0, 0}));
  const auto [e, f] = range_over([&](double s) { return m3.psi_bar(s) / (std::sqrt(s) * ell(s)); }, 1e-10, 0.4);
  rows.push_back(make_row("marcinkiewicz", "psi_bar_sqrt_max_over_min", f / e, 10.0, Polarity::below));
  return rows;
}

Rows marcinkiewicz_conditions(const VerifyOptions&) {
  Rows rows;
  const Quasiconcave l1 = Quasiconcave::preset({1, 0, 0});
  rows.push_back(make_row("marcinkiewicz", "range_condition_l1_infinite", flag(!range_condition(l1).finite), 1.0,
                          Polarity::at_least));
  bool rejected = false;
  try {
    MarcinkiewiczTarget bad(l1);
  } catch (const Rejected&) {
    rejected = true;
  }
  rows.push_back(make_row("marcinkiewicz", "l1_target_rejected", flag(rejected), 1.0, Polarity::at_least));
  const ConditionChecks l2 = condition_checks(make_lebesgue(2.0));
  rows.push_back(make_row("marcinkiewicz", "l2_target_condition_ok", flag(l2.target_ok), 1.0, Polarity::at_least));
  const ConditionChecks ee = condition_checks(make_orlicz(young::expexp_power(1.0)));
  rows.push_back(make_row("marcinkiewicz", "expexp_domain_condition_ok", flag(ee.domain_ok), 1.0, Polarity::at_least));
  return rows;
}

Rows marcinkiewicz_domain_norm(const VerifyOptions&) {
  Rows rows;
  const Quasiconcave th = Quasiconcave::preset({1, 0, 0});
  rows.push_back(make_row("marcinkiewicz", "domain_norm_of_zero",
                          marcinkiewicz_optimal_domain_norm(StepFunction::constant(0.0), th), 0.0));
  // The far term a sup_{s>a} (theta(s)/s)(ll(a) - ll(s)) is one of the two
  // pieces of the norm itself, so it is a lower bound with constant 1.
  double worst = std::numeric_limits<double>::infinity(), full = worst;
  for (double a : {0.5, 0.1, 1e-3, 1e-6}) {
    const double v = marcinkiewicz_optimal_domain_norm(StepFunction::indicator(a), th);
    double far = 0.0, near = 0.0;
    for (int k = 0; k <= 400; ++k) {
      const double s = a + (1.0 - a) * k / 400.0;
      far = std::max(far, a * (ellell(a) - ellell(s)));
      const double r = a * std::pow(1e-12, k / 400.0);
      near = std::max(near, r / ell(r));
    }
    worst = std::min(worst, v / far);
    full = std::min(full, v / std::max(far, near));
  }
  rows.push_back(make_row("marcinkiewicz", "domain_norm_over_far_term_min", worst, 1.0, Polarity::at_least));
  rows.push_back(info_row("marcinkiewicz", "domain_norm_over_lower_bound_min", full));
  return rows;
}

std::vector<CheckGroup> make_groups() {
  return {
      {"profile", "iso_limit", profile_iso_limit},
      {"profile", "theta_limit", profile_theta_limit},
      {"profile", "tail", profile_tail},
      {"rearrangement", "calculus", rearrangement_calculus},
      {"calderon", "self_adjoint", calderon_self_adjoint},
      {"calderon", "kernel", calderon_kernel},
      {"calderon", "hl_domination", calderon_hl_domination},
      {"calderon", "duality", calderon_duality},
      {"calderon", "admissible", calderon_admissible},
      {"calderon", "s_vs_rp", calderon_s_vs_rp},
      {"calderon", "l1_failure", calderon_l1_failure},
      {"ou", "routes", ou_routes},
      {"ou", "estimates", ou_estimates},
      {"ou", "weak_type", ou_weak_type},
      {"ou", "refinement", ou_refinement},
      {"orlicz", "target", orlicz_target},
      {"orlicz", "verdicts", orlicz_verdicts},
      {"orlicz", "fundamental", orlicz_fundamental},
      {"orlicz", "conjugate", orlicz_conjugate},
      {"lz", "table", lz_table},
      {"lz", "scan", lz_scan},
      {"lz", "consistency", lz_consistency},
      {"marcinkiewicz", "psi", marcinkiewicz_psi},
      {"marcinkiewicz", "conditions", marcinkiewicz_conditions},
      {"marcinkiewicz", "domain_norm", marcinkiewicz_domain_norm},
  };
}

// A group that throws reports one failing row instead of aborting the suite.
Rows guarded(const CheckGroup& g, const VerifyOptions& opt) {
  try {
    return g.run(opt);
  } catch (const std::exception& e) {
    return {make_row(g.suite, g.name + "_error", 1.0, 0.0, Polarity::at_most, {{"what", e.what()}})};
  }
}

}  // namespace

const std::vector<CheckGroup>& check_groups() {
  static const std::vector<CheckGroup> groups = make_groups();
  return groups;
}

std::vector<std::string> suite_names() {
  return {"profile", "rearrangement", "calderon", "ou", "orlicz", "lz", "marcinkiewicz"};
}

std::vector<ReportRow> run_group(const std::string& qualified_name, const VerifyOptions& options) {
  for (const auto& g : check_groups())
    if (g.suite + "." + g.name == qualified_name) return guarded(g, options);
  throw Rejected("unknown check group '" + qualified_name + "'");
}

std::vector<ReportRow> run_suite(const std::string& suite, const VerifyOptions& options) {
  const auto names = suite_names();
  if (suite != "all" && std::find(names.begin(), names.end(), suite) == names.end())
    throw Rejected("unknown suite '" + suite + "'");
  Rows rows;
  for (const auto& g : check_groups()) {
    if (suite != "all" && g.suite != suite) continue;
    auto part = guarded(g, options);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  return rows;
}

}  // namespace ouembed
