#include <algorithm>
#include <boost/math/special_functions/expint.hpp>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

#include "ouembed/errors.hpp"
#include "ouembed/norms.hpp"
#include "ouembed/optimal.hpp"
#include "ouembed/profile.hpp"
#include "ouembed/quadrature.hpp"

namespace ouembed {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string num(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

// e^x E_1(x) for x >= 1.
double scaled_e1(double x) {
  if (x < 600.0) return std::exp(x) * boost::math::expint(1, x);
  double term = 1.0 / x, sum = term;
  for (int k = 1; k < 10; ++k) {
    term *= -k / x;
    sum += term;
  }
  return sum;
}

// int_a^b dr / l(r) on (0,1]; r = e^{1-x} turns it into e (E_1(l(b)) - E_1(l(a))).
double ell_integral(double a, double b) {
  const double upper = b * scaled_e1(ell(b));
  const double lower = a > 0.0 ? a * scaled_e1(ell(a)) : 0.0;
  return upper - lower;
}

// Cutoffs in ll for the divergence scans: presets are evaluated in ll
// coordinates far below the double range, custom functions only where s is
// representable.
std::vector<double> scan_levels(const Quasiconcave& f) {
  if (f.power_log()) return {1e2, 1e4, 1e16, 1e64};
  return {2.5, 4.0, 5.5, 7.5};
}

std::function<double(double)> at_ll(const Quasiconcave& f, bool companion) {
  if (f.power_log()) {
    const PowerLog p = companion ? f.power_log()->companion() : *f.power_log();
    return [p](double y) { return power_log_at_ll(p, y); };
  }
  return [f, companion](double y) {
    const double s = ellell_inverse(y);
    return companion ? f.bar(s) : f(s);
  };
}

std::vector<double> geometric_levels(double top, std::size_t n) {
  std::vector<double> y(n + 1);
  for (std::size_t k = 0; k <= n; ++k) y[k] = std::pow(top, static_cast<double>(k) / static_cast<double>(n));
  return y;
}

bool grows_twice(const std::vector<double>& v) {
  const std::size_t n = v.size();
  if (n < 2) return false;
  if (!std::isfinite(v[n - 1])) return true;
  return v[n - 2] > 0.0 ? v[n - 1] >= 2.0 * v[n - 2] : v[n - 1] > 0.0;
}

}  // namespace

// ---- Lorentz-Zygmund -----------------------------------------------------

SpaceSpec lz_optimal_target(double p, double q, double alpha, double beta, LzVariant variant) {
  lz_admissible_case(p, q, alpha, beta, variant);  // throws Rejected
  const std::string which = "LZ:" + num(p) + "," + num(q) + "," + num(alpha) + "," + num(beta);
  const bool finite_p = p > 1.0 && std::isfinite(p);
  if (variant == LzVariant::maximal && !finite_p)
    throw Rejected(which + ":max is not covered by the optimal Lorentz-Zygmund target table");
  if (finite_p) return make_lz(p, q, alpha + 1.0, beta, variant);
  if (p == 1.0 && q == 1.0) {
    if (alpha > 0.0) return make_lz(1.0, 1.0, alpha, beta);
    if (alpha == 0.0 && beta >= 1.0) {
      if (beta == 1.0) return make_lebesgue(1.0);  // L^{1,1;0,0} is L^1
      return make_lz(1.0, 1.0, 0.0, beta - 1.0);
    }
  }
  if (std::isinf(p) && std::isinf(q)) {
    if (alpha < 0.0) return make_lz(p, q, alpha, beta);
    if (alpha == 0.0 && beta <= 0.0) return make_lz(p, q, 0.0, beta - 1.0);
  }
  throw Rejected(which + " is not covered by the optimal Lorentz-Zygmund target table");
}

// ---- Marcinkiewicz endpoints ----------------------------------------------

double power_log_at_ll(const PowerLog& f, double y) {
  if (!(y >= 1.0)) throw DomainError("power_log_at_ll: ll value must be >= 1");
  const double log_l = y - 1.0;
  if (log_l > 700.0) {
    // s underflows: s^r vanishes for r > 0.
    if (f.r > 0.0) return 0.0;
    if (f.r < 0.0) return kInf;
    return std::exp(f.a * log_l + f.b * std::log(y));
  }
  const double l = std::exp(log_l);
  return f.from_logs(1.0 - l, l, y);
}

ConditionScan range_condition(const Quasiconcave& phi) {
  ConditionScan out;
  const auto bar = at_ll(phi, true);
  const std::size_t n = 4096;
  for (double top : scan_levels(phi)) {
    const auto y = geometric_levels(top, n);
    // Stieltjes sum of ll dphibar over ll in [1, top], plus the mass of
    // phibar left below that cut, weighted by the cut level.
    double sum = 0.0;
    double prev = bar(y[0]);
    for (std::size_t k = 0; k < n; ++k) {
      const double next = bar(y[k + 1]);
      sum += 0.5 * (y[k] + y[k + 1]) * std::max(0.0, prev - next);
      prev = next;
    }
    sum += top * prev;
    out.levels.push_back(top);
    out.values.push_back(sum);
  }
  out.finite = !grows_twice(out.values);
  return out;
}

ConditionScan domain_condition(const Quasiconcave& theta) {
  ConditionScan out;
  const auto th = at_ll(theta, false);
  const std::size_t n = 4096;
  for (double top : scan_levels(theta)) {
    const auto y = geometric_levels(top, n);
    double best = 0.0;
    for (double v : y) best = std::max(best, v * th(v));
    out.levels.push_back(top);
    out.values.push_back(best);
  }
  out.finite = !grows_twice(out.values);
  return out;
}

MarcinkiewiczTarget::MarcinkiewiczTarget(const Quasiconcave& phi, std::size_t grid_points) : phi_(phi) {
  condition_ = range_condition(phi);
  if (!condition_.finite)
    throw Rejected("no rearrangement-invariant target exists: int ll dphibar diverges for " + phi.tag());
  const std::size_t n = std::max<std::size_t>(grid_points, 16);
  s_.resize(n);
  for (std::size_t k = 0; k < n; ++k)
    s_[k] = std::exp(std::log(1e-300) * (1.0 - static_cast<double>(k) / static_cast<double>(n - 1)));
  s_.back() = 1.0;
  auto inner = [this](double r) { r = std::min(r, 1.0); return 1.0 / (phi_(r) * ell(r)); };
  head_.assign(n, 0.0);
  head_[0] = s_[0] * inner(s_[0]);
  std::vector<double> piece(n, 0.0);
  for_each_index(n - 1, [&](std::size_t k) { piece[k] = integrate(inner, s_[k], s_[k + 1], 1e-10); });
  for (std::size_t k = 0; k + 1 < n; ++k) head_[k + 1] = head_[k] + piece[k];
  tail_.assign(n, 0.0);
  for (std::size_t k = n - 1; k-- > 0;) {
    const double mid = std::sqrt(s_[k]) * std::sqrt(s_[k + 1]);
    tail_[k] = tail_[k + 1] + (phi_.bar(s_[k + 1]) - phi_.bar(s_[k])) / (mid * ell(mid));
  }
}

double MarcinkiewiczTarget::psi(double s) const {
  if (!(s > 0.0 && s <= 1.0)) throw DomainError("psi: s must lie in (0,1]");
  if (s == 1.0) return head_.back();
  auto inner = [this](double r) { r = std::min(r, 1.0); return 1.0 / (phi_(r) * ell(r)); };
  if (s < s_.front()) {
    const double mid = std::sqrt(s) * std::sqrt(s_.front());
    return s * inner(s) + s * (tail_.front() + (phi_.bar(s_.front()) - phi_.bar(s)) / (mid * ell(mid)));
  }
  const std::size_t k = static_cast<std::size_t>(std::upper_bound(s_.begin(), s_.end(), s) - s_.begin()) - 1;
  const double head = head_[k] + integrate(inner, s_[k], s, 1e-10);
  const double mid = std::sqrt(s) * std::sqrt(s_[k + 1]);
  const double tail = tail_[k + 1] + (phi_.bar(s_[k + 1]) - phi_.bar(s)) / (mid * ell(mid));
  return head + s * tail;
}

Quasiconcave MarcinkiewiczTarget::target_phi() const {
  auto self = std::make_shared<MarcinkiewiczTarget>(*this);
  return Quasiconcave::custom([self](double s) { return s > 0.0 ? self->psi_bar(std::min(s, 1.0)) : 0.0; },
                              "psi_bar(" + phi_.tag() + ")");
}

MarcinkiewiczTarget marcinkiewicz_optimal_target(const Quasiconcave& phi) { return MarcinkiewiczTarget(phi); }

double marcinkiewicz_optimal_domain_norm(const StepFunction& g, const Quasiconcave& theta) {
  if (!domain_condition(theta).finite)
    throw Rejected("no rearrangement-invariant domain exists: ll theta is unbounded for " + theta.tag());
  if (std::fabs(g.length() - 1.0) > 1e-12) throw DomainError("domain norm: g must live on (0,1)");
  const StepFunction star = decreasing_rearrangement(g).compacted();
  if (star.sup_abs() == 0.0) return 0.0;
  const std::size_t n = star.size();

  // On cell i, g** = v + c/r with c = int_0^a g* - v a.
  std::vector<double> c(n), below(n + 1, 0.0), above(n + 1, 0.0);
  double prefix = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = star.left(i), b = star.right(i), v = star.value(i);
    c[i] = prefix - v * a;
    const double log_part = a > 0.0 ? ellell(a) - ellell(b) : 0.0;
    below[i + 1] = below[i] + v * ell_integral(a, b) + c[i] * log_part;
    prefix += v * (b - a);
  }
  for (std::size_t i = n; i-- > 1;) above[i] = above[i + 1] + star.value(i) * (ellell(star.left(i)) - ellell(star.right(i)));

  auto bracket = [&](std::size_t i, double s) {
    const double a = star.left(i), v = star.value(i);
    double inner = v * ell_integral(a, s) / s;  // scaled form, exact for tiny s
    if (a > 0.0) inner += (below[i] + c[i] * (ellell(a) - ellell(s))) / s;
    const double outer = v * (ellell(s) - ellell(star.right(i))) + above[i + 1];
    return inner + outer;
  };

  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = star.left(i), b = star.right(i);
    auto h = [&](double s) { return s >= 1.0 ? 0.0 : theta(s) * bracket(i, s); };
    // Long cells are split geometrically so that each piece is unimodal enough.
    std::vector<double> cuts;
    if (a == 0.0) {
      cuts = {0.0, b * 1e-12};
    } else {
      cuts = {a};
    }
    while (cuts.back() * 4.0 < b) cuts.push_back(cuts.back() * 4.0);
    cuts.push_back(b);
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) best = std::max(best, cell_sup(h, cuts[k], cuts[k + 1]));
  }
  return best;
}

StepFunction truncated_loglog(double eps, std::size_t cells) {
  std::vector<double> breaks{0.0};
  std::vector<double> values{ellell(eps)};
  for (std::size_t k = 0; k <= cells; ++k)
    breaks.push_back(std::exp(std::log(eps) * (1.0 - static_cast<double>(k) / static_cast<double>(cells))));
  breaks.back() = 1.0;
  for (std::size_t k = 1; k + 1 < breaks.size(); ++k) values.push_back(ellell(std::sqrt(breaks[k]) * std::sqrt(breaks[k + 1])));
  return StepFunction(breaks, values);
}

ConditionChecks condition_checks(const SpaceSpec& x) {
  if (std::holds_alternative<WeakType>(x.kind)) throw Rejected("condition checks: weak-type spaces are not normed");
  const StepFunction coarse = truncated_loglog(1e-14), fine = truncated_loglog(1e-300);
  auto stable = [&](const SpaceSpec& space, double& change, std::string& note) {
    double a, b;
    try {
      a = ri_norm(coarse, space);
      b = ri_norm(fine, space);
    } catch (const OverflowSignal& e) {
      change = kInf;
      note = e.what();
      return false;
    }
    change = std::fabs(b - a) / a;
    note = "truncated norms " + num(a) + " -> " + num(b);
    return std::isfinite(b) && change <= 0.01;
  };
  ConditionChecks out;
  try {
    out.target_ok = stable(associate_spec(x), out.target_change, out.target_note);
  } catch (const Rejected& e) {
    out.target_ok = false;
    out.target_note = e.what();
  }
  out.domain_ok = stable(x, out.domain_change, out.domain_note);
  return out;
}

}  // namespace ouembed
