#include "ouembed/calderon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "ouembed/errors.hpp"
#include "ouembed/norms.hpp"
#include "ouembed/profile.hpp"
#include "ouembed/witness.hpp"

namespace ouembed {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_nonnegative(const StepFunction& g, const char* who) {
  if (!g.nonnegative()) throw PreconditionError(std::string(who) + ": datum must be nonnegative");
}

std::vector<double> prefix_integrals(const StepFunction& g) {
  std::vector<double> p(g.size() + 1, 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) p[i + 1] = p[i] + g.value(i) * g.width(i);
  return p;
}

std::vector<double> interior(const std::vector<double>& breaks) {
  return std::vector<double>(breaks.begin() + 1, breaks.end() - 1);
}

// Step datum with prefix integrals and suffix sums of v_k * int_{cell k} kernel.
struct Tabulated {
  StepFunction g;
  std::vector<double> prefix;
  std::vector<double> tail;  // tail[j] = sum_{k >= j} v_k K_k, valid for j >= 1

  template <class CellIntegral>
  Tabulated(const StepFunction& datum, CellIntegral&& cell) : g(datum), prefix(prefix_integrals(datum)) {
    tail.assign(g.size() + 1, 0.0);
    for (std::size_t k = g.size(); k-- > 1;) {
      const double v = g.value(k);
      tail[k] = tail[k + 1] + (v == 0.0 ? 0.0 : v * cell(g.left(k), g.right(k)));
    }
  }

  double primitive(std::size_t j, double s) const { return prefix[j] + g.value(j) * (s - g.left(j)); }
};

}  // namespace

double Weight::integral(double a, double b) const {
  if (!(b > a)) return 0.0;
  if (primitive) return primitive(b) - primitive(a);
  Evaluator e{omega, kinks, kInf};
  return e.integral(a, b, 1e-12);
}

Weight canonical_weight() {
  Weight w;
  w.omega = [](double r) { return 1.0 / (r * ell_bar(r)); };
  w.primitive = [](double r) {
    if (r <= 0.0) return -kInf;
    return r <= 1.0 ? -ellell(r) : std::log(r) - 1.0;
  };
  w.kinks = {1.0};
  w.tag = "1/(r lbar(r))";
  return w;
}

Weight power_weight(double exponent) {
  Weight w;
  w.omega = [exponent](double r) { return std::pow(r, exponent); };
  if (exponent == -1.0)
    w.primitive = [](double r) { return r <= 0.0 ? -kInf : std::log(r); };
  else
    w.primitive = [exponent](double r) { return std::pow(r, exponent + 1.0) / (exponent + 1.0); };
  w.tag = "r^" + std::to_string(exponent);
  return w;
}

AdmissibleVerdict admissible_check(const Weight& w, int points) {
  const double lo = 1e-12, hi = 1e3;
  const double step = std::log(hi / lo) / (points - 1);
  double prev_s = lo, prev_w = w(lo);
  for (int k = 1; k < points; ++k) {
    const double s = lo * std::exp(step * k);
    const double val = w(s);
    if (val > prev_w * (1.0 + 1e-12)) return {false, s, "omega increases"};
    if (s * val < prev_s * prev_w * (1.0 - 1e-12)) return {false, s, "s*omega(s) decreases"};
    prev_s = s;
    prev_w = val;
  }
  return {};
}

Evaluator apply_S(const StepFunction& g) {
  if (g.length() != 1.0) throw DomainError("apply_S: datum must live on (0,1)");
  require_nonnegative(g, "apply_S");
  auto t = std::make_shared<const Tabulated>(g, [](double a, double b) { return ellell(a) - ellell(b); });
  Evaluator e;
  e.f = [t](double s) {
    if (s <= 0.0) return t->g.value(0) > 0.0 ? kInf : t->tail[1];
    s = std::min(s, 1.0);
    const std::size_t j = t->g.cell_of(s);
    const double v = t->g.value(j);
    const double head = t->primitive(j, s) / (s * ell(s));
    const double inside = v == 0.0 ? 0.0 : v * (ellell(s) - ellell(t->g.right(j)));
    return head + inside + t->tail[j + 1];
  };
  e.kinks = interior(g.breaks());
  e.length = 1.0;
  return e;
}

std::vector<double> s_output_grid(const StepFunction& g, std::size_t cells, double smin) {
  auto grid = merge_breaks(g.breaks(), default_grid(cells, smin));
  const double first = g.right(0);
  if (first > smin) grid = merge_breaks(grid, geometric_breaks(smin, first, 256));
  return grid;
}

StepFunction apply_S_steps(const StepFunction& g, std::size_t cells, double smin, Exec exec) {
  return cell_averages(apply_S(g), s_output_grid(g, cells, smin), exec);
}

Evaluator apply_R(const StepFunction& g, const Weight& w) {
  require_nonnegative(g, "apply_R");
  auto t = std::make_shared<const Tabulated>(g, [&w](double a, double b) { return w.integral(a, b); });
  Evaluator e;
  e.f = [t, w](double s) {
    if (s >= t->g.length()) return 0.0;
    if (s <= 0.0) return t->g.value(0) > 0.0 ? kInf : t->tail[1];
    const std::size_t j = t->g.cell_of(s);
    const double v = t->g.value(j);
    return (v == 0.0 ? 0.0 : v * w.integral(s, t->g.right(j))) + t->tail[j + 1];
  };
  e.kinks = merge_breaks(interior(g.breaks()), w.kinks);
  e.length = g.length();
  return e;
}

Evaluator apply_R_adjoint(const StepFunction& g, const Weight& w) {
  require_nonnegative(g, "apply_R_adjoint");
  auto t = std::make_shared<const Tabulated>(g, [](double, double) { return 0.0; });
  Evaluator e;
  e.f = [t, w](double s) {
    if (s <= 0.0) return 0.0;
    s = std::min(s, t->g.length());
    return w(s) * t->primitive(t->g.cell_of(s), s);
  };
  e.kinks = merge_breaks(interior(g.breaks()), w.kinks);
  e.length = g.length();
  return e;
}

Evaluator apply_P(const StepFunction& g) {
  require_nonnegative(g, "apply_P");
  auto t = std::make_shared<const Tabulated>(g, [](double, double) { return 0.0; });
  Evaluator e;
  e.f = [t](double s) {
    if (s <= 0.0) return t->g.value(0);
    s = std::min(s, t->g.length());
    return t->primitive(t->g.cell_of(s), s) / s;
  };
  e.kinks = interior(g.breaks());
  e.length = g.length();
  return e;
}

Evaluator apply_R(const Evaluator& g, const Weight& w) {
  auto kinks = merge_breaks(g.kinks, w.kinks);
  auto product = std::make_shared<Evaluator>(Evaluator{[g, w](double r) { return g(r) * w(r); }, kinks, g.length});
  Evaluator e;
  e.f = [product](double s) { return product->integral(s, product->length, 1e-10); };
  e.kinks = kinks;
  e.length = g.length;
  return e;
}

std::string family_name(Family f) {
  switch (f) {
    case Family::indicator: return "indicator";
    case Family::power_log: return "power_log";
    case Family::eta_window: return "eta_window";
    case Family::sigma_window: return "sigma_window";
  }
  return "?";
}

StepFunction family_member(Family f, double a, const FamilyParams& params) {
  switch (f) {
    case Family::indicator:
      return StepFunction::indicator(a);
    case Family::power_log: {
      if (!(a > 0.0 && a < 1.0)) throw DomainError("power-log member needs a in (0,1)");
      auto br = geometric_breaks(a, 1.0, params.cells);
      std::vector<double> v(br.size() - 1, 0.0);
      for (std::size_t i = 1; i < v.size(); ++i) {
        const double mid = std::sqrt(br[i] * br[i + 1]);
        v[i] = std::pow(mid, -1.0 / params.p) * std::pow(ell(mid), -params.gamma);
      }
      return StepFunction(std::move(br), std::move(v));
    }
    case Family::eta_window:
      return StepFunction::window(a, eta(a));
    case Family::sigma_window:
      return StepFunction::window(a, sigma(a));
  }
  throw DomainError("unknown family");
}

Operator s_operator(std::size_t cells, double smin) {
  return [cells, smin](const StepFunction& g) { return apply_S_steps(g, cells, smin); };
}

ScanResult operator_ratio_scan(const Operator& op, const SpaceSpec& domain, const SpaceSpec& target, Family family,
                               const std::vector<double>& sizes, const FamilyParams& params, Exec exec) {
  ScanResult out;
  out.rows.resize(sizes.size());
  for_each_index(
      sizes.size(),
      [&](std::size_t k) {
        ScanRow& row = out.rows[k];
        row.family = family_name(family);
        row.a = sizes[k];
        try {
          const StepFunction g = family_member(family, sizes[k], params);
          row.domain_norm = ri_norm(g, domain);
          row.target_norm = ri_norm(op(g), target);
          row.ratio = row.target_norm / row.domain_norm;
        } catch (const std::exception& e) {
          row.error = e.what();
          row.ratio = std::numeric_limits<double>::quiet_NaN();
        }
      },
      exec);
  std::vector<double> good;
  for (const auto& r : out.rows)
    if (r.error.empty() && std::isfinite(r.ratio) && r.ratio > 0.0) good.push_back(r.ratio);
  if (!good.empty()) {
    const auto [lo, hi] = std::minmax_element(good.begin(), good.end());
    out.max_over_min = *hi / *lo;
    out.last_over_first = good.back() / good.front();
    out.bounded = out.max_over_min < 10.0;
    out.growing = out.last_over_first >= 2.0;
  }
  return out;
}

std::vector<double> dyadic_sizes(int kmin, int kmax) {
  std::vector<double> out;
  for (int k = kmin; k <= kmax; ++k) out.push_back(std::ldexp(1.0, -k));
  return out;
}

}  // namespace ouembed
