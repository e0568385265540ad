#include "ouembed/ridge.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <limits>

#include "ouembed/errors.hpp"
#include "ouembed/parallel.hpp"
#include "ouembed/profile.hpp"
#include "ouembed/quadrature.hpp"

namespace ouembed {

namespace {

constexpr double kHalf = 0.5;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> prefix_of(const StepFunction& h) {
  std::vector<double> p(h.size() + 1, 0.0);
  for (std::size_t i = 0; i < h.size(); ++i) p[i + 1] = p[i] + h.value(i) * h.width(i);
  return p;
}

double primitive_at(const StepFunction& h, const std::vector<double>& prefix, double r) {
  if (r <= 0.0) return 0.0;
  r = std::min(r, h.length());
  const std::size_t j = h.cell_of(r);
  return prefix[j] + h.value(j) * (r - h.left(j));
}

// Antiderivative of the Gaussian tail: d/dt [t Phi(t) - density(t)] = Phi(t).
double tail_primitive(double t) {
  if (std::isinf(t)) return 0.0;
  return t * gauss_tail(t) - gauss_density(t);
}

}  // namespace

ProfileIntegral::ProfileIntegral(const StepFunction& h, int power, const std::vector<double>& grid)
    : h_(h), prefix_(prefix_of(h)), power_(power), grid_(grid) {
  suffix_.assign(grid_.size(), 0.0);
  suffix_[0] = kInf;
  for (std::size_t i = grid_.size() - 1; i-- > 1;) suffix_[i] = suffix_[i + 1] + piece(grid_[i], grid_[i + 1]);
}

double ProfileIntegral::primitive(double r) const { return primitive_at(h_, prefix_, r); }

double ProfileIntegral::piece(double a, double b) const {
  if (!(b > a)) return 0.0;
  const double ta = gauss_tail_inverse(a), tb = gauss_tail_inverse(b);
  // r = Phi(t) turns dr / I(r)^2 into dt / density(t).
  auto f = [this](double t) { return std::pow(primitive(gauss_tail(t)), power_) / gauss_density(t); };
  return gauss_kronrod_integrate(f, tb, ta, 1e-12);
}

double ProfileIntegral::operator()(double s) const {
  if (!(s > 0.0 && s <= kHalf)) throw DomainError("profile integral: s must lie in (0,1/2]");
  auto it = std::upper_bound(grid_.begin(), grid_.end(), s);
  const std::size_t j = static_cast<std::size_t>(it - grid_.begin()) - 1;
  if (grid_[j] == s) return suffix_[j];
  return piece(s, grid_[j + 1]) + suffix_[j + 1];
}

ThetaForm::ThetaForm(const StepFunction& h) : h_(h), prefix_(prefix_of(h)) {
  suffix_.assign(h_.size() + 1, 0.0);
  for (std::size_t k = h_.size(); k-- > 1;) {
    const double v = h_.value(k);
    suffix_[k] = suffix_[k + 1] + (v == 0.0 ? 0.0 : v * integrate(theta, h_.left(k), h_.right(k), 1e-12));
  }
}

double ThetaForm::operator()(double s) const {
  if (!(s > 0.0 && s <= kHalf)) throw DomainError("Theta form: s must lie in (0,1/2]");
  if (s == kHalf) return 0.0;
  const std::size_t j = h_.cell_of(s);
  const double v = h_.value(j);
  const double head = theta(s) * primitive_at(h_, prefix_, s);
  return head + (v == 0.0 ? 0.0 : v * integrate(theta, s, h_.right(j), 1e-12)) + suffix_[j + 1];
}

RidgeSolution RidgeSolution::build(const StepFunction& g, const RidgeOptions& options) {
  if (std::fabs(g.length() - kHalf) > 1e-15) throw DomainError("ridge datum must live on (0,1/2)");
  if (!g.nonnegative()) throw PreconditionError("ridge datum must be nonnegative");
  RidgeSolution sol;
  sol.opt_ = options;
  sol.g_ = g;
  sol.gstar_ = decreasing_rearrangement(g);
  sol.prefix_ = prefix_of(g);
  const auto geometric = geometric_breaks(options.smin, kHalf, options.cells);
  const auto grid = merge_breaks(g.breaks(), geometric);
  const auto grid_star = merge_breaks(sol.gstar_.breaks(), geometric);
  sol.nodes_.assign(grid.begin() + 1, grid.end());
  sol.direct_ = std::make_shared<const ProfileIntegral>(g, 1, grid);
  sol.star_squared_ = std::make_shared<const ProfileIntegral>(sol.gstar_, 2, grid_star);
  sol.theta_form_ = std::make_shared<const ThetaForm>(g);
  sol.theta_form_star_ = std::make_shared<const ThetaForm>(sol.gstar_);
  sol.build_gradient_table();
  return sol;
}

double RidgeSolution::primitive(double p) const { return primitive_at(g_, prefix_, p); }

double RidgeSolution::u_profile(double s) const {
  if (s == kHalf) return 0.0;
  return (*direct_)(s);
}

double RidgeSolution::u_profile_theta(double s) const { return (*theta_form_)(s); }

double RidgeSolution::gradient_profile(double p) const {
  if (!(p > 0.0 && p <= kHalf)) throw DomainError("gradient profile: p must lie in (0,1/2]");
  return primitive(p) / iso_profile(p);
}

double RidgeSolution::f_star(double s) const {
  if (!(s > 0.0 && s <= 1.0)) throw DomainError("f*: s must lie in (0,1]");
  return gstar_(std::min(0.5 * s, kHalf));
}

double RidgeSolution::u_star(double s) const {
  if (!(s > 0.0 && s <= 1.0)) throw DomainError("u*: s must lie in (0,1]");
  return u_profile(0.5 * s);
}

double RidgeSolution::gradient_star(double s) const {
  if (!(s > 0.0 && s <= 1.0)) throw DomainError("|grad u|*: s must lie in (0,1]");
  return gradient_half_star(0.5 * s);
}

void RidgeSolution::build_gradient_table() {
  const auto grid = merge_breaks(g_.breaks(), geometric_breaks(opt_.smin, kHalf, opt_.gradient_pieces));
  std::vector<double> values(grid.size());
  values[0] = 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i) values[i] = gradient_profile(grid[i]);
  monotone_ = true;
  for (std::size_t i = 1; i < values.size() && monotone_; ++i) monotone_ = values[i] >= values[i - 1];
  if (monotone_) return;

  // Level sets of the piecewise-linear interpolant: each rising or falling
  // piece contributes len * (hi - t)/(hi - lo) between its extreme values.
  struct Event {
    double level;
    long double d_slope, d_offset;
  };
  std::vector<Event> events;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double len = grid[i + 1] - grid[i];
    const double lo = std::min(values[i], values[i + 1]), hi = std::max(values[i], values[i + 1]);
    if (hi > lo) {
      const long double a = len / (static_cast<long double>(hi) - lo);
      events.push_back({hi, a, a * hi});
      events.push_back({lo, -a, -a * hi + len});
    } else {
      events.push_back({lo, 0.0L, static_cast<long double>(len)});
    }
  }
  std::sort(events.begin(), events.end(), [](const Event& x, const Event& y) { return x.level > y.level; });
  long double slope = 0.0L, offset = 0.0L;
  for (std::size_t k = 0; k < events.size();) {
    const double level = events[k].level;
    while (k < events.size() && events[k].level == level) {
      slope += events[k].d_slope;
      offset += events[k].d_offset;
      ++k;
    }
    level_.push_back(level);
    slope_.push_back(static_cast<double>(slope));
    offset_.push_back(static_cast<double>(offset));
  }
}

double RidgeSolution::gradient_half_star(double sigma) const {
  if (!(sigma >= 0.0)) throw DomainError("gradient rearrangement: negative argument");
  if (sigma >= kHalf) return 0.0;
  if (monotone_) return sigma == 0.0 ? primitive(kHalf) / iso_profile(kHalf) : gradient_profile(kHalf - sigma);
  // m(t) = offset_e - slope_e t on (level_{e+1}, level_e); find the first
  // interval whose lower end already has measure above sigma.
  const std::size_t n = level_.size();
  auto bottom = [&](std::size_t e) {
    const double low = e + 1 < n ? level_[e + 1] : 0.0;
    return offset_[e] - slope_[e] * low;
  };
  std::size_t lo = 0, hi = n - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (bottom(mid) > sigma)
      hi = mid;
    else
      lo = mid + 1;
  }
  const double top = level_[lo], low = lo + 1 < n ? level_[lo + 1] : 0.0;
  if (slope_[lo] <= 0.0) return top;
  return std::clamp((offset_[lo] - sigma) / slope_[lo], low, top);
}

double RidgeSolution::u_bound(double s) const { return (*theta_form_star_)(s); }

double RidgeSolution::gradient_bound(double s) const {
  if (!(s > 0.0 && s < 1.0)) throw DomainError("gradient bound: s must lie in (0,1/2)");
  return std::sqrt(2.0 / s * (*star_squared_)(0.5 * s));
}

double RidgeSolution::gradient_l1() const {
  // int_0^{1/2} V(p) dp = int_0^inf G(Phi(t)) dt, and G(Phi(t)) is affine in Phi(t) per cell.
  double total = 0.0;
  for (std::size_t k = 0; k < g_.size(); ++k) {
    const double v = g_.value(k), a = g_.left(k), b = g_.right(k);
    const double t_hi = a > 0.0 ? gauss_tail_inverse(a) : kInf;
    const double t_lo = b < kHalf ? gauss_tail_inverse(b) : 0.0;
    const double base = prefix_[k] - v * a;
    double part = v * (tail_primitive(t_hi) - tail_primitive(t_lo));
    if (base != 0.0) part += base * (t_hi - t_lo);
    total += part;
  }
  return 2.0 * total;
}

RidgeSolution extremal_family(double delta, const RidgeOptions& options) {
  if (!(delta > 0.0 && delta < kHalf)) throw DomainError("extremal family needs delta in (0,1/2)");
  return RidgeSolution::build(StepFunction({0.0, delta, kHalf}, {0.5 / delta, 0.0}), options);
}

double weighted_sup(const RidgeSolution& sol, RidgeProfile which, const std::function<double(double)>& weight) {
  auto value = [&](double s) {
    const double prof = which == RidgeProfile::u ? sol.u_star(s) : sol.gradient_star(s);
    return prof == 0.0 ? 0.0 : weight(s) * prof;
  };
  const auto& nodes = sol.nodes();
  std::vector<double> s(nodes.size() - 1);
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = 2.0 * nodes[i];
  std::size_t best = 0;
  double best_value = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double v = value(s[i]);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  if (s.size() < 3) return best_value;
  const double l = std::log(s[best == 0 ? 0 : best - 1]), r = std::log(s[std::min(best + 1, s.size() - 1)]);
  boost::uintmax_t iters = 80;
  const auto found = boost::math::tools::brent_find_minima([&](double u) { return -value(std::exp(u)); }, l, r, 30,
                                                           iters);
  return std::max(best_value, -found.second);
}

EstimateReport check_estimates(const RidgeSolution& sol) {
  EstimateReport rep;
  rep.f_norm = sol.f_norm();
  if (rep.f_norm == 0.0) return rep;
  rep.u_violation = -kInf;
  rep.gradient_violation = -kInf;
  for (double s : sol.nodes()) {
    const double bound = sol.u_bound(s);
    if (bound > 0.0) {
      const double rel = (sol.u_profile(s) - bound) / bound;
      rep.u_violation = std::max(rep.u_violation, rel);
      rep.u_slack = std::max(rep.u_slack, -rel);
    }
    if (s < 0.5) {
      const double gb = sol.gradient_bound(s);
      if (gb > 0.0) rep.gradient_violation = std::max(rep.gradient_violation, (sol.gradient_half_star(s) - gb) / gb);
    }
  }
  rep.weak_u_ratio = weighted_sup(sol, RidgeProfile::u, [](double s) { return s * ell(s); }) / rep.f_norm;
  rep.weak_gradient_ratio =
      weighted_sup(sol, RidgeProfile::gradient, [](double s) { return s * std::sqrt(ell(s)); }) / rep.f_norm;
  const StepFunction& gs = sol.datum_star();
  double denom = 0.0;
  for (std::size_t k = 0; k < gs.size(); ++k) {
    if (gs.value(k) == 0.0) continue;
    denom += gs.value(k) *
             integrate([](double s) { return std::sqrt(ell(s)); }, 2.0 * gs.left(k), std::min(1.0, 2.0 * gs.right(k)));
  }
  rep.w11_ratio = sol.gradient_l1() / denom;
  return rep;
}

std::vector<EstimateReport> check_estimates_batch(const std::vector<double>& deltas, const RidgeOptions& options,
                                                  bool parallel) {
  std::vector<EstimateReport> out(deltas.size());
  for_each_index(
      deltas.size(), [&](std::size_t i) { out[i] = check_estimates(extremal_family(deltas[i], options)); },
      parallel ? Exec::parallel : Exec::serial);
  return out;
}

}  // namespace ouembed
