#include <algorithm>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>
#include <sstream>

#include "ouembed/errors.hpp"
#include "ouembed/optimal.hpp"
#include "ouembed/quadrature.hpp"

namespace ouembed {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string num(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

double finite_or_inf(double v) { return std::isfinite(v) ? v : kInf; }

// Thrown from inside an integrand to abandon a quadrature whose value is +inf
// or certified to exceed kHuge: omega is non-increasing, so the modular on
// (rho, inf) is at least N(omega(r)/lambda) (r - rho) for every r > rho.
struct Overflowed {};
constexpr double kHuge = 1e6;

}  // namespace

bool integrable_near_zero(const YoungFunction& n) {
  // t = e^{-v}: int_0^1 N(t)/t^2 dt = int_0^inf N(e^{-v}) e^{v} dv.
  auto f = [&](double v) {
    const double y = n(std::exp(-v)) * std::exp(v);
    return std::isfinite(y) ? y : 0.0;
  };
  const double near = gauss_kronrod_integrate(f, 0.0, 345.0, 1e-9);
  const double far = gauss_kronrod_integrate(f, 345.0, 690.0, 1e-9);
  return !(far > 1e-3 * near) || far == 0.0;
}

YoungFunction quadratic_near_zero(const YoungFunction& n) {
  if (integrable_near_zero(n)) return n;
  double t1 = 1.0;
  if (!std::isfinite(n(t1))) t1 = 0.5 * n.finite_up_to;
  const double h = 1e-6 * t1;
  double slope = (n(t1) - n(t1 - h)) / h;  // secant from the left, below N'(t1-)
  if (!(slope > 0.0)) slope = n(t1) / t1;
  const double join = n(t1);
  YoungFunction out = n;
  auto f = n.eval;
  out.eval = [f, t1, slope, join](double t) {
    return t <= t1 ? 0.5 * slope * t * t / t1 : f(t) - join + 0.5 * slope * t1;
  };
  out.inverse_fn = {};
  out.conjugate_fn = {};
  out.tag = n.tag + "~q0";
  return out;
}

GaugeTable::GaugeTable(YoungFunction norm_gauge, Weight w, Exec exec)
    : gauge_(std::move(norm_gauge)), weight_(std::move(w)), zero_level_(gauge_.inverse(0.0)) {
  auto solve = [&](double rho, double lo, double hi) { return solve_norm(rho, lo, hi); };

  // Norm on (1, inf) first: it fixes the brackets for every other node.
  double lo = 1.0, hi = 1.0;
  if (modular(1.0, 1.0) > 1.0) {
    for (int i = 0; modular(1.0, hi) > 1.0; ++i) {
      lo = hi;
      hi *= 16.0;
      if (i > 250) throw PreconditionError("weight not integrable against conjugate: no finite gauge norm on (1, inf)");
    }
  } else {
    for (int i = 0; modular(1.0, lo) <= 1.0; ++i) {
      hi = lo;
      lo /= 16.0;
      if (i > 250) throw PreconditionError("weight vanishes on (1, inf): the gauge norm there is 0");
    }
  }
  const double g1 = solve(1.0, lo, hi);

  // The modular needs omega non-increasing.  The neighbour brackets below also
  // need r omega(r) non-decreasing (G/tau decreasing); without it every node
  // is solved from scratch.
  bool bracketed = true;
  {
    double prev_w = weight_(1e-12), prev_rw = 1e-12 * prev_w;
    for (int k = 1; k <= 2000; ++k) {
      const double r = std::pow(10.0, -12.0 + 18.0 * k / 2000.0), wr = weight_(r);
      if (wr > prev_w * (1.0 + 1e-12)) throw PreconditionError("weight must be non-increasing");
      if (r * wr < prev_rw * (1.0 - 1e-12)) bracketed = false;
      prev_w = wr;
      prev_rw = r * wr;
    }
  }

  double log_lo = -4.0;
  auto node_value = [&](double tau) {
    if (tau == 1.0) return g1;
    if (!bracketed) return direct(1.0 / tau);
    const double rho = 1.0 / tau;
    if (tau > 1.0) return solve(rho, g1 * (1.0 - 1e-12), g1 * tau * (1.0 + 1e-12));
    // tau < 1: G(tau) in [tau G(1), G(1)]; G may vanish for compactly supported omega.
    const double l = g1 * tau * (1.0 - 1e-12);
    if (modular(rho, l) <= 1.0) return 0.0;
    return solve(rho, l, g1);
  };
  // Extend the bottom of the grid until G reaches 1e-8 (power-law model
  // below), plus one step of margin.
  while (log_lo > -300.0 && node_value(std::pow(10.0, log_lo)) > 1e-8) log_lo -= 4.0;
  log_lo -= 4.0;

  // 3 nodes per decade, 12 per decade on [1e-4, 1e8] where G bends most,
  // 48 per decade on [1, 10] right after the kink of lbar at tau = 1.
  std::vector<double> tau;
  for (int k = static_cast<int>(std::lround(log_lo * 48)); k <= 300 * 48; ++k) {
    const bool kink = k >= 0 && k <= 48;
    const bool dense = k >= -4 * 48 && k <= 8 * 48 && k % 4 == 0;
    if (kink || dense || k % 16 == 0) tau.push_back(std::pow(10.0, k / 48.0));
  }
  // Every 8th node from the G(1) bracket, then the rest from the brackets the
  // monotonicity of G and G/tau give between coarse neighbours.
  constexpr std::size_t kStride = 8;
  std::vector<double> val(tau.size());
  std::vector<std::size_t> coarse;
  for (std::size_t i = 0; i < tau.size(); i += kStride) coarse.push_back(i);
  if (coarse.back() != tau.size() - 1) coarse.push_back(tau.size() - 1);
  for_each_index(coarse.size(), [&](std::size_t j) { val[coarse[j]] = node_value(tau[coarse[j]]); }, exec);
  std::vector<std::size_t> fine;
  for (std::size_t i = 0; i < tau.size(); ++i)
    if (i % kStride != 0 && i != tau.size() - 1) fine.push_back(i);
  for_each_index(
      fine.size(),
      [&](std::size_t j) {
        const std::size_t i = fine[j];
        const std::size_t a = i - i % kStride, b = std::min(a + kStride, tau.size() - 1);
        const double ga = val[a], gb = val[b];
        if (!bracketed || !(ga > 0.0) || !std::isfinite(gb)) {
          val[i] = node_value(tau[i]);
          return;
        }
        const double lo = std::max(ga, gb * (tau[i] / tau[b])) * (1.0 - 1e-9);
        const double hi = std::min(gb, ga * (tau[i] / tau[a])) * (1.0 + 1e-9);
        val[i] = solve(1.0 / tau[i], lo, hi);
      },
      exec);

  // Enforce G non-decreasing and G/tau non-increasing against rounding.
  for (std::size_t i = 1; i < val.size(); ++i) {
    val[i] = std::max(val[i], val[i - 1]);
    if (bracketed) val[i] = std::min(val[i], val[i - 1] * (tau[i] / tau[i - 1]));
  }
  // Zero nodes stay (G vanishes where omega does); only the last of a leading
  // run of zeros is needed.
  for (std::size_t i = 0; i < val.size(); ++i) {
    if (val[i] == 0.0 && i + 1 < val.size() && val[i + 1] == 0.0) continue;
    if (val[i] >= 0.0 && std::isfinite(val[i])) {
      tau_.push_back(tau[i]);
      val_.push_back(val[i]);
    }
  }
}

double GaugeTable::modular(double rho, double lambda) const {
  const double tol = 1e-10;
  double total = 0.0;
  // The gauge vanishes on [0, zero_level_]; omega is non-increasing, so the
  // integrand is supported on r < r_zero.
  double r_zero = kInf;
  if (zero_level_ > 0.0) {
    const double level = lambda * zero_level_;
    if (weight_(rho) <= level) return 0.0;
    double a = std::log(rho), b = a + 1.0;
    while (b < 700.0 && weight_(std::exp(b)) > level) b = std::min(700.0, a + 2.0 * (b - a));
    if (b >= 700.0 && weight_(std::exp(b)) > level) b = kInf;
    if (std::isfinite(b)) {
      for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (a + b);
        if (weight_(std::exp(mid)) > level) a = mid; else b = mid;
      }
      r_zero = std::exp(b);
    }
  }
  if (rho < 1.0) {
    auto head = [&](double u) {
      const double r = std::exp(-u);
      const double n = gauge_(weight_(r) / lambda);
      if (!(n * (r - rho) <= kHuge)) throw Overflowed{};
      return n * r;
    };
    try {
      const double u_start = r_zero < 1.0 ? -std::log(r_zero) : 0.0;
      total += gauss_kronrod_integrate(head, u_start, -std::log(rho), tol);
    } catch (const Overflowed&) {
      return kInf;
    } catch (const std::exception&) {
      return kInf;
    }
    if (!std::isfinite(total)) return kInf;
    if (total > 1.0) return total;
  }
  auto tail = [&](double u) {
    const double r = std::exp(u);
    if (!std::isfinite(r)) return 0.0;
    const double n = gauge_(weight_(r) / lambda);
    if (!(n * (r - rho) <= kHuge)) throw Overflowed{};
    return n * r;
  };
  static thread_local boost::math::quadrature::exp_sinh<double> integrator(10);
  try {
    const double u0 = std::log(std::max(rho, 1.0));
    if (std::isfinite(r_zero)) {
      if (r_zero > std::max(rho, 1.0)) total += gauss_kronrod_integrate(tail, u0, std::log(r_zero), tol);
    } else {
      total += integrator.integrate(tail, u0, kInf, tol);
    }
  } catch (const Overflowed&) {
    return kInf;
  } catch (const std::exception&) {
    return kInf;
  }
  return finite_or_inf(total);
}

double GaugeTable::solve_norm(double rho, double lo, double hi) const {
  // modular(lo) > 1 >= modular(hi).  Bisect in log lambda until the low end is
  // finite, then TOMS 748 on log(modular).
  double flo = modular(rho, lo);
  while (!std::isfinite(flo) && hi / lo - 1.0 > 1e-12) {
    const double mid = std::sqrt(lo) * std::sqrt(hi);
    const double fm = modular(rho, mid);
    if (fm > 1.0) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  if (hi / lo - 1.0 <= 1e-12) return hi;
  const double fhi = modular(rho, hi);
  if (!(fhi > 0.0)) {
    // Bisect until the high end carries a positive modular (log defined).
    double l = lo, h = hi;
    for (int i = 0; i < 200 && h / l - 1.0 > 1e-12; ++i) {
      const double mid = std::sqrt(l) * std::sqrt(h);
      const double fm = modular(rho, mid);
      if (fm > 1.0) l = mid; else h = mid;
      if (fm > 0.0 && fm <= 1.0) break;
    }
    lo = l;
    hi = h;
    if (hi / lo - 1.0 <= 1e-12 || !(modular(rho, hi) > 0.0)) return hi;
  }
  auto f = [&](double x) {
    const double m = modular(rho, std::exp(x));
    return m > 0.0 ? std::log(m) : -700.0;
  };
  std::uintmax_t iters = 100;
  auto close = [](double a, double b) { return std::fabs(b - a) < 1e-11; };
  const auto r = boost::math::tools::toms748_solve(f, std::log(lo), std::log(hi), close, iters);
  return std::exp(r.second);
}

double GaugeTable::direct(double rho) const {
  double lo = 1.0, hi = 1.0;
  if (modular(rho, 1.0) > 1.0) {
    for (int i = 0; modular(rho, hi) > 1.0; ++i) {
      lo = hi;
      hi *= 16.0;
      if (i > 250) return kInf;
    }
  } else {
    for (int i = 0; modular(rho, lo) <= 1.0; ++i) {
      hi = lo;
      lo /= 16.0;
      if (i > 250) return 0.0;
    }
  }
  return solve_norm(rho, lo, hi);
}

double GaugeTable::operator()(double tau) const {
  if (!(tau > 0.0)) return 0.0;
  if (tau_.size() < 2) return tau_.empty() ? 0.0 : val_.front();
  auto seg = [&](std::size_t j, double t) {
    // Zero nodes (omega vanishing near infinity) break the log-log model.
    if (val_[j] == 0.0 || val_[j + 1] == 0.0) {
      const double w = std::clamp((t - tau_[j]) / (tau_[j + 1] - tau_[j]), 0.0, 1.0);
      return val_[j] + w * (val_[j + 1] - val_[j]);
    }
    const double k = std::log(val_[j + 1] / val_[j]) / std::log(tau_[j + 1] / tau_[j]);
    return val_[j] * std::pow(t / tau_[j], k);
  };
  if (tau <= tau_.front()) return seg(0, tau);
  if (tau >= tau_.back()) return seg(tau_.size() - 2, tau);
  const std::size_t j = static_cast<std::size_t>(std::upper_bound(tau_.begin(), tau_.end(), tau) - tau_.begin()) - 1;
  return seg(j, tau);
}

double GaugeTable::inverse(double y) const {
  if (!(y > 0.0)) return 0.0;
  if (tau_.size() < 2) return kInf;
  if (y > val_.back()) return kInf;
  auto seg = [&](std::size_t j, double v) {
    if (val_[j + 1] == val_[j]) return tau_[j + 1];
    if (val_[j] == 0.0) return tau_[j] + (v / val_[j + 1]) * (tau_[j + 1] - tau_[j]);
    const double k = std::log(tau_[j + 1] / tau_[j]) / std::log(val_[j + 1] / val_[j]);
    return tau_[j] * std::pow(v / val_[j], k);
  };
  if (y <= val_.front()) return seg(0, y);
  // Last node with value <= y (sup of the level set).
  const std::size_t j = static_cast<std::size_t>(std::upper_bound(val_.begin(), val_.end(), y) - val_.begin()) - 1;
  if (j + 1 >= val_.size()) return tau_.back();
  return seg(j, y);
}

std::shared_ptr<const GaugeTable> build_G_omega(const YoungFunction& a, const Weight& w, Exec exec) {
  return std::make_shared<GaugeTable>(young_conjugate(a), w, exec);
}

YoungFunction build_A_omega(std::shared_ptr<const GaugeTable> g) {
  struct Table {
    double y0, tau0, k0;
    std::vector<double> y, tau, k, cum;
  };
  auto tb = std::make_shared<Table>();
  const double y0 = 1e-8;
  tb->y0 = y0;
  tb->tau0 = g->inverse(y0);
  if (!(tb->tau0 > 0.0) || !std::isfinite(tb->tau0)) throw PreconditionError("A_omega: gauge table does not reach 1e-8");
  {
    // Local exponent of G^{-1} at y0.
    const double up = g->inverse(y0 * 1.01);
    tb->k0 = std::max(1.0, std::log(up / tb->tau0) / std::log(1.01));
  }
  tb->y.push_back(y0);
  tb->tau.push_back(tb->tau0);
  for (std::size_t i = 0; i < g->values().size(); ++i) {
    const double v = g->values()[i];
    if (v <= y0) continue;
    if (v == tb->y.back()) {
      tb->tau.back() = g->taus()[i];
      continue;
    }
    tb->y.push_back(v);
    tb->tau.push_back(g->taus()[i]);
  }
  tb->cum.push_back(tb->tau0 / tb->k0);
  for (std::size_t j = 0; j + 1 < tb->y.size(); ++j) {
    const double k = std::log(tb->tau[j + 1] / tb->tau[j]) / std::log(tb->y[j + 1] / tb->y[j]);
    tb->k.push_back(k);
    tb->cum.push_back(tb->cum[j] + (tb->tau[j + 1] - tb->tau[j]) / k);
  }

  YoungFunction out;
  out.tag = "A_omega(" + g->gauge().tag + ")";
  out.finite_up_to = tb->y.back();
  out.eval = [tb](double t) -> double {
    if (t <= 0.0) return 0.0;
    if (t <= tb->y0) return tb->tau0 * std::pow(t / tb->y0, tb->k0) / tb->k0;
    if (t >= tb->y.back()) return t == tb->y.back() ? tb->cum.back() : kInf;
    const std::size_t j = static_cast<std::size_t>(std::upper_bound(tb->y.begin(), tb->y.end(), t) - tb->y.begin()) - 1;
    const double k = tb->k[j];
    return tb->cum[j] + tb->tau[j] * std::expm1(k * std::log(t / tb->y[j])) / k;
  };
  out.inverse_fn = [tb](double v) -> double {
    if (v <= 0.0) return 0.0;
    if (v <= tb->cum.front()) return tb->y0 * std::pow(v * tb->k0 / tb->tau0, 1.0 / tb->k0);
    if (v >= tb->cum.back()) return tb->y.back();
    const std::size_t j =
        static_cast<std::size_t>(std::upper_bound(tb->cum.begin(), tb->cum.end(), v) - tb->cum.begin()) - 1;
    const double k = tb->k[j];
    return tb->y[j] * std::exp(std::log1p(k * (v - tb->cum[j]) / tb->tau[j]) / k);
  };
  return out;
}

OrliczTargetBuild build_from_gauge(const YoungFunction& source, const YoungFunction& norm_gauge, const Weight& w,
                                   Exec exec) {
  OrliczTargetBuild b;
  b.source = source;
  b.weight = w;
  b.spliced = !integrable_near_zero(norm_gauge);
  b.g = std::make_shared<GaugeTable>(b.spliced ? quadratic_near_zero(norm_gauge) : norm_gauge, w, exec);
  b.a_omega = build_A_omega(b.g);
  b.a_omega.tag = "A_L(" + source.tag + ")";
  return b;
}

OrliczTargetBuild build_orlicz_target(const YoungFunction& a, Exec exec) {
  return build_from_gauge(a, young_conjugate(a), canonical_weight(), exec);
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    default: return "inconclusive";
  }
}

std::string embed_verdict_name(EmbedVerdict v) {
  switch (v) {
    case EmbedVerdict::embeds: return "embeds";
    case EmbedVerdict::fails: return "fails";
    default: return "inconclusive";
  }
}

Domination dominates(const YoungFunction& a, const YoungFunction& b, Scope scope) {
  Domination d;
  d.t0 = scope == Scope::near_infinity ? 1.0 : 1e-9;
  const double t_hi = 1e9;
  const int points = 200;
  std::vector<double> ts, cs;
  for (int k = 0; k < points; ++k) {
    const double t = d.t0 * std::pow(t_hi / d.t0, static_cast<double>(k) / (points - 1));
    const double bt = b(t);
    if (!std::isfinite(bt) || bt > 1e290) continue;  // beyond double range of the comparison
    const double need = bt > 0.0 ? a.lower_inverse(bt) / t : 0.0;
    ts.push_back(t);
    cs.push_back(need);
  }
  const std::size_t n = cs.size();
  if (n < 8) return d;
  d.c = *std::max_element(cs.begin(), cs.end());

  // Unbounded growth: monotone over the upper half, at least 1.5x there, and
  // not flattening (last quarter keeps half the log growth of the third).
  const std::size_t m = n / 2, q3 = m + (n - m) / 2;
  bool monotone = true;
  for (std::size_t k = m; k + 1 < n; ++k)
    if (cs[k + 1] < cs[k] * (1.0 - 1e-9)) monotone = false;
  const bool infinite = std::isinf(cs.back());
  bool grows = cs[m] > 0.0 && cs.back() >= 1.5 * cs[m] &&
               std::log(cs.back() / cs[q3]) >= 0.5 * std::log(cs[q3] / cs[m]);
  // Growth needs a decade of t to be believed (exp-exp targets overflow
  // near t = 6.5).
  if (ts.back() < 10.0 * ts.front()) grows = false;
  // Increments of log c over blocks of the last quarter shrinking by a steady
  // ratio < 0.85 with a nearby extrapolated limit: converging, not growing.
  if (grows && !infinite) {
    const std::size_t block = std::max<std::size_t>(1, (n - q3) / 4);
    std::vector<double> inc;
    for (std::size_t k = q3; k + block < n; k += block) inc.push_back(std::log(cs[k + block] / cs[k]));
    bool shrinking = inc.size() >= 3;
    double ratio = 0.0;
    for (std::size_t k = 0; shrinking && k + 1 < inc.size(); ++k) {
      if (!(inc[k] > 0.0) || !(inc[k + 1] / inc[k] < 0.85)) shrinking = false;
      ratio = std::max(ratio, inc[k + 1] / inc[k]);
    }
    if (shrinking && inc.back() * ratio / (1.0 - ratio) < std::log(2.0)) {
      grows = false;
      d.c = cs.back() * std::exp(inc.back() * ratio / (1.0 - ratio));  // extrapolated limit
    }
  }
  if (infinite || (monotone && grows)) {
    d.verdict = Verdict::no;
    d.witness_t.assign(ts.begin() + static_cast<long>(m), ts.end());
    d.witness_c.assign(cs.begin() + static_cast<long>(m), cs.end());
    return d;
  }
  // Smallest constant of the 40-point grid that covers every required c.
  for (int j = 0; j < 40; ++j) {
    const double c = std::pow(10.0, -3.0 + 9.0 * j / 39.0);
    if (c < d.c * (1.0 - 1e-9)) continue;
    bool ok = true;
    for (std::size_t k = 0; k < n && ok; ++k) ok = b(ts[k]) <= a(c * ts[k]) * (1.0 + 1e-9);
    if (ok) {
      d.verdict = Verdict::yes;
      d.c = c;
      return d;
    }
  }
  return d;
}

OrliczEmbedding orlicz_embedding_verdict(const YoungFunction& a, const YoungFunction& b, Exec exec) {
  return orlicz_embedding_verdict(a, b, std::make_shared<OrliczTargetBuild>(build_orlicz_target(a, exec)), exec);
}

OrliczEmbedding orlicz_embedding_verdict(const YoungFunction& a, const YoungFunction& b,
                                         std::shared_ptr<const OrliczTargetBuild> target, Exec exec) {
  OrliczEmbedding out;
  out.target = std::move(target);
  const bool need_target = !b.delta2 || a.nabla2;
  const bool need_domain = !a.nabla2;
  out.target_condition = dominates(out.target->a_omega, b);
  if (need_domain) {
    const YoungFunction b_conj = young_conjugate(b);
    const OrliczTargetBuild dual = build_from_gauge(b_conj, b, canonical_weight(), exec);
    out.domain_condition = dominates(dual.a_omega, young_conjugate(a));
  }
  std::vector<Verdict> used;
  if (need_target) used.push_back(out.target_condition->verdict);
  if (need_domain) used.push_back(out.domain_condition->verdict);
  const bool any_no = std::find(used.begin(), used.end(), Verdict::no) != used.end();
  const bool all_yes = std::all_of(used.begin(), used.end(), [](Verdict v) { return v == Verdict::yes; });
  out.verdict = any_no ? EmbedVerdict::fails : all_yes ? EmbedVerdict::embeds : EmbedVerdict::inconclusive;

  std::string r;
  if (a.nabla2) r = "source is nabla_2: target condition alone decides; ";
  else if (b.delta2) r = "target is Delta_2: domain condition alone decides; ";
  else r = "both conditions required; ";
  r += "B <= A_L: " + verdict_name(out.target_condition->verdict) + " (c=" + num(out.target_condition->c) + ")";
  if (out.domain_condition)
    r += "; conj(A) <= conj(B)_L: " + verdict_name(out.domain_condition->verdict) +
         " (c=" + num(out.domain_condition->c) + ")";
  out.reason = r;
  return out;
}

}  // namespace ouembed
