#include "ouembed/norms.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <limits>

#include "ouembed/errors.hpp"
#include "ouembed/quadrature.hpp"

namespace ouembed {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double inverse_exponent(double p) { return std::isinf(p) ? 0.0 : 1.0 / p; }

double conjugate_exponent(double p) {
  if (p == 1.0) return kInf;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

void require_unit_length(const StepFunction& f) {
  if (f.length() != 1.0) throw DomainError("rearrangement-invariant norms are evaluated on (0,1)");
}

// Values of g** on [b_i, b_{i+1}) are v_i + c_i / s.
struct MaximalCells {
  std::vector<double> left, right, value, excess;
};

MaximalCells maximal_cells(const StepFunction& star) {
  MaximalCells m;
  double prefix = 0.0;
  for (std::size_t i = 0; i < star.size(); ++i) {
    const double a = star.left(i), b = star.right(i), v = star.value(i);
    m.left.push_back(a);
    m.right.push_back(b);
    m.value.push_back(v);
    m.excess.push_back(std::max(0.0, prefix - v * a));
    prefix += v * (b - a);
  }
  return m;
}

}  // namespace

double cell_sup(const std::function<double(double)>& h, double a, double b) {
  const double lo = a > 0.0 ? a : std::max(b * 1e-280, 1e-300);
  const double ulo = std::log(lo), uhi = std::log(b);
  constexpr int kSamples = 9;
  double u[kSamples], val[kSamples];
  int best = 0;
  for (int k = 0; k < kSamples; ++k) {
    u[k] = k == kSamples - 1 ? uhi : ulo + (uhi - ulo) * k / (kSamples - 1);
    val[k] = h(k == 0 ? lo : (k == kSamples - 1 ? b : std::exp(u[k])));
    if (val[k] > val[best]) best = k;
  }
  double out = val[best];
  if (uhi - ulo > 1e-14) {
    const double l = u[std::max(0, best - 1)], r = u[std::min(kSamples - 1, best + 1)];
    auto neg = [&](double x) { return -h(std::exp(x)); };
    boost::uintmax_t iters = 60;
    const auto found = boost::math::tools::brent_find_minima(neg, l, r, 40, iters);
    out = std::max(out, -found.second);
  }
  if (a > 0.0) out = std::max(out, h(a));
  return out;
}

double lebesgue_norm(const StepFunction& g, double p) {
  if (!(p >= 1.0)) throw DomainError("Lebesgue exponent must be >= 1");
  double top = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g.width(i) > 0.0) top = std::max(top, std::fabs(g.value(i)));
  if (std::isinf(p) || top == 0.0) return top;
  double sum = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) sum += g.width(i) * std::pow(std::fabs(g.value(i)) / top, p);
  return top * std::pow(sum, 1.0 / p);
}

double luxemburg_norm(const StepFunction& g, const YoungFunction& a) {
  const double top = g.sup_abs();
  if (top == 0.0) return 0.0;
  const double unit = a.inverse(1.0);
  auto modular = [&](double lambda) {
    double sum = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double v = std::fabs(g.value(i));
      if (v == 0.0 || g.width(i) == 0.0) continue;
      sum += g.width(i) * a(v / lambda);
      if (!(sum <= 1.0)) return sum;
    }
    return sum;
  };
  double lo = g.abs().integral() / (unit * g.length()) / 10.0;
  double hi = top * std::max(1.0, 1.0 / unit) * std::max(1.0, g.length()) * 10.0;
  for (int k = 0; modular(hi) > 1.0; ++k) {
    if (k == 60) throw OverflowSignal("Luxemburg gauge has no finite value below " + std::to_string(hi));
    hi *= 16.0;
  }
  while (lo > 0.0 && modular(lo) <= 1.0) lo /= 16.0;
  for (int it = 0; it < 200 && hi / lo - 1.0 > 1e-15; ++it) {
    const double mid = std::sqrt(lo) * std::sqrt(hi);
    if (modular(mid) <= 1.0)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

double orlicz_norm(const StepFunction& g, const YoungFunction& a) {
  const double lux = luxemburg_norm(g, a);
  if (lux == 0.0) return 0.0;
  auto amemiya = [&](double log_k) {
    const double k = std::exp(log_k);
    double sum = 1.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double v = std::fabs(g.value(i));
      if (v != 0.0 && g.width(i) != 0.0) sum += g.width(i) * a(k * v);
    }
    return std::isfinite(sum) ? sum / k : kInf;
  };
  // (1 + F(k))/k is quasiconvex in k; scan log k around 1/lux, then refine.
  const double base = -std::log(lux) - 4.0;
  constexpr int kScan = 96;
  double best_u = base, best = amemiya(base);
  for (int j = 1; j <= kScan; ++j) {
    const double u = base + 18.0 * j / kScan;
    const double h = amemiya(u);
    if (h < best) best = h, best_u = u;
  }
  const double step = 18.0 / kScan;
  boost::uintmax_t iters = 100;
  const auto found = boost::math::tools::brent_find_minima(amemiya, best_u - step, best_u + step, 52, iters);
  return std::min(best, found.second);
}

double lorentz_zygmund_norm(const StepFunction& g, double p, double q, double alpha, double beta,
                            LzVariant variant) {
  lz_admissible_case(p, q, alpha, beta, variant);
  require_unit_length(g);
  const StepFunction star = decreasing_rearrangement(g).compacted();
  const double ip = inverse_exponent(p), iq = inverse_exponent(q);
  const PowerLog weight{ip - iq, alpha, beta};

  if (variant == LzVariant::star) {
    if (std::isinf(q)) {
      double out = 0.0;
      for (std::size_t i = 0; i < star.size(); ++i) {
        const double v = star.value(i);
        if (v == 0.0) continue;
        out = std::max(out, v * cell_sup(weight, star.left(i), star.right(i)));
      }
      return out;
    }
    const PowerLog wq{q * (ip - iq), q * alpha, q * beta};
    const double top = star.value(0);
    if (top == 0.0) return 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < star.size(); ++i) {
      const double v = star.value(i);
      if (v == 0.0) continue;
      sum += std::pow(v / top, q) * integrate(wq, star.left(i), star.right(i));
    }
    return top * std::pow(sum, iq);
  }

  const MaximalCells m = maximal_cells(star);
  const double top = star.value(0);
  if (top == 0.0) return 0.0;
  if (std::isinf(q)) {
    double out = 0.0;
    for (std::size_t i = 0; i < m.value.size(); ++i) {
      const double v = m.value[i], c = m.excess[i];
      out = std::max(out, cell_sup([&](double s) { return weight(s) * (v + c / s); }, m.left[i], m.right[i]));
    }
    return out;
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < m.value.size(); ++i) {
    const double v = m.value[i] / top, c = m.excess[i] / top;
    sum += integrate([&](double s) { return std::pow(weight(s) * (v + c / s), q); }, m.left[i], m.right[i]);
  }
  return top * std::pow(sum, iq);
}

double endpoint_norm(const StepFunction& g, const Quasiconcave& phi, EndpointKind kind) {
  const StepFunction star = decreasing_rearrangement(g).compacted();
  switch (kind) {
    case EndpointKind::lambda: {
      double sum = 0.0;
      for (std::size_t i = 0; i < star.size(); ++i) {
        const double v = star.value(i);
        if (v != 0.0) sum += v * (phi(star.right(i)) - phi(star.left(i)));
      }
      return sum;
    }
    case EndpointKind::weak: {
      double out = 0.0;
      for (std::size_t i = 0; i < star.size(); ++i) out = std::max(out, star.value(i) * phi(star.right(i)));
      return out;
    }
    case EndpointKind::marcinkiewicz: {
      const MaximalCells m = maximal_cells(star);
      double out = 0.0;
      for (std::size_t i = 0; i < m.value.size(); ++i) {
        const double v = m.value[i], c = m.excess[i];
        if (v == 0.0 && c == 0.0) continue;
        // Both endpoints first: the supremum often sits exactly on a breakpoint.
        out = std::max(out, phi(m.right[i]) * (v + c / m.right[i]));
        if (c == 0.0) continue;  // phi * v is maximal at the right end
        out = std::max(out, cell_sup([&](double s) { return phi(s) * (v + c / s); }, m.left[i], m.right[i]));
      }
      return out;
    }
  }
  return 0.0;
}

double ri_norm(const StepFunction& f, const SpaceSpec& x) {
  require_unit_length(f);
  struct Visitor {
    const StepFunction& f;
    double operator()(const Lebesgue& s) const { return lebesgue_norm(f, s.p); }
    double operator()(const LorentzZygmund& s) const {
      return lorentz_zygmund_norm(f, s.p, s.q, s.alpha, s.beta, s.variant);
    }
    double operator()(const Orlicz& s) const { return luxemburg_norm(f, s.young); }
    double operator()(const LorentzEndpoint& s) const { return endpoint_norm(f, s.phi, EndpointKind::lambda); }
    double operator()(const Marcinkiewicz& s) const {
      return endpoint_norm(f, s.phi, EndpointKind::marcinkiewicz);
    }
    double operator()(const WeakType& s) const { return endpoint_norm(f, s.phi, EndpointKind::weak); }
  };
  return std::visit(Visitor{f}, x.kind);
}

SpaceSpec associate_spec(const SpaceSpec& x) {
  struct Visitor {
    SpaceSpec operator()(const Lebesgue& s) const { return make_lebesgue(conjugate_exponent(s.p)); }
    SpaceSpec operator()(const Orlicz& s) const { return make_orlicz(young_conjugate(s.young)); }
    SpaceSpec operator()(const LorentzEndpoint& s) const { return make_marcinkiewicz(s.phi.companion()); }
    SpaceSpec operator()(const Marcinkiewicz& s) const { return make_lambda(s.phi.companion()); }
    SpaceSpec operator()(const WeakType&) const {
      throw Rejected("weak-type functionals are not norms and have no associate space");
    }
    SpaceSpec operator()(const LorentzZygmund& s) const {
      // Index map: (p,q,a,b) -> (p',q',-a,-b) for 1<p<inf; L^{1,1} <-> L^{(inf,inf)}.
      if (s.p > 1.0 && !std::isinf(s.p))
        return make_lz(conjugate_exponent(s.p), conjugate_exponent(s.q), -s.alpha, -s.beta, s.variant);
      if (s.p == 1.0 && s.q == 1.0 && s.variant == LzVariant::star)
        return make_lz(kInf, kInf, -s.alpha, -s.beta, LzVariant::maximal);
      if (std::isinf(s.p) && std::isinf(s.q)) {
        if (s.alpha == 0.0 && s.beta == 0.0) return make_lebesgue(1.0);
        return make_lz(1.0, 1.0, -s.alpha, -s.beta, LzVariant::star);
      }
      throw Rejected("no associate formula recorded for " + SpaceSpec{s}.describe());
    }
  };
  return std::visit(Visitor{}, x.kind);
}

double fundamental_function(const SpaceSpec& x, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("fundamental function needs t in [0,1]");
  if (t == 0.0) return 0.0;
  return ri_norm(StepFunction::indicator(t), x);
}

}  // namespace ouembed
