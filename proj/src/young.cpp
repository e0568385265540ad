#include "ouembed/young.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ouembed/errors.hpp"

namespace ouembed {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string num(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

// Golden-section maximization of h on [a, b] (h unimodal there), returning {argmax, max}.
template <class H>
std::pair<double, double> golden_argmax(H&& h, double a, double b, int iters = 90) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - r * (b - a), x2 = a + r * (b - a);
  double f1 = h(x1), f2 = h(x2);
  for (int i = 0; i < iters && (b - a) > 1e-16 * std::max(std::fabs(a), std::fabs(b)); ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + r * (b - a);
      f2 = h(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - r * (b - a);
      f1 = h(x1);
    }
  }
  std::pair<double, double> best{x1, f1};
  if (f2 > best.second) best = {x2, f2};
  const double fa = h(a), fb = h(b);
  if (fa > best.second) best = {a, fa};
  if (fb > best.second) best = {b, fb};
  return best;
}

}  // namespace

double YoungFunction::operator()(double t) const {
  if (!(t > 0.0)) return 0.0;
  if (t > finite_up_to) return kInf;
  const double v = eval(t);
  return std::isnan(v) ? kInf : v;
}

double YoungFunction::inverse(double y) const {
  if (inverse_fn) return inverse_fn(std::max(y, 0.0));
  if (y < 0.0) y = 0.0;
  const YoungFunction& A = *this;
  if (std::isfinite(finite_up_to) && A(finite_up_to) <= y) return finite_up_to;
  double lo, hi;
  if (A(1.0) <= y) {
    lo = 1.0;
    hi = 2.0;
    while (A(hi) <= y) {
      lo = hi;
      hi *= 2.0;
      if (hi > 1e300) return kInf;
    }
  } else {
    hi = 1.0;
    lo = 0.5;
    while (A(lo) > y) {
      hi = lo;
      lo *= 0.5;
      if (lo < 1e-300) return 0.0;
    }
  }
  for (int i = 0; i < 200 && hi / lo - 1.0 > 1e-15; ++i) {
    const double mid = std::sqrt(lo) * std::sqrt(hi);
    if (A(mid) <= y) lo = mid; else hi = mid;
  }
  return lo;
}

double YoungFunction::lower_inverse(double y) const {
  if (y <= 0.0) return 0.0;
  if (inverse_fn) return inverse_fn(y);
  const YoungFunction& A = *this;
  double lo, hi;
  if (A(1.0) < y) {
    lo = 1.0;
    hi = 2.0;
    while (A(hi) < y) {
      lo = hi;
      hi *= 2.0;
      if (hi > 1e300) return kInf;
    }
  } else {
    hi = 1.0;
    lo = 0.5;
    while (A(lo) >= y) {
      hi = lo;
      lo *= 0.5;
      if (lo < 1e-300) return 0.0;
    }
  }
  for (int i = 0; i < 200 && hi / lo - 1.0 > 1e-15; ++i) {
    const double mid = std::sqrt(lo) * std::sqrt(hi);
    if (A(mid) < y) lo = mid; else hi = mid;
  }
  return hi;
}

namespace young {

YoungFunction power(double p, double alpha) {
  if (!(p >= 1.0)) throw DomainError("power Young function needs p >= 1");
  YoungFunction a;
  a.tag = "power:" + num(p) + "," + num(alpha);
  a.delta2 = true;
  a.nabla2 = p > 1.0;
  if (alpha == 0.0) {
    a.eval = [p](double t) { return std::pow(t, p); };
    a.inverse_fn = [p](double y) { return std::pow(y, 1.0 / p); };
    if (p == 1.0) {
      a.conjugate_fn = [](double t) { return t <= 1.0 ? 0.0 : kInf; };
    } else {
      const double q = p / (p - 1.0);
      a.conjugate_fn = [p, q](double t) { return (p - 1.0) * std::pow(t / p, q); };
    }
  } else {
    a.eval = [p, alpha](double t) { return std::pow(t, p) * std::pow(std::log(M_E + t), alpha); };
  }
  return a;
}

YoungFunction scaled_power(double p, double c) {
  if (!(p > 1.0 && c > 0.0)) throw DomainError("scaled power needs p > 1, c > 0");
  YoungFunction a;
  a.tag = num(c) + "*t^" + num(p);
  a.delta2 = a.nabla2 = true;
  a.eval = [p, c](double t) { return c * std::pow(t, p); };
  a.inverse_fn = [p, c](double y) { return std::pow(y / c, 1.0 / p); };
  a.conjugate_fn = [p, c](double t) { return (1.0 - 1.0 / p) * t * std::pow(t / (c * p), 1.0 / (p - 1.0)); };
  return a;
}

YoungFunction exp_power(double beta) {
  if (!(beta > 0.0)) throw DomainError("exp Young function needs beta > 0");
  YoungFunction a;
  a.tag = "exp^" + num(beta);
  a.nabla2 = true;
  a.eval = [beta](double t) { return std::expm1(std::pow(t, beta)); };
  if (beta >= 1.0) {
    a.inverse_fn = [beta](double y) { return std::pow(std::log1p(y), 1.0 / beta); };
    if (beta == 1.0) a.conjugate_fn = [](double t) { return t <= 1.0 ? 0.0 : t * std::log(t) - t + 1.0; };
    return a;
  }
  return convexify_at_origin(a);
}

YoungFunction expexp_power(double beta) {
  if (!(beta > 0.0)) throw DomainError("expexp Young function needs beta > 0");
  YoungFunction a;
  a.tag = "expexp^" + num(beta);
  a.nabla2 = true;
  a.eval = [beta](double t) { return M_E * std::expm1(std::expm1(std::pow(t, beta))); };
  if (beta >= 1.0) {
    a.inverse_fn = [beta](double y) { return std::pow(std::log1p(std::log1p(y / M_E)), 1.0 / beta); };
    return a;
  }
  return convexify_at_origin(a);
}

YoungFunction loglog(double alpha) {
  YoungFunction a;
  a.tag = "loglog:" + num(alpha);
  a.delta2 = true;
  a.eval = [alpha](double t) { return t * std::pow(1.0 + std::log(std::log(M_E + t)), alpha); };
  return a;
}

YoungFunction linf() {
  YoungFunction a;
  a.tag = "Linf";
  a.nabla2 = true;
  a.finite_up_to = 1.0;
  a.eval = [](double) { return 0.0; };
  a.inverse_fn = [](double) { return 1.0; };
  a.conjugate_fn = [](double t) { return t; };
  return a;
}

}  // namespace young

YoungFunction convexify_at_origin(const YoungFunction& raw) {
  // Coarse scan of raw(t)/t in log t, then golden refinement.
  const int n = 400;
  const double lo = std::log(1e-8), hi = std::log(1e4);
  int best = 0;
  double best_ratio = kInf;
  for (int k = 0; k <= n; ++k) {
    const double t = std::exp(lo + (hi - lo) * k / n);
    const double r = raw.eval(t) / t;
    if (r < best_ratio) {
      best_ratio = r;
      best = k;
    }
  }
  if (best == 0) return raw;
  auto neg_ratio = [&](double u) {
    const double t = std::exp(u);
    return -raw.eval(t) / t;
  };
  const double a = lo + (hi - lo) * (best - 1) / n, b = lo + (hi - lo) * std::min(best + 1, n) / n;
  // Locate the minimizer itself, not just the minimum value.
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - r * (b - a), x2 = a + r * (b - a), ua = a, ub = b;
  for (int i = 0; i < 200 && ub - ua > 1e-14; ++i) {
    if (neg_ratio(x1) < neg_ratio(x2)) {
      ua = x1;
      x1 = x2;
      x2 = ua + r * (ub - ua);
    } else {
      ub = x2;
      x2 = x1;
      x1 = ub - r * (ub - ua);
    }
  }
  const double tstar = std::exp(0.5 * (ua + ub));
  const double slope = raw.eval(tstar) / tstar;
  YoungFunction out = raw;
  auto f = raw.eval;
  out.eval = [f, tstar, slope](double t) { return t <= tstar ? slope * t : f(t); };
  out.inverse_fn = {};
  out.conjugate_fn = {};
  return out;
}

YoungFunction legendre_conjugate(const YoungFunction& a, std::size_t grid_points) {
  const double lo = std::log(1e-150), hi = std::log(1e150);
  const std::size_t n = std::max<std::size_t>(grid_points, 64);
  std::vector<double> tau, val;
  tau.reserve(n);
  val.reserve(n);
  bool capped_by_domain = false;
  for (std::size_t j = 0; j < n; ++j) {
    const double t = std::exp(lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(n - 1));
    if (t > a.finite_up_to) {
      tau.push_back(a.finite_up_to);
      val.push_back(a(a.finite_up_to));
      capped_by_domain = true;
      break;
    }
    const double v = a(t);
    if (!std::isfinite(v)) break;
    tau.push_back(t);
    val.push_back(v);
  }
  if (!capped_by_domain && std::isfinite(a.finite_up_to) && !tau.empty() && tau.back() == a.finite_up_to)
    capped_by_domain = true;
  const std::size_t m = tau.size();

  // Value and maximizer of x t - A(x); the maximizer is the conjugate's slope.
  struct Point {
    double value, slope;
  };
  auto conj_at = [&](double t) -> Point {
    auto h = [&](std::size_t j) { return tau[j] * t - val[j]; };
    // First index where h stops increasing (h is unimodal in j).
    std::size_t l = 0, r = m - 1;
    while (l < r) {
      const std::size_t mid = (l + r) / 2;
      if (h(mid + 1) > h(mid)) l = mid + 1; else r = mid;
    }
    const std::size_t j = l;
    if (j == m - 1) {
      if (capped_by_domain) return h(j) > 0.0 ? Point{h(j), tau[j]} : Point{0.0, 0.0};
      if (tau.back() >= 1e149) return {kInf, kInf};  // A grows at most linearly along the whole grid
    }
    const double left = j == 0 ? 0.0 : tau[j - 1];
    const double right = tau[std::min(j + 1, m - 1)];
    auto hc = [&](double x) { return x * t - a(x); };
    const auto [x, v] = golden_argmax(hc, left, right);
    return v > 0.0 ? Point{v, x} : Point{0.0, 0.0};
  };

  auto table_t = std::make_shared<std::vector<double>>(n);
  auto table_c = std::make_shared<std::vector<double>>(n);
  auto table_d = std::make_shared<std::vector<double>>(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = std::exp(lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1));
    const Point p = conj_at(t);
    (*table_t)[k] = t;
    (*table_c)[k] = p.value;
    (*table_d)[k] = p.slope;
  }
  // Monotone envelopes: a conjugate and its slope are non-decreasing.
  for (std::size_t k = 1; k < n; ++k) {
    (*table_c)[k] = std::max((*table_c)[k], (*table_c)[k - 1]);
    (*table_d)[k] = std::max((*table_d)[k], (*table_d)[k - 1]);
  }

  double last_finite = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    if (std::isfinite((*table_c)[k])) last_finite = (*table_t)[k];

  YoungFunction out;
  out.tag = "conj(" + a.tag + ")";
  out.delta2 = a.nabla2;
  out.nabla2 = a.delta2;
  out.finite_up_to = last_finite < (*table_t).back() ? last_finite : kInf;
  if (a.eval) out.conjugate_fn = [a](double t) { return a(t); };
  // Cubic Hermite with the exact slopes, in log-log where both ends are
  // positive: C^1, so quadratures over many cells stay cheap.
  out.eval = [table_t, table_c, table_d](double t) -> double {
    const auto& T = *table_t;
    const auto& C = *table_c;
    const auto& D = *table_d;
    if (t <= 0.0) return 0.0;
    if (t <= T.front()) return C.front() * (t / T.front());
    if (t >= T.back()) return C.back() + D.back() * (t - T.back());
    const std::size_t k = static_cast<std::size_t>(std::upper_bound(T.begin(), T.end(), t) - T.begin()) - 1;
    const double c0 = C[k], c1 = C[k + 1];
    if (!std::isfinite(c1)) return t <= T[k] ? c0 : kInf;
    auto hermite = [](double w, double h, double y0, double y1, double m0, double m1) {
      const double w2 = w * w, w3 = w2 * w;
      return (2 * w3 - 3 * w2 + 1) * y0 + (w3 - 2 * w2 + w) * h * m0 + (-2 * w3 + 3 * w2) * y1 + (w3 - w2) * h * m1;
    };
    if (c0 > 0.0 && c1 > 0.0) {
      const double h = std::log(T[k + 1] / T[k]);
      const double w = std::log(t / T[k]) / h;
      const double m0 = T[k] * D[k] / c0, m1 = T[k + 1] * D[k + 1] / c1;
      return std::exp(hermite(w, h, std::log(c0), std::log(c1), m0, m1));
    }
    const double h = T[k + 1] - T[k];
    const double w = (t - T[k]) / h;
    return std::max(0.0, hermite(w, h, c0, c1, D[k], D[k + 1]));
  };
  return out;
}

YoungFunction young_conjugate(const YoungFunction& a) {
  if (!a.conjugate_fn) return legendre_conjugate(a);
  YoungFunction out;
  out.tag = "conj(" + a.tag + ")";
  out.delta2 = a.nabla2;
  out.nabla2 = a.delta2;
  out.eval = a.conjugate_fn;
  out.conjugate_fn = [a](double t) { return a(t); };
  // Closed-form conjugates that jump to +inf carry the jump location.
  if (std::isinf(a.conjugate_fn(2.0)) && std::isfinite(a.conjugate_fn(1.0))) out.finite_up_to = 1.0;
  return out;
}

bool looks_like_young(const YoungFunction& a, double lo, double hi, int points) {
  if (a(0.0) != 0.0) return false;
  std::vector<double> t(points), v(points);
  for (int k = 0; k < points; ++k) {
    t[k] = lo * std::pow(hi / lo, static_cast<double>(k) / (points - 1));
    v[k] = a(t[k]);
  }
  for (int k = 0; k + 1 < points; ++k)
    if (v[k + 1] < v[k] * (1.0 - 1e-12)) return false;
  for (int k = 0; k + 2 < points; ++k) {
    if (!std::isfinite(v[k + 2])) continue;
    const double mid = a(0.5 * (t[k] + t[k + 2]));
    if (mid > 0.5 * (v[k] + v[k + 2]) * (1.0 + 1e-9) + 1e-300) return false;
  }
  return true;
}

}  // namespace ouembed
