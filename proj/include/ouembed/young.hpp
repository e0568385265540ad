#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

namespace ouembed {

// Convex Young function A on [0, inf) with A(0) = 0.  Values beyond
// `finite_up_to` are +inf (e.g. the L^inf gauge).
struct YoungFunction {
  std::function<double(double)> eval;
  std::function<double(double)> inverse_fn;    // closed-form generalized inverse, optional
  std::function<double(double)> conjugate_fn;  // closed-form Young conjugate, optional
  bool delta2 = false;  // Delta_2 near infinity
  bool nabla2 = false;  // nabla_2 near infinity
  double finite_up_to = std::numeric_limits<double>::infinity();
  std::string tag;

  double operator()(double t) const;
  // sup{t : A(t) <= y} (right-continuous generalized inverse).
  double inverse(double y) const;
  // inf{t : A(t) >= y}.
  double lower_inverse(double y) const;
};

namespace young {

// t^p log(e+t)^alpha, p >= 1.
YoungFunction power(double p, double alpha = 0.0);
// c t^p (used for t^p/p pairs).
YoungFunction scaled_power(double p, double c);
// exp(t^beta) - 1, convexified by its tangent through the origin when beta < 1.
YoungFunction exp_power(double beta);
// exp(exp(t^beta)) - e, convexified likewise.
YoungFunction expexp_power(double beta);
// t (1 + log log(e + t))^alpha.
YoungFunction loglog(double alpha);
// 0 on [0,1], +inf beyond: the L^inf gauge.
YoungFunction linf();

}  // namespace young

// Numeric Legendre transform on a log grid (never uses closed forms).
YoungFunction legendre_conjugate(const YoungFunction& a, std::size_t grid_points = 12000);
// Closed form when available, otherwise legendre_conjugate.
YoungFunction young_conjugate(const YoungFunction& a);

// Replace `raw` on [0, t*] by its tangent line through the origin, where t*
// minimizes raw(t)/t.  Leaves already-convex-through-0 functions alone.
YoungFunction convexify_at_origin(const YoungFunction& raw);

// Checks A(0)=0, monotonicity and midpoint convexity on a log grid.
bool looks_like_young(const YoungFunction& a, double lo = 1e-6, double hi = 1e6, int points = 400);

}  // namespace ouembed
