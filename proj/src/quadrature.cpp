#include "ouembed/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "ouembed/errors.hpp"

namespace ouembed {

// Boost's recursive error test compares an unscaled error with a scaled
// tolerance, so narrow intervals never converge.  Mapping onto [-1,1] first
// keeps both on the same scale.
double gauss_kronrod_integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  using boost::math::quadrature::gauss_kronrod;
  if (!(b > a)) return 0.0;
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  auto unit = [&](double x) { return f(mid + half * x); };
  return half * gauss_kronrod<double, 31>::integrate(unit, -1.0, 1.0, 18, tol);
}

namespace {
double gk(const std::function<double(double)>& f, double a, double b, double tol) {
  return gauss_kronrod_integrate(f, a, b, tol);
}
}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol) {
  if (!(b > a)) return 0.0;
  if (a == 0.0) {
    // s = b e^{-v}; the integrand becomes f(s) s on v in (0, inf).
    auto g = [&](double v) {
      const double s = b * std::exp(-v);
      if (s == 0.0) return 0.0;
      const double y = f(s) * s;
      return std::isfinite(y) ? y : 0.0;
    };
    static thread_local boost::math::quadrature::exp_sinh<double> integrator(12);
    const double head = integrator.integrate(g, rel_tol);
    return head;
  }
  if (b / a > 4.0) {
    auto g = [&](double u) {
      const double s = std::exp(u);
      return f(s) * s;
    };
    return gk(g, std::log(a), std::log(b), rel_tol);
  }
  return gk(f, a, b, rel_tol);
}

double Evaluator::integral(double a, double b, double rel_tol) const {
  if (!(b > a)) return 0.0;
  double total = 0.0;
  double lo = a;
  auto it = std::upper_bound(kinks.begin(), kinks.end(), a);
  for (; it != kinks.end() && *it < b; ++it) {
    total += integrate(f, lo, *it, rel_tol);
    lo = *it;
  }
  total += integrate(f, lo, b, rel_tol);
  return total;
}

StepFunction cell_averages(const Evaluator& e, const std::vector<double>& grid, Exec exec, double rel_tol) {
  std::vector<double> v(grid.size() - 1);
  for_each_index(
      v.size(), [&](std::size_t i) { v[i] = e.integral(grid[i], grid[i + 1], rel_tol) / (grid[i + 1] - grid[i]); },
      exec);
  return StepFunction(grid, std::move(v));
}

double pairing(const Evaluator& e, const StepFunction& h, double rel_tol) {
  if (std::fabs(e.length - h.length()) > 1e-12 * h.length()) throw DomainError("pairing: mismatched lengths");
  auto absf = [&](double s) { return std::fabs(e.f(s)); };
  Evaluator a{absf, e.kinks, e.length};
  double total = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (h.value(i) == 0.0) continue;
    total += std::fabs(h.value(i)) * a.integral(h.left(i), h.right(i), rel_tol);
  }
  return total;
}

}  // namespace ouembed
