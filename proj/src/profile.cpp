#include "ouembed/profile.hpp"

#include <cmath>
#include <limits>

#include "ouembed/errors.hpp"
#include "ouembed/quadrature.hpp"

namespace ouembed {
namespace {

constexpr double kTiny = 1e-300;

// Mills ratio tail(t)/density(t) by the Laplace continued fraction (t > 8).
double mills_ratio_cf(double t) {
  const double eps = 1e-17;
  double f = t;
  double c = t;
  double d = 0.0;
  for (int k = 1; k < 500; ++k) {
    d = t + k * d;
    if (d == 0.0) d = 1e-300;
    c = t + k / c;
    if (c == 0.0) c = 1e-300;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::fabs(delta - 1.0) < eps) break;
  }
  return 1.0 / f;
}

double mills_ratio(double x) {
  if (x > 8.0) return mills_ratio_cf(x);
  return 0.5 * std::erfc(x / std::sqrt(2.0)) / gauss_density(x);
}

}  // namespace

double gauss_density(double t) { return kInvSqrt2Pi * std::exp(-0.5 * t * t); }

double gauss_tail(double t) {
  if (!std::isfinite(t)) throw DomainError("gauss_tail: non-finite argument");
  if (t > 8.0) return gauss_density(t) * mills_ratio_cf(t);
  return 0.5 * std::erfc(t / std::sqrt(2.0));
}

GaussianProfile::GaussianProfile(double target_relative_tolerance)
    : tol_(target_relative_tolerance), seed_cutoff_(0.1), bracket_hi_(40.0) {}

double GaussianProfile::tail_inverse(double p) const {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("gauss_tail_inverse: p must lie in (0,1)");
  if (p == 0.5) return 0.0;
  if (p > 0.5) return -tail_inverse(1.0 - p);  // 1 - p is exact here
  p = std::max(p, kTiny);

  const double log_p = std::log(p);
  double lo = 0.0;
  double hi = bracket_hi_;
  double x = p < seed_cutoff_ ? std::sqrt(2.0 * (1.0 - log_p)) : 0.0;
  for (int it = 0; it < 200; ++it) {
    const double q = gauss_tail(x);
    if (q > p) lo = x; else hi = x;
    // Newton on log tail(x) - log p; the derivative is -1/mills_ratio.
    const double step = (std::log(q) - log_p) * mills_ratio(x);
    double next = x + step;
    if (!(next > lo && next < hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
    const double change = std::fabs(next - x);
    x = next;
    if (change <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, x)) break;
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, x)) break;
  }
  return x;
}

double GaussianProfile::profile(double s) const {
  if (!(s >= 0.0 && s <= 1.0)) throw DomainError("iso_profile: s must lie in [0,1]");
  if (s == 0.0 || s == 1.0) return 0.0;
  if (s > 0.5) s = 1.0 - s;
  s = std::max(s, kTiny);
  return gauss_density(tail_inverse(s));
}

double GaussianProfile::scaled_exp_integral(double x) const {
  if (x <= 0.0) return 0.0;
  auto f = [x](double t) { return std::exp(0.5 * (t - x) * (t + x)); };
  const double tol = std::max(tol_ * 1e-2, 1e-15);
  // Mass sits within a few multiples of 1/x below x.
  const double split = x > 2.0 ? std::max(0.0, x - 40.0 / x) : 0.0;
  double total = gauss_kronrod_integrate(f, split, x, tol);
  if (split > 0.0) total += gauss_kronrod_integrate(f, 0.0, split, tol);
  return total;
}

double GaussianProfile::theta(double s) const {
  if (!(s > 0.0 && s <= 0.5)) throw DomainError("theta: s must lie in (0,1/2]");
  if (s == 0.5) return 0.0;
  const double x = tail_inverse(std::max(s, kTiny));
  return scaled_exp_integral(x) / gauss_density(x);
}

const GaussianProfile& default_profile() {
  static const GaussianProfile profile;
  return profile;
}

double gauss_tail_inverse(double p) { return default_profile().tail_inverse(p); }
double iso_profile(double s) { return default_profile().profile(s); }
double theta(double s) { return default_profile().theta(s); }

double ell(double s) {
  if (!(s > 0.0 && s <= 1.0)) throw DomainError("ell: s must lie in (0,1]");
  return 1.0 - std::log(s);
}

double ellell(double s) {
  if (!(s > 0.0 && s <= 1.0)) throw DomainError("ellell: s must lie in (0,1]");
  return 1.0 + std::log1p(-std::log(s));
}

double ell_bar(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("ell_bar: t must be positive");
  return t >= 1.0 ? 1.0 : 1.0 - std::log(t);
}

double ellell_inverse(double y) {
  if (!(y >= 1.0)) throw DomainError("ellell_inverse: y must be >= 1");
  return std::exp(1.0 - std::exp(y - 1.0));
}

LogWeights log_weights(double s) {
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("log_weights: s must be positive");
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (s > 1.0) return {nan, nan, 1.0};
  return {ell(s), ellell(s), ell_bar(s)};
}

}  // namespace ouembed
