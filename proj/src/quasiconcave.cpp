#include "ouembed/quasiconcave.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "ouembed/errors.hpp"
#include "ouembed/profile.hpp"

namespace ouembed {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double PowerLog::operator()(double s) const {
  if (s <= 0.0) return 0.0;
  if (s > 1.0) throw DomainError("power-log weight defined on (0,1] only");
  const double l = 1.0 - std::log(s);
  return from_logs(std::log(s), l, 1.0 + std::log(l));
}

double PowerLog::from_logs(double log_s, double l, double ll) const {
  double e = 0.0;
  if (r != 0.0) e += r * log_s;
  if (a != 0.0) e += a * std::log(l);
  if (b != 0.0) e += b * std::log(ll);
  return std::exp(e);
}

double PowerLog::limit_at_zero() const {
  auto sign_limit = [](double x) { return x > 0.0 ? 0.0 : (x < 0.0 ? kInf : 1.0); };
  if (r != 0.0) return sign_limit(r);
  if (a != 0.0) return sign_limit(-a);
  return sign_limit(-b);
}

std::string PowerLog::str() const {
  std::ostringstream os;
  // + 0.0 turns a negated zero exponent back into 0
  os << "s^" << r + 0.0 << "*l^" << a + 0.0 << "*ll^" << b + 0.0;
  return os.str();
}

Quasiconcave Quasiconcave::preset(PowerLog p) {
  Quasiconcave q;
  q.phi_ = [p](double s) { return p(s); };
  q.preset_ = p;
  q.tag_ = p.str();
  return q;
}

Quasiconcave Quasiconcave::custom(std::function<double(double)> phi, std::string tag) {
  Quasiconcave q;
  q.phi_ = std::move(phi);
  q.tag_ = std::move(tag);
  return q;
}

double Quasiconcave::operator()(double s) const {
  if (s <= 0.0) return 0.0;
  return phi_(s);
}

double Quasiconcave::limit_at_zero() const {
  if (preset_) return preset_->limit_at_zero();
  return phi_(1e-300);
}

double Quasiconcave::bar(double s) const {
  if (s <= 0.0) return 0.0;
  if (preset_) return preset_->companion()(s);
  return s / phi_(s);
}

Quasiconcave Quasiconcave::companion() const {
  if (preset_) return preset(preset_->companion());
  auto phi = phi_;
  return custom([phi](double s) { return s / phi(s); }, "bar(" + tag_ + ")");
}

bool Quasiconcave::is_quasiconcave(int points) const {
  double prev_phi = 0.0, prev_ratio = kInf;
  for (int k = 0; k < points; ++k) {
    const double s = std::pow(10.0, -12.0 + 12.0 * k / (points - 1));
    const double v = (*this)(s);
    const double ratio = v / s;
    if (!(v > 0.0) || !std::isfinite(v)) return false;
    if (v < prev_phi * (1.0 - 1e-12)) return false;
    if (ratio > prev_ratio * (1.0 + 1e-12)) return false;
    prev_phi = v;
    prev_ratio = ratio;
  }
  return true;
}

}  // namespace ouembed
