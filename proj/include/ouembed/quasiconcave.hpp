#pragma once

#include <functional>
#include <optional>
#include <string>

namespace ouembed {

// s^r l(s)^a ll(s)^b on (0,1].
struct PowerLog {
  double r = 0.0;
  double a = 0.0;
  double b = 0.0;

  double operator()(double s) const;
  // Evaluation from log s, l(s), ll(s) so that s far below the double range
  // can be handled (log_s = 1 - l).
  double from_logs(double log_s, double l, double ll) const;
  double limit_at_zero() const;
  PowerLog companion() const { return {1.0 - r, -a, -b}; }  // s / phi(s)
  std::string str() const;  // "s^r*l^a*ll^b"
};

// Quasiconcave phi on [0,1] with phi(0) = 0.
class Quasiconcave {
 public:
  static Quasiconcave preset(PowerLog p);
  static Quasiconcave custom(std::function<double(double)> phi, std::string tag);

  double operator()(double s) const;  // phi(0) = 0
  double limit_at_zero() const;       // phi(0+)
  double bar(double s) const;         // s / phi(s)
  Quasiconcave companion() const;
  const std::optional<PowerLog>& power_log() const { return preset_; }
  const std::string& tag() const { return tag_; }
  // phi non-decreasing and phi(s)/s non-increasing on a log grid of (1e-12, 1].
  bool is_quasiconcave(int points = 2000) const;

 private:
  std::function<double(double)> phi_;
  std::optional<PowerLog> preset_;
  std::string tag_;
};

}  // namespace ouembed
