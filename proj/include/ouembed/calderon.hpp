#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ouembed/parallel.hpp"
#include "ouembed/quadrature.hpp"
#include "ouembed/space_spec.hpp"
#include "ouembed/step_function.hpp"

namespace ouembed {

struct Weight {
  std::function<double(double)> omega;
  // Antiderivative of omega (may be -inf at 0); empty means "use quadrature".
  std::function<double(double)> primitive;
  // Points where omega is not smooth.
  std::vector<double> kinks;
  std::string tag;

  double operator()(double r) const { return omega(r); }
  double integral(double a, double b) const;  // int_a^b omega, a > 0
};

// omega(r) = 1 / (r lbar(r)).
Weight canonical_weight();
Weight power_weight(double exponent);  // r^exponent

struct AdmissibleVerdict {
  bool admissible = true;
  double violation_at = 0.0;
  std::string reason;
};
// omega non-increasing and r omega(r) non-decreasing on a log grid over (1e-12, 1e3).
AdmissibleVerdict admissible_check(const Weight& w, int points = 10000);

// Sg(s) = (1/(s l(s))) int_0^s g + int_s^1 g(r)/(r l(r)) dr, g >= 0 on (0,1).
Evaluator apply_S(const StepFunction& g);
// Input breakpoints, a geometric grid of `cells` cells down to smin, and 256
// geometric points in (smin, first breakpoint).
std::vector<double> s_output_grid(const StepFunction& g, std::size_t cells = 2048, double smin = 1e-14);
StepFunction apply_S_steps(const StepFunction& g, std::size_t cells = 2048, double smin = 1e-14,
                           Exec exec = Exec::parallel);

// Rg(s) = int_s^L g omega;  R'g(s) = omega(s) int_0^s g;  Pg(s) = (1/s) int_0^s g.
Evaluator apply_R(const StepFunction& g, const Weight& w);
Evaluator apply_R_adjoint(const StepFunction& g, const Weight& w);
Evaluator apply_P(const StepFunction& g);
// R applied to a general nonnegative evaluator, by quadrature.
Evaluator apply_R(const Evaluator& g, const Weight& w);

enum class Family { indicator, power_log, eta_window, sigma_window };
std::string family_name(Family f);

struct FamilyParams {
  double p = 2.0;      // power_log: s^{-1/p} l^{-gamma} chi_(a,1)
  double gamma = 0.0;
  std::size_t cells = 512;
};
StepFunction family_member(Family f, double a, const FamilyParams& params = {});

struct ScanRow {
  std::string family;
  double a = 0.0;
  double domain_norm = 0.0;
  double target_norm = 0.0;
  double ratio = 0.0;
  std::string error;  // non-empty when the entry failed
};

struct ScanResult {
  std::vector<ScanRow> rows;
  double max_over_min = 0.0;
  double last_over_first = 0.0;
  bool bounded = false;  // max/min < 10
  bool growing = false;  // last/first >= 2
};

using Operator = std::function<StepFunction(const StepFunction&)>;
Operator s_operator(std::size_t cells = 2048, double smin = 1e-14);

ScanResult operator_ratio_scan(const Operator& op, const SpaceSpec& domain, const SpaceSpec& target, Family family,
                               const std::vector<double>& sizes, const FamilyParams& params = {},
                               Exec exec = Exec::parallel);

// 2^-k for k = kmin..kmax.
std::vector<double> dyadic_sizes(int kmin, int kmax);

}  // namespace ouembed
