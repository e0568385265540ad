#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "ouembed/step_function.hpp"

namespace ouembed {

struct RidgeOptions {
  std::size_t cells = 2048;           // geometric cells of (0,1/2) used for tabulation
  double smin = 1e-14;                // first geometric node
  std::size_t gradient_pieces = 4096;  // linear pieces for the level sets of V
};

// int_s^{1/2} H(r)^power / I(r)^2 dr where H is the primitive of a step
// function on (0,1/2); tabulated on a grid, partial cells by quadrature.
class ProfileIntegral {
 public:
  ProfileIntegral(const StepFunction& h, int power, const std::vector<double>& grid);
  double operator()(double s) const;
  // int_a^b H^power / I^2 for a, b inside one cell of the grid.
  double piece(double a, double b) const;

 private:
  double primitive(double r) const;
  StepFunction h_;
  std::vector<double> prefix_;
  int power_;
  std::vector<double> grid_;
  std::vector<double> suffix_;  // integral from grid_[i] to 1/2
};

// Theta(s) H(s) + int_s^{1/2} h Theta for a step h on (0,1/2).
class ThetaForm {
 public:
  explicit ThetaForm(const StepFunction& h);
  double operator()(double s) const;

 private:
  StepFunction h_;
  std::vector<double> prefix_;
  std::vector<double> suffix_;
};

// One-dimensional description of the ridge solution of Lu = f built from a
// nonnegative datum g on (0,1/2).
class RidgeSolution {
 public:
  static RidgeSolution build(const StepFunction& g, const RidgeOptions& options = {});

  const StepFunction& datum() const { return g_; }
  const StepFunction& datum_star() const { return gstar_; }
  const RidgeOptions& options() const { return opt_; }

  double primitive(double p) const;  // int_0^p g
  // U(s) = int_s^{1/2} G/I^2, from the tabulated direct quadrature.
  double u_profile(double s) const;
  // Theta(s) G(s) + int_s^{1/2} g Theta.
  double u_profile_theta(double s) const;
  // V(p) = G(p)/I(p).
  double gradient_profile(double p) const;

  double f_norm() const { return 2.0 * g_.integral(); }  // ||f||_{L^1(gamma)}
  double f_star(double s) const;                            // g*(s/2)
  double u_star(double s) const;                            // U(s/2) on (0,1)
  double gradient_star(double s) const;                     // V*(s/2) on (0,1)
  // Rearrangement of V over (0,1/2): the + part of |grad u|.
  double gradient_half_star(double sigma) const;
  bool gradient_monotone() const { return monotone_; }

  // Right-hand sides of the two rearrangement estimates, built from g*.
  double u_bound(double s) const;         // s in (0,1/2]
  double gradient_bound(double s) const;  // s in (0,1/2)

  // int_{R^n} |grad u| dgamma = 2 int_0^{1/2} V.
  double gradient_l1() const;

  // Evaluation nodes of (0,1/2) (grid of the tabulation, 0 excluded).
  const std::vector<double>& nodes() const { return nodes_; }

 private:
  RidgeSolution() = default;
  void build_gradient_table();

  RidgeOptions opt_;
  StepFunction g_ = StepFunction::constant(0.0, 0.5);
  StepFunction gstar_ = StepFunction::constant(0.0, 0.5);
  std::vector<double> prefix_;
  std::vector<double> nodes_;
  std::shared_ptr<const ProfileIntegral> direct_;        // U from g
  std::shared_ptr<const ProfileIntegral> star_squared_;  // gradient bound, from g*
  std::shared_ptr<const ThetaForm> theta_form_;          // Theta-form from g
  std::shared_ptr<const ThetaForm> theta_form_star_;     // Theta-form from g*
  bool monotone_ = false;
  // Distribution of the piecewise-linear V: m(t) on event levels.
  std::vector<double> level_;   // decreasing event values
  std::vector<double> slope_;   // A on (level_[e+1], level_[e])
  std::vector<double> offset_;  // B on (level_[e+1], level_[e]); m(t) = B - A t
};

RidgeSolution extremal_family(double delta, const RidgeOptions& options = {});

struct EstimateReport {
  double u_violation = 0.0;         // max (u_+^* - bound)/bound over the nodes
  double u_slack = 0.0;             // max (bound - u_+^*)/bound
  double gradient_violation = 0.0;  // max (|grad u_+|^* - bound)/bound
  double weak_u_ratio = 0.0;        // sup s l(s) u*(s) / ||f||_1
  double weak_gradient_ratio = 0.0;  // sup s l(s)^{1/2} |grad u|*(s) / ||f||_1
  double w11_ratio = 0.0;           // ||grad u||_1 / int f* sqrt(l)
  double f_norm = 0.0;
};

EstimateReport check_estimates(const RidgeSolution& sol);

// sup_{s in (0,1)} weight(s) * profile(s) with profile = u* or |grad u|*.
enum class RidgeProfile { u, gradient };
double weighted_sup(const RidgeSolution& sol, RidgeProfile which, const std::function<double(double)>& weight);

// Same estimates from the serial reference path (used for cross-checks).
std::vector<EstimateReport> check_estimates_batch(const std::vector<double>& deltas, const RidgeOptions& options,
                                                  bool parallel);

}  // namespace ouembed
