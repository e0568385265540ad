#pragma once

#include <functional>
#include <vector>

#include "ouembed/parallel.hpp"
#include "ouembed/step_function.hpp"

namespace ouembed {

// int_a^b f.  a == 0 is allowed (integrable endpoint singularities are fine);
// wide intervals are integrated in log s.
double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol = 1e-11);

// Plain adaptive Gauss-Kronrod (31 points) on a finite interval.
double gauss_kronrod_integrate(const std::function<double(double)>& f, double a, double b, double rel_tol);

// A function on (0, L) that is smooth between the listed kink points.
struct Evaluator {
  std::function<double(double)> f;
  std::vector<double> kinks;
  double length = 1.0;

  double operator()(double s) const { return f(s); }
  // int_a^b f with the interval split at kinks.
  double integral(double a, double b, double rel_tol = 1e-11) const;
};

// Cell averages of `e` over the cells of `grid`.
StepFunction cell_averages(const Evaluator& e, const std::vector<double>& grid, Exec exec = Exec::parallel,
                           double rel_tol = 1e-10);

// int |e h| over (0, L).
double pairing(const Evaluator& e, const StepFunction& h, double rel_tol = 1e-11);

}  // namespace ouembed
