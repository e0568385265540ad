#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace ouembed {

// Piecewise-constant function on (0, L): value v[i] on [b[i], b[i+1]).
class StepFunction {
 public:
  StepFunction(std::vector<double> breaks, std::vector<double> values);

  static StepFunction constant(double c, double length = 1.0);
  static StepFunction indicator(double a, double length = 1.0);  // chi_(0,a)
  static StepFunction window(double a, double b, double length = 1.0);  // chi_(a,b)
  // Cells of `grid` (a breakpoint vector) carrying f at each cell midpoint.
  static StepFunction sample(const std::function<double(double)>& f, const std::vector<double>& grid);

  double length() const { return breaks_.back(); }
  std::size_t size() const { return values_.size(); }
  const std::vector<double>& breaks() const { return breaks_; }
  const std::vector<double>& values() const { return values_; }
  double left(std::size_t i) const { return breaks_[i]; }
  double right(std::size_t i) const { return breaks_[i + 1]; }
  double width(std::size_t i) const { return breaks_[i + 1] - breaks_[i]; }
  double value(std::size_t i) const { return values_[i]; }

  // Index of the cell containing s (right-continuous; s == L maps to the last cell).
  std::size_t cell_of(double s) const;
  double operator()(double s) const;

  double integral() const;
  double integral_to(double s) const;  // int_0^s f
  double sup_abs() const;
  bool nonnegative() const;

  StepFunction abs() const;
  StepFunction scaled(double c) const;
  StepFunction shifted(double c) const;  // f + c
  StepFunction reversed() const;         // s -> f(L - s)
  // Same function, breakpoints merged with `extra` (points outside (0,L) ignored).
  StepFunction refined(const std::vector<double>& extra) const;
  // Drop zero-width cells and merge equal neighbours.
  StepFunction compacted() const;

 private:
  std::vector<double> breaks_;
  std::vector<double> values_;
};

StepFunction operator+(const StepFunction& f, const StepFunction& g);
StepFunction pointwise_max(const StepFunction& f, const StepFunction& g);

// Geometric breakpoints on (0,1/2] starting at smin, mirrored onto [1/2,1).
std::vector<double> default_grid(std::size_t cells = 2048, double smin = 1e-14);
// Geometric breakpoints 0, lo, ..., hi (n geometric cells after the first).
std::vector<double> geometric_breaks(double lo, double hi, std::size_t n);
std::vector<double> merge_breaks(const std::vector<double>& a, const std::vector<double>& b);

StepFunction decreasing_rearrangement(const StepFunction& f);
StepFunction signed_rearrangement(const StepFunction& f);

// s -> f**(s) = (1/s) int_0^s f*.
class MaximalFunction {
 public:
  explicit MaximalFunction(const StepFunction& f);
  double operator()(double s) const;
  const StepFunction& rearranged() const { return star_; }
  double primitive(double s) const;  // int_0^s f*

 private:
  StepFunction star_;
  std::vector<double> prefix_;
};

MaximalFunction maximal_function(const StepFunction& f);

double median(const StepFunction& f);
double mean(const StepFunction& f);

// int |f g| over the common domain.
double pairing(const StepFunction& f, const StepFunction& g);

// Rows "s,value" with the right breakpoint of each cell, 17 significant digits.
void write_csv(std::ostream& out, const StepFunction& f);
StepFunction read_csv(std::istream& in);
std::string to_csv(const StepFunction& f);

}  // namespace ouembed
