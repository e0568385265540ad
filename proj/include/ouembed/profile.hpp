#pragma once

// Gaussian tail, its inverse, the isoperimetric profile of Gauss space and
// the logarithmic weights used throughout the library.

namespace ouembed {

inline constexpr double kSqrt2Pi = 2.50662827463100050242;
inline constexpr double kInvSqrt2Pi = 0.398942280401432677940;

double gauss_density(double t);

// P(X > t) for a standard normal X.
double gauss_tail(double t);

// x with gauss_tail(x) == p.
double gauss_tail_inverse(double p);

// Gaussian perimeter of a half-space of measure s.
double iso_profile(double s);

// int_s^{1/2} dr / I(r)^2, for s in (0, 1/2].
double theta(double s);

// l(s) = 1 + log(1/s), ll(s) = 1 + log l(s) on (0,1]; lbar(t) = max(l(t), 1) on (0,inf).
double ell(double s);
double ellell(double s);
double ell_bar(double t);
// Inverse of ll: the s in (0,1] with ll(s) = y, y >= 1.
double ellell_inverse(double y);

struct LogWeights {
  double ell;
  double ellell;
  double ell_bar;
};
// ell/ellell are NaN for s > 1 (only ell_bar is defined there).
LogWeights log_weights(double s);

class GaussianProfile {
 public:
  explicit GaussianProfile(double target_relative_tolerance = 1e-12);

  double tolerance() const { return tol_; }
  double tail(double t) const { return gauss_tail(t); }
  double tail_inverse(double p) const;
  double profile(double s) const;
  double theta(double s) const;

  // int_0^x exp((t^2 - x^2)/2) dt, the bounded factor of Theta.
  double scaled_exp_integral(double x) const;

 private:
  double tol_;
  double seed_cutoff_;  // below this p the Newton seed is sqrt(2 l(p))
  double bracket_hi_;   // gauss_tail(bracket_hi_) underflows below 1e-300
};

const GaussianProfile& default_profile();

}  // namespace ouembed
