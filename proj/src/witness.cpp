#include "ouembed/witness.hpp"

#include <cmath>

#include "ouembed/errors.hpp"
#include "ouembed/profile.hpp"

namespace ouembed {

double witness_domain_end() { return std::exp(1.0 - std::exp(1.0)); }

namespace {
void check(double s) {
  if (!(s > 0.0 && s < witness_domain_end())) throw DomainError("witness maps are defined on (0, e^{1-e})");
}
}  // namespace

double eta(double s) {
  check(s);
  return ellell_inverse(0.5 * ellell(s));
}

double sigma(double s) {
  check(s);
  return ellell_inverse(ellell(s) - 1.0);
}

}  // namespace ouembed
