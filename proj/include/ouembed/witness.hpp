#pragma once

namespace ouembed {

// Upper end of the common domain (0, e^{1-e}) of eta and sigma.
double witness_domain_end();

// eta(s) = ll^{-1}(ll(s)/2), sigma(s) = ll^{-1}(ll(s) - 1).
double eta(double s);
double sigma(double s);

}  // namespace ouembed
