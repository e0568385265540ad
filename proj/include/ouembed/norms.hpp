#pragma once

#include <functional>

#include "ouembed/quasiconcave.hpp"
#include "ouembed/space_spec.hpp"
#include "ouembed/step_function.hpp"
#include "ouembed/young.hpp"

namespace ouembed {

enum class EndpointKind { lambda, marcinkiewicz, weak };

double lebesgue_norm(const StepFunction& g, double p);

// inf{lambda : int A(|g|/lambda) <= 1}; throws OverflowSignal when the
// bracket ceiling is exhausted.
double luxemburg_norm(const StepFunction& g, const YoungFunction& a);

// Orlicz (Amemiya) norm inf_k (1 + int A(k|g|)) / k.  With A replaced by its
// conjugate this is the associate norm of the Luxemburg space L^A.
double orlicz_norm(const StepFunction& g, const YoungFunction& a);

// || s^{1/p-1/q} l^alpha ll^beta g^*(s) ||_{L^q(0,1)}, or with g** for the
// maximal variant.  Parameters are checked against the admissible cases.
double lorentz_zygmund_norm(const StepFunction& g, double p, double q, double alpha, double beta,
                            LzVariant variant = LzVariant::star);

// Lambda: int g* dphi; Marcinkiewicz: sup phi g**; weak: sup phi g*.
double endpoint_norm(const StepFunction& g, const Quasiconcave& phi, EndpointKind kind);

// Norm of f in X over a probability space (f must live on (0,1)).
double ri_norm(const StepFunction& f, const SpaceSpec& x);

// Closed-form associate space; WeakType and unrecorded LZ corners throw Rejected.
SpaceSpec associate_spec(const SpaceSpec& x);

// ri_norm of chi_(0,t).
double fundamental_function(const SpaceSpec& x, double t);

// sup of h over the closure of the cell (a, b), from a log-spaced sample
// refined by Brent's method around the best sample.  a == 0 is explored down
// to about 1e-300.
double cell_sup(const std::function<double(double)>& h, double a, double b);

}  // namespace ouembed
