#include "ouembed/space_spec.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "ouembed/errors.hpp"

namespace ouembed {

namespace {

constexpr const char* kStarCases =
    "admissible star cases: (1) 1<p<inf, 1<=q<=inf; (2) p=q=1, alpha>0; (3) p=q=1, alpha=0, beta>0; "
    "(4) p=inf, 1<=q<=inf, alpha+1/q<0; (5) p=inf, 1<=q<=inf, alpha+1/q=0, beta+1/q<0; "
    "(6) p=q=inf, alpha=beta=0";
constexpr const char* kMaximalCases =
    "admissible maximal cases: (1) 0<p<inf, 1<=q<=inf; (2) p=inf, 1<=q<=inf, alpha+1/q<0; "
    "(3) p=inf, 1<=q<=inf, alpha+1/q=0, beta+1/q<0; (4) p=q=inf, alpha=beta=0";

std::string fmt(double x) {
  if (std::isinf(x)) return "inf";
  std::ostringstream os;
  os << x;
  return os.str();
}

}  // namespace

int lz_admissible_case(double p, double q, double alpha, double beta, LzVariant variant) {
  const double inf = std::numeric_limits<double>::infinity();
  const bool q_ok = q >= 1.0 && q <= inf;
  const double iq = std::isinf(q) ? 0.0 : 1.0 / q;
  if (variant == LzVariant::star) {
    if (p > 1.0 && p < inf && q_ok) return 1;
    if (p == 1.0 && q == 1.0 && alpha > 0.0) return 2;
    if (p == 1.0 && q == 1.0 && alpha == 0.0 && beta > 0.0) return 3;
    if (std::isinf(p) && q_ok && alpha + iq < 0.0) return 4;
    if (std::isinf(p) && q_ok && alpha + iq == 0.0 && beta + iq < 0.0) return 5;
    if (std::isinf(p) && std::isinf(q) && alpha == 0.0 && beta == 0.0) return 6;
    throw Rejected("L^{" + fmt(p) + "," + fmt(q) + ";" + fmt(alpha) + "," + fmt(beta) +
                   "} is not a rearrangement-invariant norm; " + kStarCases);
  }
  if (p > 0.0 && p < inf && q_ok) return 1;
  if (std::isinf(p) && q_ok && alpha + iq < 0.0) return 2;
  if (std::isinf(p) && q_ok && alpha + iq == 0.0 && beta + iq < 0.0) return 3;
  if (std::isinf(p) && std::isinf(q) && alpha == 0.0 && beta == 0.0) return 4;
  throw Rejected("L^{(" + fmt(p) + "," + fmt(q) + ";" + fmt(alpha) + "," + fmt(beta) +
                 ")} is not a rearrangement-invariant norm; " + kMaximalCases);
}

SpaceSpec make_lebesgue(double p) {
  if (!(p >= 1.0)) throw Rejected("Lebesgue exponent must be >= 1");
  return SpaceSpec{Lebesgue{p}};
}

SpaceSpec make_lz(double p, double q, double alpha, double beta, LzVariant variant) {
  LorentzZygmund lz{p, q, alpha, beta, variant, 0};
  lz.admissible_case = lz_admissible_case(p, q, alpha, beta, variant);
  return SpaceSpec{lz};
}

SpaceSpec make_orlicz(YoungFunction a) { return SpaceSpec{Orlicz{std::move(a)}}; }
SpaceSpec make_lambda(Quasiconcave phi) { return SpaceSpec{LorentzEndpoint{std::move(phi)}}; }
SpaceSpec make_marcinkiewicz(Quasiconcave phi) { return SpaceSpec{Marcinkiewicz{std::move(phi)}}; }
SpaceSpec make_weak(Quasiconcave phi) { return SpaceSpec{WeakType{std::move(phi)}}; }

std::string SpaceSpec::describe() const {
  struct Visitor {
    std::string operator()(const Lebesgue& x) const { return "Lp:" + fmt(x.p); }
    std::string operator()(const LorentzZygmund& x) const {
      return "LZ:" + fmt(x.p) + "," + fmt(x.q) + "," + fmt(x.alpha) + "," + fmt(x.beta) +
             (x.variant == LzVariant::maximal ? ":max" : "");
    }
    std::string operator()(const Orlicz& x) const { return "Orlicz:" + x.young.tag; }
    std::string operator()(const LorentzEndpoint& x) const { return "Lambda:" + x.phi.tag(); }
    std::string operator()(const Marcinkiewicz& x) const { return "M:" + x.phi.tag(); }
    std::string operator()(const WeakType& x) const { return "weak:" + x.phi.tag(); }
  };
  return std::visit(Visitor{}, kind);
}

}  // namespace ouembed
