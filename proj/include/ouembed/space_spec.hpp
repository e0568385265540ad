#pragma once

#include <string>
#include <variant>

#include "ouembed/quasiconcave.hpp"
#include "ouembed/young.hpp"

namespace ouembed {

enum class LzVariant { star, maximal };

struct Lebesgue {
  double p = 1.0;
};

struct LorentzZygmund {
  double p = 2.0, q = 2.0, alpha = 0.0, beta = 0.0;
  LzVariant variant = LzVariant::star;
  int admissible_case = 0;  // index into the admissibility list, set by make_lz
};

struct Orlicz {
  YoungFunction young;
};

struct LorentzEndpoint {
  Quasiconcave phi;
};

struct Marcinkiewicz {
  Quasiconcave phi;
};

struct WeakType {
  Quasiconcave phi;
};

struct SpaceSpec {
  std::variant<Lebesgue, LorentzZygmund, Orlicz, LorentzEndpoint, Marcinkiewicz, WeakType> kind;
  std::string describe() const;
};

// Which admissibility case (1-based) the parameters fall in; throws Rejected
// listing the cases when none applies.
int lz_admissible_case(double p, double q, double alpha, double beta, LzVariant variant);

SpaceSpec make_lebesgue(double p);
SpaceSpec make_lz(double p, double q, double alpha, double beta, LzVariant variant = LzVariant::star);
SpaceSpec make_orlicz(YoungFunction a);
SpaceSpec make_lambda(Quasiconcave phi);
SpaceSpec make_marcinkiewicz(Quasiconcave phi);
SpaceSpec make_weak(Quasiconcave phi);

// Text grammar:
//   Lp:<p>
//   LZ:<p>,<q>,<alpha>,<beta>[:max]
//   Orlicz:exp^<beta> | Orlicz:expexp^<beta> | Orlicz:power:<p>,<alpha> | Orlicz:loglog:<alpha> | Orlicz:Linf
//   Lambda:<preset> | M:<preset> | weak:<preset>,  preset = factors s^r, l^a, ll^b joined by '*', or 1
// Numbers accept "inf".  Throws ParseError with position and expected tokens.
SpaceSpec parse_space_spec(const std::string& text);
PowerLog parse_power_log(const std::string& text);

}  // namespace ouembed
