#include <cmath>
#include <limits>

#include "ouembed/errors.hpp"
#include "ouembed/norms.hpp"
#include "ouembed/optimal.hpp"
#include "ouembed/report.hpp"

namespace ouembed {

namespace {

std::optional<YoungFunction> as_orlicz(const SpaceSpec& x) {
  if (const auto* o = std::get_if<Orlicz>(&x.kind)) return o->young;
  if (const auto* l = std::get_if<Lebesgue>(&x.kind)) {
    if (std::isinf(l->p)) return young::linf();
    return young::power(l->p, 0.0);
  }
  return std::nullopt;
}

std::string domination_text(const std::optional<Domination>& d) {
  if (!d) return "not evaluated";
  return verdict_name(d->verdict) + " (c=" + format_number(d->c) + ")";
}

std::optional<SpaceSpec> optimal_target_of(const SpaceSpec& x, std::string& note) {
  try {
    if (const auto* l = std::get_if<Lebesgue>(&x.kind)) return lz_optimal_target(l->p, l->p, 0.0, 0.0);
    if (const auto* z = std::get_if<LorentzZygmund>(&x.kind))
      return lz_optimal_target(z->p, z->q, z->alpha, z->beta, z->variant);
    if (const auto* m = std::get_if<Marcinkiewicz>(&x.kind)) return marcinkiewicz_optimal_target(m->phi).target();
    if (const auto* o = std::get_if<Orlicz>(&x.kind)) return make_orlicz(build_orlicz_target(o->young).a_omega);
    note = "no closed-form optimal target for this family";
  } catch (const Rejected& e) {
    note = e.what();
  }
  return std::nullopt;
}

// Spaces whose fundamental function barely decays at 0 (L^inf, exp L, ...)
// have their norms decided below any grid; eta windows see them, indicators
// do not.
Family witness_family(const SpaceSpec& x) {
  const double near = fundamental_function(x, 1e-12), far = fundamental_function(x, 1e-6);
  return near >= 0.4 * far ? Family::eta_window : Family::indicator;
}

}  // namespace

EmbedReport embed_report(const SpaceSpec& domain, const SpaceSpec& target, std::size_t cells, double smin, Exec exec) {
  EmbedReport out;
  const auto a = as_orlicz(domain), b = as_orlicz(target);
  const bool orlicz_pair = a && b && (std::holds_alternative<Orlicz>(domain.kind) || std::holds_alternative<Orlicz>(target.kind));
  if (orlicz_pair) {
    const OrliczEmbedding e = orlicz_embedding_verdict(*a, *b, exec);
    out.verdict = e.verdict;
    out.reason = e.reason;
    out.conditions["target_condition"] = domination_text(e.target_condition);
    out.conditions["domain_condition"] = domination_text(e.domain_condition);
    if (e.target) out.optimal_target = make_orlicz(e.target->a_omega);
    return out;
  }

  std::string note;
  out.optimal_target = optimal_target_of(domain, note);
  if (!note.empty()) out.conditions["optimal_target_note"] = note;

  bool has_associate = true;
  try {
    (void)associate_spec(domain);
  } catch (const Rejected& e) {
    has_associate = false;
    out.conditions["associate"] = e.what();
  }
  if (has_associate) {
    const ConditionChecks c = condition_checks(domain);
    out.conditions["target_ok"] = c.target_ok ? "true" : "false";
    out.conditions["domain_ok"] = c.domain_ok ? "true" : "false";
    out.conditions["target_note"] = c.target_note;
    out.conditions["domain_note"] = c.domain_note;
    if (!c.target_ok) {
      out.verdict = EmbedVerdict::fails;
      out.reason = "loglog is not in the associate of the domain: no rearrangement-invariant target exists";
      return out;
    }
  }

  const Family family = witness_family(domain);
  const ScanResult scan = operator_ratio_scan(s_operator(cells, smin), domain, target, family, dyadic_sizes(2, 40), {}, exec);
  out.conditions["scan_family"] = family_name(family);
  out.conditions["scan_max_over_min"] = format_number(scan.max_over_min);
  out.conditions["scan_last_over_first"] = format_number(scan.last_over_first);
  if (scan.growing) {
    out.verdict = EmbedVerdict::fails;
    out.reason = "ratio scan grows (last/first " + format_number(scan.last_over_first) + ")";
  } else if (scan.bounded) {
    out.verdict = EmbedVerdict::embeds;
    out.reason = "ratio scan bounded (max/min " + format_number(scan.max_over_min) + ")";
  } else {
    out.reason = "ratio scan neither bounded nor growing";
  }
  return out;
}

}  // namespace ouembed
