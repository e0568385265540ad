#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ouembed/calderon.hpp"
#include "ouembed/parallel.hpp"
#include "ouembed/quasiconcave.hpp"
#include "ouembed/space_spec.hpp"
#include "ouembed/step_function.hpp"
#include "ouembed/young.hpp"

namespace ouembed {

// ---- Orlicz targets -------------------------------------------------------

// Whether int_0 N(t)/t^2 dt converges, judged by comparing the integral over
// t in (e^-345, 1) with the one over (e^-690, 1).
bool integrable_near_zero(const YoungFunction& n);

// N itself when integrable_near_zero(N); otherwise N with its part on [0,1]
// replaced by a quadratic matching the left slope at 1 (same N near infinity).
YoungFunction quadratic_near_zero(const YoungFunction& n);

// G(tau) = Luxemburg norm of omega on (1/tau, inf) with gauge N, tabulated on
// a log grid of tau and interpolated log-log.  Construction throws
// PreconditionError when omega on (1, inf) has no finite N-norm.
class GaugeTable {
 public:
  GaugeTable(YoungFunction norm_gauge, Weight w, Exec exec = Exec::parallel);

  double operator()(double tau) const;
  // G^{-1}(y) = sup{tau : G(tau) <= y}; +inf beyond the tabulated range.
  double inverse(double y) const;
  // Exact Luxemburg norm of omega on (rho, inf) (no table).
  double direct(double rho) const;

  const std::vector<double>& taus() const { return tau_; }
  const std::vector<double>& values() const { return val_; }
  const YoungFunction& gauge() const { return gauge_; }

 private:
  double modular(double rho, double lambda) const;
  double solve_norm(double rho, double lo, double hi) const;

  YoungFunction gauge_;
  Weight weight_;
  double zero_level_;  // sup{t : gauge(t) = 0}
  std::vector<double> tau_, val_;
};

struct OrliczTargetBuild {
  YoungFunction source;                // A
  Weight weight;                       // omega
  std::shared_ptr<const GaugeTable> g; // G_omega
  YoungFunction a_omega;               // A_omega
  bool spliced = false;                // gauge modified near zero
};

// G_omega with gauge conj(A).  No near-zero modification is made here.
std::shared_ptr<const GaugeTable> build_G_omega(const YoungFunction& a, const Weight& w, Exec exec = Exec::parallel);

// A_omega(t) = int_0^t G^{-1}(y)/y dy, with a power law below y = 1e-8.
YoungFunction build_A_omega(std::shared_ptr<const GaugeTable> g);

// A_omega built on the gauge `norm_gauge` directly (after quadratic_near_zero).
OrliczTargetBuild build_from_gauge(const YoungFunction& source, const YoungFunction& norm_gauge, const Weight& w,
                                   Exec exec = Exec::parallel);
// A_L: gauge conj(A), weight 1/(r lbar(r)).
OrliczTargetBuild build_orlicz_target(const YoungFunction& a, Exec exec = Exec::parallel);

enum class Scope { near_infinity, global };
enum class Verdict { yes, no, inconclusive };
std::string verdict_name(Verdict v);

struct Domination {
  Verdict verdict = Verdict::inconclusive;
  double c = 0.0;   // yes: the constant; otherwise the largest required c seen
  double t0 = 0.0;  // start of the tested range
  std::vector<double> witness_t;  // no: points where the required c keeps growing
  std::vector<double> witness_c;
};

// Does A dominate B, i.e. B(t) <= A(ct) on the scope?
Domination dominates(const YoungFunction& a, const YoungFunction& b, Scope scope = Scope::near_infinity);

enum class EmbedVerdict { embeds, fails, inconclusive };
std::string embed_verdict_name(EmbedVerdict v);

struct OrliczEmbedding {
  EmbedVerdict verdict = EmbedVerdict::inconclusive;
  // B dominated by A_L
  std::optional<Domination> target_condition;
  // conj(A) dominated by conj(B)_L
  std::optional<Domination> domain_condition;
  std::string reason;
  std::shared_ptr<const OrliczTargetBuild> target;  // A_L
};

OrliczEmbedding orlicz_embedding_verdict(const YoungFunction& a, const YoungFunction& b, Exec exec = Exec::parallel);
// Same, reusing an A_L already built from `a`.
OrliczEmbedding orlicz_embedding_verdict(const YoungFunction& a, const YoungFunction& b,
                                         std::shared_ptr<const OrliczTargetBuild> target, Exec exec = Exec::parallel);

// ---- Lorentz-Zygmund table -----------------------------------------------

SpaceSpec lz_optimal_target(double p, double q, double alpha, double beta, LzVariant variant = LzVariant::star);

// ---- Marcinkiewicz endpoints ----------------------------------------------

// Value of s^r l^a ll^b at the s with ll(s) = y (0 when it underflows).
double power_log_at_ll(const PowerLog& f, double y);

struct ConditionScan {
  bool finite = true;
  std::vector<double> levels;  // ll cutoffs
  std::vector<double> values;  // partial values at each cutoff
};

// int_0^1 ll d(phibar), including the mass of phibar at 0+, cut at ll = Y.
ConditionScan range_condition(const Quasiconcave& phi);
// sup ll(s) theta(s) over ll(s) <= Y.
ConditionScan domain_condition(const Quasiconcave& theta);

class MarcinkiewiczTarget {
 public:
  // Throws Rejected when the range condition fails.
  explicit MarcinkiewiczTarget(const Quasiconcave& phi, std::size_t grid_points = 4096);

  double psi(double s) const;
  double psi_bar(double s) const { return s / psi(s); }
  Quasiconcave target_phi() const;  // psi_bar
  SpaceSpec target() const { return make_marcinkiewicz(target_phi()); }
  const ConditionScan& condition() const { return condition_; }

 private:
  Quasiconcave phi_;
  ConditionScan condition_;
  std::vector<double> s_;       // geometric nodes
  std::vector<double> head_;    // int_0^{s_k} dr/(phi l)
  std::vector<double> tail_;    // int_{s_k}^1 dphibar/(r l)
};

MarcinkiewiczTarget marcinkiewicz_optimal_target(const Quasiconcave& phi);

// sup_s theta(s) [ (1/s) int_0^s g**/l + int_s^1 g*/(r l) ].  Throws Rejected
// when the domain condition fails.
double marcinkiewicz_optimal_domain_norm(const StepFunction& g, const Quasiconcave& theta);

struct ConditionChecks {
  bool target_ok = false;  // ll in X'
  bool domain_ok = false;  // ll in X
  double target_change = 0.0;  // relative change of the truncated norm
  double domain_change = 0.0;
  std::string target_note, domain_note;
};

// ll truncated at eps, as a step function on (0,1).
StepFunction truncated_loglog(double eps, std::size_t cells = 2048);
ConditionChecks condition_checks(const SpaceSpec& x);

}  // namespace ouembed

namespace ouembed {

// ---- General embedding query (the `embed` subcommand) ---------------------

struct EmbedReport {
  EmbedVerdict verdict = EmbedVerdict::inconclusive;
  std::map<std::string, std::string> conditions;
  std::optional<SpaceSpec> optimal_target;
  std::string reason;
};

// Orlicz pairs (Lebesgue spaces count as Orlicz when the other side is one)
// go through orlicz_embedding_verdict; everything else through the
// condition checks and a ratio scan of S over a witness family.
EmbedReport embed_report(const SpaceSpec& domain, const SpaceSpec& target, std::size_t cells = 2048,
                         double smin = 1e-14, Exec exec = Exec::parallel);

}  // namespace ouembed
