// Runs the verification groups behind acceptance criteria 1-12 and prints one
// PASS/FAIL line per criterion.  Exit status is non-zero if any criterion fails.
#include <chrono>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "ouembed/report.hpp"
#include "ouembed/verify.hpp"

using namespace ouembed;

namespace {

struct Criterion {
  int id;
  const char* what;
  const char* group;
  std::optional<double> seconds;  // runtime gate
};

const std::vector<Criterion> kCriteria{
    {1, "isoperimetric asymptotics", "profile.iso_limit", 1.0},
    {2, "weight asymptotics 2 s l Theta -> 1", "profile.theta_limit", 1.0},
    {3, "self-adjointness of S", "calderon.self_adjoint", 5.0},
    {4, "two routes to u_+^* agree", "ou.routes", 10.0},
    {5, "rearrangement estimates for ridge solutions", "ou.estimates", std::nullopt},
    {6, "weak-type finiteness and optimality", "ou.weak_type", 30.0},
    {7, "Orlicz optimal target for t^2", "orlicz.target", 30.0},
    {8, "Lorentz-Zygmund scan (2,2,0,0)", "lz.scan", 60.0},
    {9, "Marcinkiewicz psi bands", "marcinkiewicz.psi", std::nullopt},
    {10, "rearrangement calculus suite", "rearrangement.calculus", 10.0},
    {11, "fundamental-function identity", "orlicz.fundamental", std::nullopt},
    {12, "failure detection for L^1", "calderon.l1_failure", std::nullopt},
};

}  // namespace

int main() {
  const VerifyOptions options;
  int failed = 0;
  for (const auto& c : kCriteria) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<ReportRow> rows;
    std::string error;
    try {
      rows = run_group(c.group, options);
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = !c.seconds || secs < *c.seconds;
    const bool ok = error.empty() && !rows.empty() && all_pass(rows) && in_time;
    failed += !ok;
    std::printf("%s criterion %2d  %-46s %s  %.2fs%s\n", ok ? "PASS" : "FAIL", c.id, c.what, c.group, secs,
                c.seconds ? (" (limit " + std::to_string(static_cast<int>(*c.seconds)) + "s)").c_str() : "");
    if (!error.empty()) std::printf("      error: %s\n", error.c_str());
    if (!in_time) std::printf("      over the runtime limit\n");
    for (const auto& r : rows) {
      if (r.pass) continue;
      std::printf("      failing row: %s", render_text({r}).c_str());
    }
  }
  std::printf("%d of %zu criteria pass\n", static_cast<int>(kCriteria.size()) - failed, kCriteria.size());
  return failed == 0 ? 0 : 1;
}
