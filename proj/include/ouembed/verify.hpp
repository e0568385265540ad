#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ouembed/parallel.hpp"
#include "ouembed/report.hpp"

namespace ouembed {

struct VerifyOptions {
  std::size_t grid_size = 2048;
  double smin = 1e-14;
  double tol = 1e-6;
  std::uint64_t seed = 0x5EED;
  Exec exec = Exec::parallel;
};

// A named group of checks; a suite is the list of groups carrying its name.
struct CheckGroup {
  std::string suite;
  std::string name;
  std::function<std::vector<ReportRow>(const VerifyOptions&)> run;
};

const std::vector<CheckGroup>& check_groups();
// profile, rearrangement, calderon, ou, orlicz, lz, marcinkiewicz.
std::vector<std::string> suite_names();

// Rows of one group ("suite.name"); throws Rejected for unknown names.
std::vector<ReportRow> run_group(const std::string& qualified_name, const VerifyOptions& options);
// Rows of a suite, or of every suite for "all"; throws Rejected for unknown names.
std::vector<ReportRow> run_suite(const std::string& suite, const VerifyOptions& options);

}  // namespace ouembed
