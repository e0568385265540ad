#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ouembed {

// How `value` is compared with `bound`.
enum class Polarity { at_most, at_least, below, above };  // below/above are strict

struct ReportRow {
  std::string suite;
  std::string check;
  double value = 0.0;
  std::optional<double> bound;  // none: informational row, always passes
  Polarity polarity = Polarity::at_most;
  bool pass = true;
  std::map<std::string, std::string> metadata;
};

ReportRow make_row(std::string suite, std::string check, double value, std::optional<double> bound,
                   Polarity polarity = Polarity::at_most, std::map<std::string, std::string> metadata = {});
// Informational row (no bound).
ReportRow info_row(std::string suite, std::string check, double value, std::map<std::string, std::string> metadata = {});

bool all_pass(const std::vector<ReportRow>& rows);

// {"schema": 1, ...header, "rows": [...]} with sorted keys; non-finite numbers
// are written as strings ("inf", "-inf", "nan").
std::string render_json(const std::vector<ReportRow>& rows, const std::map<std::string, std::string>& header = {});
const char* polarity_symbol(Polarity p);
// One line per row: PASS/FAIL suite check value [op bound].
std::string render_text(const std::vector<ReportRow>& rows);

// Shortest round-trippable decimal form (17 significant digits at most).
std::string format_number(double x);

}  // namespace ouembed
