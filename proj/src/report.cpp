#include "ouembed/report.hpp"

#include <charconv>
#include <cmath>
#include <json.hpp>
#include <sstream>

namespace ouembed {

namespace {

nlohmann::json number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

bool respects(double value, double bound, Polarity polarity) {
  switch (polarity) {
    case Polarity::at_most: return value <= bound;
    case Polarity::at_least: return value >= bound;
    case Polarity::below: return value < bound;
    case Polarity::above: return value > bound;
  }
  return false;
}

const char* polarity_name(Polarity p) {
  switch (p) {
    case Polarity::at_most: return "at_most";
    case Polarity::at_least: return "at_least";
    case Polarity::below: return "below";
    case Polarity::above: return "above";
  }
  return "";
}

}  // namespace

ReportRow make_row(std::string suite, std::string check, double value, std::optional<double> bound,
                   Polarity polarity, std::map<std::string, std::string> metadata) {
  ReportRow row;
  row.suite = std::move(suite);
  row.check = std::move(check);
  row.value = value;
  row.bound = bound;
  row.polarity = polarity;
  row.metadata = std::move(metadata);
  row.pass = !bound || respects(value, *bound, polarity);
  return row;
}

ReportRow info_row(std::string suite, std::string check, double value, std::map<std::string, std::string> metadata) {
  return make_row(std::move(suite), std::move(check), value, std::nullopt, Polarity::at_most, std::move(metadata));
}

bool all_pass(const std::vector<ReportRow>& rows) {
  for (const auto& r : rows)
    if (!r.pass) return false;
  return true;
}

const char* polarity_symbol(Polarity p) {
  switch (p) {
    case Polarity::at_most: return "<=";
    case Polarity::at_least: return ">=";
    case Polarity::below: return "<";
    case Polarity::above: return ">";
  }
  return "";
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string render_json(const std::vector<ReportRow>& rows, const std::map<std::string, std::string>& header) {
  nlohmann::json doc;
  doc["schema"] = 1;
  for (const auto& [k, v] : header) doc[k] = v;
  nlohmann::json list = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json j;
    j["suite"] = r.suite;
    j["check"] = r.check;
    j["value"] = number(r.value);
    j["bound"] = r.bound ? number(*r.bound) : nlohmann::json(nullptr);
    j["polarity"] = polarity_name(r.polarity);
    j["pass"] = r.pass;
    j["metadata"] = r.metadata;
    list.push_back(std::move(j));
  }
  doc["rows"] = std::move(list);
  std::size_t passed = 0;
  for (const auto& r : rows) passed += r.pass;
  doc["passed"] = passed;
  doc["failed"] = rows.size() - passed;
  return doc.dump(2) + "\n";
}

std::string render_text(const std::vector<ReportRow>& rows) {
  std::ostringstream out;
  for (const auto& r : rows) {
    out << (r.pass ? "PASS " : "FAIL ") << r.suite << ' ' << r.check << ' ' << format_number(r.value);
    if (r.bound) out << ' ' << polarity_symbol(r.polarity) << ' ' << format_number(*r.bound);
    out << '\n';
  }
  return out.str();
}

}  // namespace ouembed
