#include "ouembed/tables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ouembed/calderon.hpp"
#include "ouembed/errors.hpp"
#include "ouembed/optimal.hpp"
#include "ouembed/report.hpp"

namespace ouembed {

namespace {

std::string num(double x) { return format_number(x); }

std::string orlicz_name(const YoungFunction& a) { return make_orlicz(a).describe(); }

std::string domination_text(const std::optional<Domination>& d) {
  if (!d) return "-";
  return verdict_name(d->verdict) + " (c=" + num(d->c) + ")";
}

Table orlicz_rows(const VerifyOptions& opt) {
  struct Line {
    YoungFunction domain, target, stronger;
  };
  const std::vector<Line> lines{
      {young::loglog(1.0), young::loglog(0.0), young::loglog(1.0)},
      {young::power(1.0, 1.0), young::power(1.0, 1.0), young::power(1.0, 2.0)},
      {young::power(2.0, 0.0), young::power(2.0, 2.0), young::power(2.0, 3.0)},
      {young::exp_power(1.0), young::exp_power(1.0), young::exp_power(2.0)},
      {young::expexp_power(2.0), young::expexp_power(1.0), young::expexp_power(2.0)},
      {young::linf(), young::expexp_power(1.0), young::expexp_power(2.0)},
  };
  Table t{"orlicz", {}};
  for (const auto& line : lines) {
    TableRow row;
    row.domain = orlicz_name(line.domain);
    row.target = orlicz_name(line.target);
    const OrliczEmbedding main = orlicz_embedding_verdict(line.domain, line.target, opt.exec);
    const OrliczEmbedding strong = orlicz_embedding_verdict(line.domain, line.stronger, main.target, opt.exec);
    row.pass = main.verdict == EmbedVerdict::embeds;
    row.columns["verdict"] = embed_verdict_name(main.verdict);
    row.columns["target_condition"] = domination_text(main.target_condition);
    row.columns["domain_condition"] = domination_text(main.domain_condition);
    row.columns["stronger_target"] = orlicz_name(line.stronger);
    row.columns["stronger_verdict"] = embed_verdict_name(strong.verdict);
    row.evidence = main.reason + "; stronger target " + orlicz_name(line.stronger) + ": " +
                   (strong.verdict == EmbedVerdict::fails ? "fails" : "not separated within double range");
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table lz_rows(const VerifyOptions& opt) {
  struct Line {
    double p, q, alpha, beta;
    double stronger_alpha, stronger_beta;
  };
  const double inf = std::numeric_limits<double>::infinity();
  const std::vector<Line> lines{
      {1, 1, 0, 2, 0, 1.5}, {1, 1, 1, 0, 1.5, 0}, {2, 2, 0, 0, 1.5, 0}, {3, 1.5, -0.5, 2, 1.0, 2},
      {inf, inf, -1, 0, -0.5, 0}, {inf, inf, 0, 0, 0, -0.5},
  };
  const auto sizes = dyadic_sizes(2, 40);
  const Operator op = s_operator(opt.grid_size, opt.smin);
  Table t{"lz", {}};
  for (const auto& line : lines) {
    TableRow row;
    const SpaceSpec domain = make_lz(line.p, line.q, line.alpha, line.beta);
    const SpaceSpec target = lz_optimal_target(line.p, line.q, line.alpha, line.beta);
    const auto* tz = std::get_if<LorentzZygmund>(&target.kind);
    const SpaceSpec stronger =
        make_lz(tz->p, tz->q, line.stronger_alpha, line.stronger_beta, tz->variant);
    // Indicators resolve the finite-p rows; for p = inf the norms live at
    // s -> 0 below the grid, and the eta windows are the matching witnesses.
    const Family family = std::isinf(line.p) ? Family::eta_window : Family::indicator;
    const ScanResult bounded = operator_ratio_scan(op, domain, target, family, sizes, {}, opt.exec);
    const ScanResult improved = operator_ratio_scan(op, domain, stronger, family, sizes, {}, opt.exec);
    std::size_t failed = 0;
    for (const auto& r : bounded.rows) failed += !r.error.empty();
    row.domain = domain.describe();
    row.target = target.describe();
    row.pass = bounded.bounded;
    row.columns["case"] = std::to_string(std::get<LorentzZygmund>(domain.kind).admissible_case);
    row.columns["family"] = family_name(family);
    row.columns["max_over_min"] = num(bounded.max_over_min);
    row.columns["skipped_sizes"] = std::to_string(failed);
    row.columns["stronger_target"] = stronger.describe();
    row.columns["stronger_last_over_first"] = num(improved.last_over_first);
    row.evidence = std::string(bounded.bounded ? "bounded" : "not bounded") + " (max/min " +
                   num(bounded.max_over_min) + "); stronger target " +
                   (improved.growing ? "growing" : "not separated") + " (last/first " +
                   num(improved.last_over_first) + ")";
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table endpoint_rows(const VerifyOptions&) {
  struct Line {
    PowerLog domain, target;
  };
  const std::vector<Line> lines{
      {{1, 0, 2}, {1, 0, 1}},  {{1, 1, 0}, {1, 1, 0}},   {{0.5, 0, 0}, {0.5, 1, 0}},
      {{0, -1, 0}, {0, -1, 0}}, {{0, 0, -1}, {0, 0, -2}}, {{0, 0, 0}, {0, 0, -1}},
  };
  Table t{"endpoints", {}};
  for (const auto& line : lines) {
    TableRow row;
    const Quasiconcave phi = Quasiconcave::preset(line.domain);
    const MarcinkiewiczTarget m(phi);
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (int k = 0; k <= 200; ++k) {
      const double s = 1e-10 * std::pow(0.4e10, k / 200.0);
      const double r = m.psi_bar(s) / line.target(s);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    row.domain = "M:" + line.domain.str();
    row.target = "M:" + line.target.str();
    row.pass = hi / lo < 10.0;
    row.columns["ratio_min"] = num(lo);
    row.columns["ratio_max"] = num(hi);
    row.columns["max_over_min"] = num(hi / lo);
    // s ll^2 is quasiconcave only near 0; equivalence near 0 is what counts.
    row.columns["quasiconcave_on_(0,1]"] = phi.is_quasiconcave() ? "yes" : "near 0 only";
    row.evidence = "psi_bar / target on [1e-10, 0.4]: max/min " + num(hi / lo);
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> extra_columns(const Table& t) {
  std::set<std::string> keys;
  for (const auto& r : t.rows)
    for (const auto& [k, v] : r.columns) keys.insert(k);
  return {keys.begin(), keys.end()};
}

}  // namespace

std::vector<std::string> table_names() { return {"orlicz", "lz", "endpoints"}; }

Table build_table(const std::string& which, const VerifyOptions& options) {
  if (which == "orlicz") return orlicz_rows(options);
  if (which == "lz") return lz_rows(options);
  if (which == "endpoints") return endpoint_rows(options);
  throw Rejected("unknown table '" + which + "' (expected orlicz, lz or endpoints)");
}

std::string render_table_csv(const Table& t) {
  const auto extra = extra_columns(t);
  std::ostringstream out;
  out << "domain,target,pass,evidence";
  for (const auto& k : extra) out << ',' << csv_field(k);
  out << '\n';
  for (const auto& r : t.rows) {
    out << csv_field(r.domain) << ',' << csv_field(r.target) << ',' << (r.pass ? "true" : "false") << ','
        << csv_field(r.evidence);
    for (const auto& k : extra) {
      const auto it = r.columns.find(k);
      out << ',' << csv_field(it == r.columns.end() ? "" : it->second);
    }
    out << '\n';
  }
  return out.str();
}

std::string render_table_json(const Table& t) {
  nlohmann::json doc;
  doc["schema"] = 1;
  doc["table"] = t.name;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : t.rows) {
    nlohmann::json j;
    j["domain"] = r.domain;
    j["target"] = r.target;
    j["pass"] = r.pass;
    j["evidence"] = r.evidence;
    j["columns"] = r.columns;
    rows.push_back(std::move(j));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

}  // namespace ouembed
