#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ouembed/errors.hpp"
#include "ouembed/norms.hpp"
#include "ouembed/optimal.hpp"
#include "ouembed/profile.hpp"
#include "ouembed/report.hpp"
#include "ouembed/ridge.hpp"
#include "ouembed/space_spec.hpp"
#include "ouembed/step_function.hpp"
#include "ouembed/tables.hpp"
#include "ouembed/verify.hpp"

using namespace ouembed;

namespace {

constexpr int kUsage = 2;
constexpr int kOverflow = 3;

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double parse_real(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw Usage("cannot read " + what + " from '" + text + "'");
  return x;
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_real(item, what));
  return out;
}

// indicator:a | window:a,b | constant:c | loglog:eps, otherwise a CSV path.
StepFunction load_function(const std::string& source, std::size_t cells) {
  const auto colon = source.find(':');
  if (colon != std::string::npos) {
    const std::string kind = source.substr(0, colon), arg = source.substr(colon + 1);
    if (kind == "indicator") return StepFunction::indicator(parse_real(arg, "indicator size"));
    if (kind == "constant") return StepFunction::constant(parse_real(arg, "constant"));
    if (kind == "loglog") return truncated_loglog(parse_real(arg, "truncation"), cells);
    if (kind == "window") {
      const auto ab = parse_list(arg, "window ends");
      if (ab.size() != 2) throw Usage("window preset takes two numbers a,b");
      return StepFunction::window(ab[0], ab[1]);
    }
  }
  std::ifstream file(source);
  if (!file) throw Usage("'" + source + "' is neither a preset (indicator:a, window:a,b, constant:c, loglog:eps) nor a readable CSV file");
  return read_csv(file);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Usage("cannot write '" + path + "'");
  out << text;
}

std::string print12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gauss-space embedding toolkit: norms, verification suites, tables, extremal data"};
  app.require_subcommand(1);
  app.fallthrough();

  VerifyOptions opt;
  std::string seed_hex = "5EED", json_path;
  app.add_option("--grid-size", opt.grid_size, "cells of the working grid")->capture_default_str();
  app.add_option("--smin", opt.smin, "smallest grid node")->capture_default_str();
  app.add_option("--tol", opt.tol, "relative tolerance for equality checks")->capture_default_str();
  app.add_option("--seed", seed_hex, "RNG seed (hex)")->capture_default_str();
  app.add_option("--json", json_path, "also write a JSON report to this path");

  std::string source, spec_text;
  auto* norm = app.add_subcommand("norm", "norm of a function in a space");
  norm->add_option("function", source, "CSV path or preset")->required();
  norm->add_option("space", spec_text, "space, e.g. Lp:2 or LZ:2,2,1,0")->required();

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite, "all|profile|rearrangement|calderon|ou|orlicz|lz|marcinkiewicz")->capture_default_str();

  std::string which, format = "csv";
  auto* table = app.add_subcommand("table", "reproduce one of the example tables");
  table->add_option("which", which, "orlicz|lz|endpoints")->required();
  table->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

  std::vector<std::string> deltas;
  auto* extremal = app.add_subcommand("extremal", "CSV of the extremal family for each delta");
  extremal->add_option("delta", deltas, "delta values in (0, 1/2)")->required();

  std::string domain_text, target_text;
  auto* embed = app.add_subcommand("embed", "embedding verdict for a pair of spaces (JSON)");
  embed->add_option("domain", domain_text)->required();
  embed->add_option("target", target_text)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    try {
      opt.seed = std::stoull(seed_hex, nullptr, 16);
    } catch (const std::exception&) {
      throw Usage("--seed expects a hexadecimal number");
    }
    if (opt.grid_size < 16) throw Usage("--grid-size must be at least 16");
    if (!(opt.smin > 0.0 && opt.smin < 1e-3)) throw Usage("--smin must lie in (0, 1e-3)");

    if (*norm) {
      const SpaceSpec space = parse_space_spec(spec_text);
      const StepFunction f = load_function(source, opt.grid_size);
      const double value = ri_norm(f, space);
      std::cout << print12(value) << '\n';
      if (!json_path.empty()) {
        nlohmann::json j{{"schema", 1}, {"function", source}, {"space", space.describe()}, {"norm", value}};
        write_file(json_path, j.dump(2) + "\n");
      }
      return 0;
    }

    if (*verify) {
      const auto rows = run_suite(suite, opt);
      std::cout << render_text(rows);
      if (!json_path.empty()) {
        write_file(json_path, render_json(rows, {{"suite", suite},
                                                 {"grid_size", std::to_string(opt.grid_size)},
                                                 {"smin", format_number(opt.smin)},
                                                 {"tol", format_number(opt.tol)},
                                                 {"seed", seed_hex}}));
      }
      return all_pass(rows) ? 0 : 1;
    }

    if (*table) {
      const Table t = build_table(which, opt);
      std::cout << (format == "json" ? render_table_json(t) : render_table_csv(t));
      if (!json_path.empty()) write_file(json_path, render_table_json(t));
      return 0;
    }

    if (*extremal) {
      std::vector<double> values;
      for (const auto& d : deltas) {
        const double delta = parse_real(d, "delta");
        if (!(delta > 0.0 && delta < 0.5)) throw Usage("delta must lie in (0, 1/2), got " + d);
        values.push_back(delta);
      }
      RidgeOptions ropt;
      ropt.cells = opt.grid_size;
      ropt.smin = opt.smin;
      std::ostringstream csv;
      csv.precision(17);
      for (const double delta : values) {
        const RidgeSolution sol = extremal_family(delta, ropt);
        const double level = 0.5 * theta(delta);
        csv << "# delta=" << delta << '\n' << "s,u_star,grad_star,theta_delta\n";
        for (const double node : sol.nodes()) {
          const double s = 2.0 * node;  // u_star lives on (0,1)
          if (s >= 1.0) break;
          csv << s << ',' << sol.u_star(s) << ',' << sol.gradient_star(s) << ',' << level << '\n';
        }
      }
      std::cout << csv.str();
      if (!json_path.empty()) {
        nlohmann::json j{{"schema", 1}, {"deltas", values}, {"csv", csv.str()}};
        write_file(json_path, j.dump(2) + "\n");
      }
      return 0;
    }

    if (*embed) {
      const SpaceSpec x = parse_space_spec(domain_text), y = parse_space_spec(target_text);
      const EmbedReport r = embed_report(x, y, opt.grid_size, opt.smin, opt.exec);
      nlohmann::json j;
      j["schema"] = 1;
      j["domain"] = x.describe();
      j["target"] = y.describe();
      j["verdict"] = embed_verdict_name(r.verdict);
      j["conditions"] = r.conditions;
      j["optimal_target"] = r.optimal_target ? nlohmann::json(r.optimal_target->describe()) : nlohmann::json(nullptr);
      j["reason"] = r.reason;
      const std::string text = j.dump(2) + "\n";
      std::cout << text;
      if (!json_path.empty()) write_file(json_path, text);
      return 0;
    }
  } catch (const OverflowSignal& e) {
    std::cerr << "overflow: " << e.what() << '\n';
    return kOverflow;
  } catch (const ParseError& e) {
    std::cerr << e.what() << '\n';
    return kUsage;
  } catch (const Usage& e) {
    std::cerr << e.what() << '\n';
    return kUsage;
  } catch (const Rejected& e) {
    std::cerr << "rejected: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
