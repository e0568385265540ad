#pragma once

#include <map>
#include <string>
#include <vector>

#include "ouembed/verify.hpp"

namespace ouembed {

struct TableRow {
  std::string domain;
  std::string target;
  std::string evidence;  // human-readable summary of the numbers below
  std::map<std::string, std::string> columns;
  bool pass = false;
};

struct Table {
  std::string name;
  std::vector<TableRow> rows;
};

// orlicz | lz | endpoints; throws Rejected otherwise.
Table build_table(const std::string& which, const VerifyOptions& options);
std::vector<std::string> table_names();

// Columns: domain,target,pass,evidence, then the union of the extra columns
// in sorted order.  Fields containing ',' or '"' are quoted.
std::string render_table_csv(const Table& t);
std::string render_table_json(const Table& t);

}  // namespace ouembed
