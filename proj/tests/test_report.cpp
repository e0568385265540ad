#include <gtest/gtest.h>

#include <json.hpp>

#include "ouembed/errors.hpp"
#include "ouembed/report.hpp"
#include "ouembed/tables.hpp"
#include "ouembed/verify.hpp"

using namespace ouembed;

TEST(ReportRow, PassFollowsPolarity) {
  EXPECT_TRUE(make_row("s", "c", 1.0, 1.0, Polarity::at_most).pass);
  EXPECT_FALSE(make_row("s", "c", 1.0, 1.0, Polarity::below).pass);
  EXPECT_TRUE(make_row("s", "c", 2.0, 1.0, Polarity::above).pass);
  EXPECT_FALSE(make_row("s", "c", 0.5, 1.0, Polarity::at_least).pass);
  EXPECT_TRUE(info_row("s", "c", 1e300).pass);
  EXPECT_FALSE(make_row("s", "c", std::nan(""), 1.0, Polarity::at_most).pass);
}

TEST(ReportJson, SchemaAndNonFiniteValues) {
  const std::vector<ReportRow> rows{make_row("a", "x", INFINITY, 1.0, Polarity::at_most), info_row("a", "y", 2.0)};
  const auto j = nlohmann::json::parse(render_json(rows, {{"suite", "a"}}));
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["rows"][0]["value"], "inf");
  EXPECT_TRUE(j["rows"][1]["bound"].is_null());
  EXPECT_EQ(j["failed"], 1);
  EXPECT_EQ(j["passed"], 1);
}

TEST(Suites, NamesAndRejection) {
  const auto names = suite_names();
  EXPECT_EQ(names.size(), 7u);
  EXPECT_THROW(run_suite("nosuch", {}), Rejected);
  EXPECT_THROW(run_group("profile.nosuch", {}), Rejected);
}

TEST(Suites, SerialAndParallelReportsMatch) {
  VerifyOptions serial, parallel;
  serial.exec = Exec::serial;
  for (const char* g : {"calderon.self_adjoint", "rearrangement.calculus"}) {
    EXPECT_EQ(render_json(run_group(g, serial)), render_json(run_group(g, parallel))) << g;
  }
}

TEST(Tables, CsvQuotingAndRejection) {
  Table t{"x", {}};
  TableRow r;
  r.domain = "LZ:1,1,0,2";
  r.target = "plain";
  r.evidence = "say \"hi\"";
  r.columns["k"] = "v";
  r.pass = true;
  t.rows.push_back(r);
  EXPECT_EQ(render_table_csv(t), "domain,target,pass,evidence,k\n\"LZ:1,1,0,2\",plain,true,\"say \"\"hi\"\"\",v\n");
  EXPECT_THROW(build_table("nosuch", {}), Rejected);
}
