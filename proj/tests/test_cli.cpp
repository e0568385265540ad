#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(OUEMBED_BIN) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string temp_path(const std::string& name) { return ::testing::TempDir() + name; }

}  // namespace

TEST(Cli, NormOfIndicator) {
  const auto a = run("norm indicator:0.25 Lp:2");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, "0.5\n");
  const auto b = run("norm indicator:0.001 'M:s^1*l^0*ll^0'");
  EXPECT_EQ(b.code, 0);
  EXPECT_DOUBLE_EQ(std::stod(b.out), 0.001);
}

TEST(Cli, NormFromCsvFile) {
  const std::string path = temp_path("f.csv");
  std::ofstream(path) << "s,value\n0.5,2\n1,0\n";
  const auto r = run("norm " + path + " Lp:1");
  EXPECT_EQ(r.code, 0);
  EXPECT_DOUBLE_EQ(std::stod(r.out), 1.0);
}

TEST(Cli, ParseErrorsExitTwo) {
  EXPECT_EQ(run("norm indicator:0.25 'LZ:2,2'").code, 2);
  EXPECT_EQ(run("norm indicator:abc Lp:2").code, 2);
  EXPECT_EQ(run("verify nosuch").code, 2);
  EXPECT_EQ(run("table nosuch").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("--seed xyz verify profile").code, 2);
}

TEST(Cli, VerifyWritesVersionedJson) {
  const std::string path = temp_path("profile.json");
  const auto r = run("verify profile --json " + path);
  EXPECT_NE(r.out.find("iso_limit_at_1e-12"), std::string::npos);
  std::ifstream in(path);
  const auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j["schema"], 1);
  bool iso_pass = false, any_fail = false;
  for (const auto& row : j["rows"]) {
    if (row["check"] == "iso_limit_at_1e-12") iso_pass = row["pass"];
    any_fail = any_fail || !row["pass"].get<bool>();
  }
  EXPECT_TRUE(iso_pass);
  EXPECT_EQ(r.code, any_fail ? 1 : 0);
}

TEST(Cli, VerifyIsDeterministic) {
  const std::string a = temp_path("r1.json"), b = temp_path("r2.json");
  run("verify rearrangement --json " + a);
  run("verify rearrangement --json " + b);
  std::stringstream x, y;
  x << std::ifstream(a).rdbuf();
  y << std::ifstream(b).rdbuf();
  EXPECT_FALSE(x.str().empty());
  EXPECT_EQ(x.str(), y.str());
}

TEST(Cli, ExtremalStanzas) {
  EXPECT_EQ(run("extremal 0.6").code, 2);
  EXPECT_EQ(run("extremal 0").code, 2);
  const auto r = run("extremal 0.125 0.25");
  ASSERT_EQ(r.code, 0);
  const auto first = r.out.find("# delta=0.125"), second = r.out.find("# delta=0.25");
  ASSERT_NE(first, std::string::npos);
  ASSERT_NE(second, std::string::npos);
  EXPECT_LT(first, second);
  // Every row of the first stanza with s < 1/4 sits above the reference level.
  std::istringstream in(r.out.substr(first, second - first));
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  EXPECT_EQ(line, "s,u_star,grad_star,theta_delta");
  int rows = 0;
  while (std::getline(in, line)) {
    double s, u, g, level;
    ASSERT_EQ(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &s, &u, &g, &level), 4);
    if (s < 0.25) EXPECT_GE(u, level * (1.0 - 1e-9)) << line;
    ++rows;
  }
  EXPECT_GT(rows, 100);
}

TEST(Cli, TableLzAndEndpoints) {
  const auto lz = run("table lz");
  ASSERT_EQ(lz.code, 0);
  std::istringstream in(lz.out);
  std::string line;
  bool found = false;
  while (std::getline(in, line))
    if (line.rfind("\"LZ:2,2,0,0\",\"LZ:2,2,1,0\",true,bounded", 0) == 0) found = true;
  EXPECT_TRUE(found) << lz.out;

  const auto ep = run("table endpoints --format json");
  ASSERT_EQ(ep.code, 0);
  const auto j = nlohmann::json::parse(ep.out);
  const auto& last = j["rows"].back();
  EXPECT_EQ(last["domain"], "M:s^0*l^0*ll^0");
  EXPECT_EQ(last["target"], "M:s^0*l^0*ll^-1");  // fundamental function of exp exp L
  EXPECT_TRUE(last["pass"].get<bool>());
}

TEST(Cli, EmbedJson) {
  const auto r = run("embed Lp:2 LZ:2,2,1,0");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["verdict"], "embeds");
  EXPECT_EQ(j["optimal_target"], "LZ:2,2,1,0");
  EXPECT_TRUE(j["conditions"].is_object());
  const auto f = nlohmann::json::parse(run("embed Lp:1 Lp:1").out);
  EXPECT_EQ(f["verdict"], "fails");
  EXPECT_TRUE(f["optimal_target"].is_null());
  EXPECT_EQ(run("embed Lp:2 'LZ:2'").code, 2);
}
