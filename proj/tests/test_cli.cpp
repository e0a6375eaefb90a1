#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(CPZ_CLI) + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(CPZ_DATA_DIR) + "/" + name; }

std::string temp_file(const std::string& name, const std::string& text) {
  const fs::path p = fs::temp_directory_path() / ("cpz_cli_" + std::to_string(::getpid()) + "_" + name);
  std::ofstream(p) << text;
  return p.string();
}

TEST(Cli, CheckConsistent) {
  const auto r = run("check " + data("penguin.defaults"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("CONSISTENT (2 layers)", 0), 0u);
}

TEST(Cli, CheckInconsistent) {
  const auto r = run("check " + data("contradictory.defaults"));
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("INCONSISTENT"), std::string::npos);
}

TEST(Cli, RankOnInconsistentExitsTwo) { EXPECT_EQ(run("rank " + data("contradictory.defaults")).code, 2); }

TEST(Cli, RankStructured) {
  const auto r = run("--format structured rank " + data("penguin.defaults") + " --method kbar");
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["method"], "kbar");
  EXPECT_EQ(j["ranking"].size(), 8u);
  EXPECT_EQ(j["ranking"][7]["world"], "!b p f");
  EXPECT_EQ(j["ranking"][7]["rank"], 3);
}

TEST(Cli, RankMethods) {
  for (const char* m : {"kplus", "kbar", "witness"})
    EXPECT_EQ(run("rank " + data("winged_penguin.defaults") + " --method " + m).code, 0) << m;
  EXPECT_EQ(run("rank " + data("penguin.defaults") + " --method nope").code, 1);
}

TEST(Cli, CpListing) {
  const auto r = run("cp " + data("birds_legs.defaults"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("5 cp-conditions", 0), 0u);
}

TEST(Cli, QueryVerdicts) {
  const std::string db = data("penguin.defaults");
  const auto yes = run("query " + db + " --given 'p & !b' --conclude '!f' --method kbar");
  EXPECT_EQ(yes.code, 0);
  EXPECT_EQ(yes.out.rfind("ENTAILED", 0), 0u);
  const auto no = run("query " + db + " --given 'p & !b' --conclude '!f' --method kplus");
  EXPECT_EQ(no.code, 3);
  EXPECT_EQ(no.out.rfind("NOT-ENTAILED", 0), 0u);
}

TEST(Cli, QueryStructured) {
  const auto r = run("--format structured query " + data("winged_penguin.defaults") + " --given p --conclude w");
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_TRUE(j["entailed"].get<bool>());
  EXPECT_EQ(j["method"], "kbar");
}

TEST(Cli, CompareCountsDivergences) {
  const auto r = run("compare " + data("penguin.defaults") + " " + data("penguin.queries"));
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("2 queries, 1 divergent"), std::string::npos);
  const auto s = run("--format structured compare " + data("winged_penguin.defaults") + " " + data("winged_penguin.queries"));
  ASSERT_EQ(s.code, 0);
  EXPECT_EQ(json::parse(s.out)["queries"].size(), 2u);
  EXPECT_EQ(json::parse(s.out)["divergences"], 2);
}

TEST(Cli, WingedCreaturesTrivialEvidence) {
  const auto r = run("--format structured query " + data("winged_creatures.defaults") + " --given true --conclude w --method kplus");
  EXPECT_EQ(r.code, 0);
  const auto q = temp_file("w.queries", "true |~ w\n");
  const auto c = run("compare " + data("winged_creatures.defaults") + " " + q);
  EXPECT_EQ(c.code, 0);
  EXPECT_NE(c.out.find("kplus: yes  kbar: yes"), std::string::npos);
  fs::remove(q);
}

TEST(Cli, CompareEmptyQueryFile) {
  const auto q = temp_file("empty.queries", "# nothing\n");
  const auto r = run("compare " + data("penguin.defaults") + " " + q);
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "0 queries, 0 divergent\n");
  fs::remove(q);
}

TEST(Cli, UsageAndParseFailures) {
  EXPECT_EQ(run("").code, 1);
  EXPECT_EQ(run("frobnicate").code, 1);
  EXPECT_EQ(run("check /nonexistent/file").code, 1);
  const auto bad = temp_file("bad.defaults", "b -> f\nb f\n");
  EXPECT_EQ(run("check " + bad).code, 1);
  const auto r = run("--format structured check " + bad);
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(json::parse(r.out).contains("error"));
  fs::remove(bad);
  EXPECT_EQ(run("query " + data("penguin.defaults") + " --given 'p &' --conclude f").code, 1);
}

TEST(Cli, CapLimitsVocabulary) {
  EXPECT_EQ(run("--cap 2 check " + data("penguin.defaults")).code, 1);
  EXPECT_EQ(run("--cap 3 check " + data("penguin.defaults")).code, 0);
  EXPECT_EQ(run("--cap 30 check " + data("penguin.defaults")).code, 1);
}

TEST(Cli, EmptyDatabase) {
  const auto r = run("rank " + data("empty.defaults"));
  EXPECT_EQ(r.code, 0);
}

}  // namespace
