#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"

namespace {

using json = nlohmann::json;

struct CliResult {
  int code = -1;
  std::string out;
};

CliResult run(const std::string &args) {
  const std::string cmd = std::string(TREELABEL_CLI) + " " + args + " 2>/dev/null";
  CliResult r;
  FILE *pipe = popen(cmd.c_str(), "r");
  if (!pipe)
    return r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0)
    r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

// Runs `treelabel first | treelabel second`.
CliResult pipe_run(const std::string &first, const std::string &second) {
  return run(first + " | " + std::string(TREELABEL_CLI) + " " + second);
}

class Cli : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("treelabel-cli-" + std::to_string(::getpid()) + "-" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string write(const std::string &name, const std::string &text) {
    const auto path = dir_ / name;
    std::ofstream(path) << text;
    return path.string();
  }

  std::filesystem::path dir_;
};

} // namespace

TEST_F(Cli, GenPipedIntoCyclicLabel) {
  const CliResult r =
      pipe_run("gen --family regular -m 2 -k 2", "label - --mode cyclic --h 3 --p 1");
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j.at("ell"), 8);
  EXPECT_EQ(j.at("mode"), "cyclic");
  EXPECT_EQ(j.at("labels").size(), 10u);
}

TEST_F(Cli, GenFormat) {
  const CliResult r = run("gen --family mary -m 2 -k 2");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "7\n0 0 1 1 2 2\n");
}

TEST_F(Cli, ValidateAcceptsAndRejects) {
  const std::string tree = write("t.txt", "4\n0 1 2\n");
  const std::string good = write("good.json", R"({"mode":"linear","ell":3,"labels":[2,0,3,1]})");
  const std::string bad = write("bad.json", R"({"mode":"cyclic","ell":4,"labels":[2,0,3,1]})");
  EXPECT_EQ(run("validate " + tree + " " + good + " --h 2 --p 1").code, 0);
  const CliResult r = run("validate " + tree + " " + bad + " --h 2 --p 1");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("\"distance\":1"), std::string::npos) << r.out;
}

TEST_F(Cli, LabelThenValidateElegant) {
  const std::string tree = write("t.txt", "8\n0 1 1 1 2 2 2\n");
  const CliResult lab = run("label " + tree + " --mode linear --h 2 --p 1");
  ASSERT_EQ(lab.code, 0);
  const std::string f = write("f.json", lab.out);
  EXPECT_EQ(run("validate " + tree + " " + f + " --h 2 --p 1 --check-elegant").code, 0);

  json corrupt = json::parse(lab.out);
  corrupt["labels"][1] = corrupt["labels"][0];
  const std::string g = write("g.json", corrupt.dump());
  EXPECT_EQ(run("validate " + tree + " " + g + " --h 2 --p 1").code, 1);
}

TEST_F(Cli, Dot) {
  const std::string tree = write("t.txt", "4\n0 1 2\n");
  const CliResult r = run("label " + tree + " --h 2 --p 1 --dot");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("graph tree {", 0), 0u);
  EXPECT_NE(r.out.find("0 -- 1;"), std::string::npos);
  EXPECT_NE(r.out.find("[label=\"0: "), std::string::npos);
}

TEST_F(Cli, StatsJson) {
  const std::string tree = write("t.txt", "4\n0 1 2\n");
  const CliResult r = run("stats " + tree);
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j.at("n"), 4);
  EXPECT_EQ(j.at("delta"), 2);
  EXPECT_EQ(j.at("delta2"), 4);
  EXPECT_EQ(j.at("diam"), 3);
}

TEST_F(Cli, BoundsJson) {
  const CliResult r = pipe_run("gen -m 2 -k 2", "bounds - --h 2 --p 1");
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j.at("lower"), 5);
  EXPECT_EQ(j.at("upper"), 6);
  const CliResult f = run("bounds --h 3 --p 1 --quantity sigma --family regular -m 2 -k 2");
  ASSERT_EQ(f.code, 0);
  EXPECT_EQ(json::parse(f.out).at("exact"), 8);
}

TEST_F(Cli, Oracle) {
  const CliResult r = pipe_run("gen -m 2 -k 2", "oracle - --h 2 --quantity sigma");
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j.at("value"), 6);
  EXPECT_EQ(j.at("budget_hit"), false);

  const CliResult b = pipe_run("gen -m 3 -k 3", "oracle - --h 3 --budget 1");
  EXPECT_EQ(b.code, 3);
  EXPECT_EQ(json::parse(b.out).at("budget_hit"), true);
}

TEST_F(Cli, UsageAndNotApplicable) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("label").code, 2);
  const std::string tree = write("t.txt", "3\n0 2\n");
  EXPECT_EQ(run("stats " + tree).code, 2);
  const std::string path = write("p.txt", "6\n0 1 2 3 4\n");
  EXPECT_EQ(run("label " + path + " --mode cyclic --h 2 --p 1").code, 2);
}

TEST_F(Cli, VerifyEmpty) {
  const CliResult r = run("verify --criteria \"\" --json");
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j.at("passed"), true);
  EXPECT_TRUE(j.at("rows").empty());
}

TEST_F(Cli, VerifyOneCriterion) {
  const CliResult r = run("verify --criteria 9");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("criterion 9: PASS"), std::string::npos);
}
