#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(SS_BINARY) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  int st = pclose(pipe);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

fs::path scratch() {
  fs::path dir = fs::temp_directory_path() / ("ss_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST(Cli, ComputeAcyclic) {
  auto r = run("compute --json --input " + std::string(SSEQ_TEST_DATA) + "/acyclic.json --pages 3 --with-maps");
  ASSERT_EQ(r.status, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["pages"]["2"]["0,0"], 1);
  EXPECT_EQ(j["pages"]["2"]["2,-1"], 1);
  EXPECT_TRUE(j["pages"]["3"].empty());
  EXPECT_EQ(j["abutment"]["check"], "pass");
}

TEST(Cli, ModelThenExtDims) {
  auto dir = scratch();
  auto model = dir / "t2.json";
  ASSERT_EQ(run("model torus --n 2 --json --out " + model.string()).status, 0);
  auto r = run("ext-dims --json --model " + model.string());
  ASSERT_EQ(r.status, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["ext_dimensions"], nlohmann::json({1, 4, 6, 4, 1}));
}

TEST(Cli, CertifyFailureExitCode) {
  auto dir = scratch();
  auto model = dir / "t2.json";
  ASSERT_EQ(run("model torus --n 2 --json --out " + model.string()).status, 0);
  auto alpha = dir / "alpha.json";
  write(alpha, R"({"alpha": {"xi1": {"eta1*eta2": "1"}}})");
  auto d2 = dir / "d2.json";
  ASSERT_EQ(run("d2 --json --model " + model.string() + " --alpha " + alpha.string() + " --out " + d2.string()).status, 0);
  auto r = run("certify --json --algebra " + model.string() + " --derivation " + d2.string());
  EXPECT_EQ(r.status, 2);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["verdict"], "failed");
}

TEST(Cli, ErrorsMapToExitCodes) {
  auto dir = scratch();
  auto bad = dir / "bad.json";
  write(bad, "{\"degrees\": [0,");
  EXPECT_EQ(run("compute --json --input " + bad.string()).status, 3);
  auto nonzero = dir / "dd.json";
  write(nonzero, R"({"degrees":[0,2],"dims":[1,1,1],"d":{"0":[["1"]],"1":[["1"]]}})");
  EXPECT_EQ(run("compute --json --input " + nonzero.string()).status, 4);
  EXPECT_EQ(run("compute --json").status, 3);
}

TEST(Cli, FuzzIsDeterministic) {
  auto a = run("fuzz --json --seed 5 --cases 6 --derivation-cases 4 --threads 1");
  auto b = run("fuzz --json --seed 5 --cases 6 --derivation-cases 4 --threads 2");
  ASSERT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(nlohmann::json::parse(a.out)["summary"], "0 counterexamples");
}
