// Runs the installed command-line binary end to end.
#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + QPA_CLI_PATH + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int raw = ::pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
  const auto p = std::filesystem::temp_directory_path() / ("qpa_cli_" + std::to_string(::getpid()) + "_" + name);
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST(Cli, HelpAndUsageErrors) {
  EXPECT_EQ(run("--help").status, 0);
  EXPECT_EQ(run("").status, 2);
  EXPECT_EQ(run("frobnicate").status, 2);
  EXPECT_EQ(run("simulate --theta 120").status, 2);
  EXPECT_EQ(run("speed --solution B99").status, 2);
  EXPECT_EQ(run("simulate --format png").status, 2);
}

TEST(Cli, SimulateSwap) {
  const auto r = run("simulate --theta 0 --cells 4 --steps 2");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "1,0,0,0\n0,1,0,0\n0,0,1,0\n");
}

TEST(Cli, VerifyPublishedSet) {
  const auto r = run("verify");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("# solved 25/25"), std::string::npos) << r.out;
}

TEST(Cli, SpeedAndOracle) {
  EXPECT_NE(run("speed --theta 90").out.find("speed 0.000000"), std::string::npos);
  EXPECT_EQ(run("oracle --solution B5").status, 0);
  EXPECT_EQ(run("oracle --cells 5").status, 2);
}

TEST(Cli, ConfigFileAndFlagPrecedence) {
  const auto cfg = write_temp("cfg", "# small run\npop_size = 4\nmax_gen = 1\nmax_steps = 16\nseed = 3\n");
  const auto base = run("search --config " + cfg.string());
  ASSERT_EQ(base.status, 0);
  EXPECT_EQ(std::count(base.out.begin(), base.out.end(), '\n'), 3);
  // A flag overrides the file.
  const auto longer = run("search --config " + cfg.string() + " --max-gen 2");
  EXPECT_EQ(std::count(longer.out.begin(), longer.out.end(), '\n'), 4);
  // The file overrides the environment seed; a flag overrides both.
  EXPECT_EQ(run("search --config " + cfg.string(), "QPA_SEED=99").out, base.out);
  EXPECT_EQ(run("search --config " + cfg.string() + " --seed 3", "QPA_SEED=99").out, base.out);
  const auto bad = write_temp("bad", "pop_size 4\n");
  EXPECT_EQ(run("search --config " + bad.string()).status, 2);
  std::filesystem::remove(cfg);
  std::filesystem::remove(bad);
}

TEST(Cli, SeedFromEnvironment) {
  const std::string args = "search --pop-size 4 --max-gen 1 --max-steps 16";
  const auto seeded = run(args, "QPA_SEED=5");
  EXPECT_EQ(seeded.status, 0);
  EXPECT_EQ(seeded.out, run(args + " --seed 5").out);
  EXPECT_NE(seeded.out, run(args + " --seed 6").out);
}
