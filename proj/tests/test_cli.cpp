#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "softpack/io.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(SOFTPACK_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) r.out += buf.data();
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string demo(const char* name) { return std::string(SOFTPACK_DEMO_DIR) + "/" + name; }

// Value following "key " on its own line.
double field(const std::string& out, const std::string& key) {
  std::istringstream in(out);
  std::string line;
  while (std::getline(in, line))
    if (line.rfind(key + " ", 0) == 0) return std::stod(line.substr(key.size() + 1));
  ADD_FAILURE() << "no field " << key << " in\n" << out;
  return NAN;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path tmp(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("softpack_cli_" + name);
}

const double kPi = std::numbers::pi;

}  // namespace

TEST(Cli, HelpAndUsage) {
  EXPECT_EQ(run("--help").code, 0);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("bounds").code, 2);
  EXPECT_EQ(run("bounds --dim 3 --lambda-min 0.2 --lambda-max 0.1").code, 2);
}

TEST(Cli, Constants) {
  const auto r = run("constants");
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(field(r.out, "phi0"), 0.615479708670387, 1e-12);
  EXPECT_NEAR(field(r.out, "psi0"), 0.0524382707490185, 1e-12);
  EXPECT_NEAR(field(r.out, "lambda_bar_root"), 2.92694951480457, 1e-10);
}

TEST(Cli, BoundsSpatial) {
  const auto r = run("bounds --dim 3 --lambda-min 0 --lambda-max 0.15 --steps 16 --samples 2000 --seed 1");
  ASSERT_EQ(r.code, 0);
  std::istringstream in(r.out);
  std::string line, header;
  int meta = 0, rows = 0;
  std::string first;
  while (std::getline(in, line)) {
    if (line[0] == '#') ++meta;
    else if (header.empty()) header = line;
    else if (++rows == 1) first = line;
  }
  EXPECT_EQ(meta, 3);
  EXPECT_EQ(rows, 16);
  // theorem8 column of the lambda = 0 row.
  std::vector<std::string> h, v;
  for (std::istringstream hs(header); std::getline(hs, line, ',');) h.push_back(line);
  for (std::istringstream vs(first); std::getline(vs, line, ',');) v.push_back(line);
  ASSERT_EQ(h.size(), v.size());
  const auto col = std::find(h.begin(), h.end(), "theorem8") - h.begin();
  ASSERT_LT(static_cast<std::size_t>(col), h.size());
  EXPECT_NEAR(std::stod(v[col]), 0.778425989398369, 1e-11);
}

TEST(Cli, BoundsPlanarAndBeyondPairwise) {
  const auto r = run("bounds --dim 2 --steps 4 --format long");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\ndelta2,2,0.05,"), std::string::npos);
  const auto far = run("bounds --dim 3 --lambda-min 0.2 --lambda-max 0.3 --steps 2 --format long --samples 1000");
  ASSERT_EQ(far.code, 0);
  EXPECT_NE(far.out.find("sigma3,3,0.2,nan,false,"), std::string::npos);
}

TEST(Cli, BoundsReproducibleFiles) {
  const auto a = tmp("b1.csv"), b = tmp("b2.csv");
  const std::string flags = "bounds --dim 3 --steps 3 --samples 5000 --seed 9 --out ";
  ASSERT_EQ(run(flags + a.string()).code, 0);
  ASSERT_EQ(run(flags + b.string()).code, 0);
  // Only the flags line differs (it records --out).
  auto body = [](const std::string& s) { return s.substr(s.find("\nlambda,")); };
  EXPECT_EQ(body(slurp(a)), body(slurp(b)));
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST(Cli, DensityFlower) {
  const auto r = run("density --packing " + demo("flower7.json") + " --lambda 0.05");
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(field(r.out, "measure"), 23.7305012214352, 1e-9);
  EXPECT_NEAR(field(r.out, "density"), 7 * kPi / 23.7305012214352, 1e-10);
  EXPECT_EQ(field(r.out, "contacts"), 12);
  EXPECT_NEAR(field(r.out, "boundary_perim"), 12.0, 1e-9);
}

TEST(Cli, DensitySingleBall) {
  const auto r = run("density --packing " + demo("single3d.json") + " --lambda 0.1");
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(field(r.out, "density"), 1 / 1.331, 1e-10);
}

TEST(Cli, DensityMonteCarlo) {
  const auto r = run("density --packing " + demo("flower7.json") + " --lambda 0.5 --mc 1e6 42");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(field(r.out, "seed"), 42);
  EXPECT_GT(field(r.out, "stderr"), 0.0);
  EXPECT_NE(r.out.find("method monte-carlo"), std::string::npos);
  EXPECT_EQ(run("density --packing " + demo("flower7.json") + " --lambda 0.5 --mc 1e6 42").out, r.out);
}

TEST(Cli, DensityWalkOut) {
  const auto w = tmp("walk.json");
  ASSERT_EQ(run("density --packing " + demo("square4.csv") + " --lambda 0.02 --walk-out " + w.string()).code, 0);
  const auto j = nlohmann::json::parse(slurp(w));
  EXPECT_NEAR(j["perim"].get<double>(), 8.0, 1e-12);
  std::filesystem::remove(w);
}

TEST(Cli, DensityInputErrors) {
  EXPECT_EQ(run("density --packing " + demo("overlap.json") + " --lambda 0.05").code, 3);
  EXPECT_EQ(run("density --packing /nonexistent/p.json --lambda 0.05").code, 3);
  EXPECT_EQ(run("density --packing " + demo("flower7.json") + " --lambda -1").code, 2);
}

TEST(Cli, VerifySuites) {
  const auto c = run("verify --suite constants");
  EXPECT_EQ(c.code, 0);
  EXPECT_NE(c.out.find("all checks passed"), std::string::npos);
  EXPECT_EQ(run("verify --suite gram").code, 0);
  EXPECT_EQ(run("verify --suite nonsense").code, 2);
  // Ten samples cannot resolve the uncovered fraction at 1.25: the check fails.
  const auto f = run("verify --suite covering --samples 10");
  EXPECT_EQ(f.code, 4);
  EXPECT_NE(f.out.find("FAIL bcc not covered"), std::string::npos);
}

TEST(Cli, OptimizeRhombus) {
  const auto out = tmp("opt.json");
  const auto r = run("optimize --n 4 --dim 2 --lambda 0.01 --restarts 8 --seed 3 --out " + out.string());
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(field(r.out, "contacts"), 5);
  const auto j = nlohmann::json::parse(slurp(out));
  EXPECT_EQ(j["contact_count"].get<int>(), 5);
  const auto hist = tmp("opt.history.csv");
  EXPECT_NE(slurp(hist).find("iteration,objective"), std::string::npos);
  std::filesystem::remove(out);
  std::filesystem::remove(hist);
}

TEST(Cli, OptimizePairAndTriangle) {
  const auto pair = run("optimize --n 2 --dim 3 --lambda 0.1 --restarts 2");
  ASSERT_EQ(pair.code, 0);
  const double lb = 1.1;
  const double lens = kPi / 12 * (4 * lb + 2) * (2 * lb - 2) * (2 * lb - 2);
  EXPECT_NEAR(field(pair.out, "objective"), 2 * 4 * kPi / 3 * lb * lb * lb - lens, 1e-9);
  const auto tri = run("optimize --n 3 --dim 2 --lambda 0.05 --restarts 4");
  ASSERT_EQ(tri.code, 0);
  EXPECT_NEAR(field(tri.out, "objective"), 3 * kPi * 1.05 * 1.05 - 3 * softpack::lens_area(1.05, 2.0), 1e-9);
  EXPECT_EQ(run("optimize --n 3 --dim 2 --lambda 0.3").code, 2);
  const auto random = run("optimize --n 4 --dim 2 --lambda 0.01 --restarts 20 --no-lattice-seed --stages 4");
  ASSERT_EQ(random.code, 0);
  EXPECT_EQ(field(random.out, "contacts"), 5);
  EXPECT_EQ(run("optimize --n 4 --dim 2 --lambda 0.01 --stages 0").code, 2);
}

TEST(Cli, Lattice) {
  const auto fcc = run("lattice --kind fcc --check density");
  ASSERT_EQ(fcc.code, 0);
  EXPECT_NEAR(field(fcc.out, "density"), 0.740480489693, 1e-11);
  const auto bcc = run("lattice --kind bcc3d --check covering");
  EXPECT_NEAR(field(bcc.out, "covering_radius"), std::sqrt(5.0 / 3.0), 1e-11);
  const auto hex = run("lattice --kind hexagonal2d --check density");
  EXPECT_NEAR(field(hex.out, "density"), kPi / std::sqrt(12.0), 1e-11);
  const auto mc = run("lattice --kind bcc --check covering-mc --samples 1e5");
  EXPECT_EQ(field(mc.out, "covered_fraction"), 1.0);
  EXPECT_EQ(run("lattice --kind diamond").code, 2);
}

TEST(Cli, SeedFromEnvironment) {
  const std::string cmd = std::string("SOFTPACK_SEED=17 ") + SOFTPACK_CLI_PATH +
                          " density --packing " + demo("flower7.json") + " --lambda 0.5 --mc 1000";
  FILE* pipe = popen(cmd.c_str(), "r");
  ASSERT_NE(pipe, nullptr);
  std::string out;
  std::array<char, 256> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  pclose(pipe);
  EXPECT_EQ(field(out, "seed"), 17);
}
