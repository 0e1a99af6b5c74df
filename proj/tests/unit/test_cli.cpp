#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "levychaos/parallel.hpp"

namespace levychaos::cli {
namespace {

using nlohmann::json;

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run_args(std::vector<std::string> args) {
  std::vector<const char*> argv{"levychaos"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string write(const std::string& name, const std::string& text) {
  const auto dir = std::filesystem::temp_directory_path() / "levychaos_cli_tests";
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream(path) << text;
  return path.string();
}

const char* kExample = R"({
  "triplet": {"gamma": 0.0, "sigma2": 1.0, "nu": {"type": "atomic", "atoms": [[1.0, 2.0]]}},
  "generators": {"one": {"family": "constant", "value": 1.0}},
  "factors": [{"generators": ["one"]}, {"generators": ["one"]}, {"generators": ["one", "one"]}],
  "horizon": 1.0,
  "simulation": {"n_paths": 20000, "n_grid_steps": 64, "seed": 5}
})";

const char* kTimeDependent = R"({
  "triplet": {"sigma2": 0.5, "nu": {"type": "atomic", "atoms": [[1.0, 1.0], [-0.5, 2.0]]}},
  "generators": {
    "h1": {"family": "teugels", "n": 1},
    "h2": {"family": "teugels", "n": 2},
    "mix": {"family": "product", "of": ["h1", "h2"]}
  },
  "factors": [
    {"generators": ["h1", "h2"], "integrand": {"factors": [{"poly": [1.0, 1.0]}, {"poly": [0.0, 2.0]}]}},
    {"generators": ["h1"], "integrand": {"terms": [{"coefficient": 0.5, "factors": [{"poly": [1.0, -1.0]}]}]}},
    {"generators": ["mix"]}
  ],
  "horizon": 2.0
})";

TEST(Cli, MomentPolynomial) {
  const auto r = run_args({"moment", write("example.json", kExample)});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out).at("moment_poly"), json::parse("[0.0, 0.0, 9.0]"));
}

TEST(Cli, StructuralZero) {
  std::string cfg = kExample;
  cfg.replace(cfg.find(R"(["one", "one"])"), 14, R"(["one", "one", "one"])");
  const auto r = run_args({"moment", write("zero.json", cfg)});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(json::parse(r.out).at("moment_poly").empty());
}

TEST(Cli, EvalTimesRoundTrip) {
  const auto path = write("time.json", kTimeDependent);
  const auto poly = run_args({"moment", path});
  ASSERT_EQ(poly.code, 0) << poly.err;
  std::vector<double> c = json::parse(poly.out).at("moment_poly").get<std::vector<double>>();
  const auto vals = run_args({"moment", path, "--eval-times", "0.5,1.25,2"});
  ASSERT_EQ(vals.code, 0) << vals.err;
  for (const auto& row : json::parse(vals.out).at("values")) {
    const double t = row.at("t").get<double>();
    double direct = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) direct = direct * t + c[k];
    EXPECT_EQ(row.at("value").get<double>(), direct);
  }
}

TEST(Cli, CsvOutput) {
  const auto r = run_args({"moment", write("example.json", kExample), "--output", "csv"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "degree,coefficient\n0,0\n1,0\n2,9\n");
}

TEST(Cli, LevyMomentsTouchard) {
  const auto path = write("poisson.json", R"({"triplet": {"nu": {"type": "atomic", "atoms": [[1.0, 2.0]]}}})");
  const auto r = run_args({"levy-moments", path, "--N", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto m = json::parse(r.out).at("moments");
  EXPECT_EQ(m[3].at("poly"), json::parse("[0.0, 2.0, 12.0]"));
  EXPECT_EQ(m[4].at("poly"), json::parse("[0.0, 2.0, 40.0]"));
  const auto raw = run_args({"levy-moments", path, "--N", "2", "--raw"});
  ASSERT_EQ(raw.code, 0) << raw.err;
  EXPECT_FALSE(json::parse(raw.out).at("central").get<bool>());
}

TEST(Cli, Partitions) {
  const auto r = run_args({"partitions", "--m", "1,1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out).at("n_rules"), 3);
  const auto moment = run_args({"partitions", "--m", "1,1,2", "--moment"});
  EXPECT_EQ(json::parse(moment.out).at("rules"), json::parse("[[[2,3],[1,4]],[[1,3],[2,4]]]"));
}

TEST(Cli, ExpandListsTerms) {
  const auto r = run_args({"expand", write("example.json", kExample)});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j.at("terms").size(), j.at("n_terms").get<std::size_t>());
  EXPECT_EQ(j.at("expectation_poly"), json::parse("[0.0, 0.0, 9.0]"));
}

TEST(Cli, SimulateAndCrosscheck) {
  const auto path = write("example.json", kExample);
  const auto sim = run_args({"simulate", path, "--paths", "2000", "--seed", "3"});
  ASSERT_EQ(sim.code, 0) << sim.err;
  const auto s = json::parse(sim.out);
  EXPECT_EQ(s.at("n_paths"), 2000);
  EXPECT_EQ(s.at("formula"), 9.0);

  const auto cross = run_args({"crosscheck", path});
  ASSERT_EQ(cross.code, 0) << cross.err;
  const auto c = json::parse(cross.out);
  EXPECT_TRUE(c.at("pass").get<bool>());
  EXPECT_EQ(c.at("recursive"), 9.0);
}

TEST(Cli, CrosscheckFailureExitCode) {
  // One grid step on time-dependent integrands biases the estimate well past 4 SE.
  const auto path = write("coarse.json", kTimeDependent);
  const auto r = run_args({"crosscheck", path, "--steps", "1", "--paths", "200000", "--t", "2"});
  EXPECT_EQ(r.code, kCrosscheckFailed) << r.out;
  EXPECT_NE(r.err.find("crosscheck failed"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_args({"moment", "/nonexistent/file.json"}).code, kConfigError);
  EXPECT_EQ(run_args({"moment", write("bad.json", "{not json")}).code, kConfigError);

  std::string unknown = kExample;
  unknown.insert(1, R"("colour": "red", )");
  const auto u = run_args({"moment", write("unknown.json", unknown)});
  EXPECT_EQ(u.code, kConfigError);
  EXPECT_NE(u.err.find("colour"), std::string::npos);
  EXPECT_EQ(u.err.find('{'), std::string::npos);

  const auto cap = run_args({"partitions", "--m", "6,6"});
  EXPECT_EQ(cap.code, kCapacityError);

  const auto density = write("density.json", R"({
    "triplet": {"sigma2": 1.0, "nu": {"type": "density", "family": "exponential", "intervals": [[0.1, 5.0]]}},
    "factors": [{"generators": ["c"]}, {"generators": ["c"]}],
    "generators": {"c": {"family": "constant", "value": 1.0}},
    "horizon": 1.0})");
  EXPECT_EQ(run_args({"moment", density}).code, 0);
  EXPECT_EQ(run_args({"simulate", density, "--paths", "10"}).code, kConfigError);
  EXPECT_EQ(run_args({"moment", write("example.json", kExample), "--eval-times", "3"}).code, kConfigError);
  EXPECT_EQ(run_args({"bogus"}).code, kConfigError);
}

TEST(Cli, GeneratorCycleRejected) {
  const auto path = write("cycle.json", R"({
    "triplet": {"sigma2": 1.0},
    "generators": {"a": {"family": "product", "of": ["b"]}, "b": {"family": "restrict_jump", "of": "a"}},
    "factors": [{"generators": ["a"]}],
    "horizon": 1.0})");
  const auto r = run_args({"moment", path});
  EXPECT_EQ(r.code, kConfigError);
  EXPECT_NE(r.err.find("refers to itself"), std::string::npos);
}

TEST(Parallel, ThreadCountResolution) {
  EXPECT_EQ(resolve_thread_count(3), 3u);
  ::setenv(kThreadsEnvVar, "5", 1);
  EXPECT_EQ(resolve_thread_count(0), 5u);
  ::setenv(kThreadsEnvVar, "junk", 1);
  EXPECT_GE(resolve_thread_count(0), 1u);
  ::unsetenv(kThreadsEnvVar);
}

}  // namespace
}  // namespace levychaos::cli
