#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace {
struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "gft");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = gft::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

gft::Json json_of(const Result& r) { return gft::Json::parse(r.out); }

std::filesystem::path temp_dir() {
  auto p = std::filesystem::temp_directory_path() / ("gft_cli_test_" + std::to_string(::getpid()));
  std::filesystem::create_directories(p);
  return p;
}
}  // namespace

TEST(Cli, Construct) {
  const auto r = run({"construct", "--n", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json_of(r);
  EXPECT_EQ(j["rn"], 14);
  EXPECT_EQ(j["gs_satisfied"], true);

  const auto csv = run({"construct", "--n", "2", "--format", "csv"});
  ASSERT_EQ(csv.code, 0);
  EXPECT_EQ(std::count(csv.out.begin(), csv.out.end(), '\n'), 2);

  EXPECT_EQ(run({"construct", "--n", "0"}).code, 2);
  EXPECT_EQ(run({"construct", "--n", "300"}).code, 2);
  EXPECT_EQ(run({"construct"}).code, 2);
  EXPECT_EQ(run({"construct", "--n", "x"}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, Deficiency) {
  const auto r = run({"deficiency", "--n", "10", "--variant", "nf"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json_of(r);
  const double delta = j["inequality"]["deficiency"].get<double>();
  EXPECT_GE(delta, 0.0);
  EXPECT_LE(delta, 1.0);
  EXPECT_EQ(j["consistent"], true);
  EXPECT_EQ(j["ihara"]["holds"], true);

  const auto ns = run({"deficiency", "--n", "10", "--no-split"});
  ASSERT_EQ(ns.code, 0);
  EXPECT_GT(json_of(ns)["inequality"]["deficiency"].get<double>(), delta);

  EXPECT_EQ(run({"deficiency", "--n", "5", "--variant", "grh"}).code, 0);
  EXPECT_EQ(run({"deficiency", "--n", "5", "--variant", "ff"}).code, 2);
  EXPECT_EQ(run({"deficiency", "--n", "5", "--variant", "xx"}).code, 2);
  const auto csv = run({"deficiency", "--n", "5", "--format", "csv"});
  EXPECT_EQ(csv.out.substr(0, csv.out.find('\n')), "variant,n,lhs,deficiency,alpha");
}

TEST(Cli, DensityModes) {
  const auto g = run({"density", "--group", "s3", "--subgroup", "(12)"});
  ASSERT_EQ(g.code, 0) << g.err;
  EXPECT_EQ(json_of(g)["split_degree_one"]["value"], "2/3");

  const auto e = run({"density", "--group", "s4", "--element", "(1234)"});
  EXPECT_EQ(json_of(e)["class_density"], "1/4");
  EXPECT_EQ(json_of(run({"density", "--group", "c4"}))["classes"].size(), 4u);

  const auto q = run({"density", "--quad", "105", "--x", "100000"});
  ASSERT_EQ(q.code, 0);
  EXPECT_NEAR(json_of(q)["fraction"].get<double>(), 0.5, 0.05);

  const auto n = run({"density", "--norton", "3,1", "--x", "10,100", "--format", "csv"});
  ASSERT_EQ(n.code, 0);
  EXPECT_EQ(n.out.substr(0, n.out.find('\n')), "x,partial_sum,deviation");

  EXPECT_EQ(run({"density"}).code, 2);
  EXPECT_EQ(run({"density", "--group", "s3", "--quad", "5", "--x", "10"}).code, 2);
  EXPECT_EQ(run({"density", "--group", "zz"}).code, 2);
  EXPECT_EQ(run({"density", "--norton", "3,3", "--x", "100"}).code, 2);
  EXPECT_EQ(run({"density", "--norton", "3,1", "--x", "5"}).code, 2);
}

TEST(Cli, Asymptotics) {
  for (const char* name : {"sn", "sprimen", "epsilon"}) {
    const auto r = run({"asymptotics", "--name", name, "--samples", "10,100"});
    ASSERT_EQ(r.code, 0) << name << r.err;
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "n,computed,asymptote,ratio");
  }
  const auto j = run({"asymptotics", "--name", "sn", "--samples", "10,100", "--format", "json"});
  EXPECT_EQ(json_of(j)["samples"].size(), 2u);
  EXPECT_EQ(run({"asymptotics", "--name", "zeta", "--samples", "10"}).code, 2);
  EXPECT_EQ(run({"asymptotics", "--name", "sn", "--samples", "100,10"}).code, 2);
}

TEST(Cli, AnalyzeTowerFile) {
  const auto dir = temp_dir();
  const auto c = gft::construct_Kn(2);
  const auto t = gft::simulate_classfield_tower(c.field, c.P, 5, 2);
  const auto path = (dir / "tower.json").string();
  std::ofstream(path) << gft::dump_json(gft::to_json(t));
  const auto r = run({"analyze", "--tower", path});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json_of(r);
  EXPECT_EQ(j["consistent"], true);
  EXPECT_TRUE(j["reports"].contains("nf"));
  EXPECT_TRUE(j["reports"].contains("grh-nf"));

  std::ofstream(dir / "bad.json") << "{not json";
  EXPECT_EQ(run({"analyze", "--tower", (dir / "bad.json").string()}).code, 2);
  EXPECT_EQ(run({"analyze", "--tower", (dir / "missing.json").string()}).code, 2);
  std::filesystem::remove_all(dir);
}

TEST(Cli, SeedCatalogAndOutputDir) {
  const auto cat = run({"--seed-catalog"});
  ASSERT_EQ(cat.code, 0);
  EXPECT_EQ(json_of(cat)["groups"]["s4"]["subgroups"], 30);

  const auto dir = temp_dir();
  ::setenv("GFT_OUTPUT_DIR", dir.c_str(), 1);
  ASSERT_EQ(run({"--output", "k3.json", "construct", "--n", "3"}).code, 0);
  ::unsetenv("GFT_OUTPUT_DIR");
  std::ifstream f(dir / "k3.json");
  ASSERT_TRUE(f.good());
  std::stringstream ss;
  ss << f.rdbuf();
  EXPECT_EQ(ss.str(), run({"construct", "--n", "3"}).out);
  std::filesystem::remove_all(dir);
}

TEST(Cli, Deterministic) {
  const std::vector<std::string> args{"deficiency", "--n", "7"};
  EXPECT_EQ(run(args).out, run(args).out);
  EXPECT_EQ(run({"--seed-catalog"}).out, run({"--seed-catalog"}).out);
}
