#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "pitman/io.hpp"

using namespace pitman;
using io::json;

namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  const auto dir = fs::temp_directory_path() / ("pitman_io_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()));
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

}  // namespace

TEST(ConfigJson, EmptyObjectGivesDefaults) {
  const auto cfg = io::config_from_json(json::object());
  ASSERT_EQ(cfg.laws.size(), 3u);
  EXPECT_EQ(cfg.laws[2].name, "P3");
  EXPECT_EQ(cfg.sigma, 0.5);
  EXPECT_EQ(cfg.mass, 1.0);
  EXPECT_EQ(cfg.base.mean(), 1.0);
  EXPECT_EQ(cfg.base.variance(), 1.0);
  EXPECT_EQ(cfg.f.kind(), Functional::Kind::IndicatorAbove);
  EXPECT_EQ(cfg.f.a(), 2.0);
  EXPECT_EQ(cfg.sigma_mode, SigmaMode::Fixed);
}

TEST(ConfigJson, ReadsEveryField) {
  const auto j = json::parse(R"({
    "laws": ["P2", {"name": "tri", "kind": "finite", "atoms": [[0, 0.2], [1, 0.3], [2, 0.5]]},
             {"kind": "powerlaw", "alpha": 3}, {"kind": "gaussian", "mean": 0, "var": 4},
             {"name": "mix", "kind": "mixture", "lambda": 0.25,
              "discrete": {"kind": "powerlaw", "alpha": 2}, "continuous": {"kind": "gaussian", "mean": 5, "var": 1}}],
    "sigma": 0.3, "M": 2.5, "G": {"mean": -1, "var": 2},
    "f": {"kind": "interval", "a": 0.5, "b": 3},
    "sample_sizes": [5, 50], "replications": 7, "posterior_draws": 150,
    "level": [0.05, 0.95], "master_seed": 18446744073709551615,
    "sigma_mode": "full_bayes", "output_path": "x.csv", "sigma_grid": 100,
    "epsilon_scale": 0.2, "band_alpha": 0.1, "band_grid": "observed", "sigma_window": [0.3, 0.7], "threads": 3
  })");
  const auto cfg = io::config_from_json(j);
  ASSERT_EQ(cfg.laws.size(), 5u);
  EXPECT_EQ(cfg.laws[0].name, "P2");
  EXPECT_EQ(cfg.laws[1].name, "tri");
  EXPECT_EQ(cfg.laws[2].name, "law2");
  EXPECT_NEAR(integral(cfg.laws[1].law, Functional::identity()), 1.3, 1e-15);
  EXPECT_TRUE(std::holds_alternative<GaussianLaw>(cfg.laws[3].law));
  EXPECT_TRUE(std::holds_alternative<P0Decomposition>(cfg.laws[4].law));
  EXPECT_EQ(cfg.sigma, 0.3);
  EXPECT_EQ(cfg.mass, 2.5);
  EXPECT_EQ(cfg.base.mean(), -1.0);
  EXPECT_EQ(cfg.f.kind(), Functional::Kind::IndicatorInterval);
  EXPECT_EQ(cfg.sample_sizes, (std::vector<std::size_t>{5, 50}));
  EXPECT_EQ(cfg.replications, 7u);
  EXPECT_EQ(cfg.posterior_draws, 150u);
  EXPECT_EQ(cfg.alpha, 0.05);
  EXPECT_EQ(cfg.beta, 0.95);
  EXPECT_EQ(cfg.master_seed, 18446744073709551615ULL);
  EXPECT_EQ(cfg.sigma_mode, SigmaMode::FullBayes);
  EXPECT_EQ(cfg.output_path, "x.csv");
  EXPECT_EQ(cfg.sigma_grid, 100u);
  EXPECT_EQ(cfg.epsilon_scale, 0.2);
  EXPECT_EQ(cfg.band_alpha, 0.1);
  EXPECT_EQ(cfg.band_grid, BandGrid::Observed);
  EXPECT_EQ(cfg.window_lo, 0.3);
  EXPECT_EQ(cfg.window_hi, 0.7);
  EXPECT_EQ(cfg.threads, 3u);
}

TEST(ConfigJson, RoundTrips) {
  auto cfg = io::config_from_json(json::parse(R"({
    "law": {"name": "mix", "kind": "mixture", "lambda": 0.5,
            "discrete": {"kind": "finite", "atoms": [[1, 0.5], [2, 0.5]]},
            "continuous": {"kind": "gaussian", "mean": 0, "var": 1}},
    "f": {"kind": "two_sided", "a": 1.5}, "sigma_mode": "empirical_bayes"})"));
  const json once = io::to_json(cfg);
  const json twice = io::to_json(io::config_from_json(once));
  EXPECT_EQ(once, twice);
  for (const char* kind : {"indicator_above", "two_sided", "identity"}) {
    json f{{"kind", kind}, {"a", 0.25}};
    EXPECT_EQ(io::functional_from_json(f).describe(), io::functional_from_json(io::to_json(io::functional_from_json(f))).describe());
  }
  const auto p3 = standard_law("P3");
  EXPECT_EQ(io::to_json(p3.law), (json{{"kind", "powerlaw"}, {"alpha", 1.5}}));
}

TEST(ConfigJson, ErrorsAreConfigErrors) {
  auto bad = [](const char* text) { return io::config_from_json(json::parse(text)); };
  EXPECT_THROW(bad("[]"), ConfigError);
  EXPECT_THROW(bad(R"({"laws": ["P9"]})"), ConfigError);
  EXPECT_THROW(bad(R"({"laws": [3]})"), ConfigError);
  EXPECT_THROW(bad(R"({"law": {"kind": "cauchy"}})"), ConfigError);
  EXPECT_THROW(bad(R"({"law": {"kind": "powerlaw"}})"), ConfigError);
  EXPECT_THROW(bad(R"({"law": {"kind": "finite", "atoms": [[1, 0.5]]}})"), ConfigError);
  EXPECT_THROW(bad(R"({"sigma": "half"})"), ConfigError);
  EXPECT_THROW(bad(R"({"sigma": 1.2})"), ConfigError);
  EXPECT_THROW(bad(R"({"level": [0.1]})"), ConfigError);
  EXPECT_THROW(bad(R"({"f": {"kind": "sine"}})"), ConfigError);
  EXPECT_THROW(bad(R"({"sigma_mode": "hybrid"})"), ConfigError);
  EXPECT_THROW(bad(R"({"band_grid": "fine"})"), ConfigError);
  EXPECT_THROW(bad(R"({"sample_sizes": [10, -1]})"), ConfigError);
  EXPECT_THROW(bad(R"({"sample_sizes": [10, 2.5]})"), ConfigError);
  EXPECT_THROW(bad(R"({"replications": -3})"), ConfigError);
  EXPECT_THROW(bad(R"({"master_seed": -1})"), ConfigError);
  EXPECT_THROW(bad(R"({"G": {"mean": 0, "var": -1}})"), ConfigError);
  EXPECT_THROW(io::read_config("/nonexistent/config.json"), ConfigError);
  const auto dir = scratch_dir();
  spit(dir / "broken.json", "{ \"sigma\": ");
  EXPECT_THROW(io::read_config((dir / "broken.json").string()), ConfigError);
}

#ifdef PITMAN_CLI_PATH

namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(PITMAN_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Cli, ExitCodes) {
  const auto dir = scratch_dir();
  EXPECT_EQ(run_cli("--help"), 0);
  EXPECT_EQ(run_cli(""), 2);
  EXPECT_EQ(run_cli("no-such-command"), 2);
  EXPECT_EQ(run_cli("--config /nonexistent.json coverage"), 2);
  spit(dir / "bad.json", R"({"replications": 0})");
  EXPECT_EQ(run_cli("--config " + (dir / "bad.json").string() + " coverage"), 2);
  spit(dir / "ties.csv", "x\n1\n1\n2\n");
  EXPECT_EQ(run_cli("fit-sigma --data " + (dir / "ties.csv").string()), 0);
  // a prior draw whose sticks cannot reach the truncation level within the cap
  spit(dir / "heavy.json", R"({"sigma": 0.95, "M": 0})");
  EXPECT_EQ(run_cli("--config " + (dir / "heavy.json").string() + " sample-prior --eps 1e-9"), 3);
}

TEST(Cli, WritesCsvAndSidecar) {
  const auto dir = scratch_dir();
  spit(dir / "cfg.json", R"({"laws": ["P1"], "sample_sizes": [40], "replications": 5, "posterior_draws": 120})");
  const auto out = dir / "cov.csv";
  ASSERT_EQ(run_cli("--config " + (dir / "cfg.json").string() + " --seed 9 --threads 2 --out " + out.string() +
                    " coverage"),
            0);
  const auto csv = slurp(out);
  EXPECT_EQ(csv.substr(0, csv.find(',')), "law");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2);
  const auto side = json::parse(slurp(out.string() + ".json"));
  EXPECT_EQ(side.at("command"), "coverage");
  EXPECT_EQ(side.at("version"), kVersion);
  EXPECT_EQ(side.at("config").at("master_seed"), 9u);
  EXPECT_EQ(side.at("config").at("replications"), 5u);

  const auto fit = dir / "fit.json";
  spit(dir / "ties.csv", "value\n1\n1\n2\n3\n3\n3\n4\n");
  ASSERT_EQ(run_cli("--out " + fit.string() + " fit-sigma --data " + (dir / "ties.csv").string()), 0);
  const auto j = json::parse(slurp(fit));
  EXPECT_EQ(j.at("n"), 7u);
  EXPECT_EQ(j.at("K"), 4u);
  for (const char* key : {"sigma_hat", "boundary", "score_at_hat", "posterior_mean", "posterior_q05", "posterior_q95"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }

  // global flags are also accepted after the subcommand
  const auto late = dir / "late.csv";
  ASSERT_EQ(run_cli("--config " + (dir / "cfg.json").string() + " coverage --seed 9 --threads 2 --out " + late.string()), 0);
  EXPECT_EQ(slurp(late), csv);

  const auto draws = dir / "draws.csv";
  ASSERT_EQ(run_cli("--config " + (dir / "cfg.json").string() + " --out " + draws.string() + " posterior-draws"), 0);
  const auto body = slurp(draws);
  EXPECT_EQ(std::count(body.begin(), body.end(), '\n'), 121);
  fs::remove_all(dir);
}

#endif
