// Command-line driver for the Pitman-Yor simulation toolkit.
//
//   pitman coverage      --config cfg.json --out coverage.csv
//   pitman fit-sigma     --data sample.csv
//   pitman sample-prior  --count 5 --eps 1e-3
//
// Exit codes: 0 success, 2 configuration error, 3 numeric/domain error.

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "pitman/experiments.hpp"
#include "pitman/io.hpp"
#include "pitman/posterior.hpp"
#include "pitman/py_core.hpp"
#include "pitman/sample_stats.hpp"
#include "pitman/sigma_inference.hpp"

namespace {

using pitman::io::json;

struct Globals {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::string out;
};

pitman::ExperimentConfig load_config(const Globals& g) {
  pitman::ExperimentConfig cfg =
      g.config_path.empty() ? pitman::io::config_from_json(json::object()) : pitman::io::read_config(g.config_path);
  if (g.seed) cfg.master_seed = *g.seed;
  if (g.threads) cfg.threads = *g.threads;
  if (!g.out.empty()) cfg.output_path = g.out;
  return cfg;
}

// Writes the CSV body to the output path (stdout when empty) and the
// resolved config next to it.
void emit(const pitman::ExperimentConfig& cfg, const std::string& command,
          const std::function<void(std::ostream&)>& body, const json& extra = json::object()) {
  if (cfg.output_path.empty()) {
    body(std::cout);
    return;
  }
  {
    std::ofstream out(cfg.output_path, std::ios::binary);
    if (!out) throw pitman::ConfigError("cannot write '" + cfg.output_path + "'");
    body(out);
  }
  json side{{"command", command}, {"version", pitman::kVersion}, {"config", pitman::io::to_json(cfg)}};
  for (const auto& [k, v] : extra.items()) side[k] = v;
  std::ofstream meta(cfg.output_path + ".json", std::ios::binary);
  meta << side.dump(2) << '\n';
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw pitman::ConfigError("cannot write '" + path + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pitman-Yor posterior simulation and coverage experiments"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may also follow the subcommand
  Globals g;
  app.add_option("--config", g.config_path, "JSON experiment config")->check(CLI::ExistingFile);
  app.add_option("--seed", g.seed, "master seed (overrides the config)");
  app.add_option("--threads", g.threads, "worker threads (0 = all cores)");
  app.add_option("--out", g.out, "output CSV path (default: stdout)");

  auto* coverage = app.add_subcommand("coverage", "credible-interval coverage table");
  auto* density = app.add_subcommand("density", "raw posterior draws of Pf, one column per (law, n)");
  auto* band_cov = app.add_subcommand("band-coverage", "coverage of simultaneous CDF bands");
  auto* occupancy = app.add_subcommand("occupancy", "distinct-value counts and bias term");
  auto* sigma_study = app.add_subcommand("sigma-study", "empirical and full Bayes estimation of sigma");

  auto* fit = app.add_subcommand("fit-sigma", "estimate sigma from a one-column CSV sample");
  std::string data_path;
  double fit_mass = 1.0;
  std::size_t fit_grid = 512;
  fit->add_option("--data", data_path, "CSV sample (header optional)")->required()->check(CLI::ExistingFile);
  fit->add_option("-M,--mass", fit_mass, "concentration M");
  fit->add_option("--grid", fit_grid, "grid size of the sigma posterior");

  auto* prior = app.add_subcommand("sample-prior", "stick-breaking draws from PY(sigma, M, G)");
  std::size_t prior_count = 1;
  double prior_eps = 1e-3;
  prior->add_option("--count", prior_count, "number of measures");
  prior->add_option("--eps", prior_eps, "truncation level");

  auto* post = app.add_subcommand("posterior-draws", "posterior draws of Pf for one dataset");
  std::string post_data;
  post->add_option("--data", post_data, "CSV sample; default simulates n = first sample size from the first law")
      ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (fit->parsed()) {
      const auto s = pitman::summarize(pitman::read_dataset_csv(data_path));
      const auto f = pitman::mle_sigma(s, fit_mass);
      const auto sp = pitman::sigma_posterior(s, fit_mass, pitman::uniform_sigma_prior, fit_grid);
      json j{{"n", s.n},
             {"K", s.k()},
             {"sigma_hat", f.sigma_hat},
             {"boundary", pitman::to_string(f.boundary)},
             {"score_at_hat", f.score_at_hat},
             {"posterior_mean", sp.mean()},
             {"posterior_q05", sp.quantile(0.05)},
             {"posterior_q95", sp.quantile(0.95)}};
      write_text(g.out, j.dump(2) + "\n");
      return 0;
    }

    auto cfg = load_config(g);

    if (coverage->parsed()) {
      const auto rows = pitman::run_coverage(cfg);
      emit(cfg, "coverage", [&](std::ostream& o) { pitman::write_csv(o, rows); });
    } else if (density->parsed()) {
      const auto d = pitman::run_density(cfg);
      json meta = json::array();
      for (std::size_t j = 0; j < d.columns.size(); ++j) {
        meta.push_back({{"column", d.columns[j]}, {"true_value", d.truth[j]},
                        {"posterior_mean_exact", d.exact_mean[j]}, {"sigma", d.sigma_used[j]}});
      }
      emit(cfg, "density", [&](std::ostream& o) { pitman::write_csv(o, d); }, {{"columns", meta}});
    } else if (band_cov->parsed()) {
      const auto rows = pitman::run_band_coverage(cfg);
      emit(cfg, "band-coverage", [&](std::ostream& o) { pitman::write_csv(o, rows); });
    } else if (occupancy->parsed()) {
      const auto rows = pitman::run_occupancy(cfg);
      emit(cfg, "occupancy", [&](std::ostream& o) { pitman::write_csv(o, rows); });
    } else if (sigma_study->parsed()) {
      const auto rows = pitman::run_sigma_study(cfg);
      emit(cfg, "sigma-study", [&](std::ostream& o) { pitman::write_csv(o, rows); });
    } else if (prior->parsed()) {
      const pitman::PYParams p(cfg.sigma, cfg.mass, cfg.base);
      emit(cfg, "sample-prior", [&](std::ostream& o) {
        o << "draw,atom,weight\n" << std::setprecision(12);
        for (std::size_t i = 0; i < prior_count; ++i) {
          pitman::Rng rng(pitman::mix_seed(cfg.master_seed, {static_cast<std::uint64_t>(i)}));
          const auto m = pitman::sample_py(p, prior_eps, rng);
          for (std::size_t a = 0; a < m.size(); ++a) o << i << ',' << m.atoms[a] << ',' << m.weights[a] << '\n';
        }
      });
    } else if (post->parsed()) {
      pitman::Rng rng(pitman::replication_seed(cfg, cfg.laws.front(), cfg.sample_sizes.front(), 0));
      const auto s = post_data.empty()
                         ? pitman::summarize(pitman::draw_sample(cfg.laws.front().law, cfg.sample_sizes.front(), rng))
                         : pitman::summarize(pitman::read_dataset_csv(post_data));
      double sigma = cfg.sigma;
      if (cfg.sigma_mode != pitman::SigmaMode::Fixed) {
        sigma = std::min(pitman::mle_sigma(s, cfg.mass).sigma_hat, pitman::kMaxPluginSigma);
      }
      const pitman::FunctionalPosterior fp(cfg.mass, cfg.base, s, cfg.f);
      const double eps = cfg.epsilon(s.n);
      const double b = pitman::bias(sigma, s, cfg.base, cfg.f);
      emit(
          cfg, "posterior-draws",
          [&](std::ostream& o) {
            o << "draw,pf\n" << std::setprecision(12);
            for (std::size_t i = 0; i < cfg.posterior_draws; ++i) o << i << ',' << fp.draw(sigma, eps, rng) << '\n';
          },
          {{"n", s.n}, {"K", s.k()}, {"sigma", sigma}, {"bias", b}});
    }
  } catch (const pitman::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const pitman::DomainError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
