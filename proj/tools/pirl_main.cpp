// Command-line front end: run experiments, summarize results, serve a live
// training session, and train oracle checkpoints.

#include <algorithm>
#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "pirl/error.hpp"
#include "pirl/harness/config.hpp"
#include "pirl/harness/experiment.hpp"
#include "pirl/harness/oracle_training.hpp"
#include "pirl/harness/summary.hpp"
#include "pirl/qnet/checkpoint.hpp"
#include "pirl/session/server.hpp"

namespace fs = std::filesystem;
using namespace pirl;

namespace {

pirl::session::SessionServer* g_server = nullptr;

void on_signal(int) {
  if (g_server) g_server->stop();
}

int cmd_run(const fs::path& config_path, const std::string& out_dir, unsigned jobs) {
  auto configs = harness::load_configs(config_path);
  for (auto& cfg : configs) {
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    harness::ExperimentOptions opts;
    opts.jobs = jobs;
    const auto result = harness::run_experiment(cfg, opts);
    const auto s = harness::summarize(result.table);
    std::printf("%-14s seeds=%zu episodes=%zu mean_reward=%.2f advisor_queries=%llu -> %s\n",
                result.table.run_id.c_str(), s.seeds, s.episodes,
                s.total_reward / static_cast<double>(s.seeds * s.episodes),
                static_cast<unsigned long long>(s.total_advisor_queries),
                result.csv_path ? result.csv_path->string().c_str() : "-");
  }
  return 0;
}

int cmd_summarize(const fs::path& in_dir, double threshold) {
  if (!fs::is_directory(in_dir)) throw IoError("'" + in_dir.string() + "' is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(in_dir))
    if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw IoError("no metrics CSV files in '" + in_dir.string() + "'");

  std::vector<harness::Summary> summaries;
  for (const auto& f : files)
    for (const auto& table : harness::read_csv(f)) summaries.push_back(harness::summarize(table, threshold));

  nlohmann::json out = nlohmann::json::array();
  std::printf("%-16s %-9s %6s %9s %12s %12s %14s\n", "run_id", "agent", "seeds", "episodes", "mean_reward",
              "convergence", "advisor_queries");
  for (const auto& s : summaries) {
    out.push_back(harness::summary_to_json(s));
    std::printf("%-16s %-9s %6zu %9zu %12.2f %12s %14llu\n", s.run_id.c_str(), s.agent_kind.c_str(), s.seeds,
                s.episodes, s.total_reward / static_cast<double>(s.seeds * s.episodes),
                s.convergence_episode ? std::to_string(*s.convergence_episode).c_str() : "-",
                static_cast<unsigned long long>(s.total_advisor_queries));
  }
  std::ofstream(in_dir / "summary.json") << out.dump(2) << '\n';
  std::ofstream(in_dir / "learning_curve.svg") << harness::learning_curve_svg(summaries);
  std::printf("wrote %s and %s\n", (in_dir / "summary.json").string().c_str(),
              (in_dir / "learning_curve.svg").string().c_str());
  return 0;
}

int cmd_serve(session::SessionConfig cfg, const std::string& env_name, const std::string& out_dir) {
  cfg.env = env_name == "homenav" ? env::EnvSpec::homenav_default() : env::EnvSpec::cartpole_default();
  cfg.discretization = persistence::DiscretizationScheme::default_for(cfg.env);
  session::SessionServer server(cfg);
  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::printf("serving %s on ws://%s:%u (frame %d ms); Ctrl-C to stop\n", env_name.c_str(), cfg.address.c_str(),
              server.port(), cfg.frame_ms);
  std::fflush(stdout);
  const auto metrics = server.run();
  g_server = nullptr;
  std::printf("finished %zu episodes, %zu rules, %llu advice messages, %llu rejected\n", metrics.size(),
              server.rules().size(), static_cast<unsigned long long>(server.advice_received()),
              static_cast<unsigned long long>(server.message_errors()));
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    harness::MetricsTable table{"IRL-HUMAN_" + env_name, "IRL-HUMAN", {{cfg.seed, metrics}}};
    harness::write_csv(table, fs::path(out_dir) / (table.run_id + ".csv"));
    server.rules().save(fs::path(out_dir) / (table.run_id + "_seed" + std::to_string(cfg.seed) + "_rules.json"));
  }
  return 0;
}

int cmd_train_oracle(harness::OracleTrainingOptions opts, const std::string& env_name, const fs::path& out) {
  opts.env = env_name == "homenav" ? env::EnvSpec::homenav_default() : env::EnvSpec::cartpole_default();
  const auto result = harness::train_oracle(opts);
  std::printf("best greedy score %.2f after %d episodes (gate %.1f): %s\n", result.score, result.episodes, opts.gate,
              result.passed ? "PASS" : "FAIL");
  if (!out.parent_path().empty()) fs::create_directories(out.parent_path());
  qnet::save_network(result.network, out);
  std::printf("saved %s\n", out.string().c_str());
  return result.passed ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Persistent interactive deep Q-learning experiments"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run the experiments described by a JSON config");
  std::string config_path, run_out;
  unsigned jobs = 1;
  run->add_option("--config", config_path, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
  run->add_option("--out", run_out, "Override the config's out_dir");
  run->add_option("--jobs", jobs, "Seeds to run concurrently")->check(CLI::PositiveNumber);

  auto* summarize = app.add_subcommand("summarize", "Summarize metrics CSVs into JSON and an SVG plot");
  std::string in_dir;
  double threshold = 400.0;
  summarize->add_option("--in", in_dir, "Directory containing metrics CSVs")->required();
  summarize->add_option("--threshold", threshold, "Convergence threshold on the trailing 50-episode mean");

  auto* serve = app.add_subcommand("serve", "Run a live training session for a human advisor console");
  session::SessionConfig scfg;
  std::string env_name = "cartpole", serve_out;
  serve->add_option("--port", scfg.port, "WebSocket port")->capture_default_str();
  serve->add_option("--env", env_name, "Environment")->check(CLI::IsMember({"cartpole", "homenav"}))->capture_default_str();
  serve->add_option("--frame-ms", scfg.frame_ms, "Milliseconds per step")->capture_default_str();
  serve->add_option("--seed", scfg.seed, "Master seed")->capture_default_str();
  serve->add_option("--episodes", scfg.episodes, "Stop after this many episodes (0 = until interrupted)");
  serve->add_option("--address", scfg.address, "Listen address")->capture_default_str();
  serve->add_option("--out", serve_out, "Write metrics CSV and rule snapshot here on exit");

  auto* oracle = app.add_subcommand("train-oracle", "Train and gate a frozen oracle checkpoint");
  harness::OracleTrainingOptions oopts;
  std::string oracle_env = "cartpole", oracle_out;
  oracle->add_option("--env", oracle_env, "Environment")->check(CLI::IsMember({"cartpole", "homenav"}));
  oracle->add_option("--out", oracle_out, "Checkpoint path")->required();
  oracle->add_option("--seed", oopts.seed, "Training seed")->capture_default_str();
  oracle->add_option("--max-episodes", oopts.max_episodes, "Training budget")->capture_default_str();
  oracle->add_option("--gate", oopts.gate, "Required mean greedy reward")->capture_default_str();
  oracle->add_option("--eval-every", oopts.eval_every, "Episodes between evaluations")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(config_path, run_out, jobs);
    if (*summarize) return cmd_summarize(in_dir, threshold);
    if (*serve) return cmd_serve(scfg, env_name, serve_out);
    if (*oracle) return cmd_train_oracle(oopts, oracle_env, oracle_out);
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "invalid configuration: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
