#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mixmobo/acquisition.hpp"
#include "mixmobo/harness.hpp"

namespace {

std::vector<std::string> split_csv(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& csv) {
  std::vector<std::uint64_t> out;
  for (const auto& item : split_csv(csv)) {
    try {
      out.push_back(std::stoull(item));
    } catch (const std::exception&) {
      throw std::invalid_argument("invalid seed: " + item);
    }
  }
  if (out.empty()) throw std::invalid_argument("--seeds: no seeds given");
  return out;
}

std::vector<mixmobo::AcquisitionKind> parse_acq_list(const std::string& csv) {
  std::vector<mixmobo::AcquisitionKind> out;
  for (const auto& item : split_csv(csv)) out.push_back(mixmobo::parse_acquisition(item));
  if (out.empty()) throw std::invalid_argument("--acquisitions: no names given");
  return out;
}

// Accepts inline JSON, a path to a JSON file, or "-" for stdin.
nlohmann::json read_json_arg(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '['))
    return nlohmann::json::parse(arg);
  if (arg == "-") return nlohmann::json::parse(std::cin);
  std::ifstream f(arg);
  if (!f) throw std::invalid_argument("cannot read " + arg);
  return nlohmann::json::parse(f);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MixMOBO: multi-objective Bayesian optimization over mixed-variable spaces"};
  app.require_subcommand(1);

  mixmobo::RunConfig cfg;
  std::string seeds_csv, acq_csv;
  auto* run = app.add_subcommand("run", "Run a benchmark campaign and write CSV results");
  run->add_option("--benchmark", cfg.benchmark,
                  "Benchmark name (contamination, amalgamated, nk, rastrigin, styblinski, zdt6)")
      ->required();
  run->add_option("--budget", cfg.budget, "Total evaluations including initialization");
  run->add_option("--init", cfg.n_init, "Initial uniform samples");
  run->add_option("--q", cfg.batch_size, "Batch size per epoch");
  run->add_option("--seeds", seeds_csv, "Comma-separated replicate seeds (default 1..replicates)");
  run->add_option("--replicates", cfg.replicates, "Replicate count when --seeds is not given");
  run->add_option("--eta", cfg.eta, "Hedge learning rate");
  run->add_option("--acquisitions", acq_csv, "Comma-separated portfolio (default ei,pi,ucb,smc)");
  run->add_option("--noise-var", cfg.noise_variance, "Observation noise variance");
  run->add_option("--out", cfg.out_dir, "Output directory")->envname("MIXMOBO_OUT_DIR");
  run->add_option("--instance-seed", cfg.instance_seed, "Benchmark instance seed");
  run->add_option("--workers", cfg.workers, "Parallel replicate workers");

  std::vector<std::string> report_paths;
  std::string plot_csv;
  auto* report = app.add_subcommand("report", "Summarize one or more campaigns of one benchmark");
  report->add_option("paths", report_paths, "Campaign output directories")->required();
  report->add_option("--plot-csv", plot_csv, "Write long-format plot data to this file");

  auto* session = app.add_subcommand("session", "Stateful ask/tell protocol for external loops");
  session->require_subcommand(1);
  std::string state_path, doc_arg, values_arg;
  auto* s_init = session->add_subcommand("init", "Create a fresh session state file");
  s_init->add_option("--state", state_path, "State file path")->required();
  s_init->add_option("--doc", doc_arg, "JSON {\"space\":..., \"config\":...}; inline, file, or -")
      ->required();
  auto* s_ask = session->add_subcommand("ask", "Propose the next batch of points");
  s_ask->add_option("--state", state_path, "State file path")->required();
  auto* s_tell = session->add_subcommand("tell", "Report observed values for the pending ask");
  s_tell->add_option("--state", state_path, "State file path")->required();
  s_tell->add_option("--values", values_arg, "JSON [[f1..fK] per point]; inline, file, or -")
      ->required();
  auto* s_status = session->add_subcommand("status", "Print session progress");
  s_status->add_option("--state", state_path, "State file path")->required();
  auto* s_result = session->add_subcommand("result", "Print the Pareto set of observations");
  s_result->add_option("--state", state_path, "State file path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (run->parsed()) {
      if (!seeds_csv.empty()) cfg.seeds = parse_seed_list(seeds_csv);
      if (!acq_csv.empty()) cfg.acquisitions = parse_acq_list(acq_csv);
      return mixmobo::cmd_run(cfg, std::cout);
    }
    if (report->parsed()) return mixmobo::cmd_report(report_paths, plot_csv, std::cout);
    if (s_init->parsed())
      return mixmobo::cmd_session_init(state_path, read_json_arg(doc_arg), std::cout);
    if (s_ask->parsed()) return mixmobo::cmd_session_ask(state_path, std::cout);
    if (s_tell->parsed())
      return mixmobo::cmd_session_tell(state_path, read_json_arg(values_arg), std::cout);
    if (s_status->parsed()) return mixmobo::cmd_session_status(state_path, std::cout);
    if (s_result->parsed()) return mixmobo::cmd_session_result(state_path, std::cout);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
