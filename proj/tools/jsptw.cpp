// jsptw: time-window decomposition and successive makespan optimization
// for job-shop instances.

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "jsp/bench.hpp"
#include "jsp/decompose.hpp"
#include "jsp/io.hpp"
#include "jsp/pipeline.hpp"

namespace {

jsp::InstanceFormat resolve_format(const std::string& requested, const std::string& path) {
  if (!requested.empty()) return jsp::parse_format(requested);
  if (path.ends_with(".lp") || path.ends_with(".facts")) return jsp::InstanceFormat::facts;
  return jsp::InstanceFormat::taillard;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-window decomposition for job-shop scheduling"};
  app.require_subcommand(1);

  const std::vector<std::string> formats{"taillard", "standard", "facts"};
  const std::vector<std::string> families{"j-est", "j-mtwr", "m-est", "m-mtwr"};

  // solve
  auto* solve = app.add_subcommand("solve", "Decompose, optimize window by window and merge");
  std::string solve_file, solve_format, strategy_name, schedule_out, json_out;
  bool dynamic = false, compression = false;
  int windows = 1, overlap = 0;
  long long budget_ms = -1, budget_nodes = -1;
  solve->add_option("file", solve_file, "Instance file")->required()->check(CLI::ExistingFile);
  solve->add_option("--format", solve_format, "Instance format")->check(CLI::IsMember(formats));
  solve->add_option("--strategy", strategy_name, "Decomposition strategy")
      ->required()
      ->check(CLI::IsMember(families));
  solve->add_flag("--dynamic", dynamic, "Recompute the ranking after every window");
  solve->add_option("--windows", windows, "Number of time windows")->required()->check(CLI::PositiveNumber);
  solve->add_option("--overlap", overlap, "Percentage of each window rescheduled with the next")
      ->check(CLI::Range(0, 100));
  solve->add_flag("--compress", compression, "Left-shift each window into idle machine slots");
  auto* ms_opt = solve->add_option("--budget-ms", budget_ms, "Total wall-time budget")->check(CLI::NonNegativeNumber);
  auto* nodes_opt = solve->add_option("--budget-nodes", budget_nodes, "Total search-node budget")
                        ->check(CLI::NonNegativeNumber);
  ms_opt->excludes(nodes_opt);
  solve->add_option("--out", schedule_out, "Write the schedule as CSV");
  solve->add_option("--json", json_out, "Write the run result as JSON");

  // decompose
  auto* decomp = app.add_subcommand("decompose", "Print the window assignment as window(J,S,W). facts");
  std::string decomp_file, decomp_format, decomp_strategy;
  int decomp_windows = 1;
  decomp->add_option("file", decomp_file, "Instance file")->required()->check(CLI::ExistingFile);
  decomp->add_option("--format", decomp_format, "Instance format")->check(CLI::IsMember(formats));
  decomp->add_option("--strategy", decomp_strategy, "Decomposition strategy")
      ->required()
      ->check(CLI::IsMember(families));
  decomp->add_option("--windows", decomp_windows, "Number of time windows")->required()->check(CLI::PositiveNumber);

  // bench
  auto* bench = app.add_subcommand("bench", "Run a benchmark suite");
  std::string config_path, report_out;
  int parallel = 0;
  bool no_timing = false;
  bench->add_option("--config", config_path, "Suite JSON")->required()->check(CLI::ExistingFile);
  bench->add_option("--parallel", parallel, "Worker threads")->check(CLI::PositiveNumber);
  bench->add_option("--out", report_out, "Report path (stdout if omitted)");
  bench->add_flag("--no-timing", no_timing, "Write 0 for elapsed times so reports are byte-stable");

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  int gen_jobs = 0, gen_machines = 0;
  long long pmin = 1, pmax = 99;
  std::uint64_t seed = 1;
  std::string gen_out, gen_format = "taillard";
  gen->add_option("--jobs", gen_jobs, "Jobs")->required()->check(CLI::PositiveNumber);
  gen->add_option("--machines", gen_machines, "Machines")->required()->check(CLI::PositiveNumber);
  gen->add_option("--pmin", pmin, "Smallest processing time")->required();
  gen->add_option("--pmax", pmax, "Largest processing time")->required();
  gen->add_option("--seed", seed, "Random seed")->required();
  gen->add_option("--out", gen_out, "Output path (stdout if omitted)");
  gen->add_option("--format", gen_format, "Output format")->check(CLI::IsMember(formats));

  // verify
  auto* verify = app.add_subcommand("verify", "Check a schedule CSV against an instance");
  std::string verify_instance, verify_schedule_path, verify_format;
  verify->add_option("instance", verify_instance, "Instance file")->required()->check(CLI::ExistingFile);
  verify->add_option("schedule", verify_schedule_path, "Schedule CSV")->required()->check(CLI::ExistingFile);
  verify->add_option("--format", verify_format, "Instance format")->check(CLI::IsMember(formats));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) {
      const jsp::Instance inst = jsp::load_instance(solve_file, resolve_format(solve_format, solve_file));
      jsp::PipelineConfig cfg;
      cfg.strategy = {jsp::parse_family(strategy_name),
                      dynamic ? jsp::StrategyMode::dynamic_plan : jsp::StrategyMode::static_plan};
      cfg.windows = windows;
      cfg.overlap_pct = overlap;
      cfg.compression = compression;
      if (budget_ms >= 0) cfg.total_budget = jsp::Budget::time_limit(std::chrono::milliseconds(budget_ms));
      if (budget_nodes >= 0) cfg.total_budget = jsp::Budget::node_limit(static_cast<std::uint64_t>(budget_nodes));

      const jsp::RunResult result = jsp::run_pipeline(inst, cfg);
      std::cout << "makespan " << result.makespan << '\n';
      for (const auto& w : result.windows)
        std::cout << "window " << w.window << ": ops " << w.ops << ", makespan " << w.makespan << ", nodes "
                  << w.nodes << ", " << (w.interrupted ? "interrupted" : "optimal") << ", "
                  << static_cast<double>(w.elapsed.count()) / 1000.0 << " ms\n";
      if (!schedule_out.empty()) {
        auto out = open_output(schedule_out);
        jsp::write_schedule_csv(out, inst, result.schedule);
      }
      if (!json_out.empty()) {
        auto out = open_output(json_out);
        jsp::write_run_json(out, inst, result);
      }
      return 0;
    }

    if (*decomp) {
      const jsp::Instance inst = jsp::load_instance(decomp_file, resolve_format(decomp_format, decomp_file));
      const auto plan = jsp::decompose(inst, {jsp::parse_family(decomp_strategy)}, decomp_windows);
      jsp::write_window_facts(std::cout, plan);
      return 0;
    }

    if (*bench) {
      jsp::SuiteConfig cfg = jsp::load_suite_config(config_path);
      if (parallel > 0) cfg.parallel = parallel;
      if (no_timing) cfg.timings = false;
      if (!report_out.empty()) cfg.output = report_out;
      if (cfg.output.ends_with(".json")) cfg.output_format = "json";
      const auto rows = jsp::run_suite(cfg);
      if (cfg.output.empty()) {
        jsp::emit_report(std::cout, rows, cfg.output_format, cfg.timings);
      } else {
        auto out = open_output(cfg.output);
        jsp::emit_report(out, rows, cfg.output_format, cfg.timings);
      }
      int failures = 0;
      for (const auto& r : rows)
        if (!r.error.empty()) {
          std::cerr << r.instance << " " << r.strategy << ": " << r.error << '\n';
          ++failures;
        }
      return failures == 0 ? 0 : 1;
    }

    if (*gen) {
      const jsp::Instance inst = jsp::generate_instance(gen_jobs, gen_machines, pmin, pmax, seed);
      if (gen_out.empty()) {
        jsp::emit_instance(std::cout, inst, jsp::parse_format(gen_format));
      } else {
        auto out = open_output(gen_out);
        jsp::emit_instance(out, inst, jsp::parse_format(gen_format));
      }
      return 0;
    }

    if (*verify) {
      const jsp::Instance inst =
          jsp::load_instance(verify_instance, resolve_format(verify_format, verify_instance));
      std::ifstream in(verify_schedule_path);
      const jsp::Schedule sched = jsp::read_schedule_csv(in);
      const auto report = jsp::verify_schedule(inst, sched);
      if (!report.ok()) {
        std::cout << report.describe();
        std::cout << report.violations.size() << " violation(s)\n";
        return 1;
      }
      std::cout << "feasible: " << sched.size() << " of " << inst.operation_count() << " operations";
      if (!sched.empty()) std::cout << ", makespan " << jsp::makespan(inst, sched);
      std::cout << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
