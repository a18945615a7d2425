#include "jsp/bench.hpp"

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "json.hpp"
#include "jsp/pipeline.hpp"

namespace jsp {

namespace {

// Rejection sampling on top of mt19937_64 so that generated instances do not
// depend on the standard library's distribution implementations.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace

Instance generate_instance(int jobs, int machines, Time p_min, Time p_max, std::uint64_t seed) {
  if (jobs < 1 || machines < 1) throw std::invalid_argument("jobs and machines must be at least 1");
  if (p_min < 1 || p_min > p_max) throw std::invalid_argument("need 1 <= pmin <= pmax");

  std::mt19937_64 rng(seed);
  Instance inst;
  inst.machine_count = machines;
  const auto span = static_cast<std::uint64_t>(p_max - p_min + 1);
  for (int j = 1; j <= jobs; ++j) {
    std::vector<int> route(static_cast<std::size_t>(machines));
    for (int m = 0; m < machines; ++m) route[m] = m + 1;
    for (std::size_t i = route.size(); i > 1; --i)
      std::swap(route[i - 1], route[uniform_below(rng, i)]);
    std::vector<Operation> ops;
    for (int s = 1; s <= machines; ++s)
      ops.push_back({{j, s}, route[s - 1], p_min + static_cast<Time>(uniform_below(rng, span))});
    inst.jobs.push_back(std::move(ops));
  }
  for (int j = 1; j <= jobs; ++j) inst.job_labels.push_back(std::to_string(j));
  for (int m = 1; m <= machines; ++m) inst.machine_labels.push_back(std::to_string(m));
  return inst;
}

void SuiteConfig::validate() const {
  if (instance_paths.empty() && (!generator || generator->count < 1))
    throw std::invalid_argument("suite needs at least one instance path or generated instance");
  validate_parameters();
}

void SuiteConfig::validate_parameters() const {
  if (strategies.empty()) throw std::invalid_argument("suite strategy list is empty");
  if (windows.empty()) throw std::invalid_argument("suite window list is empty");
  if (overlaps.empty()) throw std::invalid_argument("suite overlap list is empty");
  if (compression.empty()) throw std::invalid_argument("suite compression list is empty");
  if (output_format != "csv" && output_format != "json")
    throw std::invalid_argument("unknown report format '" + output_format + "'");
  if (parallel < 1) throw std::invalid_argument("parallel must be at least 1");
}

SuiteConfig parse_suite_config(std::string_view json_text, const std::string& base_dir) {
  using nlohmann::json;
  const json doc = json::parse(json_text);
  SuiteConfig cfg;
  for (const auto& p : doc.value("instances", json::array())) {
    std::filesystem::path path = p.get<std::string>();
    if (path.is_relative() && !base_dir.empty()) path = std::filesystem::path(base_dir) / path;
    cfg.instance_paths.push_back(path.string());
  }
  if (doc.contains("format")) cfg.format = parse_format(doc["format"].get<std::string>());
  if (doc.contains("generate")) {
    const json& g = doc["generate"];
    GeneratorSpec spec;
    spec.jobs = g.at("jobs").get<int>();
    spec.machines = g.at("machines").get<int>();
    spec.p_min = g.value("pmin", Time{1});
    spec.p_max = g.value("pmax", Time{99});
    spec.seed = g.value("seed", std::uint64_t{1});
    spec.count = g.value("count", 1);
    cfg.generator = spec;
  }
  for (const auto& s : doc.value("strategies", json::array()))
    cfg.strategies.push_back(parse_strategy(s.get<std::string>()));
  cfg.windows = doc.value("windows", std::vector<int>{});
  cfg.overlaps = doc.value("overlap", std::vector<int>{0});
  cfg.compression = doc.value("compression", std::vector<bool>{false});
  if (doc.contains("budget")) {
    const json& b = doc["budget"];
    if (b.contains("nodes")) cfg.budget.nodes = b["nodes"].get<std::uint64_t>();
    if (b.contains("ms")) cfg.budget.wall_time = std::chrono::milliseconds(b["ms"].get<long long>());
  }
  cfg.output = doc.value("output", std::string{});
  cfg.output_format = doc.value("output_format", std::string{"csv"});
  cfg.timings = doc.value("timings", true);
  cfg.parallel = doc.value("parallel", 1);
  cfg.validate();
  return cfg;
}

SuiteConfig load_suite_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_suite_config(buffer.str(), std::filesystem::path(path).parent_path().string());
}

std::vector<NamedInstance> suite_instances(const SuiteConfig& cfg) {
  std::vector<NamedInstance> out;
  for (const auto& path : cfg.instance_paths)
    out.push_back({std::filesystem::path(path).filename().string(), load_instance(path, cfg.format)});
  if (cfg.generator) {
    const GeneratorSpec& g = *cfg.generator;
    for (int i = 0; i < g.count; ++i) {
      const std::uint64_t seed = g.seed + static_cast<std::uint64_t>(i);
      out.push_back({"gen-" + std::to_string(g.jobs) + "x" + std::to_string(g.machines) + "-" +
                         std::to_string(seed),
                     generate_instance(g.jobs, g.machines, g.p_min, g.p_max, seed)});
    }
  }
  return out;
}

std::vector<ResultRow> run_suite(const SuiteConfig& cfg) {
  cfg.validate();
  return run_suite(cfg, suite_instances(cfg));
}

std::vector<ResultRow> run_suite(const SuiteConfig& cfg, const std::vector<NamedInstance>& instances) {
  cfg.validate_parameters();
  if (instances.empty()) throw std::invalid_argument("suite has no instances");

  struct Cell {
    const NamedInstance* instance;
    PipelineConfig config;
  };
  std::vector<Cell> cells;
  for (const auto& inst : instances)
    for (const auto& strategy : cfg.strategies)
      for (int n : cfg.windows)
        for (int overlap : cfg.overlaps)
          for (bool compress : cfg.compression)
            cells.push_back({&inst, PipelineConfig{strategy, n, overlap, compress, cfg.budget}});

  std::vector<ResultRow> rows(cells.size());
  auto run_cell = [&](std::size_t i) {
    const Cell& cell = cells[i];
    ResultRow& row = rows[i];
    row.instance = cell.instance->id;
    row.strategy = to_string(cell.config.strategy);
    row.windows = cell.config.windows;
    row.overlap_pct = cell.config.overlap_pct;
    row.compression = cell.config.compression;
    try {
      const auto t0 = std::chrono::steady_clock::now();
      const RunResult run = run_pipeline(cell.instance->instance, cell.config);
      const auto t1 = std::chrono::steady_clock::now();
      if (auto report = verify_schedule(cell.instance->instance, run.schedule); !report.ok())
        throw std::logic_error("infeasible schedule: " + report.describe());
      row.makespan = makespan(cell.instance->instance, run.schedule);
      row.elapsed_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
      row.interrupted = static_cast<int>(run.interrupted_count());
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  };

  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(cfg.parallel), cells.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) run_cell(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) run_cell(i);
      });
    for (auto& t : pool) t.join();
  }
  return rows;
}

std::vector<AggregateRow> aggregate(const std::vector<ResultRow>& rows) {
  std::vector<AggregateRow> groups;
  std::map<std::tuple<std::string, int, int, bool>, std::size_t> index;
  for (const auto& row : rows) {
    if (!row.error.empty()) continue;
    const auto key = std::make_tuple(row.strategy, row.windows, row.overlap_pct, row.compression);
    auto [it, inserted] = index.emplace(key, groups.size());
    if (inserted) groups.push_back({row.strategy, row.windows, row.overlap_pct, row.compression});
    AggregateRow& g = groups[it->second];
    g.makespan += static_cast<double>(row.makespan);
    g.elapsed_ms += row.elapsed_ms;
    g.interrupted += row.interrupted;
    ++g.count;
  }
  for (auto& g : groups) {
    const double n = static_cast<double>(g.count);
    g.makespan /= n;
    g.elapsed_ms /= n;
    g.interrupted /= n;
  }
  return groups;
}

namespace {

std::string fixed3(double v) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(3) << v;
  return out.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
  return quoted + "\"";
}

}  // namespace

void emit_report(std::ostream& out, const std::vector<ResultRow>& rows, std::string_view format,
                 bool timings) {
  if (format != "csv" && format != "json")
    throw std::invalid_argument("unknown report format '" + std::string(format) + "'");
  if (rows.empty()) throw std::invalid_argument("report needs at least one row");
  // A group of one would only repeat its row.
  auto groups = aggregate(rows);
  std::erase_if(groups, [](const AggregateRow& g) { return g.count < 2; });
  const auto elapsed = [&](double ms) { return timings ? ms : 0.0; };

  if (format == "csv") {
    out << "instance,strategy,windows,overlap_pct,compression,makespan,elapsed_ms,interrupted\n";
    for (const auto& r : rows) {
      out << csv_field(r.instance) << ',' << csv_field(r.strategy) << ',' << r.windows << ','
          << r.overlap_pct << ',' << (r.compression ? "true" : "false") << ','
          << (r.error.empty() ? std::to_string(r.makespan) : std::string("NA")) << ','
          << fixed3(elapsed(r.elapsed_ms)) << ',' << r.interrupted << '\n';
    }
    for (const auto& g : groups) {
      out << "aggregate," << csv_field(g.strategy) << ',' << g.windows << ',' << g.overlap_pct << ','
          << (g.compression ? "true" : "false") << ',' << fixed3(g.makespan) << ','
          << fixed3(elapsed(g.elapsed_ms)) << ',' << fixed3(g.interrupted) << '\n';
    }
    return;
  }

  using nlohmann::json;
  json doc = json::array();
  for (const auto& r : rows) {
    json obj = {{"instance", r.instance},
                {"strategy", r.strategy},
                {"windows", r.windows},
                {"overlap_pct", r.overlap_pct},
                {"compression", r.compression},
                {"makespan", r.error.empty() ? json(r.makespan) : json(nullptr)},
                {"elapsed_ms", elapsed(r.elapsed_ms)},
                {"interrupted", r.interrupted}};
    if (!r.error.empty()) obj["error"] = r.error;
    doc.push_back(std::move(obj));
  }
  for (const auto& g : groups) {
    doc.push_back({{"instance", "aggregate"},
                   {"strategy", g.strategy},
                   {"windows", g.windows},
                   {"overlap_pct", g.overlap_pct},
                   {"compression", g.compression},
                   {"makespan", g.makespan},
                   {"elapsed_ms", elapsed(g.elapsed_ms)},
                   {"interrupted", g.interrupted}});
  }
  out << doc.dump(2) << '\n';
}

std::string emit_report(const std::vector<ResultRow>& rows, std::string_view format, bool timings) {
  std::ostringstream out;
  emit_report(out, rows, format, timings);
  return out.str();
}

}  // namespace jsp
