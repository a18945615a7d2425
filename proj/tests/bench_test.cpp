#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "jsp/bench.hpp"
#include "jsp/pipeline.hpp"
#include "json.hpp"
#include "support.hpp"

namespace jsp {
namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, sep)) out.push_back(field);
  return out;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) rows.push_back(split(line, ','));
  return rows;
}

SuiteConfig example_suite() {
  SuiteConfig cfg;
  cfg.strategies = {parse_strategy("j-est")};
  cfg.windows = {1, 2};
  cfg.overlaps = {0};
  cfg.compression = {false};
  return cfg;
}

std::vector<NamedInstance> example_named() { return {{"example", testing::example_instance()}}; }

SuiteConfig generated_suite() {
  SuiteConfig cfg;
  cfg.generator = GeneratorSpec{5, 3, 1, 20, 100, 3};
  cfg.strategies = {parse_strategy("j-est"), parse_strategy("m-mtwr:dynamic")};
  cfg.windows = {1, 2};
  cfg.overlaps = {0, 20};
  cfg.compression = {false, true};
  cfg.budget = Budget::node_limit(300);
  cfg.timings = false;
  return cfg;
}

TEST(RunSuite, ExampleRows) {
  const auto rows = run_suite(example_suite(), example_named());
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].windows, 1);
  EXPECT_EQ(rows[0].makespan, 20);
  EXPECT_EQ(rows[1].windows, 2);
  EXPECT_EQ(rows[1].makespan, 21);
  EXPECT_EQ(rows[0].strategy, "j-est");
  EXPECT_TRUE(rows[0].error.empty());
}

TEST(RunSuite, ConfigErrors) {
  EXPECT_THROW(parse_suite_config(R"({"strategies":["j-est"],"windows":[1]})"), std::invalid_argument);
  EXPECT_THROW(parse_suite_config(R"({"instances":["a.txt"],"strategies":[],"windows":[1]})"),
               std::invalid_argument);
  EXPECT_THROW(parse_suite_config(R"({"instances":["a.txt"],"strategies":["j-est"],"windows":[]})"),
               std::invalid_argument);
}

TEST(RunSuite, ZeroNodeBudgetCountsInterrupts) {
  SuiteConfig cfg = example_suite();
  cfg.windows = {1};
  cfg.budget = Budget::node_limit(0);
  const auto rows = run_suite(cfg, example_named());
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].interrupted, 1);
}

TEST(RunSuite, InterruptsMatchPipelineAndMakespanIsVerified) {
  const SuiteConfig cfg = generated_suite();
  const auto instances = suite_instances(cfg);
  ASSERT_EQ(instances.size(), 3u);
  EXPECT_EQ(instances[0].id, "gen-5x3-100");
  const auto rows = run_suite(cfg, instances);
  ASSERT_EQ(rows.size(), 3u * 2 * 2 * 2 * 2);
  std::size_t k = 0;
  for (const auto& inst : instances)
    for (const auto& s : cfg.strategies)
      for (int n : cfg.windows)
        for (int overlap : cfg.overlaps)
          for (bool compression : cfg.compression) {
            const ResultRow& row = rows[k++];
            ASSERT_EQ(row.instance, inst.id);
            ASSERT_EQ(row.strategy, to_string(s));
            PipelineConfig pc{s, n, overlap, compression, cfg.budget};
            const RunResult r = run_pipeline(inst.instance, pc);
            ASSERT_EQ(row.makespan, makespan(inst.instance, r.schedule));
            ASSERT_EQ(static_cast<std::size_t>(row.interrupted), r.interrupted_count());
            ASSERT_LE(row.interrupted, row.windows);
          }
}

TEST(RunSuite, FailedInstanceBecomesErrorRow) {
  Instance broken = testing::example_instance();
  broken.jobs[0][0].processing = 0;
  const auto rows = run_suite(example_suite(), {{"broken", broken}, {"example", testing::example_instance()}});
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_FALSE(rows[0].error.empty());
  EXPECT_TRUE(rows[2].error.empty());
  const std::string csv = emit_report(rows, "csv");
  EXPECT_NE(csv.find("broken,j-est,1,0,false,NA,"), std::string::npos);
}

TEST(EmitReport, OneRowIsTwoLines) {
  ResultRow row{"x", "j-est", 1, 0, false, 42, 1.5, 0, ""};
  EXPECT_EQ(emit_report({row}, "csv"),
            "instance,strategy,windows,overlap_pct,compression,makespan,elapsed_ms,interrupted\n"
            "x,j-est,1,0,false,42,1.500,0\n");
  EXPECT_EQ(emit_report({row}, "csv", false),
            "instance,strategy,windows,overlap_pct,compression,makespan,elapsed_ms,interrupted\n"
            "x,j-est,1,0,false,42,0.000,0\n");
}

TEST(EmitReport, Errors) {
  ResultRow row{"x", "j-est", 1, 0, false, 42, 1.5, 0, ""};
  EXPECT_THROW(emit_report({row}, "xml"), std::invalid_argument);
  EXPECT_THROW(emit_report({}, "csv"), std::invalid_argument);
}

TEST(EmitReport, CsvAndJsonCarryTheSameData) {
  const auto rows = run_suite(generated_suite(), suite_instances(generated_suite()));
  const auto csv = csv_rows(emit_report(rows, "csv"));
  const auto json = nlohmann::json::parse(emit_report(rows, "json"));
  ASSERT_EQ(csv.size(), json.size());
  for (std::size_t i = 0; i < csv.size(); ++i) {
    const auto& c = csv[i];
    const auto& j = json[i];
    ASSERT_EQ(c.size(), 8u);
    EXPECT_EQ(c[0], j["instance"].get<std::string>());
    EXPECT_EQ(c[1], j["strategy"].get<std::string>());
    EXPECT_EQ(std::stoi(c[2]), j["windows"].get<int>());
    EXPECT_EQ(std::stoi(c[3]), j["overlap_pct"].get<int>());
    EXPECT_EQ(c[4] == "true", j["compression"].get<bool>());
    EXPECT_NEAR(std::stod(c[5]), j["makespan"].get<double>(), 5e-4);
    EXPECT_NEAR(std::stod(c[6]), j["elapsed_ms"].get<double>(), 5e-4);
    EXPECT_NEAR(std::stod(c[7]), j["interrupted"].get<double>(), 5e-4);
  }
}

TEST(EmitReport, AggregateLinesAreMeans) {
  const auto rows = run_suite(generated_suite(), suite_instances(generated_suite()));
  const auto csv = csv_rows(emit_report(rows, "csv"));
  std::map<std::string, std::vector<double>> makespans, interrupts;
  std::vector<std::string> order;
  std::map<std::string, std::vector<std::string>> aggregates;
  for (const auto& c : csv) {
    const std::string key = c[1] + "|" + c[2] + "|" + c[3] + "|" + c[4];
    if (c[0] == "aggregate") {
      aggregates[key] = c;
      continue;
    }
    if (!makespans.contains(key)) order.push_back(key);
    makespans[key].push_back(std::stod(c[5]));
    interrupts[key].push_back(std::stod(c[7]));
  }
  ASSERT_EQ(aggregates.size(), order.size());
  for (const auto& key : order) {
    double m = 0, in = 0;
    for (double v : makespans[key]) m += v;
    for (double v : interrupts[key]) in += v;
    m /= static_cast<double>(makespans[key].size());
    in /= static_cast<double>(interrupts[key].size());
    ASSERT_TRUE(aggregates.contains(key)) << key;
    EXPECT_NEAR(std::stod(aggregates[key][5]), m, 5e-4) << key;
    EXPECT_NEAR(std::stod(aggregates[key][7]), in, 5e-4) << key;
  }
  // Aggregates come after every regular row.
  bool seen = false;
  for (const auto& c : csv) {
    if (c[0] == "aggregate") seen = true;
    else ASSERT_FALSE(seen);
  }
}

TEST(RunSuite, DeterministicAndParallelSafe) {
  SuiteConfig cfg = generated_suite();
  const std::string a = emit_report(run_suite(cfg), "csv", false);
  const std::string b = emit_report(run_suite(cfg), "csv", false);
  cfg.parallel = 4;
  const std::string c = emit_report(run_suite(cfg), "csv", false);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
}

TEST(SuiteConfigJson, ParsesEveryKey) {
  const auto cfg = parse_suite_config(R"({
    "instances": ["ta01.txt", "/abs/ta02.txt"],
    "format": "standard",
    "generate": {"jobs": 4, "machines": 2, "pmin": 2, "pmax": 7, "seed": 9, "count": 2},
    "strategies": ["m-est", "j-mtwr:dynamic"],
    "windows": [1, 3],
    "overlap": [0, 20],
    "compression": [false, true],
    "budget": {"nodes": 500},
    "output": "out.csv",
    "output_format": "json",
    "timings": false,
    "parallel": 2
  })",
                                      "base");
  EXPECT_EQ(cfg.instance_paths, (std::vector<std::string>{"base/ta01.txt", "/abs/ta02.txt"}));
  EXPECT_EQ(cfg.format, InstanceFormat::standard);
  ASSERT_TRUE(cfg.generator);
  EXPECT_EQ(cfg.generator->p_max, 7);
  EXPECT_EQ(cfg.generator->count, 2);
  EXPECT_EQ(cfg.strategies[1], (Strategy{StrategyFamily::j_mtwr, StrategyMode::dynamic_plan}));
  EXPECT_EQ(cfg.windows, (std::vector<int>{1, 3}));
  EXPECT_EQ(cfg.overlaps, (std::vector<int>{0, 20}));
  EXPECT_EQ(cfg.compression, (std::vector<bool>{false, true}));
  EXPECT_EQ(*cfg.budget.nodes, 500u);
  EXPECT_FALSE(cfg.budget.wall_time);
  EXPECT_EQ(cfg.output_format, "json");
  EXPECT_FALSE(cfg.timings);
  EXPECT_EQ(cfg.parallel, 2);
}

TEST(SuiteConfigJson, LoadsFilesRelativeToConfig) {
  const auto dir = std::filesystem::temp_directory_path() / "jsptw_bench_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream(dir / "example.lp") << testing::kExampleFacts;
    std::ofstream(dir / "suite.json") << R"({"instances":["example.lp"],"format":"facts",
                                            "strategies":["j-est"],"windows":[1,2]})";
  }
  const SuiteConfig cfg = load_suite_config((dir / "suite.json").string());
  const auto rows = run_suite(cfg);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].instance, "example.lp");
  EXPECT_EQ(rows[0].makespan, 20);
  EXPECT_EQ(rows[1].makespan, 21);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace jsp
