#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jsp/decompose.hpp"
#include "jsp/instance.hpp"
#include "jsp/io.hpp"
#include "jsp/solve.hpp"

namespace jsp {

/// Every job visits every machine exactly once, in a seeded random order,
/// with processing times uniform in [p_min, p_max].
Instance generate_instance(int jobs, int machines, Time p_min, Time p_max, std::uint64_t seed);

struct GeneratorSpec {
  int jobs = 0;
  int machines = 0;
  Time p_min = 1;
  Time p_max = 99;
  std::uint64_t seed = 1;
  int count = 1;  // instance i uses seed + i
};

struct SuiteConfig {
  std::vector<std::string> instance_paths;
  InstanceFormat format = InstanceFormat::taillard;
  std::optional<GeneratorSpec> generator;

  std::vector<Strategy> strategies;
  std::vector<int> windows;
  std::vector<int> overlaps;
  std::vector<bool> compression;
  Budget budget;

  std::string output;
  std::string output_format = "csv";
  bool timings = true;  // false writes 0 for elapsed_ms, for byte-stable reports
  int parallel = 1;

  /// Throws std::invalid_argument when no instance source is given or a list is empty.
  void validate() const;
  /// The same checks minus the instance source.
  void validate_parameters() const;
};

/// Reads the JSON suite description; relative instance paths resolve against `base_dir`.
SuiteConfig parse_suite_config(std::string_view json_text, const std::string& base_dir = "");
SuiteConfig load_suite_config(const std::string& path);

struct ResultRow {
  std::string instance;
  std::string strategy;
  int windows = 0;
  int overlap_pct = 0;
  bool compression = false;
  Time makespan = 0;
  double elapsed_ms = 0.0;
  int interrupted = 0;
  std::string error;  // non-empty for failed cells
};

struct AggregateRow {
  std::string strategy;
  int windows = 0;
  int overlap_pct = 0;
  bool compression = false;
  double makespan = 0.0;
  double elapsed_ms = 0.0;
  double interrupted = 0.0;
  std::size_t count = 0;
};

struct NamedInstance {
  std::string id;
  Instance instance;
};

/// Instances named by the config: files first, then generated ones ("gen-<seed>").
std::vector<NamedInstance> suite_instances(const SuiteConfig& cfg);

/// Runs every instance x strategy x windows x overlap x compression cell.
/// Failed cells become rows with `error` set.
std::vector<ResultRow> run_suite(const SuiteConfig& cfg);
std::vector<ResultRow> run_suite(const SuiteConfig& cfg, const std::vector<NamedInstance>& instances);

/// Mean per (strategy, windows, overlap, compression), in first-seen order;
/// failed rows are skipped.
std::vector<AggregateRow> aggregate(const std::vector<ResultRow>& rows);

/// CSV header `instance,strategy,windows,overlap_pct,compression,makespan,elapsed_ms,interrupted`,
/// one line per row, then one `aggregate` line per parameter combination
/// that covers at least two successful rows.
/// JSON is an array of objects with the same keys. Throws on an unknown format.
void emit_report(std::ostream& out, const std::vector<ResultRow>& rows, std::string_view format,
                 bool timings = true);
std::string emit_report(const std::vector<ResultRow>& rows, std::string_view format, bool timings = true);

}  // namespace jsp
