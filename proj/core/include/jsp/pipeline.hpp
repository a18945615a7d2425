#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "jsp/decompose.hpp"
#include "jsp/instance.hpp"
#include "jsp/solve.hpp"

namespace jsp {

struct PipelineConfig {
  Strategy strategy;
  int windows = 1;
  int overlap_pct = 0;
  bool compression = false;
  Budget total_budget;

  /// total_budget split evenly over the windows; the remainder is never used.
  Budget per_window_budget() const { return total_budget.split(windows); }
  /// Throws std::invalid_argument on an out-of-range field.
  void validate() const;
};

struct WindowStats {
  int window = 0;
  std::size_t ops = 0;  // window operations plus carried-over overlap
  std::size_t overlap = 0;
  Time makespan = 0;
  std::chrono::microseconds elapsed{0};
  bool interrupted = false;
  std::uint64_t nodes = 0;
};

struct RunResult {
  Schedule schedule;
  Time makespan = 0;
  std::vector<WindowStats> windows;
  PipelineConfig config;

  std::size_t interrupted_count() const;
};

/// Called after each window commits; lets tests observe intermediate state.
struct PipelineObserver {
  virtual ~PipelineObserver() = default;
  virtual void on_commit(const WindowStats& stats, const Schedule& committed,
                         const std::set<OperationRef>& next_overlap) = 0;
};

RunResult run_pipeline(const Instance& inst, const PipelineConfig& cfg,
                       PipelineObserver* observer = nullptr);

/// floor(pct * |decided| / 100) operations with the latest starts, ties to
/// the larger job id and then the larger step. An operation whose job
/// successor was decided in the same solve qualifies only if that
/// successor is selected as well.
std::set<OperationRef> select_overlap(const Schedule& decided, int overlap_pct);

/// Shifts each operation of `latest_window`, by ascending start, to the
/// earliest machine gap no later than its current start and no earlier than
/// its job predecessor's completion.
Schedule compress(const Instance& inst, const Schedule& sched,
                  const std::set<OperationRef>& latest_window);

class MergeError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Union of two disjoint schedules; throws MergeError if they overlap in
/// coverage or the union is infeasible.
Schedule merge_fixed(const Instance& inst, const Schedule& fixed, const Schedule& newly);

/// JSON with config echo, makespan, schedule rows and per-window stats.
void write_run_json(std::ostream& out, const Instance& inst, const RunResult& result);

}  // namespace jsp
