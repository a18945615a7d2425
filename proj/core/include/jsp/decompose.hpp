#pragma once

#include <cstddef>
#include <iosfwd>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "jsp/instance.hpp"

namespace jsp {

enum class StrategyFamily { j_est, j_mtwr, m_est, m_mtwr };
enum class StrategyMode { static_plan, dynamic_plan };

struct Strategy {
  StrategyFamily family = StrategyFamily::j_est;
  StrategyMode mode = StrategyMode::static_plan;

  bool dynamic() const { return mode == StrategyMode::dynamic_plan; }
  bool machine_based() const {
    return family == StrategyFamily::m_est || family == StrategyFamily::m_mtwr;
  }
  bool uses_est() const {
    return family == StrategyFamily::j_est || family == StrategyFamily::m_est;
  }

  friend bool operator==(const Strategy&, const Strategy&) = default;
};

/// Accepts "j-est", "j-mtwr", "m-est", "m-mtwr", optionally suffixed by ":dynamic".
Strategy parse_strategy(std::string_view text);
StrategyFamily parse_family(std::string_view text);
std::string to_string(StrategyFamily family);
std::string to_string(const Strategy& strategy);

/// Per-operation measures, indexed by Instance::index.
struct Measures {
  std::vector<Time> est;
  std::vector<Time> mtwr;
};

/// Earliest starting times. With an empty `fixed` these are job-chain prefix
/// sums; otherwise unscheduled operations also wait for the completion of
/// their (actual or estimated) job predecessor and for the release time of
/// their machine over `fixed`. Fixed operations report their actual start.
/// Throws std::invalid_argument when `fixed` is not precedence-closed.
std::vector<Time> compute_est(const Instance& inst, const Schedule& fixed = {});

/// Suffix sums of processing times along each job.
std::vector<Time> compute_mtwr(const Instance& inst);

Measures compute_measures(const Instance& inst, const Schedule& fixed = {});

/// Total order over the operations not covered by `fixed` (all operations
/// for static strategies, which ignore `fixed`).
std::vector<OperationRef> rank_operations(const Instance& inst, const Strategy& strategy,
                                          const Schedule& fixed = {});

/// Observes the machine-based ranking loop: called after every pick with the
/// bottleneck machine and the remaining load vector (index machine-1).
struct RankingObserver {
  virtual ~RankingObserver() = default;
  virtual void on_pick(int machine, const std::vector<OperationRef>& appended,
                       const std::vector<Time>& remaining_load) = 0;
};

std::vector<OperationRef> rank_operations(const Instance& inst, const Strategy& strategy,
                                          const Schedule& fixed, RankingObserver* observer);

struct DecompositionPlan {
  std::vector<OperationRef> order;
  std::vector<int> window;  // indexed by position in `order`
  std::size_t width = 0;
  int window_count = 0;

  int window_of(OperationRef ref) const;
  std::vector<OperationRef> operations_in(int w) const;
  /// Number of windows that actually received operations.
  int used_windows() const;
};

/// width = ceil(N / n); the operation at index i lands in window i / width + 1.
DecompositionPlan assign_windows(std::vector<OperationRef> order, int window_count);

DecompositionPlan decompose(const Instance& inst, const Strategy& strategy, int window_count);

/// Dynamic window selection: the first `width` operations of the ranking
/// over `fixed`, skipping those in `exclude` (operations carried over as
/// overlap, which are scheduled together with the window anyway).
std::vector<OperationRef> next_window(const Instance& inst, const Strategy& strategy,
                                      const Schedule& fixed, std::size_t width,
                                      const std::set<OperationRef>& exclude = {});

/// `window(J,S,W).` lines in job/step order.
void write_window_facts(std::ostream& out, const DecompositionPlan& plan);

}  // namespace jsp
