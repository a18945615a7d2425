#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "jsp/instance.hpp"

namespace jsp {

/// Precedence arc between free operations (indices into SubProblem::ops).
struct Arc {
  std::size_t from;
  std::size_t to;
  Time weight;
};

/// A same-machine pair of free operations from distinct jobs; `first`
/// belongs to the smaller job id.
struct Disjunction {
  std::size_t first;
  std::size_t second;
};

/// One window's scheduling problem: free operations to place, everything
/// earlier frozen in `fixed`.
struct SubProblem {
  std::vector<Operation> ops;  // free operations, sorted by ref
  Schedule fixed;
  std::vector<Arc> arcs;
  std::vector<Disjunction> disjunctions;
  std::vector<Time> release;          // per machine (index machine-1), over `fixed`
  std::vector<Time> pred_completion;  // per free op; 0 if first step or predecessor free
  Time fixed_horizon = 0;             // latest completion in `fixed`

  std::size_t size() const { return ops.size(); }
  std::vector<OperationRef> free_refs() const;
  std::optional<std::size_t> find(OperationRef ref) const;
  /// max(pred_completion, release of the operation's machine)
  Time lower_bound(std::size_t i) const;
};

class SubProblemError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// `overlap_ops` are removed from `fixed` and scheduled again alongside
/// `window_ops`.
SubProblem build_subproblem(const Instance& inst, const std::vector<OperationRef>& window_ops,
                            const std::set<OperationRef>& overlap_ops, const Schedule& fixed);

enum class Direction : std::int8_t { unset = 0, first_before = 1, second_before = -1 };

/// One entry per SubProblem::disjunctions.
using Orientation = std::vector<Direction>;

class CycleError : public std::runtime_error {
 public:
  CycleError() : std::runtime_error("orientation contains a cycle") {}
};

/// Pointwise-smallest start times for a total orientation. Throws CycleError
/// for a cyclic orientation and std::invalid_argument for a partial one.
Schedule earliest_starts(const SubProblem& sp, const Orientation& orientation);

/// Longest path over release times, fixed completions, precedence arcs and
/// the oriented disjunctions; unoriented pairs are ignored. Throws CycleError.
Time critical_path_bound(const SubProblem& sp, const Orientation& partial);

struct Budget {
  std::optional<std::chrono::milliseconds> wall_time;
  std::optional<std::uint64_t> nodes;

  static Budget unlimited() { return {}; }
  static Budget node_limit(std::uint64_t n) { return {std::nullopt, n}; }
  static Budget time_limit(std::chrono::milliseconds ms) { return {ms, std::nullopt}; }

  bool is_unlimited() const { return !wall_time && !nodes; }
  /// Each present limit divided by `parts` (integer division).
  Budget split(int parts) const;
};

enum class SolveStatus { optimal, feasible_interrupted, infeasible_input };

std::string to_string(SolveStatus status);

struct SolveResult {
  Schedule starts;  // over the free operations
  Orientation orientation;
  Time window_makespan = 0;
  SolveStatus status = SolveStatus::feasible_interrupted;
  std::uint64_t nodes = 0;
  std::chrono::microseconds elapsed{0};
};

/// List scheduling: repeatedly start the ready operation with the smallest
/// (earliest feasible start, processing, job, step).
SolveResult greedy_incumbent(const SubProblem& sp);

struct Incumbent {
  std::uint64_t nodes;
  Time makespan;
  std::chrono::microseconds elapsed;
};

struct SolveOptions {
  /// Called on every strictly improving solution, starting with the greedy one.
  std::function<void(const Incumbent&)> on_incumbent;
};

/// Depth-first branch-and-bound over disjunction orientations.
SolveResult solve_window(const SubProblem& sp, const Budget& budget, const SolveOptions& options = {});

/// `incumbent,<nodes>,<makespan>,<ms>`
std::string format_incumbent(const Incumbent& inc);

class BruteForceCapError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exhaustive minimum over all acyclic total orientations.
Time brute_force_optimum(const SubProblem& sp, std::size_t max_disjunctions = 20);

}  // namespace jsp
