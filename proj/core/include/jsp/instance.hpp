#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace jsp {

using Time = std::int64_t;

/// Identifies the `step`-th operation (1-based) of job `job` (1-based).
struct OperationRef {
  int job = 0;
  int step = 0;

  friend auto operator<=>(const OperationRef&, const OperationRef&) = default;
};

std::string to_string(OperationRef ref);

struct Operation {
  OperationRef ref;
  int machine = 0;
  Time processing = 0;

  friend bool operator==(const Operation&, const Operation&) = default;
};

/// A job-shop instance. Jobs and machines carry dense 1-based identifiers;
/// the identifiers found in the source text are kept in the label vectors
/// for reporting and are not part of equality.
struct Instance {
  std::vector<std::vector<Operation>> jobs;
  int machine_count = 0;

  std::vector<std::string> job_labels;
  std::vector<std::string> machine_labels;

  std::size_t job_count() const { return jobs.size(); }
  std::size_t operation_count() const;

  bool contains(OperationRef ref) const;
  /// Throws std::out_of_range for unknown refs.
  const Operation& at(OperationRef ref) const;

  /// Dense index in job-major, step-minor order. Valid only for validated instances.
  std::size_t index(OperationRef ref) const;
  OperationRef ref_at(std::size_t index) const;

  std::vector<OperationRef> all_operations() const;

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.machine_count == b.machine_count && a.jobs == b.jobs;
  }
};

/// Start times for a subset of an instance's operations.
class Schedule {
 public:
  using Map = std::map<OperationRef, Time>;

  Schedule() = default;
  explicit Schedule(Map starts) : starts_(std::move(starts)) {}

  void set(OperationRef ref, Time start) { starts_[ref] = start; }
  void erase(OperationRef ref) { starts_.erase(ref); }
  bool covers(OperationRef ref) const { return starts_.contains(ref); }
  std::optional<Time> start(OperationRef ref) const;
  Time at(OperationRef ref) const { return starts_.at(ref); }

  std::size_t size() const { return starts_.size(); }
  bool empty() const { return starts_.empty(); }
  const Map& starts() const { return starts_; }
  Map::const_iterator begin() const { return starts_.begin(); }
  Map::const_iterator end() const { return starts_.end(); }

  friend bool operator==(const Schedule&, const Schedule&) = default;

 private:
  Map starts_;
};

enum class ViolationKind { precedence, overlap, negative_start, unknown_operation };

std::string to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::vector<OperationRef> ops;
  std::string message;
};

struct ViolationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::size_t count(ViolationKind kind) const;
  std::string describe() const;
};

/// Returns one message per violated invariant; empty when the instance is valid.
std::vector<std::string> validate_instance(const Instance& inst);

/// Checks start >= 0, job precedence and machine exclusivity among covered operations.
ViolationReport verify_schedule(const Instance& inst, const Schedule& sched);

/// Latest completion time over covered operations. Throws std::invalid_argument
/// for an empty schedule.
Time makespan(const Instance& inst, const Schedule& sched);

/// Completion time of the latest operation on each machine (index machine-1).
std::vector<Time> machine_release(const Instance& inst, const Schedule& sched);

/// Total processing per machine (index machine-1).
std::vector<Time> machine_loads(const Instance& inst);

/// Largest per-job processing sum and largest per-machine load.
Time job_chain_bound(const Instance& inst);
Time machine_load_bound(const Instance& inst);

}  // namespace jsp
