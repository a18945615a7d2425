#pragma once

// Fixtures and independent oracles shared by the test binaries. Nothing here
// calls into the solver; the oracles recompute everything from scratch.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "jsp/instance.hpp"
#include "jsp/io.hpp"

namespace jsp::testing {

inline constexpr const char* kExampleFacts =
    "operation(1,1,1,3). operation(1,2,2,3). operation(1,3,3,1).\n"
    "operation(2,1,2,4). operation(2,2,1,6). operation(2,3,3,2).\n"
    "operation(3,1,3,9). operation(3,2,1,3). operation(3,3,2,8).\n";

inline Instance example_instance() { return parse_instance(kExampleFacts, InstanceFormat::facts); }

// Optimal schedule with makespan 20.
inline Schedule optimal_schedule() {
  return Schedule({{{1, 1}, 0}, {{3, 2}, 9}, {{2, 2}, 12},
                   {{2, 1}, 0}, {{1, 2}, 4}, {{3, 3}, 12},
                   {{3, 1}, 0}, {{1, 3}, 9}, {{2, 3}, 18}});
}

// Decomposed schedule (two windows) with makespan 21.
inline Schedule decomposed_window1() {
  return Schedule({{{1, 1}, 0}, {{2, 2}, 4}, {{2, 1}, 0}, {{1, 2}, 4}, {{3, 1}, 0}});
}

inline Schedule decomposed_window2() {
  return Schedule({{{3, 2}, 10}, {{3, 3}, 13}, {{2, 3}, 10}, {{1, 3}, 12}});
}

inline Schedule decomposed_schedule() {
  Schedule s = decomposed_window1();
  for (const auto& [ref, t] : decomposed_window2()) s.set(ref, t);
  return s;
}

inline std::set<OperationRef> window2_ops() { return {{1, 3}, {2, 3}, {3, 2}, {3, 3}}; }

// Random instance; when `one_visit` is false jobs may revisit machines.
inline Instance random_instance(std::mt19937_64& rng, int max_jobs, int max_machines, int max_len,
                                Time p_max, bool one_visit) {
  auto pick = [&](int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };
  Instance inst;
  const int jobs = pick(1, max_jobs);
  inst.machine_count = pick(1, max_machines);
  for (int j = 1; j <= jobs; ++j) {
    std::vector<int> route;
    if (one_visit) {
      for (int m = 1; m <= inst.machine_count; ++m) route.push_back(m);
      for (std::size_t i = route.size(); i > 1; --i) std::swap(route[i - 1], route[rng() % i]);
    } else {
      const int len = pick(1, max_len);
      for (int s = 0; s < len; ++s) route.push_back(pick(1, inst.machine_count));
    }
    std::vector<Operation> ops;
    for (std::size_t s = 0; s < route.size(); ++s)
      ops.push_back({{j, static_cast<int>(s + 1)}, route[s], static_cast<Time>(pick(1, static_cast<int>(p_max)))});
    inst.jobs.push_back(std::move(ops));
  }
  // Renumber so that every machine id is in use.
  std::map<int, int> dense;
  for (const auto& job : inst.jobs)
    for (const auto& op : job) dense.emplace(op.machine, 0);
  int next = 0;
  for (auto& [m, d] : dense) d = ++next;
  for (auto& job : inst.jobs)
    for (auto& op : job) op.machine = dense[op.machine];
  inst.machine_count = next;
  return inst;
}

// O(n^2) feasibility scan over all pairs.
inline bool feasible_by_scan(const Instance& inst, const Schedule& s) {
  std::vector<std::pair<OperationRef, Time>> all(s.begin(), s.end());
  for (const auto& [ref, t] : all) {
    if (!inst.contains(ref) || t < 0) return false;
    if (ref.step > 1 && s.covers({ref.job, ref.step - 1}) &&
        s.at({ref.job, ref.step - 1}) + inst.at({ref.job, ref.step - 1}).processing > t)
      return false;
  }
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t k = i + 1; k < all.size(); ++k) {
      const Operation& a = inst.at(all[i].first);
      const Operation& b = inst.at(all[k].first);
      if (a.machine != b.machine) continue;
      const Time a0 = all[i].second, a1 = a0 + a.processing;
      const Time b0 = all[k].second, b1 = b0 + b.processing;
      if (a0 < b1 && b0 < a1) return false;
    }
  return true;
}

// Exact optimum for scheduling `free` on top of the feasible partial schedule
// `fixed`: enumerates every machine sequence of the free operations (all
// permutations per machine) and simulates the semi-active schedule in which
// each free operation waits for its machine's fixed work. Tiny inputs only.
inline Time optimum_by_permutations(const Instance& inst, const Schedule& fixed,
                                    const std::set<OperationRef>& free) {
  std::vector<Time> release(static_cast<std::size_t>(inst.machine_count), 0);
  Time horizon = 0;
  for (const auto& [r, t] : fixed) {
    const Operation& op = inst.at(r);
    release[op.machine - 1] = std::max(release[op.machine - 1], t + op.processing);
    horizon = std::max(horizon, t + op.processing);
  }
  std::vector<std::vector<OperationRef>> per_machine(static_cast<std::size_t>(inst.machine_count));
  for (const auto& r : free) per_machine[inst.at(r).machine - 1].push_back(r);

  Time best = -1;
  auto evaluate = [&]() {
    // Fixed-point relaxation; a cyclic sequence combination never settles.
    std::map<OperationRef, Time> start;
    for (const auto& r : free) start[r] = release[inst.at(r).machine - 1];
    for (std::size_t round = 0; round <= free.size() + 1; ++round) {
      bool changed = false;
      for (const auto& seq : per_machine)
        for (std::size_t k = 0; k < seq.size(); ++k) {
          Time t = start[seq[k]];
          if (k > 0) t = std::max(t, start[seq[k - 1]] + inst.at(seq[k - 1]).processing);
          if (seq[k].step > 1) {
            const OperationRef pred{seq[k].job, seq[k].step - 1};
            const Time pred_start = fixed.covers(pred) ? fixed.at(pred) : start[pred];
            t = std::max(t, pred_start + inst.at(pred).processing);
          }
          if (t != start[seq[k]]) {
            start[seq[k]] = t;
            changed = true;
          }
        }
      if (!changed) {
        Time m = horizon;
        for (const auto& [r, t] : start) m = std::max(m, t + inst.at(r).processing);
        if (best < 0 || m < best) best = m;
        return;
      }
    }
  };
  auto recurse = [&](auto&& self, std::size_t machine) -> void {
    if (machine == per_machine.size()) {
      evaluate();
      return;
    }
    auto& seq = per_machine[machine];
    std::sort(seq.begin(), seq.end());
    do {
      self(self, machine + 1);
    } while (std::next_permutation(seq.begin(), seq.end()));
  };
  recurse(recurse, 0);
  return best;
}

inline Time optimum_by_permutations(const Instance& inst) {
  const auto all = inst.all_operations();
  return optimum_by_permutations(inst, {}, {all.begin(), all.end()});
}

// Random feasible, precedence-closed partial schedule built by a serial
// dispatcher; covers a random number of operations.
inline Schedule random_prefix(const Instance& inst, std::mt19937_64& rng) {
  std::vector<Time> machine_free(static_cast<std::size_t>(inst.machine_count), 0);
  std::vector<int> next(inst.job_count(), 1);
  Schedule s;
  const std::size_t keep = rng() % (inst.operation_count() + 1);
  while (s.size() < keep) {
    const int j = static_cast<int>(rng() % inst.job_count());
    if (static_cast<std::size_t>(next[j]) > inst.jobs[j].size()) continue;
    const OperationRef ref{j + 1, next[j]};
    const Operation& op = inst.at(ref);
    Time t = machine_free[op.machine - 1];
    if (ref.step > 1) t = std::max(t, s.at({ref.job, ref.step - 1}) + inst.at({ref.job, ref.step - 1}).processing);
    s.set(ref, t);
    machine_free[op.machine - 1] = t + op.processing;
    ++next[j];
  }
  return s;
}

// Up to `k` unscheduled operations forming a job-prefix extension of `fixed`.
inline std::vector<OperationRef> random_extension(const Instance& inst, const Schedule& fixed, std::size_t k,
                                                  std::mt19937_64& rng) {
  std::vector<int> next(inst.job_count(), 1);
  for (const auto& [r, t] : fixed) next[r.job - 1] = std::max(next[r.job - 1], r.step + 1);
  std::vector<OperationRef> out;
  for (std::size_t attempts = 0; out.size() < k && attempts < 64 * (k + 1); ++attempts) {
    const int j = static_cast<int>(rng() % inst.job_count());
    if (static_cast<std::size_t>(next[j]) > inst.jobs[j].size()) continue;
    out.push_back({j + 1, next[j]++});
  }
  return out;
}

}  // namespace jsp::testing
