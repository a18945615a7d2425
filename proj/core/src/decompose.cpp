#include "jsp/decompose.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <tuple>

namespace jsp {

StrategyFamily parse_family(std::string_view text) {
  if (text == "j-est") return StrategyFamily::j_est;
  if (text == "j-mtwr") return StrategyFamily::j_mtwr;
  if (text == "m-est") return StrategyFamily::m_est;
  if (text == "m-mtwr") return StrategyFamily::m_mtwr;
  throw std::invalid_argument("unknown strategy '" + std::string(text) + "'");
}

Strategy parse_strategy(std::string_view text) {
  Strategy s;
  const auto colon = text.find(':');
  s.family = parse_family(text.substr(0, colon));
  if (colon != std::string_view::npos) {
    const auto mode = text.substr(colon + 1);
    if (mode == "dynamic")
      s.mode = StrategyMode::dynamic_plan;
    else if (mode != "static")
      throw std::invalid_argument("unknown strategy mode '" + std::string(mode) + "'");
  }
  return s;
}

std::string to_string(StrategyFamily family) {
  switch (family) {
    case StrategyFamily::j_est: return "j-est";
    case StrategyFamily::j_mtwr: return "j-mtwr";
    case StrategyFamily::m_est: return "m-est";
    case StrategyFamily::m_mtwr: return "m-mtwr";
  }
  return "unknown";
}

std::string to_string(const Strategy& strategy) {
  return to_string(strategy.family) + (strategy.dynamic() ? ":dynamic" : "");
}

std::vector<Time> compute_est(const Instance& inst, const Schedule& fixed) {
  const std::vector<Time> release = machine_release(inst, fixed);
  std::vector<Time> est;
  est.reserve(inst.operation_count());
  for (const auto& job : inst.jobs) {
    Time ready = 0;
    for (const Operation& op : job) {
      if (auto start = fixed.start(op.ref)) {
        if (op.ref.step > 1 && !fixed.covers({op.ref.job, op.ref.step - 1}))
          throw std::invalid_argument("fixed schedule covers " + to_string(op.ref) +
                                      " but not its job predecessor");
        est.push_back(*start);
        ready = *start + op.processing;
      } else {
        const Time t = std::max(ready, release[op.machine - 1]);
        est.push_back(t);
        ready = t + op.processing;
      }
    }
  }
  return est;
}

std::vector<Time> compute_mtwr(const Instance& inst) {
  std::vector<Time> mtwr(inst.operation_count(), 0);
  std::size_t offset = 0;
  for (const auto& job : inst.jobs) {
    Time remaining = 0;
    for (std::size_t s = job.size(); s-- > 0;) {
      remaining += job[s].processing;
      mtwr[offset + s] = remaining;
    }
    offset += job.size();
  }
  return mtwr;
}

Measures compute_measures(const Instance& inst, const Schedule& fixed) {
  return {compute_est(inst, fixed), compute_mtwr(inst)};
}

namespace {

struct Ranker {
  const Instance& inst;
  Strategy strategy;
  std::vector<OperationRef> refs;
  std::vector<const Operation*> ops;
  std::vector<Time> est;
  std::vector<Time> mtwr;
  std::vector<std::size_t> job_offset;

  Ranker(const Instance& i, const Strategy& s, const Schedule& fixed)
      : inst(i), strategy(s), refs(i.all_operations()) {
    for (const auto& r : refs) ops.push_back(&inst.at(r));
    est = compute_est(inst, fixed);
    mtwr = compute_mtwr(inst);
    std::size_t offset = 0;
    for (const auto& job : inst.jobs) {
      job_offset.push_back(offset);
      offset += job.size();
    }
  }

  std::size_t index(OperationRef r) const {
    return job_offset[r.job - 1] + static_cast<std::size_t>(r.step - 1);
  }

  // Strict "a ranks before b".
  bool before(std::size_t a, std::size_t b) const {
    const auto tail = [&](std::size_t i) {
      return std::make_tuple(ops[i]->processing, refs[i].job, refs[i].step);
    };
    if (strategy.uses_est()) {
      if (est[a] != est[b]) return est[a] < est[b];
    } else {
      if (mtwr[a] != mtwr[b]) return mtwr[a] > mtwr[b];
    }
    return tail(a) < tail(b);
  }
};

}  // namespace

std::vector<OperationRef> rank_operations(const Instance& inst, const Strategy& strategy,
                                          const Schedule& fixed) {
  return rank_operations(inst, strategy, fixed, nullptr);
}

std::vector<OperationRef> rank_operations(const Instance& inst, const Strategy& strategy,
                                          const Schedule& fixed, RankingObserver* observer) {
  const Schedule no_fixed;
  const Schedule& effective = strategy.dynamic() ? fixed : no_fixed;
  Ranker ranker(inst, strategy, effective);

  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < ranker.refs.size(); ++i)
    if (!effective.covers(ranker.refs[i])) pending.push_back(i);

  std::vector<OperationRef> order;
  order.reserve(pending.size());

  if (!strategy.machine_based()) {
    std::sort(pending.begin(), pending.end(),
              [&](std::size_t a, std::size_t b) { return ranker.before(a, b); });
    for (auto i : pending) order.push_back(ranker.refs[i]);
    return order;
  }

  std::vector<char> unordered(ranker.refs.size(), 0);
  std::vector<Time> load(static_cast<std::size_t>(inst.machine_count), 0);
  for (auto i : pending) {
    unordered[i] = 1;
    load[ranker.ops[i]->machine - 1] += ranker.ops[i]->processing;
  }
  std::size_t remaining = pending.size();

  while (remaining > 0) {
    // Loads are positive exactly for machines with unordered operations.
    int bottleneck = 0;
    for (int m = 1; m <= inst.machine_count; ++m)
      if (load[m - 1] > 0 && (bottleneck == 0 || load[m - 1] > load[bottleneck - 1]))
        bottleneck = m;

    std::size_t pick = ranker.refs.size();
    for (auto i : pending)
      if (unordered[i] && ranker.ops[i]->machine == bottleneck &&
          (pick == ranker.refs.size() || ranker.before(i, pick)))
        pick = i;

    std::vector<OperationRef> appended;
    const OperationRef chosen = ranker.refs[pick];
    for (int s = 1; s <= chosen.step; ++s) {
      const std::size_t i = ranker.index({chosen.job, s});
      if (!unordered[i]) continue;
      unordered[i] = 0;
      --remaining;
      load[ranker.ops[i]->machine - 1] -= ranker.ops[i]->processing;
      appended.push_back(ranker.refs[i]);
    }
    order.insert(order.end(), appended.begin(), appended.end());
    if (observer) observer->on_pick(bottleneck, appended, load);
  }
  return order;
}

int DecompositionPlan::window_of(OperationRef ref) const {
  for (std::size_t i = 0; i < order.size(); ++i)
    if (order[i] == ref) return window[i];
  throw std::out_of_range("operation " + to_string(ref) + " not in plan");
}

std::vector<OperationRef> DecompositionPlan::operations_in(int w) const {
  std::vector<OperationRef> ops;
  for (std::size_t i = 0; i < order.size(); ++i)
    if (window[i] == w) ops.push_back(order[i]);
  return ops;
}

int DecompositionPlan::used_windows() const { return window.empty() ? 0 : window.back(); }

DecompositionPlan assign_windows(std::vector<OperationRef> order, int window_count) {
  if (window_count < 1) throw std::invalid_argument("window count must be at least 1");
  DecompositionPlan plan;
  plan.window_count = window_count;
  const std::size_t n = static_cast<std::size_t>(window_count);
  plan.width = order.empty() ? 0 : (order.size() + n - 1) / n;
  plan.window.reserve(order.size());
  for (std::size_t i = 0; i < order.size(); ++i)
    plan.window.push_back(static_cast<int>(i / plan.width) + 1);
  plan.order = std::move(order);
  return plan;
}

DecompositionPlan decompose(const Instance& inst, const Strategy& strategy, int window_count) {
  return assign_windows(rank_operations(inst, strategy), window_count);
}

std::vector<OperationRef> next_window(const Instance& inst, const Strategy& strategy,
                                      const Schedule& fixed, std::size_t width,
                                      const std::set<OperationRef>& exclude) {
  std::vector<OperationRef> picked;
  for (const auto& ref : rank_operations(inst, strategy, fixed)) {
    if (picked.size() >= width) break;
    if (!exclude.contains(ref)) picked.push_back(ref);
  }
  return picked;
}

void write_window_facts(std::ostream& out, const DecompositionPlan& plan) {
  std::vector<std::pair<OperationRef, int>> rows;
  for (std::size_t i = 0; i < plan.order.size(); ++i) rows.emplace_back(plan.order[i], plan.window[i]);
  std::sort(rows.begin(), rows.end());
  for (const auto& [ref, w] : rows) out << "window(" << ref.job << ',' << ref.step << ',' << w << ").\n";
}

}  // namespace jsp
