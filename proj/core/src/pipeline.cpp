#include "jsp/pipeline.hpp"

#include <algorithm>
#include <ostream>
#include <tuple>

#include "json.hpp"

namespace jsp {

void PipelineConfig::validate() const {
  if (windows < 1) throw std::invalid_argument("window count must be at least 1");
  if (overlap_pct < 0 || overlap_pct > 100)
    throw std::invalid_argument("overlap percentage must lie in 0..100");
}

std::size_t RunResult::interrupted_count() const {
  return static_cast<std::size_t>(
      std::count_if(windows.begin(), windows.end(), [](const WindowStats& w) { return w.interrupted; }));
}

std::set<OperationRef> select_overlap(const Schedule& decided, int overlap_pct) {
  std::set<OperationRef> selected;
  const std::size_t k =
      static_cast<std::size_t>(std::max(overlap_pct, 0)) * decided.size() / 100;
  if (k == 0) return selected;

  std::vector<std::pair<Time, OperationRef>> by_start;
  for (const auto& [ref, start] : decided) by_start.emplace_back(start, ref);
  std::sort(by_start.begin(), by_start.end(), [](const auto& a, const auto& b) {
    return std::tie(a.first, a.second) > std::tie(b.first, b.second);
  });
  for (const auto& [start, ref] : by_start) {
    if (selected.size() == k) break;
    const OperationRef succ{ref.job, ref.step + 1};
    if (decided.covers(succ) && !selected.contains(succ)) continue;
    selected.insert(ref);
  }
  return selected;
}

Schedule compress(const Instance& inst, const Schedule& sched,
                  const std::set<OperationRef>& latest_window) {
  Schedule out = sched;
  std::vector<std::pair<Time, OperationRef>> order;
  for (const auto& ref : latest_window)
    if (auto s = sched.start(ref)) order.emplace_back(*s, ref);
  std::sort(order.begin(), order.end());

  for (const auto& [unused, ref] : order) {
    const Time current = out.at(ref);
    const Operation& op = inst.at(ref);
    Time lo = 0;
    if (ref.step > 1)
      if (auto ps = out.start({ref.job, ref.step - 1}))
        lo = *ps + inst.at({ref.job, ref.step - 1}).processing;

    std::vector<std::pair<Time, Time>> busy;
    for (const auto& [other, start] : out) {
      if (other == ref) continue;
      const Operation& o = inst.at(other);
      if (o.machine == op.machine) busy.emplace_back(start, start + o.processing);
    }
    std::vector<Time> candidates{lo};
    for (const auto& [s, e] : busy)
      if (e > lo && e < current) candidates.push_back(e);
    std::sort(candidates.begin(), candidates.end());

    for (Time t : candidates) {
      if (t >= current) break;
      const bool free = std::none_of(busy.begin(), busy.end(), [&](const auto& iv) {
        return t < iv.second && iv.first < t + op.processing;
      });
      if (free) {
        out.set(ref, t);
        break;
      }
    }
  }
  return out;
}

Schedule merge_fixed(const Instance& inst, const Schedule& fixed, const Schedule& newly) {
  Schedule::Map merged = fixed.starts();
  for (const auto& [ref, start] : newly)
    if (!merged.emplace(ref, start).second)
      throw MergeError("operation " + to_string(ref) + " is covered by both schedules");
  Schedule result(std::move(merged));
  if (auto report = verify_schedule(inst, result); !report.ok())
    throw MergeError("merged schedule is infeasible:\n" + report.describe());
  return result;
}

namespace {

Schedule restrict_to(const Schedule& sched, const std::vector<OperationRef>& refs) {
  Schedule out;
  for (const auto& ref : refs) out.set(ref, sched.at(ref));
  return out;
}

Schedule without(const Schedule& sched, const std::set<OperationRef>& refs) {
  Schedule out = sched;
  for (const auto& ref : refs) out.erase(ref);
  return out;
}

}  // namespace

RunResult run_pipeline(const Instance& inst, const PipelineConfig& cfg, PipelineObserver* observer) {
  cfg.validate();
  if (auto errors = validate_instance(inst); !errors.empty())
    throw std::invalid_argument("invalid instance: " + errors.front());

  RunResult result;
  result.config = cfg;
  const Budget per_window = cfg.per_window_budget();
  const std::size_t total = inst.operation_count();
  const std::size_t width = (total + static_cast<std::size_t>(cfg.windows) - 1) /
                            static_cast<std::size_t>(cfg.windows);

  DecompositionPlan plan;
  if (!cfg.strategy.dynamic()) plan = decompose(inst, cfg.strategy, cfg.windows);

  Schedule committed;
  std::set<OperationRef> overlap;
  for (int w = 1; w <= cfg.windows; ++w) {
    const std::vector<OperationRef> window_ops =
        cfg.strategy.dynamic()
            ? next_window(inst, cfg.strategy, without(committed, overlap), width, overlap)
            : plan.operations_in(w);
    if (window_ops.empty()) continue;

    const SubProblem sp = build_subproblem(inst, window_ops, overlap, committed);
    const SolveResult solved = solve_window(sp, per_window);

    Schedule newly = solved.starts;
    if (cfg.compression) {
      const std::vector<OperationRef> free = sp.free_refs();
      const Schedule merged = merge_fixed(inst, sp.fixed, newly);
      newly = restrict_to(compress(inst, merged, {free.begin(), free.end()}), free);
    }
    committed = merge_fixed(inst, sp.fixed, newly);

    WindowStats stats;
    stats.window = w;
    stats.ops = sp.size();
    stats.overlap = overlap.size();
    stats.makespan = makespan(inst, committed);
    stats.elapsed = solved.elapsed;
    stats.interrupted = solved.status == SolveStatus::feasible_interrupted;
    stats.nodes = solved.nodes;
    result.windows.push_back(stats);

    overlap = w < cfg.windows ? select_overlap(newly, cfg.overlap_pct) : std::set<OperationRef>{};
    if (observer) observer->on_commit(stats, committed, overlap);
  }

  if (committed.size() != total)
    throw std::logic_error("pipeline finished with " + std::to_string(committed.size()) + " of " +
                           std::to_string(total) + " operations scheduled");
  result.makespan = makespan(inst, committed);
  result.schedule = std::move(committed);
  return result;
}

void write_run_json(std::ostream& out, const Instance& inst, const RunResult& result) {
  using nlohmann::json;
  const PipelineConfig& cfg = result.config;
  json budget = json::object();
  if (cfg.total_budget.wall_time) budget["wall_ms"] = cfg.total_budget.wall_time->count();
  if (cfg.total_budget.nodes) budget["nodes"] = *cfg.total_budget.nodes;

  json schedule = json::array();
  for (const auto& [ref, start] : result.schedule) {
    const Operation& op = inst.at(ref);
    schedule.push_back({{"job", ref.job},
                        {"step", ref.step},
                        {"machine", op.machine},
                        {"start", start},
                        {"processing", op.processing}});
  }
  json windows = json::array();
  for (const auto& w : result.windows) {
    windows.push_back({{"window", w.window},
                       {"ops", w.ops},
                       {"overlap", w.overlap},
                       {"makespan", w.makespan},
                       {"elapsed_ms", static_cast<double>(w.elapsed.count()) / 1000.0},
                       {"interrupted", w.interrupted},
                       {"nodes", w.nodes}});
  }
  json doc = {{"config",
               {{"strategy", to_string(cfg.strategy)},
                {"windows", cfg.windows},
                {"overlap_pct", cfg.overlap_pct},
                {"compression", cfg.compression},
                {"budget", budget}}},
              {"makespan", result.makespan},
              {"schedule", schedule},
              {"windows", windows}};
  out << doc.dump(2) << '\n';
}

}  // namespace jsp
