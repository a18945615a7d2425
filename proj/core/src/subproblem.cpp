#include "jsp/solve.hpp"

#include <algorithm>

namespace jsp {

std::vector<OperationRef> SubProblem::free_refs() const {
  std::vector<OperationRef> refs;
  refs.reserve(ops.size());
  for (const auto& op : ops) refs.push_back(op.ref);
  return refs;
}

std::optional<std::size_t> SubProblem::find(OperationRef ref) const {
  auto it = std::lower_bound(ops.begin(), ops.end(), ref,
                             [](const Operation& op, OperationRef r) { return op.ref < r; });
  if (it == ops.end() || it->ref != ref) return std::nullopt;
  return static_cast<std::size_t>(it - ops.begin());
}

Time SubProblem::lower_bound(std::size_t i) const {
  return std::max(pred_completion[i], release[ops[i].machine - 1]);
}

SubProblem build_subproblem(const Instance& inst, const std::vector<OperationRef>& window_ops,
                            const std::set<OperationRef>& overlap_ops, const Schedule& fixed) {
  SubProblem sp;
  sp.fixed = fixed;
  for (const auto& ref : overlap_ops) {
    if (!fixed.covers(ref))
      throw SubProblemError("overlap operation " + to_string(ref) + " is not fixed");
    sp.fixed.erase(ref);
  }

  std::set<OperationRef> free(overlap_ops.begin(), overlap_ops.end());
  for (const auto& ref : window_ops) {
    if (sp.fixed.covers(ref))
      throw SubProblemError("window operation " + to_string(ref) + " is already fixed");
    if (!inst.contains(ref)) throw SubProblemError("unknown operation " + to_string(ref));
    free.insert(ref);
  }
  for (const auto& ref : free) sp.ops.push_back(inst.at(ref));

  sp.release = machine_release(inst, sp.fixed);
  sp.fixed_horizon = sp.fixed.empty() ? 0 : makespan(inst, sp.fixed);

  sp.pred_completion.assign(sp.ops.size(), 0);
  for (std::size_t i = 0; i < sp.ops.size(); ++i) {
    const OperationRef ref = sp.ops[i].ref;
    if (ref.step == 1) continue;
    const OperationRef pred{ref.job, ref.step - 1};
    if (auto j = sp.find(pred)) {
      sp.arcs.push_back({*j, i, sp.ops[*j].processing});
    } else if (auto start = sp.fixed.start(pred)) {
      sp.pred_completion[i] = *start + inst.at(pred).processing;
    } else {
      throw SubProblemError("job predecessor of " + to_string(ref) + " is neither fixed nor free");
    }
  }

  for (std::size_t a = 0; a < sp.ops.size(); ++a)
    for (std::size_t b = a + 1; b < sp.ops.size(); ++b)
      if (sp.ops[a].machine == sp.ops[b].machine && sp.ops[a].ref.job != sp.ops[b].ref.job)
        sp.disjunctions.push_back({a, b});
  return sp;
}

Budget Budget::split(int parts) const {
  if (parts < 1) throw std::invalid_argument("budget split needs at least one part");
  Budget out;
  if (wall_time) out.wall_time = *wall_time / parts;
  if (nodes) out.nodes = *nodes / static_cast<std::uint64_t>(parts);
  return out;
}

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::feasible_interrupted: return "feasible-interrupted";
    case SolveStatus::infeasible_input: return "infeasible-input";
  }
  return "unknown";
}

}  // namespace jsp
