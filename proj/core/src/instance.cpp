#include "jsp/instance.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace jsp {

std::string to_string(OperationRef ref) {
  return "(" + std::to_string(ref.job) + "," + std::to_string(ref.step) + ")";
}

std::size_t Instance::operation_count() const {
  std::size_t n = 0;
  for (const auto& job : jobs) n += job.size();
  return n;
}

bool Instance::contains(OperationRef ref) const {
  return ref.job >= 1 && static_cast<std::size_t>(ref.job) <= jobs.size() && ref.step >= 1 &&
         static_cast<std::size_t>(ref.step) <= jobs[ref.job - 1].size();
}

const Operation& Instance::at(OperationRef ref) const {
  if (!contains(ref)) throw std::out_of_range("unknown operation " + to_string(ref));
  return jobs[ref.job - 1][ref.step - 1];
}

std::size_t Instance::index(OperationRef ref) const {
  if (!contains(ref)) throw std::out_of_range("unknown operation " + to_string(ref));
  std::size_t offset = 0;
  for (int j = 0; j < ref.job - 1; ++j) offset += jobs[j].size();
  return offset + static_cast<std::size_t>(ref.step - 1);
}

OperationRef Instance::ref_at(std::size_t index) const {
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    if (index < jobs[j].size()) return {static_cast<int>(j + 1), static_cast<int>(index + 1)};
    index -= jobs[j].size();
  }
  throw std::out_of_range("operation index out of range");
}

std::vector<OperationRef> Instance::all_operations() const {
  std::vector<OperationRef> refs;
  refs.reserve(operation_count());
  for (std::size_t j = 0; j < jobs.size(); ++j)
    for (std::size_t s = 0; s < jobs[j].size(); ++s)
      refs.push_back({static_cast<int>(j + 1), static_cast<int>(s + 1)});
  return refs;
}

std::optional<Time> Schedule::start(OperationRef ref) const {
  auto it = starts_.find(ref);
  if (it == starts_.end()) return std::nullopt;
  return it->second;
}

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::precedence: return "precedence";
    case ViolationKind::overlap: return "overlap";
    case ViolationKind::negative_start: return "negative-start";
    case ViolationKind::unknown_operation: return "unknown-operation";
  }
  return "unknown";
}

std::size_t ViolationReport::count(ViolationKind kind) const {
  return static_cast<std::size_t>(std::count_if(violations.begin(), violations.end(),
                                                [kind](const Violation& v) { return v.kind == kind; }));
}

std::string ViolationReport::describe() const {
  std::ostringstream out;
  for (const auto& v : violations) {
    out << to_string(v.kind);
    for (const auto& ref : v.ops) out << ' ' << to_string(ref);
    if (!v.message.empty()) out << ": " << v.message;
    out << '\n';
  }
  return out.str();
}

std::vector<std::string> validate_instance(const Instance& inst) {
  std::vector<std::string> errors;
  if (inst.machine_count < 1) errors.push_back("machine set is empty");
  for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
    const auto& job = inst.jobs[j];
    const int job_id = static_cast<int>(j + 1);
    if (job.empty()) errors.push_back("job " + std::to_string(job_id) + " has no operations");
    for (std::size_t s = 0; s < job.size(); ++s) {
      const Operation& op = job[s];
      const std::string where = to_string(op.ref);
      if (op.ref.job != job_id)
        errors.push_back("operation " + where + " listed under job " + std::to_string(job_id));
      if (op.ref.step != static_cast<int>(s + 1)) {
        if (s > 0 && op.ref.step == job[s - 1].ref.step)
          errors.push_back("duplicate step " + where);
        else
          errors.push_back("non-consecutive steps at " + where);
      }
      if (op.processing < 1) errors.push_back("non-positive processing at " + where);
      if (op.machine < 1 || op.machine > inst.machine_count)
        errors.push_back("unknown machine " + std::to_string(op.machine) + " at " + where);
    }
  }
  return errors;
}

namespace {

struct Placed {
  OperationRef ref;
  Time start;
  Time end;
};

}  // namespace

ViolationReport verify_schedule(const Instance& inst, const Schedule& sched) {
  ViolationReport report;
  std::vector<std::vector<Placed>> by_machine(static_cast<std::size_t>(std::max(inst.machine_count, 0)));

  for (const auto& [ref, start] : sched) {
    if (!inst.contains(ref)) {
      report.violations.push_back({ViolationKind::unknown_operation, {ref}, "not in instance"});
      continue;
    }
    const Operation& op = inst.at(ref);
    if (start < 0)
      report.violations.push_back(
          {ViolationKind::negative_start, {ref}, "start " + std::to_string(start)});
    if (ref.step > 1) {
      const OperationRef pred{ref.job, ref.step - 1};
      if (auto pred_start = sched.start(pred)) {
        const Time done = *pred_start + inst.at(pred).processing;
        if (done > start)
          report.violations.push_back({ViolationKind::precedence,
                                       {pred, ref},
                                       "predecessor completes at " + std::to_string(done) +
                                           ", successor starts at " + std::to_string(start)});
      }
    }
    if (op.machine >= 1 && op.machine <= inst.machine_count)
      by_machine[op.machine - 1].push_back({ref, start, start + op.processing});
  }

  for (auto& placed : by_machine) {
    std::sort(placed.begin(), placed.end(), [](const Placed& a, const Placed& b) {
      return std::tie(a.start, a.ref) < std::tie(b.start, b.ref);
    });
    for (std::size_t i = 0; i < placed.size(); ++i) {
      for (std::size_t k = i + 1; k < placed.size() && placed[k].start < placed[i].end; ++k) {
        report.violations.push_back(
            {ViolationKind::overlap,
             {placed[i].ref, placed[k].ref},
             "[" + std::to_string(placed[i].start) + "," + std::to_string(placed[i].end) +
                 ") intersects [" + std::to_string(placed[k].start) + "," +
                 std::to_string(placed[k].end) + ")"});
      }
    }
  }
  return report;
}

Time makespan(const Instance& inst, const Schedule& sched) {
  if (sched.empty()) throw std::invalid_argument("makespan of an empty schedule");
  Time latest = 0;
  for (const auto& [ref, start] : sched) latest = std::max(latest, start + inst.at(ref).processing);
  return latest;
}

std::vector<Time> machine_release(const Instance& inst, const Schedule& sched) {
  std::vector<Time> release(static_cast<std::size_t>(inst.machine_count), 0);
  for (const auto& [ref, start] : sched) {
    const Operation& op = inst.at(ref);
    release[op.machine - 1] = std::max(release[op.machine - 1], start + op.processing);
  }
  return release;
}

Time job_chain_bound(const Instance& inst) {
  Time best = 0;
  for (const auto& job : inst.jobs) {
    Time sum = 0;
    for (const auto& op : job) sum += op.processing;
    best = std::max(best, sum);
  }
  return best;
}

std::vector<Time> machine_loads(const Instance& inst) {
  std::vector<Time> load(static_cast<std::size_t>(inst.machine_count), 0);
  for (const auto& job : inst.jobs)
    for (const auto& op : job) load[op.machine - 1] += op.processing;
  return load;
}

Time machine_load_bound(const Instance& inst) {
  const auto load = machine_loads(inst);
  return load.empty() ? 0 : *std::max_element(load.begin(), load.end());
}

}  // namespace jsp
