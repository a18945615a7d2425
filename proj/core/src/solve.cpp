#include "jsp/solve.hpp"

#include <algorithm>
#include <limits>
#include <tuple>

namespace jsp {

namespace {

constexpr std::size_t kNoDisjunction = std::numeric_limits<std::size_t>::max();

struct Edge {
  std::size_t node;
  std::size_t disjunction;  // kNoDisjunction for job-chain arcs
};

// Longest-path evaluation of the precedence graph induced by an orientation.
class Evaluation {
 public:
  explicit Evaluation(const SubProblem& sp) : sp_(sp) {}

  // Returns false on a cycle.
  bool run(const Orientation& orientation, bool with_tails) {
    const std::size_t n = sp_.size();
    succ_.assign(n, {});
    pred_.assign(n, {});
    for (const Arc& arc : sp_.arcs) add(arc.from, arc.to, kNoDisjunction);
    for (std::size_t d = 0; d < sp_.disjunctions.size(); ++d) {
      const Disjunction& dj = sp_.disjunctions[d];
      if (orientation[d] == Direction::first_before)
        add(dj.first, dj.second, d);
      else if (orientation[d] == Direction::second_before)
        add(dj.second, dj.first, d);
    }

    topo_.clear();
    indegree_.assign(n, 0);
    for (std::size_t v = 0; v < n; ++v) indegree_[v] = pred_[v].size();
    for (std::size_t v = 0; v < n; ++v)
      if (indegree_[v] == 0) topo_.push_back(v);
    for (std::size_t k = 0; k < topo_.size(); ++k)
      for (const Edge& e : succ_[topo_[k]])
        if (--indegree_[e.node] == 0) topo_.push_back(e.node);
    if (topo_.size() != n) return false;

    head_.resize(n);
    for (std::size_t v = 0; v < n; ++v) head_[v] = sp_.lower_bound(v);
    for (std::size_t v : topo_)
      for (const Edge& e : succ_[v])
        head_[e.node] = std::max(head_[e.node], head_[v] + sp_.ops[v].processing);

    if (with_tails) {
      tail_.assign(n, 0);
      for (std::size_t k = topo_.size(); k-- > 0;) {
        const std::size_t v = topo_[k];
        for (const Edge& e : succ_[v])
          tail_[v] = std::max(tail_[v], sp_.ops[e.node].processing + tail_[e.node]);
      }
    }
    return true;
  }

  Time makespan() const {
    Time m = sp_.fixed_horizon;
    for (std::size_t v = 0; v < sp_.size(); ++v) m = std::max(m, head_[v] + sp_.ops[v].processing);
    return m;
  }

  const std::vector<Time>& head() const { return head_; }
  const std::vector<Time>& tail() const { return tail_; }
  const std::vector<std::vector<Edge>>& pred() const { return pred_; }

 private:
  void add(std::size_t from, std::size_t to, std::size_t d) {
    succ_[from].push_back({to, d});
    pred_[to].push_back({from, d});
  }

  const SubProblem& sp_;
  std::vector<std::vector<Edge>> succ_;
  std::vector<std::vector<Edge>> pred_;
  std::vector<std::size_t> indegree_;
  std::vector<std::size_t> topo_;
  std::vector<Time> head_;
  std::vector<Time> tail_;
};

Schedule to_schedule(const SubProblem& sp, const std::vector<Time>& starts) {
  Schedule s;
  for (std::size_t i = 0; i < sp.size(); ++i) s.set(sp.ops[i].ref, starts[i]);
  return s;
}

Orientation orientation_from_starts(const SubProblem& sp, const std::vector<Time>& starts) {
  Orientation o(sp.disjunctions.size(), Direction::unset);
  for (std::size_t d = 0; d < sp.disjunctions.size(); ++d) {
    const auto& dj = sp.disjunctions[d];
    o[d] = starts[dj.first] < starts[dj.second] ? Direction::first_before : Direction::second_before;
  }
  return o;
}

using Clock = std::chrono::steady_clock;

std::chrono::microseconds since(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - t0);
}

class BranchAndBound {
 public:
  BranchAndBound(const SubProblem& sp, const Budget& budget, const SolveOptions& options)
      : sp_(sp), budget_(budget), options_(options), started_(Clock::now()) {
    if (budget.wall_time) deadline_ = started_ + *budget.wall_time;
  }

  SolveResult solve() {
    SolveResult greedy = greedy_incumbent(sp_);
    best_ = greedy.orientation;
    upper_ = greedy.window_makespan;
    report();

    explore(Orientation(sp_.disjunctions.size(), Direction::unset));

    SolveResult result;
    result.orientation = best_;
    result.starts = earliest_starts(sp_, best_);
    result.window_makespan = upper_;
    result.status = interrupted_ ? SolveStatus::feasible_interrupted : SolveStatus::optimal;
    result.nodes = nodes_;
    result.elapsed = since(started_);
    return result;
  }

 private:
  bool out_of_budget() {
    if (interrupted_) return true;
    if (budget_.nodes && nodes_ >= *budget_.nodes) interrupted_ = true;
    if (deadline_ && Clock::now() >= *deadline_) interrupted_ = true;
    return interrupted_;
  }

  void report() {
    if (options_.on_incumbent) options_.on_incumbent({nodes_, upper_, since(started_)});
  }

  // Per-machine relaxation: the free operations of one machine run back to back.
  Time machine_bound(const Evaluation& ev) const {
    const std::size_t machines = sp_.release.size();
    std::vector<Time> min_head(machines, std::numeric_limits<Time>::max());
    std::vector<Time> min_tail(machines, std::numeric_limits<Time>::max());
    std::vector<Time> load(machines, 0);
    for (std::size_t v = 0; v < sp_.size(); ++v) {
      const std::size_t m = static_cast<std::size_t>(sp_.ops[v].machine - 1);
      min_head[m] = std::min(min_head[m], ev.head()[v]);
      min_tail[m] = std::min(min_tail[m], ev.tail()[v]);
      load[m] += sp_.ops[v].processing;
    }
    Time bound = 0;
    for (std::size_t m = 0; m < machines; ++m)
      if (load[m] > 0) bound = std::max(bound, min_head[m] + load[m] + min_tail[m]);
    return bound;
  }

  Time path_bound(const Evaluation& ev) const {
    Time bound = sp_.fixed_horizon;
    for (std::size_t v = 0; v < sp_.size(); ++v)
      bound = std::max(bound, ev.head()[v] + sp_.ops[v].processing + ev.tail()[v]);
    return bound;
  }

  void explore(Orientation orientation) {
    if (out_of_budget()) return;
    ++nodes_;

    Evaluation ev(sp_);
    Time lower = 0;
    // Fix every pair whose other order cannot beat the incumbent.
    for (;;) {
      if (!ev.run(orientation, true)) return;
      lower = std::max(path_bound(ev), machine_bound(ev));
      if (lower >= upper_) return;
      bool changed = false;
      for (std::size_t d = 0; d < sp_.disjunctions.size(); ++d) {
        if (orientation[d] != Direction::unset) continue;
        const auto [a, b] = sp_.disjunctions[d];
        const Time pa = sp_.ops[a].processing;
        const Time pb = sp_.ops[b].processing;
        const bool a_first = ev.head()[a] + pa + pb + ev.tail()[b] < upper_;
        const bool b_first = ev.head()[b] + pb + pa + ev.tail()[a] < upper_;
        if (!a_first && !b_first) return;
        if (a_first != b_first) {
          orientation[d] = a_first ? Direction::first_before : Direction::second_before;
          changed = true;
        }
      }
      if (!changed) break;
    }

    // Complete the partial orientation by current heads; consistent with
    // every existing path because heads strictly grow along arcs.
    Orientation completed = orientation;
    const auto key = [&](std::size_t v) {
      return std::make_tuple(ev.head()[v], sp_.ops[v].ref.job, sp_.ops[v].ref.step);
    };
    for (std::size_t d = 0; d < sp_.disjunctions.size(); ++d) {
      if (completed[d] != Direction::unset) continue;
      const auto [a, b] = sp_.disjunctions[d];
      completed[d] = key(a) < key(b) ? Direction::first_before : Direction::second_before;
    }
    Evaluation full(sp_);
    if (!full.run(completed, false)) return;
    const Time value = full.makespan();
    if (value < upper_) {
      upper_ = value;
      best_ = completed;
      report();
    }
    if (lower >= upper_) return;

    const std::size_t branch = pick_branch(orientation, full, value);
    if (branch == kNoDisjunction) return;

    orientation[branch] = Direction::first_before;
    explore(orientation);
    orientation[branch] = Direction::second_before;
    explore(std::move(orientation));
  }

  // An unoriented pair whose heuristic arc lies on the critical path of the
  // completed graph, preferring the larger combined processing time.
  std::size_t pick_branch(const Orientation& partial, const Evaluation& full, Time value) const {
    std::size_t v = sp_.size();
    for (std::size_t i = 0; i < sp_.size(); ++i)
      if (full.head()[i] + sp_.ops[i].processing == value) {
        v = i;
        break;
      }
    std::size_t best = kNoDisjunction;
    Time best_weight = -1;
    while (v < sp_.size()) {
      std::size_t next = sp_.size();
      for (const Edge& e : full.pred()[v]) {
        if (full.head()[e.node] + sp_.ops[e.node].processing != full.head()[v]) continue;
        next = e.node;
        if (e.disjunction != kNoDisjunction && partial[e.disjunction] == Direction::unset) {
          const Time w = sp_.ops[v].processing + sp_.ops[e.node].processing;
          if (w > best_weight || (w == best_weight && e.disjunction < best)) {
            best_weight = w;
            best = e.disjunction;
          }
        }
        break;
      }
      v = next;
    }
    return best;
  }

  const SubProblem& sp_;
  Budget budget_;
  const SolveOptions& options_;
  Clock::time_point started_;
  std::optional<Clock::time_point> deadline_;
  std::uint64_t nodes_ = 0;
  bool interrupted_ = false;
  Time upper_ = 0;
  Orientation best_;
};

}  // namespace

Schedule earliest_starts(const SubProblem& sp, const Orientation& orientation) {
  if (orientation.size() != sp.disjunctions.size() ||
      std::any_of(orientation.begin(), orientation.end(),
                  [](Direction d) { return d == Direction::unset; }))
    throw std::invalid_argument("earliest_starts needs a total orientation");
  Evaluation ev(sp);
  if (!ev.run(orientation, false)) throw CycleError();
  return to_schedule(sp, ev.head());
}

Time critical_path_bound(const SubProblem& sp, const Orientation& partial) {
  if (partial.size() != sp.disjunctions.size())
    throw std::invalid_argument("orientation size does not match the disjunctions");
  Evaluation ev(sp);
  if (!ev.run(partial, false)) throw CycleError();
  return ev.makespan();
}

SolveResult greedy_incumbent(const SubProblem& sp) {
  const auto t0 = Clock::now();
  const std::size_t n = sp.size();
  std::vector<Time> machine_free = sp.release;
  std::vector<Time> start(n, 0);
  std::vector<char> done(n, 0);
  std::vector<std::optional<std::size_t>> chain_pred(n);
  for (const Arc& arc : sp.arcs) chain_pred[arc.to] = arc.from;

  for (std::size_t placed = 0; placed < n; ++placed) {
    std::size_t pick = n;
    Time pick_start = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      Time t = std::max(sp.lower_bound(i), machine_free[sp.ops[i].machine - 1]);
      if (chain_pred[i]) {
        if (!done[*chain_pred[i]]) continue;
        t = std::max(t, start[*chain_pred[i]] + sp.ops[*chain_pred[i]].processing);
      }
      const auto candidate = std::make_tuple(t, sp.ops[i].processing, sp.ops[i].ref);
      if (pick == n || candidate < std::make_tuple(pick_start, sp.ops[pick].processing, sp.ops[pick].ref)) {
        pick = i;
        pick_start = t;
      }
    }
    start[pick] = pick_start;
    done[pick] = 1;
    machine_free[sp.ops[pick].machine - 1] = pick_start + sp.ops[pick].processing;
  }

  SolveResult result;
  result.orientation = orientation_from_starts(sp, start);
  result.starts = to_schedule(sp, start);
  result.window_makespan = sp.fixed_horizon;
  for (std::size_t i = 0; i < n; ++i)
    result.window_makespan = std::max(result.window_makespan, start[i] + sp.ops[i].processing);
  result.status = SolveStatus::feasible_interrupted;
  result.elapsed = since(t0);
  return result;
}

SolveResult solve_window(const SubProblem& sp, const Budget& budget, const SolveOptions& options) {
  return BranchAndBound(sp, budget, options).solve();
}

std::string format_incumbent(const Incumbent& inc) {
  return "incumbent," + std::to_string(inc.nodes) + "," + std::to_string(inc.makespan) + "," +
         std::to_string(inc.elapsed.count() / 1000);
}

Time brute_force_optimum(const SubProblem& sp, std::size_t max_disjunctions) {
  const std::size_t d = sp.disjunctions.size();
  if (d > max_disjunctions || d >= 63)
    throw BruteForceCapError(std::to_string(d) + " disjunctions exceed the brute-force cap of " +
                             std::to_string(max_disjunctions));
  Evaluation ev(sp);
  Orientation o(d);
  Time best = std::numeric_limits<Time>::max();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d); ++mask) {
    for (std::size_t k = 0; k < d; ++k)
      o[k] = (mask >> k) & 1U ? Direction::second_before : Direction::first_before;
    if (!ev.run(o, false)) continue;
    best = std::min(best, ev.makespan());
  }
  return best;
}

}  // namespace jsp
