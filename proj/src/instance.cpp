#include "fjs/instance.hpp"

#include <algorithm>
#include <functional>
#include <queue>

#include "fjs/error.hpp"

namespace fjs {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::syntax: return "syntax";
    case ErrorCode::dangling_arc: return "dangling-arc";
    case ErrorCode::self_loop: return "self-loop";
    case ErrorCode::duplicate_arc: return "duplicate-arc";
    case ErrorCode::duplicate_machine: return "duplicate-machine";
    case ErrorCode::empty_eligible_set: return "empty-eligible-set";
    case ErrorCode::machine_out_of_range: return "machine-out-of-range";
    case ErrorCode::non_positive_time: return "non-positive-time";
    case ErrorCode::cycle: return "cycle";
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::malformed_assignment: return "malformed-assignment";
    case ErrorCode::malformed_selection: return "malformed-selection";
    case ErrorCode::inadmissible: return "inadmissible";
    case ErrorCode::unknown_variable: return "unknown-variable";
    case ErrorCode::non_integral: return "non-integral";
    case ErrorCode::no_machine_selected: return "no-machine-selected";
    case ErrorCode::infeasible_point: return "infeasible-point";
    case ErrorCode::precondition_violated: return "precondition-violated";
    case ErrorCode::cap_exceeded: return "cap-exceeded";
  }
  return "unknown";
}

Instance Instance::create(std::string name, std::uint32_t machine_count,
                          std::vector<std::vector<MachineOption>> options,
                          std::vector<Arc> arcs, std::vector<std::uint32_t> job_of) {
  if (machine_count == 0) {
    throw FjsError(ErrorCode::machine_out_of_range, "machine count must be positive");
  }
  const std::size_t n = options.size();
  for (std::size_t v = 0; v < n; ++v) {
    auto& opts = options[v];
    if (opts.empty()) {
      throw FjsError(ErrorCode::empty_eligible_set,
                     "operation " + std::to_string(v) + " has no eligible machine");
    }
    std::sort(opts.begin(), opts.end(),
              [](const MachineOption& a, const MachineOption& b) { return a.machine < b.machine; });
    for (std::size_t i = 0; i < opts.size(); ++i) {
      const auto& o = opts[i];
      if (o.machine < 1 || o.machine > machine_count) {
        throw FjsError(ErrorCode::machine_out_of_range,
                       "operation " + std::to_string(v) + " names machine " +
                           std::to_string(o.machine) + " outside 1.." + std::to_string(machine_count));
      }
      if (i > 0 && opts[i - 1].machine == o.machine) {
        throw FjsError(ErrorCode::duplicate_machine, "operation " + std::to_string(v) +
                                                        " lists machine " + std::to_string(o.machine) +
                                                        " twice");
      }
      if (o.time <= 0) {
        throw FjsError(ErrorCode::non_positive_time,
                       "operation " + std::to_string(v) + " has non-positive time " +
                           to_string(o.time) + " on machine " + std::to_string(o.machine));
      }
    }
  }
  for (const Arc& a : arcs) {
    if (a.from >= n || a.to >= n) {
      throw FjsError(ErrorCode::dangling_arc, "arc (" + std::to_string(a.from) + "," +
                                                  std::to_string(a.to) + ") references an unknown operation");
    }
    if (a.from == a.to) {
      throw FjsError(ErrorCode::self_loop, "self-loop arc on operation " + std::to_string(a.from));
    }
  }
  std::sort(arcs.begin(), arcs.end());
  if (const auto dup = std::adjacent_find(arcs.begin(), arcs.end()); dup != arcs.end()) {
    throw FjsError(ErrorCode::duplicate_arc, "arc (" + std::to_string(dup->from) + "," +
                                                 std::to_string(dup->to) + ") listed twice");
  }
  if (!job_of.empty() && job_of.size() != n) {
    throw FjsError(ErrorCode::syntax, "job metadata must cover every operation");
  }

  auto topo = graph::topological_sort(n, arcs);
  if (!topo.acyclic()) {
    throw FjsError(ErrorCode::cycle, "precedence arcs contain a cycle: " + graph::describe_cycle(topo.cycle));
  }

  Instance inst;
  inst.name_ = std::move(name);
  inst.machine_count_ = machine_count;
  inst.options_ = std::move(options);
  inst.arcs_ = std::move(arcs);
  inst.job_of_ = std::move(job_of);
  inst.topo_ = std::move(topo.order);
  inst.succ_.resize(n);
  inst.pred_.resize(n);
  for (const Arc& a : inst.arcs_) {
    inst.succ_[a.from].push_back(a.to);
    inst.pred_[a.to].push_back(a.from);
  }
  for (auto& p : inst.pred_) std::sort(p.begin(), p.end());
  inst.min_idx_.resize(n);
  inst.max_idx_.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    const auto& opts = inst.options_[v];
    std::size_t lo = 0;
    std::size_t hi = 0;
    for (std::size_t i = 1; i < opts.size(); ++i) {
      if (opts[i].time < opts[lo].time) lo = i;
      if (opts[i].time > opts[hi].time) hi = i;
    }
    inst.min_idx_[v] = lo;
    inst.max_idx_[v] = hi;
  }
  return inst;
}

bool Instance::eligible(OpId v, MachineId k) const {
  const auto& opts = options_.at(v);
  return std::any_of(opts.begin(), opts.end(), [k](const MachineOption& o) { return o.machine == k; });
}

const Rational& Instance::ptime(OpId v, MachineId k) const {
  for (const auto& o : options_.at(v)) {
    if (o.machine == k) return o.time;
  }
  throw FjsError(ErrorCode::invalid_argument, "machine " + std::to_string(k) +
                                                  " is not eligible for operation " + std::to_string(v));
}

const Rational& Instance::min_ptime(OpId v) const { return options_.at(v)[min_idx_.at(v)].time; }

const Rational& Instance::max_ptime(OpId v) const { return options_.at(v)[max_idx_.at(v)].time; }

std::vector<OpId> Instance::machine_ops(MachineId k) const {
  std::vector<OpId> ops;
  for (OpId v = 0; v < options_.size(); ++v) {
    if (eligible(v, k)) ops.push_back(v);
  }
  return ops;
}

namespace graph {

TopoResult topological_sort(std::size_t n, std::span<const Arc> arcs) {
  std::vector<std::vector<OpId>> succ(n);
  std::vector<std::size_t> indeg(n, 0);
  for (const Arc& a : arcs) {
    succ[a.from].push_back(a.to);
    ++indeg[a.to];
  }
  std::priority_queue<OpId, std::vector<OpId>, std::greater<>> frontier;
  for (OpId v = 0; v < n; ++v) {
    if (indeg[v] == 0) frontier.push(v);
  }
  TopoResult result;
  result.order.reserve(n);
  while (!frontier.empty()) {
    const OpId v = frontier.top();
    frontier.pop();
    result.order.push_back(v);
    for (const OpId w : succ[v]) {
      if (--indeg[w] == 0) frontier.push(w);
    }
  }
  if (result.order.size() == n) return result;

  // Every node left over has a leftover predecessor; walking predecessors
  // from any of them must revisit a node.
  std::vector<std::vector<OpId>> pred(n);
  for (const Arc& a : arcs) {
    if (indeg[a.from] > 0 && indeg[a.to] > 0) pred[a.to].push_back(a.from);
  }
  for (auto& p : pred) std::sort(p.begin(), p.end());
  OpId v = 0;
  while (indeg[v] == 0) ++v;
  std::vector<std::size_t> seen_at(n, n);
  std::vector<OpId> walk;
  while (seen_at[v] == n) {
    seen_at[v] = walk.size();
    walk.push_back(v);
    v = pred[v].front();
  }
  std::vector<OpId> cycle(walk.begin() + static_cast<std::ptrdiff_t>(seen_at[v]), walk.end());
  std::reverse(cycle.begin(), cycle.end());
  std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
  result.cycle = std::move(cycle);
  return result;
}

LongestPaths longest_paths(std::size_t n, std::span<const Arc> arcs, std::span<const Rational> duration) {
  const auto topo = topological_sort(n, arcs);
  if (!topo.acyclic()) {
    throw FjsError(ErrorCode::cycle, "graph contains a cycle: " + describe_cycle(topo.cycle));
  }
  std::vector<std::vector<OpId>> pred(n);
  for (const Arc& a : arcs) pred[a.to].push_back(a.from);
  for (auto& p : pred) std::sort(p.begin(), p.end());

  LongestPaths out;
  out.start.assign(n, Rational(0));
  for (const OpId v : topo.order) {
    for (const OpId u : pred[v]) {
      out.start[v] = std::max(out.start[v], out.start[u] + duration[u]);
    }
  }
  if (n == 0) return out;

  OpId last = 0;
  for (OpId v = 0; v < n; ++v) {
    const Rational end = out.start[v] + duration[v];
    if (end > out.makespan) {
      out.makespan = end;
      last = v;
    }
  }
  std::vector<OpId> path{last};
  OpId v = last;
  for (;;) {
    const auto it = std::find_if(pred[v].begin(), pred[v].end(), [&](OpId u) {
      return out.start[u] + duration[u] == out.start[v];
    });
    if (it == pred[v].end()) break;
    v = *it;
    path.push_back(v);
  }
  std::reverse(path.begin(), path.end());
  out.critical_path = std::move(path);
  return out;
}

std::string describe_cycle(std::span<const OpId> cycle) {
  std::string s;
  for (const OpId v : cycle) s += std::to_string(v) + " -> ";
  if (!cycle.empty()) s += std::to_string(cycle.front());
  return s;
}

std::vector<std::uint32_t> weak_components(std::size_t n, std::span<const Arc> arcs) {
  std::vector<std::uint32_t> parent(n);
  for (std::uint32_t i = 0; i < n; ++i) parent[i] = i;
  const std::function<std::uint32_t(std::uint32_t)> find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Arc& a : arcs) {
    const auto ra = find(a.from);
    const auto rb = find(a.to);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }
  std::vector<std::uint32_t> comp(n);
  std::vector<std::uint32_t> label(n, UINT32_MAX);
  std::uint32_t next = 0;
  for (std::uint32_t v = 0; v < n; ++v) {
    const auto r = find(v);
    if (label[r] == UINT32_MAX) label[r] = next++;
    comp[v] = label[r];
  }
  return comp;
}

}  // namespace graph

}  // namespace fjs
