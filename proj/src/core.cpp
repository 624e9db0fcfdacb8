#include "fjs/core.hpp"

#include <algorithm>

#include "fjs/error.hpp"

namespace fjs {

namespace {

std::string pair_str(OpId v, OpId w) { return "(" + std::to_string(v) + "," + std::to_string(w) + ")"; }

std::vector<Arc> merged_arcs(const Instance& instance, const Selection& y) {
  std::vector<Arc> arcs(instance.arcs().begin(), instance.arcs().end());
  arcs.insert(arcs.end(), y.pairs.begin(), y.pairs.end());
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
  return arcs;
}

}  // namespace

DisjunctivePairs disjunctive_pairs(const Instance& instance) {
  DisjunctivePairs out;
  out.by_machine.resize(instance.machine_count());
  for (MachineId k = 1; k <= instance.machine_count(); ++k) {
    const auto ops = instance.machine_ops(k);
    auto& bk = out.by_machine[k - 1];
    for (const OpId v : ops) {
      for (const OpId w : ops) {
        if (v != w) bk.push_back({v, w});
      }
    }
    out.beta += bk.size();
    out.all.insert(out.all.end(), bk.begin(), bk.end());
  }
  std::sort(out.all.begin(), out.all.end());
  out.all.erase(std::unique(out.all.begin(), out.all.end()), out.all.end());
  return out;
}

Selection Selection::from_pairs(std::vector<Arc> pairs) {
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return Selection{std::move(pairs)};
}

Selection Selection::from_sequences(const std::vector<std::vector<OpId>>& sequences) {
  std::vector<Arc> pairs;
  for (const auto& seq : sequences) {
    for (std::size_t i = 0; i < seq.size(); ++i) {
      for (std::size_t j = i + 1; j < seq.size(); ++j) pairs.push_back({seq[i], seq[j]});
    }
  }
  return from_pairs(std::move(pairs));
}

bool Selection::contains(const Arc& a) const { return std::binary_search(pairs.begin(), pairs.end(), a); }

std::vector<Rational> assigned_times(const Instance& instance, const MachineAssignment& f) {
  const std::size_t n = instance.op_count();
  if (f.machine.size() != n) {
    throw FjsError(ErrorCode::malformed_assignment, "assignment covers " + std::to_string(f.machine.size()) +
                                                        " of " + std::to_string(n) + " operations");
  }
  std::vector<Rational> p(n);
  for (OpId v = 0; v < n; ++v) {
    if (!instance.eligible(v, f.machine[v])) {
      throw FjsError(ErrorCode::malformed_assignment, "operation " + std::to_string(v) +
                                                          " assigned to ineligible machine " +
                                                          std::to_string(f.machine[v]));
    }
    p[v] = instance.ptime(v, f.machine[v]);
  }
  return p;
}

namespace {

/// Collects selection defects without throwing.
std::vector<Issue> selection_defects(const Instance& instance, const SolutionPair& sol) {
  std::vector<Issue> issues;
  const auto& f = sol.assignment.machine;
  const std::size_t n = instance.op_count();
  const auto& y = sol.selection;
  for (const Arc& a : y.pairs) {
    if (a.from >= n || a.to >= n || a.from == a.to) {
      issues.push_back({IssueKind::malformed_selection, {}, {a.from, a.to},
                        "selection pair " + pair_str(a.from, a.to) + " is not a pair of distinct operations"});
      continue;
    }
    if (f[a.from] != f[a.to]) {
      issues.push_back({IssueKind::malformed_selection, {}, {a.from, a.to},
                        "selection pair " + pair_str(a.from, a.to) + " joins operations on different machines"});
      continue;
    }
    if (a.from < a.to && y.contains({a.to, a.from})) {
      issues.push_back({IssueKind::malformed_selection, {}, {a.from, a.to},
                        "pair " + pair_str(a.from, a.to) + " is oriented both ways"});
    }
  }
  for (OpId v = 0; v < n; ++v) {
    for (OpId w = v + 1; w < n; ++w) {
      if (f[v] == f[w] && !y.contains({v, w}) && !y.contains({w, v})) {
        issues.push_back({IssueKind::malformed_selection, {}, {v, w},
                          "pair " + pair_str(v, w) + " on machine " + std::to_string(f[v]) + " is not oriented"});
      }
    }
  }
  return issues;
}

}  // namespace

void check_well_formed(const Instance& instance, const SolutionPair& sol) {
  assigned_times(instance, sol.assignment);
  const auto defects = selection_defects(instance, sol);
  if (!defects.empty()) throw FjsError(ErrorCode::malformed_selection, defects.front().message);
}

AdmissibilityResult check_admissibility(const Instance& instance, const SolutionPair& sol) {
  check_well_formed(instance, sol);
  const auto arcs = merged_arcs(instance, sol.selection);
  auto topo = graph::topological_sort(instance.op_count(), arcs);
  return {topo.acyclic(), std::move(topo.cycle)};
}

bool is_admissible(const Instance& instance, const SolutionPair& sol) {
  return check_admissibility(instance, sol).admissible;
}

Schedule tight_schedule(const Instance& instance, const SolutionPair& sol) {
  check_well_formed(instance, sol);
  const auto p = assigned_times(instance, sol.assignment);
  const auto arcs = merged_arcs(instance, sol.selection);
  const auto topo = graph::topological_sort(instance.op_count(), arcs);
  if (!topo.acyclic()) {
    throw FjsError(ErrorCode::inadmissible, "selection is not admissible: " + graph::describe_cycle(topo.cycle));
  }
  auto lp = graph::longest_paths(instance.op_count(), arcs, p);
  return {std::move(lp.start), lp.makespan, std::move(lp.critical_path)};
}

std::vector<std::vector<OpId>> machine_sequences(const Instance& instance, const SolutionPair& sol) {
  const std::size_t n = instance.op_count();
  std::vector<std::size_t> rank(n, 0);
  for (const Arc& a : sol.selection.pairs) ++rank[a.to];
  std::vector<std::vector<OpId>> seqs(instance.machine_count());
  for (OpId v = 0; v < n; ++v) seqs.at(sol.assignment.machine.at(v) - 1).push_back(v);
  for (auto& seq : seqs) {
    std::stable_sort(seq.begin(), seq.end(), [&](OpId a, OpId b) { return rank[a] < rank[b]; });
  }
  return seqs;
}

std::string_view to_string(IssueKind kind) {
  switch (kind) {
    case IssueKind::size_mismatch: return "size-mismatch";
    case IssueKind::malformed_assignment: return "malformed-assignment";
    case IssueKind::malformed_selection: return "malformed-selection";
    case IssueKind::cycle: return "cycle";
    case IssueKind::negative_start: return "negative-start";
    case IssueKind::precedence_violation: return "precedence-violation";
    case IssueKind::machine_conflict: return "machine-conflict";
    case IssueKind::makespan_mismatch: return "makespan-mismatch";
    case IssueKind::critical_path_invalid: return "critical-path-invalid";
    case IssueKind::constraint_violation: return "constraint-violation";
    case IssueKind::bound_violation: return "bound-violation";
    case IssueKind::integrality_violation: return "integrality-violation";
    case IssueKind::missing_value: return "missing-value";
  }
  return "unknown";
}

std::size_t ValidationReport::count(IssueKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(issues.begin(), issues.end(), [kind](const Issue& i) { return i.kind == kind; }));
}

ValidationReport validate_solution(const Instance& instance, const SolutionPair& sol, const Schedule& sched) {
  ValidationReport report;
  const std::size_t n = instance.op_count();
  report.components = [&] {
    const auto comp = graph::weak_components(n, instance.arcs());
    return comp.empty() ? std::size_t{0} : static_cast<std::size_t>(*std::max_element(comp.begin(), comp.end())) + 1;
  }();

  if (sched.start.size() != n || sol.assignment.machine.size() != n) {
    report.issues.push_back({IssueKind::size_mismatch, {}, {},
                             "schedule or assignment does not cover the " + std::to_string(n) + " operations"});
    return report;
  }
  const auto& f = sol.assignment.machine;
  for (OpId v = 0; v < n; ++v) {
    if (!instance.eligible(v, f[v])) {
      report.issues.push_back({IssueKind::malformed_assignment, {}, {v},
                               "operation " + std::to_string(v) + " assigned to ineligible machine " +
                                   std::to_string(f[v])});
    }
  }
  if (!report.ok()) return report;

  auto defects = selection_defects(instance, sol);
  const bool selection_ok = defects.empty();
  report.issues.insert(report.issues.end(), defects.begin(), defects.end());
  if (selection_ok) {
    const auto adm = check_admissibility(instance, sol);
    if (!adm.admissible) {
      report.issues.push_back({IssueKind::cycle, {}, adm.cycle,
                               "selection creates a cycle: " + graph::describe_cycle(adm.cycle)});
    }
  }

  const auto p = assigned_times(instance, sol.assignment);
  const auto& s = sched.start;
  for (OpId v = 0; v < n; ++v) {
    if (s[v] < 0) {
      report.issues.push_back({IssueKind::negative_start, {}, {v},
                               "operation " + std::to_string(v) + " starts at " + to_string(s[v])});
    }
  }
  std::vector<Arc> violated_prec;
  for (const Arc& a : instance.arcs()) {
    if (s[a.from] + p[a.from] > s[a.to]) {
      violated_prec.push_back(a);
      report.issues.push_back({IssueKind::precedence_violation, {}, {a.from, a.to},
                               "arc " + pair_str(a.from, a.to) + ": " + to_string(s[a.from]) + " + " +
                                   to_string(p[a.from]) + " > " + to_string(s[a.to])});
    }
  }
  for (OpId v = 0; v < n; ++v) {
    for (OpId w = v + 1; w < n; ++w) {
      if (f[v] != f[w]) continue;
      if (std::binary_search(violated_prec.begin(), violated_prec.end(), Arc{v, w}) ||
          std::binary_search(violated_prec.begin(), violated_prec.end(), Arc{w, v})) {
        continue;
      }
      const bool overlap = s[v] < s[w] + p[w] && s[w] < s[v] + p[v];
      const bool order_broken = (sol.selection.contains({v, w}) && s[v] + p[v] > s[w]) ||
                                (sol.selection.contains({w, v}) && s[w] + p[w] > s[v]);
      if (overlap || order_broken) {
        report.issues.push_back({IssueKind::machine_conflict, {}, {v, w},
                                 "operations " + std::to_string(v) + " and " + std::to_string(w) +
                                     " conflict on machine " + std::to_string(f[v])});
      }
    }
  }

  Rational mks(0);
  for (OpId v = 0; v < n; ++v) mks = std::max(mks, s[v] + p[v]);
  if (mks != sched.makespan) {
    report.issues.push_back({IssueKind::makespan_mismatch, {}, {},
                             "makespan is " + to_string(mks) + " but schedule states " + to_string(sched.makespan)});
  }

  // An empty critical path means none is claimed.
  const auto& cp = sched.critical_path;
  if (!cp.empty()) {
    bool valid = std::all_of(cp.begin(), cp.end(), [n](OpId v) { return v < n; });
    Rational length(0);
    for (std::size_t i = 0; valid && i < cp.size(); ++i) {
      length += p[cp[i]];
      if (i + 1 < cp.size()) {
        const Arc a{cp[i], cp[i + 1]};
        const bool in_a = std::binary_search(instance.arcs().begin(), instance.arcs().end(), a);
        if (!in_a && !sol.selection.contains(a)) valid = false;
      }
    }
    if (!valid || length != sched.makespan) {
      report.issues.push_back({IssueKind::critical_path_invalid, {}, cp,
                               "critical path is not a path of length equal to the makespan"});
    }
  }
  return report;
}

}  // namespace fjs
