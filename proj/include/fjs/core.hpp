#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fjs/instance.hpp"
#include "fjs/rational.hpp"

namespace fjs {

/// B_k for every machine, their union B, and beta = sum_k |B_k|.
struct DisjunctivePairs {
  /// by_machine[k - 1] = B_k, lexicographically sorted.
  std::vector<std::vector<Arc>> by_machine;
  /// B, lexicographically sorted.
  std::vector<Arc> all;
  std::size_t beta = 0;

  const std::vector<Arc>& of(MachineId k) const { return by_machine.at(k - 1); }
};

DisjunctivePairs disjunctive_pairs(const Instance& instance);

/// machine[v] = f(v).
struct MachineAssignment {
  std::vector<MachineId> machine;

  friend bool operator==(const MachineAssignment&, const MachineAssignment&) = default;
};

/// A set of ordered pairs, kept sorted and duplicate free.
struct Selection {
  std::vector<Arc> pairs;

  static Selection from_pairs(std::vector<Arc> pairs);
  /// All (earlier, later) pairs of each per-machine sequence.
  static Selection from_sequences(const std::vector<std::vector<OpId>>& sequences);
  bool contains(const Arc& a) const;

  friend bool operator==(const Selection&, const Selection&) = default;
};

struct SolutionPair {
  MachineAssignment assignment;
  Selection selection;

  friend bool operator==(const SolutionPair&, const SolutionPair&) = default;
};

struct Schedule {
  std::vector<Rational> start;
  Rational makespan;
  std::vector<OpId> critical_path;
};

/// p^f(v) for every operation. Throws FjsError(malformed_assignment) if f
/// is not total or names an ineligible machine.
std::vector<Rational> assigned_times(const Instance& instance, const MachineAssignment& f);

/// Throws FjsError(malformed_assignment) or FjsError(malformed_selection)
/// when the pair is not a well formed (f, Y): Y must orient every pair of
/// distinct operations sharing a machine under f exactly once and contain
/// nothing else.
void check_well_formed(const Instance& instance, const SolutionPair& sol);

struct AdmissibilityResult {
  bool admissible = false;
  /// When inadmissible, a directed cycle of (V, A u Y).
  std::vector<OpId> cycle;
};

AdmissibilityResult check_admissibility(const Instance& instance, const SolutionPair& sol);

/// True iff (V, A u Y) is a dag. Malformed pairs throw (see
/// check_well_formed) instead of returning false.
bool is_admissible(const Instance& instance, const SolutionPair& sol);

/// Longest-path schedule of (V, A u Y, p^f). Throws FjsError(inadmissible)
/// on a cyclic selection.
Schedule tight_schedule(const Instance& instance, const SolutionPair& sol);

/// The per-machine sequences encoded by an admissible selection,
/// sequences[k - 1] in processing order.
std::vector<std::vector<OpId>> machine_sequences(const Instance& instance, const SolutionPair& sol);

enum class IssueKind {
  size_mismatch,
  malformed_assignment,
  malformed_selection,
  cycle,
  negative_start,
  precedence_violation,
  machine_conflict,
  makespan_mismatch,
  critical_path_invalid,
  constraint_violation,
  bound_violation,
  integrality_violation,
  missing_value,
};

std::string_view to_string(IssueKind kind);

struct Issue {
  IssueKind kind;
  /// Constraint or variable name for model checks, empty otherwise.
  std::string subject;
  std::vector<OpId> ops;
  std::string message;
};

struct ValidationReport {
  std::vector<Issue> issues;
  /// Informational only: number of weakly connected components (jobs).
  std::size_t components = 0;

  bool ok() const { return issues.empty(); }
  std::size_t count(IssueKind kind) const;
};

/// Checks every assignment, selection and schedule invariant. Arcs of A
/// that are violated are reported as precedence violations; violated
/// selection arcs and overlapping same-machine intervals as machine
/// conflicts (one entry per unordered pair).
ValidationReport validate_solution(const Instance& instance, const SolutionPair& sol, const Schedule& sched);

}  // namespace fjs
