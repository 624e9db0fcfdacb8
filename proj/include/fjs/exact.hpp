#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "fjs/core.hpp"
#include "fjs/instance.hpp"

namespace fjs {

enum class SolveStatus {
  /// Search exhausted (or bounds met): upper_bound is the optimum.
  optimal,
  /// Stopped by the node limit with lower_bound < upper_bound.
  bound_pair,
  /// Stopped by the time limit with lower_bound < upper_bound.
  timeout,
};

std::string_view to_string(SolveStatus status);
SolveStatus parse_solve_status(std::string_view text);

struct BoundEvent {
  double elapsed = 0;
  Rational lower;
  Rational upper;
};

struct SolveResult {
  SolutionPair solution;
  Schedule schedule;
  Rational lower_bound;
  Rational upper_bound;
  SolveStatus status = SolveStatus::optimal;
  std::uint64_t nodes = 0;
  double elapsed = 0;
  /// Makespan of the EST incumbent the search started from.
  Rational est_makespan;
  /// Bound changes in the order they happened; the first entry carries the
  /// EST makespan and the root lower bound.
  std::vector<BoundEvent> history;
};

struct SolveOptions {
  double time_limit = 3600.0;
  unsigned threads = 1;
  std::optional<std::uint64_t> node_limit;
};

/// Lower bound of the root node: the larger of the min-time critical path
/// bound, the per-machine load of operations that have a single eligible
/// machine, and total minimum work spread over all machines.
Rational root_lower_bound(const Instance& instance);

/// Branch and bound over active schedules. Each node appends one
/// (operation, machine) pair at its earliest start; starts are appended in
/// nondecreasing order and only pairs starting strictly before the earliest
/// possible completion of any ready pair are branched on. The search starts
/// from the EST incumbent. With threads > 1 subtrees are shared through a
/// common pool and the incumbent bound is shared.
///
/// Throws FjsError(invalid_argument) for a non-positive time limit or zero
/// threads.
SolveResult solve_exact(const Instance& instance, SolveOptions opts = {});

struct BruteForceOptions {
  std::size_t max_ops = 9;
  std::uint64_t max_assignments = 100000;
};

/// Exhaustive optimum: every machine assignment, every combination of
/// per-machine permutations, filtered by admissibility. Throws
/// FjsError(cap_exceeded) beyond the caps.
SolveResult brute_force(const Instance& instance, BruteForceOptions opts = {});

}  // namespace fjs
