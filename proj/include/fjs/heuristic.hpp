#pragma once

#include <vector>

#include "fjs/core.hpp"
#include "fjs/instance.hpp"

namespace fjs {

struct EstResult {
  SolutionPair solution;
  Schedule schedule;
  /// Operations in the order EST placed them, with their machines.
  std::vector<OpId> sequence;
  std::vector<MachineId> machines;
};

/// Mean processing time over F(v) plus the largest such sum along any path
/// of (V, A) leaving v.
std::vector<Rational> mean_time_tails(const Instance& instance);

/// Earliest-starting-time constructive heuristic.
///
/// Repeatedly appends the (operation, machine) pair that can start the
/// earliest given the operations placed so far; a pair is eligible once all
/// precedence predecessors of the operation are placed. Ties go to the
/// operation with the largest mean-time tail, then the lowest operation id,
/// then the lowest machine id. The selection orders operations sharing a
/// machine by placement order.
///
/// Runs in O(|V||A| + |V|^2 |M|).
EstResult est(const Instance& instance);

}  // namespace fjs
