#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fjs/rational.hpp"

namespace fjs {

/// Operations are dense integers 0..n-1 in file order.
using OpId = std::uint32_t;
/// Machines are numbered 1..m.
using MachineId = std::uint32_t;

struct Arc {
  OpId from = 0;
  OpId to = 0;

  friend auto operator<=>(const Arc&, const Arc&) = default;
};

struct MachineOption {
  MachineId machine = 0;
  Rational time;

  friend bool operator==(const MachineOption&, const MachineOption&) = default;
};

/// An extended flexible job shop instance: a precedence dag over the
/// operations, the eligible machine set F(v) of every operation and the
/// processing time of v on each machine of F(v).
///
/// Instances are immutable once created; create() enforces every structural
/// invariant (acyclic, non-empty F(v), machines in range, positive times, no
/// dangling or self-loop arcs) and throws FjsError with a distinct code for
/// each kind of violation.
class Instance {
 public:
  Instance() = default;

  /// `options[v]` lists the (machine, time) pairs of operation v in any
  /// order; they are stored sorted by machine. Arcs are stored sorted.
  /// `job_of` is optional metadata (empty or one entry per operation).
  static Instance create(std::string name, std::uint32_t machine_count,
                         std::vector<std::vector<MachineOption>> options,
                         std::vector<Arc> arcs,
                         std::vector<std::uint32_t> job_of = {});

  const std::string& name() const { return name_; }
  std::uint32_t machine_count() const { return machine_count_; }
  std::size_t op_count() const { return options_.size(); }
  std::span<const Arc> arcs() const { return arcs_; }
  std::span<const MachineOption> options(OpId v) const { return options_.at(v); }
  std::span<const OpId> successors(OpId v) const { return succ_.at(v); }
  std::span<const OpId> predecessors(OpId v) const { return pred_.at(v); }
  /// Kahn order, smallest ready id first.
  std::span<const OpId> topological_order() const { return topo_; }
  std::span<const std::uint32_t> job_of() const { return job_of_; }

  bool eligible(OpId v, MachineId k) const;
  /// Throws FjsError(invalid_argument) when k is not in F(v).
  const Rational& ptime(OpId v, MachineId k) const;
  const Rational& min_ptime(OpId v) const;
  const Rational& max_ptime(OpId v) const;
  /// V_k, ascending.
  std::vector<OpId> machine_ops(MachineId k) const;

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.name_ == b.name_ && a.machine_count_ == b.machine_count_ &&
           a.options_ == b.options_ && a.arcs_ == b.arcs_ && a.job_of_ == b.job_of_;
  }

 private:
  std::string name_;
  std::uint32_t machine_count_ = 1;
  std::vector<std::vector<MachineOption>> options_;
  std::vector<Arc> arcs_;
  std::vector<std::uint32_t> job_of_;
  std::vector<std::vector<OpId>> succ_;
  std::vector<std::vector<OpId>> pred_;
  std::vector<OpId> topo_;
  std::vector<std::size_t> min_idx_;
  std::vector<std::size_t> max_idx_;
};

namespace graph {

struct TopoResult {
  std::vector<OpId> order;
  /// Non-empty iff the graph has a directed cycle: v0 -> v1 -> ... -> v0.
  std::vector<OpId> cycle;

  bool acyclic() const { return cycle.empty(); }
};

/// Kahn's algorithm with a min-id frontier. On a cyclic graph `order` holds
/// the acyclic prefix and `cycle` a witness cycle.
TopoResult topological_sort(std::size_t n, std::span<const Arc> arcs);

struct LongestPaths {
  std::vector<Rational> start;
  Rational makespan;
  std::vector<OpId> critical_path;
};

/// Earliest start of every node under the given durations: the maximum
/// over all paths ending at v of the summed durations of the path's nodes
/// excluding v itself. Throws FjsError(cycle) on a cyclic graph.
LongestPaths longest_paths(std::size_t n, std::span<const Arc> arcs,
                           std::span<const Rational> duration);

std::string describe_cycle(std::span<const OpId> cycle);

/// Weakly connected components; component ids ordered by smallest member.
std::vector<std::uint32_t> weak_components(std::size_t n, std::span<const Arc> arcs);

}  // namespace graph

}  // namespace fjs
