#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <vector>

#include "fjs/core.hpp"
#include "fjs/instance.hpp"

namespace fjs::testing {

/// Three operations a=0, b=1, c=2 with arcs a->b and a->c on two machines:
/// a runs on 1 (3), b on 1 (2) or 2 (4), c on 2 (5).
inline Instance ex1() {
  return Instance::create("EX1", 2,
                          {{{1, Rational(3)}},
                           {{1, Rational(2)}, {2, Rational(4)}},
                           {{2, Rational(5)}}},
                          {{0, 1}, {0, 2}});
}

struct RandomSpec {
  std::size_t min_ops = 2;
  std::size_t max_ops = 7;
  std::uint32_t max_machines = 3;
  double arc_probability = 0.3;
  std::int64_t max_time = 9;
  /// Chance that a processing time is a half-integer instead of an integer.
  double fractional = 0.0;
  std::uint64_t max_assignments = 100000;
};

/// Small random instance: arcs only go from lower to higher ids, so the dag
/// is acyclic by construction; every operation gets a random non-empty
/// machine subset.
inline Instance random_instance(std::uint64_t seed, const RandomSpec& spec = {}) {
  std::mt19937_64 rng(seed);
  auto pick = [&](std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng); };
  for (;;) {
    const auto n = static_cast<std::size_t>(pick(static_cast<std::int64_t>(spec.min_ops), static_cast<std::int64_t>(spec.max_ops)));
    const auto m = static_cast<std::uint32_t>(pick(1, spec.max_machines));
    std::vector<std::vector<MachineOption>> options(n);
    std::uint64_t assignments = 1;
    for (auto& opts : options) {
      for (std::uint32_t k = 1; k <= m; ++k) {
        if (std::bernoulli_distribution(0.5)(rng)) {
          Rational p(pick(1, spec.max_time));
          if (std::bernoulli_distribution(spec.fractional)(rng)) p += Rational(1, 2);
          opts.push_back({k, p});
        }
      }
      if (opts.empty()) opts.push_back({static_cast<std::uint32_t>(pick(1, m)), Rational(pick(1, spec.max_time))});
      assignments *= opts.size();
    }
    if (assignments > spec.max_assignments) continue;
    std::vector<Arc> arcs;
    for (OpId v = 0; v < n; ++v) {
      for (OpId w = v + 1; w < n; ++w) {
        if (std::bernoulli_distribution(spec.arc_probability)(rng)) arcs.push_back({v, w});
      }
    }
    return Instance::create("R" + std::to_string(seed), m, std::move(options), std::move(arcs));
  }
}

/// The selection restricted to pairs that share a machine under the
/// assignment.
inline Selection on_machine(const SolutionPair& sol) {
  std::vector<Arc> pairs;
  for (const Arc& a : sol.selection.pairs) {
    if (sol.assignment.machine[a.from] == sol.assignment.machine[a.to]) pairs.push_back(a);
  }
  return Selection::from_pairs(pairs);
}

/// A random admissible solution: a random topological order of (V, A) and a
/// random eligible machine per operation; each machine processes its
/// operations in that order.
inline SolutionPair random_solution(const Instance& instance, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::size_t n = instance.op_count();
  std::vector<std::size_t> indegree(n, 0);
  for (const Arc& a : instance.arcs()) ++indegree[a.to];
  std::vector<OpId> ready;
  for (OpId v = 0; v < n; ++v) {
    if (indegree[v] == 0) ready.push_back(v);
  }
  std::vector<OpId> order;
  while (!ready.empty()) {
    const auto i = std::uniform_int_distribution<std::size_t>(0, ready.size() - 1)(rng);
    const OpId v = ready[i];
    ready.erase(ready.begin() + static_cast<std::ptrdiff_t>(i));
    order.push_back(v);
    for (const OpId w : instance.successors(v)) {
      if (--indegree[w] == 0) ready.push_back(w);
    }
  }
  SolutionPair sol;
  sol.assignment.machine.resize(n);
  for (OpId v = 0; v < n; ++v) {
    const auto opts = instance.options(v);
    sol.assignment.machine[v] = opts[std::uniform_int_distribution<std::size_t>(0, opts.size() - 1)(rng)].machine;
  }
  std::vector<std::vector<OpId>> seqs(instance.machine_count());
  for (const OpId v : order) seqs[sol.assignment.machine[v] - 1].push_back(v);
  sol.selection = Selection::from_sequences(seqs);
  return sol;
}

/// Longest path oracle by explicit path enumeration: the earliest start of
/// v is the largest duration sum over all paths ending in v, v excluded.
inline std::vector<Rational> enumerate_longest_starts(std::size_t n, const std::vector<Arc>& arcs,
                                                      const std::vector<Rational>& duration) {
  std::vector<std::vector<OpId>> pred(n);
  for (const Arc& a : arcs) pred[a.to].push_back(a.from);
  std::vector<Rational> start(n, Rational(0));
  std::function<void(OpId, OpId, Rational)> walk = [&](OpId target, OpId at, Rational acc) {
    start[target] = std::max(start[target], acc);
    for (const OpId u : pred[at]) walk(target, u, acc + duration[u]);
  };
  for (OpId v = 0; v < n; ++v) walk(v, v, Rational(0));
  return start;
}

/// Direct set counts used by the model size checks.
struct SetCounts {
  std::size_t ops = 0;
  std::size_t arcs = 0;
  std::size_t b = 0;
  std::size_t beta = 0;
  std::size_t phi = 0;
  std::size_t phi_hat = 0;
};

inline SetCounts count_sets(const Instance& instance) {
  SetCounts c;
  c.ops = instance.op_count();
  c.arcs = instance.arcs().size();
  std::set<std::pair<OpId, OpId>> b;
  for (OpId v = 0; v < c.ops; ++v) {
    c.phi += instance.options(v).size();
    if (instance.successors(v).empty()) c.phi_hat += instance.options(v).size();
    for (OpId w = 0; w < c.ops; ++w) {
      if (v == w) continue;
      for (std::uint32_t k = 1; k <= instance.machine_count(); ++k) {
        if (instance.eligible(v, k) && instance.eligible(w, k)) {
          ++c.beta;
          b.insert({v, w});
        }
      }
    }
  }
  c.b = b.size();
  return c;
}

}  // namespace fjs::testing
