#include "fjs/heuristic.hpp"

#include <algorithm>
#include <optional>

namespace fjs {

std::vector<Rational> mean_time_tails(const Instance& instance) {
  const std::size_t n = instance.op_count();
  std::vector<Rational> tail(n);
  const auto order = instance.topological_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const OpId v = *it;
    Rational mean(0);
    for (const auto& o : instance.options(v)) mean += o.time;
    mean /= static_cast<std::int64_t>(instance.options(v).size());
    Rational best(0);
    for (const OpId w : instance.successors(v)) best = std::max(best, tail[w]);
    tail[v] = mean + best;
  }
  return tail;
}

EstResult est(const Instance& instance) {
  const std::size_t n = instance.op_count();
  const auto tail = mean_time_tails(instance);

  std::vector<Rational> machine_avail(instance.machine_count(), Rational(0));
  std::vector<Rational> ready_at(n, Rational(0));
  std::vector<std::size_t> missing_preds(n);
  std::vector<bool> placed(n, false);
  for (OpId v = 0; v < n; ++v) missing_preds[v] = instance.predecessors(v).size();

  EstResult out;
  out.solution.assignment.machine.assign(n, 0);
  std::vector<std::vector<OpId>> sequences(instance.machine_count());

  for (std::size_t step = 0; step < n; ++step) {
    struct Pick {
      OpId op;
      MachineId machine;
      Rational start;
    };
    std::optional<Pick> best;
    for (OpId w = 0; w < n; ++w) {
      if (placed[w] || missing_preds[w] != 0) continue;
      for (const auto& o : instance.options(w)) {
        const Rational start = std::max(machine_avail[o.machine - 1], ready_at[w]);
        // Ascending scan over (w, k), so strict comparisons keep the lowest ids.
        if (!best || start < best->start || (start == best->start && tail[w] > tail[best->op])) {
          best = Pick{w, o.machine, start};
        }
      }
    }
    const Pick pick = *best;
    const Rational completion = pick.start + instance.ptime(pick.op, pick.machine);
    placed[pick.op] = true;
    machine_avail[pick.machine - 1] = completion;
    for (const OpId w : instance.successors(pick.op)) {
      ready_at[w] = std::max(ready_at[w], completion);
      --missing_preds[w];
    }
    out.solution.assignment.machine[pick.op] = pick.machine;
    sequences[pick.machine - 1].push_back(pick.op);
    out.sequence.push_back(pick.op);
    out.machines.push_back(pick.machine);
  }

  out.solution.selection = Selection::from_sequences(sequences);
  out.schedule = tight_schedule(instance, out.solution);
  return out;
}

}  // namespace fjs
