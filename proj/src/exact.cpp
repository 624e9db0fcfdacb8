#include "fjs/exact.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <deque>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

#include "fjs/error.hpp"
#include "fjs/heuristic.hpp"

namespace fjs {

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::bound_pair: return "bound-pair";
    case SolveStatus::timeout: return "timeout";
  }
  return "unknown";
}

SolveStatus parse_solve_status(std::string_view text) {
  if (text == "optimal") return SolveStatus::optimal;
  if (text == "bound-pair") return SolveStatus::bound_pair;
  if (text == "timeout") return SolveStatus::timeout;
  throw FjsError(ErrorCode::syntax, "unknown status '" + std::string(text) + "'");
}

namespace {

using Tick = std::int64_t;
constexpr Tick kInfinity = std::numeric_limits<Tick>::max() / 4;

/// The instance with every time scaled to an integer number of ticks.
struct Problem {
  std::size_t n = 0;
  std::size_t m = 0;
  std::int64_t scale = 1;
  std::vector<std::vector<std::pair<std::uint32_t, Tick>>> opts;  // 0-based machine
  std::vector<std::vector<OpId>> pred;
  std::vector<std::vector<OpId>> succ;
  std::vector<OpId> topo;
  std::vector<Tick> pmin;
  /// Longest min-time path leaving v, v itself excluded.
  std::vector<Tick> tail;
  /// Index of the only eligible machine, or -1.
  std::vector<int> only_machine;

  Tick ticks(const Rational& r) const { return (r * scale).numerator(); }
  Rational time(Tick t) const { return Rational(t, scale); }
};

Problem make_problem(const Instance& instance) {
  Problem pb;
  pb.n = instance.op_count();
  pb.m = instance.machine_count();
  for (OpId v = 0; v < pb.n; ++v) {
    for (const auto& o : instance.options(v)) pb.scale = std::lcm(pb.scale, o.time.denominator());
  }
  pb.opts.resize(pb.n);
  pb.pmin.resize(pb.n);
  pb.only_machine.assign(pb.n, -1);
  for (OpId v = 0; v < pb.n; ++v) {
    for (const auto& o : instance.options(v)) pb.opts[v].emplace_back(o.machine - 1, pb.ticks(o.time));
    pb.pmin[v] = pb.ticks(instance.min_ptime(v));
    if (pb.opts[v].size() == 1) pb.only_machine[v] = static_cast<int>(pb.opts[v][0].first);
    pb.pred.emplace_back(instance.predecessors(v).begin(), instance.predecessors(v).end());
    pb.succ.emplace_back(instance.successors(v).begin(), instance.successors(v).end());
  }
  pb.topo.assign(instance.topological_order().begin(), instance.topological_order().end());
  pb.tail.assign(pb.n, 0);
  for (auto it = pb.topo.rbegin(); it != pb.topo.rend(); ++it) {
    for (const OpId w : pb.succ[*it]) pb.tail[*it] = std::max(pb.tail[*it], pb.pmin[w] + pb.tail[w]);
  }
  return pb;
}

struct Node {
  std::vector<Tick> start;
  std::vector<Tick> completion;  // -1 while unscheduled
  std::vector<std::uint32_t> machine;
  std::vector<Tick> avail;
  std::vector<Tick> ready;
  std::vector<std::uint32_t> missing;
  Tick last_start = 0;
  std::int64_t last_op = -1;
  std::size_t scheduled = 0;
  Tick cmax = 0;
  Tick lb = 0;
};

Node root_node(const Problem& pb) {
  Node node;
  node.start.assign(pb.n, -1);
  node.completion.assign(pb.n, -1);
  node.machine.assign(pb.n, 0);
  node.avail.assign(pb.m, 0);
  node.ready.assign(pb.n, 0);
  node.missing.resize(pb.n);
  for (OpId v = 0; v < pb.n; ++v) node.missing[v] = static_cast<std::uint32_t>(pb.pred[v].size());
  return node;
}

Tick node_bound(const Problem& pb, const Node& node) {
  Tick lb = node.cmax;
  std::vector<Tick> ect(pb.n, 0);
  std::vector<Tick> head(pb.n, 0);
  for (const OpId v : pb.topo) {
    if (node.completion[v] >= 0) continue;
    Tick h = node.last_start;
    for (const OpId u : pb.pred[v]) h = std::max(h, node.completion[u] >= 0 ? node.completion[u] : ect[u]);
    Tick best = kInfinity;
    for (const auto& [k, p] : pb.opts[v]) best = std::min(best, std::max(node.avail[k], h) + p);
    head[v] = h;
    ect[v] = best;
    lb = std::max(lb, best + pb.tail[v]);
  }

  std::vector<Tick> load(pb.m, 0);
  std::vector<Tick> min_head(pb.m, kInfinity);
  std::vector<Tick> min_tail(pb.m, kInfinity);
  Tick work = 0;
  for (OpId v = 0; v < pb.n; ++v) {
    if (node.completion[v] >= 0) continue;
    work += pb.pmin[v];
    const int k = pb.only_machine[v];
    if (k < 0) continue;
    load[k] += pb.pmin[v];
    min_head[k] = std::min(min_head[k], head[v]);
    min_tail[k] = std::min(min_tail[k], pb.tail[v]);
  }
  Tick base = 0;
  for (std::size_t k = 0; k < pb.m; ++k) {
    base += std::max(node.avail[k], node.last_start);
    if (load[k] > 0) lb = std::max(lb, std::max(node.avail[k], min_head[k]) + load[k] + min_tail[k]);
  }
  const Tick total = base + work;
  const Tick m = static_cast<Tick>(pb.m);
  lb = std::max(lb, (total + m - 1) / m);
  return lb;
}

void apply(const Problem& pb, Node& node, OpId w, std::uint32_t k, Tick start, Tick p) {
  node.start[w] = start;
  node.completion[w] = start + p;
  node.machine[w] = k;
  node.avail[k] = start + p;
  for (const OpId s : pb.succ[w]) {
    node.ready[s] = std::max(node.ready[s], start + p);
    --node.missing[s];
  }
  node.last_start = start;
  node.last_op = w;
  ++node.scheduled;
  node.cmax = std::max(node.cmax, start + p);
}

std::vector<Node> expand(const Problem& pb, const Node& node) {
  struct Cand {
    OpId op;
    std::uint32_t machine;
    Tick start;
    Tick p;
  };
  std::vector<Cand> ready;
  Tick cmin = kInfinity;
  for (OpId w = 0; w < pb.n; ++w) {
    if (node.completion[w] >= 0 || node.missing[w] != 0) continue;
    for (const auto& [k, p] : pb.opts[w]) {
      const Tick est = std::max(node.avail[k], node.ready[w]);
      ready.push_back({w, k, est, p});
      cmin = std::min(cmin, est + p);
    }
  }
  std::vector<Node> children;
  for (const Cand& c : ready) {
    if (c.start >= cmin) continue;
    if (c.start < node.last_start) continue;
    if (c.start == node.last_start && static_cast<std::int64_t>(c.op) < node.last_op) continue;
    Node child = node;
    apply(pb, child, c.op, c.machine, c.start, c.p);
    child.lb = std::max(node.lb, node_bound(pb, child));
    children.push_back(std::move(child));
  }
  return children;
}

SolutionPair node_solution(const Problem& pb, const Node& node) {
  std::vector<std::vector<OpId>> seqs(pb.m);
  for (OpId v = 0; v < pb.n; ++v) seqs[node.machine[v]].push_back(v);
  for (auto& seq : seqs) {
    std::sort(seq.begin(), seq.end(), [&](OpId a, OpId b) { return node.start[a] < node.start[b]; });
  }
  SolutionPair sol;
  sol.assignment.machine.resize(pb.n);
  for (OpId v = 0; v < pb.n; ++v) sol.assignment.machine[v] = node.machine[v] + 1;
  sol.selection = Selection::from_sequences(seqs);
  return sol;
}

class Search {
 public:
  Search(const Instance& instance, const Problem& pb, SolveOptions opts)
      : instance_(instance), pb_(pb), opts_(opts), started_(std::chrono::steady_clock::now()) {}

  SolveResult run() {
    const auto incumbent = est(instance_);
    SolveResult result;
    result.est_makespan = incumbent.schedule.makespan;
    best_ = incumbent.solution;
    best_schedule_ = incumbent.schedule;
    ub_.store(pb_.ticks(incumbent.schedule.makespan));

    Node root = root_node(pb_);
    root.lb = node_bound(pb_, root);
    root_lb_ = root.lb;
    history_.push_back({elapsed(), pb_.time(root_lb_), result.est_makespan});

    if (root.lb < ub_.load() && pb_.n > 0) {
      pool_.push_back(std::move(root));
      const unsigned threads = std::max(1U, opts_.threads);
      std::vector<std::thread> workers;
      for (unsigned i = 1; i < threads; ++i) workers.emplace_back([this] { work(); });
      work();
      for (auto& t : workers) t.join();
      for (const Node& node : pool_) note_open(node.lb);
    }

    const Tick ub = ub_.load();
    Tick lb = ub;
    result.status = SolveStatus::optimal;
    if (stopped_.load() && min_open_ < ub) {
      lb = std::max(root_lb_, min_open_);
      result.status = timed_out_.load() ? SolveStatus::timeout : SolveStatus::bound_pair;
    }
    result.solution = best_;
    result.schedule = best_schedule_;
    result.lower_bound = pb_.time(lb);
    result.upper_bound = pb_.time(ub);
    result.nodes = nodes_.load();
    result.elapsed = elapsed();
    history_.push_back({result.elapsed, result.lower_bound, result.upper_bound});
    result.history = std::move(history_);
    return result;
  }

 private:
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - started_).count();
  }

  void note_open(Tick lb) {
    if (lb < ub_.load()) min_open_ = std::min(min_open_, lb);
  }

  void improve(const Node& leaf) {
    std::lock_guard lock(mu_);
    if (leaf.cmax >= ub_.load()) return;
    best_ = node_solution(pb_, leaf);
    best_schedule_ = tight_schedule(instance_, best_);
    ub_.store(pb_.ticks(best_schedule_.makespan));
    history_.push_back({elapsed(), pb_.time(root_lb_), best_schedule_.makespan});
  }

  void stop(bool by_time) {
    if (by_time) timed_out_.store(true);
    stopped_.store(true);
    std::lock_guard lock(mu_);
    cv_.notify_all();
  }

  void work() {
    const unsigned threads = std::max(1U, opts_.threads);
    std::deque<Node> local;
    std::uint64_t since_check = 0;
    for (;;) {
      if (stopped_.load()) {
        std::lock_guard lock(mu_);
        for (const Node& node : local) note_open(node.lb);
        return;
      }
      if (local.empty()) {
        std::unique_lock lock(mu_);
        ++idle_;
        if (idle_ == threads && pool_.empty()) {
          done_ = true;
          cv_.notify_all();
        }
        cv_.wait(lock, [&] { return !pool_.empty() || done_ || stopped_.load(); });
        if (done_ || (stopped_.load() && pool_.empty())) return;
        if (stopped_.load()) return;
        --idle_;
        local.push_back(std::move(pool_.front()));
        pool_.pop_front();
        continue;
      }

      Node node = std::move(local.back());
      local.pop_back();
      if (node.lb >= ub_.load()) continue;

      const auto count = ++nodes_;
      if (opts_.node_limit && count > *opts_.node_limit) {
        {
          std::lock_guard lock(mu_);
          note_open(node.lb);
        }
        stop(false);
        continue;
      }
      if (++since_check >= 256) {
        since_check = 0;
        if (elapsed() > opts_.time_limit) {
          {
            std::lock_guard lock(mu_);
            note_open(node.lb);
          }
          stop(true);
          continue;
        }
      }

      auto children = expand(pb_, node);
      std::sort(children.begin(), children.end(), [](const Node& a, const Node& b) {
        return a.lb != b.lb ? a.lb > b.lb : a.last_start > b.last_start;
      });
      for (auto& child : children) {
        if (child.lb >= ub_.load()) continue;
        if (child.scheduled == pb_.n) {
          improve(child);
        } else {
          local.push_back(std::move(child));
        }
      }

      if (threads > 1 && local.size() > 1 && idle_count() > 0) {
        std::lock_guard lock(mu_);
        pool_.push_back(std::move(local.front()));
        local.pop_front();
        cv_.notify_one();
      }
    }
  }

  unsigned idle_count() {
    std::lock_guard lock(mu_);
    return idle_;
  }

  const Instance& instance_;
  const Problem& pb_;
  SolveOptions opts_;
  std::chrono::steady_clock::time_point started_;

  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<Node> pool_;
  unsigned idle_ = 0;
  bool done_ = false;
  std::atomic<Tick> ub_{0};
  std::atomic<bool> stopped_{false};
  std::atomic<bool> timed_out_{false};
  std::atomic<std::uint64_t> nodes_{0};
  Tick root_lb_ = 0;
  Tick min_open_ = kInfinity;
  SolutionPair best_;
  Schedule best_schedule_;
  std::vector<BoundEvent> history_;
};

}  // namespace

Rational root_lower_bound(const Instance& instance) {
  const Problem pb = make_problem(instance);
  return pb.time(node_bound(pb, root_node(pb)));
}

SolveResult solve_exact(const Instance& instance, SolveOptions opts) {
  if (!(opts.time_limit > 0)) throw FjsError(ErrorCode::invalid_argument, "time limit must be positive");
  if (opts.threads == 0) throw FjsError(ErrorCode::invalid_argument, "thread count must be positive");
  const Problem pb = make_problem(instance);
  Search search(instance, pb, opts);
  return search.run();
}

namespace {

class BruteForce {
 public:
  explicit BruteForce(const Instance& instance) : instance_(instance), n_(instance.op_count()) {
    reach_.assign(n_, std::vector<bool>(n_, false));
    const auto order = instance.topological_order();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      for (const OpId w : instance.successors(*it)) {
        reach_[*it][w] = true;
        for (OpId x = 0; x < n_; ++x) {
          if (reach_[w][x]) reach_[*it][x] = true;
        }
      }
    }
  }

  SolveResult run() {
    MachineAssignment f;
    f.machine.resize(n_);
    std::vector<std::size_t> choice(n_, 0);
    for (;;) {
      for (OpId v = 0; v < n_; ++v) f.machine[v] = instance_.options(v)[choice[v]].machine;
      evaluate(f);
      std::size_t v = 0;
      while (v < n_ && ++choice[v] == instance_.options(static_cast<OpId>(v)).size()) {
        choice[v] = 0;
        ++v;
      }
      if (v == n_) break;
    }
    SolveResult result;
    result.solution = best_;
    result.schedule = best_schedule_;
    result.lower_bound = result.upper_bound = best_schedule_.makespan;
    result.status = SolveStatus::optimal;
    result.nodes = evaluated_;
    result.history.push_back({0.0, result.lower_bound, result.upper_bound});
    return result;
  }

 private:
  void evaluate(const MachineAssignment& f) {
    groups_.assign(instance_.machine_count(), {});
    for (OpId v = 0; v < n_; ++v) groups_[f.machine[v] - 1].push_back(v);
    permute(f, 0);
  }

  bool respects_precedence(const std::vector<OpId>& seq) const {
    for (std::size_t i = 0; i < seq.size(); ++i) {
      for (std::size_t j = i + 1; j < seq.size(); ++j) {
        if (reach_[seq[j]][seq[i]]) return false;
      }
    }
    return true;
  }

  void permute(const MachineAssignment& f, std::size_t k) {
    if (k == groups_.size()) {
      SolutionPair sol{f, Selection::from_sequences(groups_)};
      ++evaluated_;
      if (!is_admissible(instance_, sol)) return;
      Schedule sched = tight_schedule(instance_, sol);
      if (!found_ || sched.makespan < best_schedule_.makespan) {
        found_ = true;
        best_ = std::move(sol);
        best_schedule_ = std::move(sched);
      }
      return;
    }
    auto& group = groups_[k];
    std::sort(group.begin(), group.end());
    do {
      if (respects_precedence(group)) permute(f, k + 1);
    } while (std::next_permutation(group.begin(), group.end()));
  }

  const Instance& instance_;
  std::size_t n_;
  std::vector<std::vector<bool>> reach_;
  std::vector<std::vector<OpId>> groups_;
  bool found_ = false;
  SolutionPair best_;
  Schedule best_schedule_;
  std::uint64_t evaluated_ = 0;
};

}  // namespace

SolveResult brute_force(const Instance& instance, BruteForceOptions opts) {
  if (instance.op_count() > opts.max_ops) {
    throw FjsError(ErrorCode::cap_exceeded, "brute force is capped at " + std::to_string(opts.max_ops) +
                                                " operations, instance has " + std::to_string(instance.op_count()));
  }
  std::uint64_t assignments = 1;
  for (OpId v = 0; v < instance.op_count(); ++v) {
    assignments *= instance.options(v).size();
    if (assignments > opts.max_assignments) {
      throw FjsError(ErrorCode::cap_exceeded, "more than " + std::to_string(opts.max_assignments) +
                                                  " machine assignments");
    }
  }
  return BruteForce(instance).run();
}

}  // namespace fjs
