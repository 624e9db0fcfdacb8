#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fjs/generate.hpp"
#include "fjs/instance.hpp"

namespace fjs::testing {

/// Smallest integer c with 10 c >= tenths * m, i.e. ceil(tenths/10 * m).
inline std::uint32_t ceil_tenths_oracle(std::uint32_t m, std::uint32_t tenths) {
  std::uint32_t c = 0;
  while (10 * c < tenths * m) ++c;
  return c;
}

inline std::map<std::uint32_t, std::vector<OpId>> ops_by_job(const Instance& inst) {
  std::map<std::uint32_t, std::vector<OpId>> jobs;
  for (OpId v = 0; v < inst.op_count(); ++v) jobs[inst.job_of()[v]].push_back(v);
  return jobs;
}

/// Node counts of every maximal (source to sink) path among `ops`.
inline std::set<std::size_t> maximal_path_lengths(const Instance& inst, const std::vector<OpId>& ops) {
  std::set<std::size_t> lengths;
  std::function<void(OpId, std::size_t)> walk = [&](OpId v, std::size_t len) {
    if (inst.successors(v).empty()) {
      lengths.insert(len);
      return;
    }
    for (const OpId w : inst.successors(v)) walk(w, len + 1);
  };
  for (const OpId v : ops) {
    if (inst.predecessors(v).empty()) walk(v, 1);
  }
  return lengths;
}

/// Empty when every Y-job invariant holds, otherwise a description of the
/// first violation.
inline std::string check_yfjs(const Instance& inst, const gen::YfjsSpec& spec) {
  const std::uint32_t o = spec.ops_per_job;
  if (inst.op_count() != static_cast<std::size_t>(spec.jobs) * o) return "wrong operation count";
  if (inst.job_of().size() != inst.op_count()) return "missing job metadata";
  if (inst.machine_count() != spec.machines) return "wrong machine count";
  for (OpId v = 0; v < inst.op_count(); ++v) {
    const auto opts = inst.options(v);
    if (opts.empty() || opts.size() > spec.max_machines_per_op) return "|F(v)| out of range at " + std::to_string(v);
    for (const auto& opt : opts) {
      if (opt.time < 20 || opt.time > 200 || !is_integral(opt.time)) return "time out of range at " + std::to_string(v);
    }
  }
  for (const auto& [job, ops] : ops_by_job(inst)) {
    if (ops.size() != o) return "job " + std::to_string(job) + " has the wrong size";
    const OpId first = ops.front();
    std::size_t arcs = 0;
    std::size_t skips = 0;
    std::size_t indegree_two = 0;
    for (std::size_t i = 0; i < ops.size(); ++i) {
      const OpId v = ops[i];
      if (v != first + i) return "job operations are not contiguous";
      if (inst.predecessors(v).size() > 2) return "in-degree above two";
      if (inst.predecessors(v).size() == 2) ++indegree_two;
      if (inst.successors(v).size() > 1) return "out-degree above one";
      for (const OpId w : inst.successors(v)) {
        if (inst.job_of()[w] != job) return "arc between jobs";
        if (w <= v) return "backward arc";
        if (w != v + 1) ++skips;
        ++arcs;
      }
    }
    if (arcs != o - 1) return "job " + std::to_string(job) + " does not have o - 1 arcs";
    if (skips > 1 || indegree_two != skips) return "job " + std::to_string(job) + " is not a Y-job";
    if (!inst.successors(ops.back()).empty()) return "last operation is not the sink";
  }
  return {};
}

inline std::string check_dafjs(const gen::DafjsInstance& out, const gen::DafjsSpec& spec) {
  const Instance& inst = out.instance;
  const std::uint32_t m = spec.machines;
  if (out.jobs.size() != spec.jobs) return "wrong job count";
  if (inst.machine_count() != m) return "wrong machine count";
  const std::uint32_t fmin = ceil_tenths_oracle(m, 3);
  const std::uint32_t fmax = ceil_tenths_oracle(m, 7);
  for (OpId v = 0; v < inst.op_count(); ++v) {
    const auto opts = inst.options(v);
    if (opts.size() < fmin || opts.size() > fmax) return "|F(v)| out of range at " + std::to_string(v);
    const Rational base = inst.min_ptime(v);
    if (base < 1 || base > 99 || !is_integral(base)) return "base time out of range at " + std::to_string(v);
    for (const auto& opt : opts) {
      if (!is_integral(opt.time) || opt.time > std::min(3 * base, Rational(99))) {
        return "time outside [p, min(3p, 99)] at " + std::to_string(v);
      }
    }
  }
  const auto jobs = ops_by_job(inst);
  if (jobs.size() != spec.jobs) return "job metadata disagrees with the job list";
  for (std::uint32_t j = 0; j < spec.jobs; ++j) {
    const auto& shape = out.jobs[j];
    const auto& ops = jobs.at(j);
    if (ops.size() != shape.op_count) return "job " + std::to_string(j) + " size disagrees with its shape";
    const auto lengths = maximal_path_lengths(inst, ops);
    if (lengths.size() != 1) return "job " + std::to_string(j) + " has maximal paths of different lengths";
    const std::size_t len = *lengths.begin();
    if (len != shape.path_length || 2 * len < m || len > m) {
      return "job " + std::to_string(j) + " path length out of range";
    }
    std::size_t splitting = 0;
    std::size_t joining = 0;
    std::size_t fan = 0;
    for (const OpId v : ops) {
      for (const OpId w : inst.successors(v)) {
        if (inst.job_of()[w] != j) return "arc between jobs";
      }
      if (inst.successors(v).size() > 1) {
        ++splitting;
        fan = inst.successors(v).size();
      }
      if (inst.predecessors(v).size() > 1) {
        ++joining;
        fan = inst.predecessors(v).size();
      }
    }
    const auto type = shape.type;
    const bool d = type == gen::DagType::D2 || type == gen::DagType::D3;
    const bool a = type == gen::DagType::A2 || type == gen::DagType::A3;
    const std::size_t branches =
        (type == gen::DagType::D2 || type == gen::DagType::A2 || type == gen::DagType::DA2) ? 2 : 3;
    if (splitting != (a ? 0U : 1U)) return "job " + std::to_string(j) + " has the wrong number of disassembling nodes";
    if (joining != (d ? 0U : 1U)) return "job " + std::to_string(j) + " has the wrong number of assembling nodes";
    if (fan != branches) return "job " + std::to_string(j) + " has the wrong number of branches";
    const std::size_t expected = shape.left + branches * shape.middle + shape.right;
    if (expected != ops.size()) return "job " + std::to_string(j) + " sections do not add up";
  }
  return {};
}

}  // namespace fjs::testing
