#include "fjs/generate.hpp"

#include <algorithm>
#include <numeric>

#include "fjs/error.hpp"

namespace fjs::gen {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

std::uint32_t ceil_tenths(std::uint32_t m, std::uint32_t tenths) { return (tenths * m + 9) / 10; }

}  // namespace

Rng::Rng(std::uint64_t seed) {
  for (auto& word : s_) word = splitmix64(seed);
}

std::uint64_t Rng::next() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

std::uint64_t Rng::below(std::uint64_t bound) {
  // 2^64 mod bound values at the bottom of the range are rejected
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = next();
    if (r >= threshold) return r % bound;
  }
}

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

std::vector<std::uint32_t> Rng::subset(std::uint32_t m, std::uint32_t size) {
  std::vector<std::uint32_t> pool(m);
  std::iota(pool.begin(), pool.end(), 1U);
  for (std::uint32_t i = 0; i < size; ++i) {
    const auto j = i + static_cast<std::uint32_t>(below(m - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(size);
  std::sort(pool.begin(), pool.end());
  return pool;
}

std::string_view to_string(DagType type) {
  switch (type) {
    case DagType::D2: return "D2";
    case DagType::D3: return "D3";
    case DagType::A2: return "A2";
    case DagType::A3: return "A3";
    case DagType::DA2: return "DA2";
    case DagType::DA3: return "DA3";
  }
  return "?";
}

std::vector<Arc> yjob_arcs(std::uint32_t ops, std::uint32_t i, std::uint32_t j) {
  std::vector<Arc> arcs;
  for (std::uint32_t a = 1; a < ops; ++a) arcs.push_back({a, a + 1});
  if (i == 1 || j == 1 || i == j) return arcs;
  if (i > j) std::swap(i, j);
  std::erase(arcs, Arc{i - 1, i});
  arcs.push_back({i - 1, j});
  std::sort(arcs.begin(), arcs.end());
  return arcs;
}

Instance gen_yfjs(const YfjsSpec& spec) {
  if (spec.jobs < 1 || spec.ops_per_job < 1 || spec.machines < 1 || spec.max_machines_per_op < 1) {
    throw FjsError(ErrorCode::invalid_argument, "YFJS parameters n, o, m, q must be at least 1");
  }
  if (spec.max_machines_per_op > spec.machines) {
    throw FjsError(ErrorCode::invalid_argument, "YFJS parameter q must not exceed m");
  }
  Rng rng(spec.seed);
  const std::uint32_t o = spec.ops_per_job;
  std::vector<Arc> arcs;
  std::vector<std::uint32_t> job_of;
  for (std::uint32_t job = 0; job < spec.jobs; ++job) {
    const auto i = static_cast<std::uint32_t>(rng.uniform(1, o));
    const auto j = static_cast<std::uint32_t>(rng.uniform(1, o));
    const std::uint32_t base = job * o;
    for (const Arc& a : yjob_arcs(o, i, j)) arcs.push_back({base + a.from - 1, base + a.to - 1});
    job_of.insert(job_of.end(), o, job);
  }
  std::vector<std::vector<MachineOption>> options(static_cast<std::size_t>(spec.jobs) * o);
  for (auto& opts : options) {
    const auto size = static_cast<std::uint32_t>(rng.uniform(1, spec.max_machines_per_op));
    for (const auto k : rng.subset(spec.machines, size)) opts.push_back({k, Rational(rng.uniform(20, 200))});
  }
  return Instance::create(spec.name, spec.machines, std::move(options), std::move(arcs), std::move(job_of));
}

std::uint32_t min_path_length(DagType type) {
  return (type == DagType::DA2 || type == DagType::DA3) ? 3 : 2;
}

namespace {

std::uint32_t branches(DagType type) {
  return (type == DagType::D2 || type == DagType::A2 || type == DagType::DA2) ? 2 : 3;
}

bool disassembles(DagType type) { return type != DagType::A2 && type != DagType::A3; }
bool assembles(DagType type) { return type != DagType::D2 && type != DagType::D3; }

}  // namespace

std::uint32_t dafjs_job_size(DagType type, std::uint32_t left, std::uint32_t middle, std::uint32_t right) {
  return left + branches(type) * middle + right;
}

DafjsInstance gen_dafjs_detailed(const DafjsSpec& spec) {
  if (spec.jobs < 1) throw FjsError(ErrorCode::invalid_argument, "DAFJS needs at least one job");
  if (spec.machines < 3) {
    throw FjsError(ErrorCode::invalid_argument, "DAFJS needs at least three machines");
  }
  const std::uint32_t m = spec.machines;
  Rng rng(spec.seed);

  DafjsInstance out;
  std::vector<Arc> arcs;
  std::vector<std::uint32_t> job_of;
  std::uint32_t next_op = 0;
  for (std::uint32_t job = 0; job < spec.jobs; ++job) {
    DafjsJob shape;
    shape.type = static_cast<DagType>(rng.below(6));
    do {
      shape.path_length = static_cast<std::uint32_t>(rng.uniform((m + 1) / 2, m));
    } while (shape.path_length < min_path_length(shape.type));
    const std::uint32_t len = shape.path_length;
    if (!assembles(shape.type)) {
      shape.left = static_cast<std::uint32_t>(rng.uniform(1, len - 1));
      shape.middle = len - shape.left;
    } else if (!disassembles(shape.type)) {
      shape.middle = static_cast<std::uint32_t>(rng.uniform(1, len - 1));
      shape.right = len - shape.middle;
    } else {
      // (left, middle) pairs with right >= 1, enumerated lexicographically
      const std::uint64_t splits = static_cast<std::uint64_t>(len - 1) * (len - 2) / 2;
      std::uint64_t idx = rng.below(splits);
      shape.left = 1;
      while (idx >= len - 1 - shape.left) {
        idx -= len - 1 - shape.left;
        ++shape.left;
      }
      shape.middle = static_cast<std::uint32_t>(idx) + 1;
      shape.right = len - shape.left - shape.middle;
    }
    shape.first_op = next_op;
    shape.op_count = dafjs_job_size(shape.type, shape.left, shape.middle, shape.right);

    auto chain = [&](std::uint32_t first, std::uint32_t count) {
      for (std::uint32_t a = 1; a < count; ++a) arcs.push_back({first + a - 1, first + a});
    };
    const std::uint32_t left_first = next_op;
    chain(left_first, shape.left);
    const std::uint32_t branch_first = left_first + shape.left;
    const std::uint32_t right_first = branch_first + branches(shape.type) * shape.middle;
    for (std::uint32_t b = 0; b < branches(shape.type); ++b) {
      const std::uint32_t first = branch_first + b * shape.middle;
      chain(first, shape.middle);
      if (shape.left > 0) arcs.push_back({branch_first - 1, first});
      if (shape.right > 0) arcs.push_back({first + shape.middle - 1, right_first});
    }
    chain(right_first, shape.right);
    job_of.insert(job_of.end(), shape.op_count, job);
    next_op += shape.op_count;
    out.jobs.push_back(shape);
  }

  std::vector<std::vector<MachineOption>> options(next_op);
  const std::uint32_t lo = ceil_tenths(m, 3);
  const std::uint32_t hi = ceil_tenths(m, 7);
  for (auto& opts : options) {
    const auto size = static_cast<std::uint32_t>(rng.uniform(lo, hi));
    const auto machines = rng.subset(m, size);
    const auto base_idx = static_cast<std::size_t>(rng.below(size));
    const std::int64_t base = rng.uniform(1, 99);
    for (std::size_t i = 0; i < machines.size(); ++i) {
      const std::int64_t time = i == base_idx ? base : rng.uniform(base, std::min<std::int64_t>(3 * base, 99));
      opts.push_back({machines[i], Rational(time)});
    }
  }
  out.instance = Instance::create(spec.name, m, std::move(options), std::move(arcs), std::move(job_of));
  return out;
}

Instance gen_dafjs(const DafjsSpec& spec) { return gen_dafjs_detailed(spec).instance; }

}  // namespace fjs::gen
