#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fjs/instance.hpp"

namespace fjs::gen {

/// xoshiro256** seeded through splitmix64. Bounded draws use rejection
/// sampling so every value is exactly uniform and the stream is
/// reproducible in any language.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next();
  /// Uniform in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  /// Uniform size-`size` subset of {1..m}, ascending (partial Fisher-Yates).
  std::vector<std::uint32_t> subset(std::uint32_t m, std::uint32_t size);

 private:
  std::array<std::uint64_t, 4> s_{};
};

struct YfjsSpec {
  std::uint32_t jobs = 1;
  std::uint32_t ops_per_job = 1;
  std::uint32_t machines = 1;
  std::uint32_t max_machines_per_op = 1;
  std::uint64_t seed = 0;
  std::string name = "YFJS";
};

enum class DagType { D2, D3, A2, A3, DA2, DA3 };

std::string_view to_string(DagType type);

struct DafjsSpec {
  std::uint32_t jobs = 1;
  std::uint32_t machines = 3;
  std::uint64_t seed = 0;
  std::string name = "DAFJS";
};

/// Shape of one generated DAFJS job.
struct DafjsJob {
  DagType type = DagType::D2;
  std::uint32_t path_length = 0;
  std::uint32_t left = 0;
  std::uint32_t middle = 0;
  std::uint32_t right = 0;
  std::uint32_t first_op = 0;
  std::uint32_t op_count = 0;
};

struct DafjsInstance {
  Instance instance;
  std::vector<DafjsJob> jobs;
};

/// Y-job instances. Draw order: for every job the pair (i, j) of rewrite
/// positions; then, for every operation in id order, |F(v)| uniform in
/// {1..q}, F(v) as a uniform subset, and one time in {20..200} per machine
/// of F(v) in ascending machine order.
Instance gen_yfjs(const YfjsSpec& spec);

/// General dag instances. Draw order: for every job the type, the maximal
/// path length and the section split; then, for every operation in id
/// order, |F(v)|, F(v), the base machine, its time and the other times in
/// ascending machine order.
DafjsInstance gen_dafjs_detailed(const DafjsSpec& spec);
Instance gen_dafjs(const DafjsSpec& spec);

/// Arcs of one Y-job over operations 1..o after rewriting with positions
/// (i, j): unchanged when i == 1, j == 1 or i == j; otherwise, with i < j,
/// arc (i-1, i) is replaced by (i-1, j). Operation numbers are 1-based.
std::vector<Arc> yjob_arcs(std::uint32_t ops, std::uint32_t i, std::uint32_t j);

/// Operation count of a DAFJS job with the given sections.
std::uint32_t dafjs_job_size(DagType type, std::uint32_t left, std::uint32_t middle, std::uint32_t right);

/// Smallest maximal-path length a type admits with every section non-empty.
std::uint32_t min_path_length(DagType type);

}  // namespace fjs::gen
