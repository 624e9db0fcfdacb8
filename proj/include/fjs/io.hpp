#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fjs/core.hpp"
#include "fjs/exact.hpp"
#include "fjs/instance.hpp"
#include "fjs/milp.hpp"

namespace fjs::io {

inline constexpr std::string_view kInstanceFormat = "fjs-instance/1";
inline constexpr std::string_view kSolutionFormat = "fjs-solution/1";
inline constexpr std::string_view kPointFormat = "fjs-point/1";
inline constexpr std::string_view kReportFormat = "fjs-report/1";

/// Canonical JSON: sorted keys, two-space indent, trailing newline.
std::string serialize_instance(const Instance& instance);
/// Throws FjsError(syntax) with position or field context on malformed
/// documents, and the instance error codes on semantic problems.
Instance parse_instance(std::string_view document);

struct InstanceSize {
  std::size_t jobs = 0;
  std::size_t ops_min = 0;
  std::size_t ops_max = 0;
  std::uint32_t machines = 0;

  friend bool operator==(const InstanceSize&, const InstanceSize&) = default;
};

/// Jobs come from the job metadata when present, otherwise from the weakly
/// connected components of the precedence dag.
InstanceSize instance_size(const Instance& instance);

struct SolverInfo {
  std::string method;
  SolveStatus status = SolveStatus::optimal;
  Rational lower_bound;
  Rational upper_bound;
  double elapsed = 0;
  std::uint64_t nodes = 0;
  std::optional<Rational> est_makespan;

  friend bool operator==(const SolverInfo&, const SolverInfo&) = default;
};

struct SolutionRecord {
  std::string instance;
  InstanceSize size;
  SolutionPair solution;
  Schedule schedule;
  SolverInfo solver;
};

SolutionRecord make_record(const Instance& instance, const SolutionPair& sol, const Schedule& sched,
                           SolverInfo solver);
std::string serialize_solution(const SolutionRecord& record);
SolutionRecord parse_solution(std::string_view document);

/// JSON point files, or plain "name value" lines as written by most MILP
/// solvers (blank lines and lines starting with '#' are skipped).
milp::ModelPoint parse_point(std::string_view document);
std::string serialize_point(const milp::ModelPoint& point, milp::ModelKind kind);

struct ReportRow {
  std::string name;
  InstanceSize size;
  std::optional<Rational> est_makespan;
  std::string method;
  SolveStatus status = SolveStatus::optimal;
  Rational lower_bound;
  Rational upper_bound;
  double cpu_seconds = 0;
};

ReportRow report_row(const SolutionRecord& record);

/// "66" for optima, "[859;881] 2.50%" for bound pairs (gap = (ub - lb) / ub).
std::string mks_cell(const ReportRow& row);
std::string size_cell(const InstanceSize& size);

/// Fixed-width text table with columns Instance, Size, EST, Method, mks,
/// CPU(s). An empty row set renders the header only.
std::string render_report(const std::vector<ReportRow>& rows);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace fjs::io
