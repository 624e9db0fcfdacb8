#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "fjs/error.hpp"
#include "fjs/exact.hpp"
#include "fjs/generate.hpp"
#include "fjs/heuristic.hpp"
#include "fjs/io.hpp"
#include "fjs/milp.hpp"
#include "fjs/model_io.hpp"

namespace fjs::cli {

namespace {

constexpr const char* kVersion = "1.0.0";

struct Options {
  // generate
  std::uint32_t n = 0;
  std::uint32_t o = 0;
  std::uint32_t m = 0;
  std::uint32_t q = 0;
  std::uint64_t seed = 0;
  std::string name;
  // solve
  std::string method = "bnb";
  double time_limit = 3600.0;
  unsigned threads = 1;
  std::optional<std::uint64_t> node_limit;
  // emit / decode
  std::string model = "new";
  std::string format = "lp";
  std::string bound = "auto";
  std::string point;
  std::string tol = "0";
  // shared
  std::string in;
  std::string sol;
  std::string dir;
  std::string out;
};

void emit(const std::string& path, std::string_view content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
  } else {
    io::write_file(path, content);
  }
}

Instance load_instance(const std::string& path) { return io::parse_instance(io::read_file(path)); }

Rational resolve_bound(const Instance& instance, const std::string& text) {
  if (text == "auto") return milp::default_bound(instance, est(instance).schedule.makespan);
  const Rational bound = parse_rational(text);
  if (bound <= 0) throw FjsError(ErrorCode::invalid_argument, "--L must be positive");
  return bound;
}

/// Solver info for a solution that only carries an upper bound.
io::SolverInfo heuristic_info(const Instance& instance, std::string method, const Rational& makespan,
                              double elapsed) {
  io::SolverInfo info;
  info.method = std::move(method);
  info.lower_bound = std::min(root_lower_bound(instance), makespan);
  info.upper_bound = makespan;
  info.status = info.lower_bound >= info.upper_bound ? SolveStatus::optimal : SolveStatus::bound_pair;
  info.elapsed = elapsed;
  return info;
}

int cmd_generate_yfjs(const Options& opt, std::ostream& out) {
  gen::YfjsSpec spec{opt.n, opt.o, opt.m, opt.q, opt.seed, opt.name.empty() ? "YFJS" : opt.name};
  emit(opt.out, io::serialize_instance(gen::gen_yfjs(spec)), out);
  return kOk;
}

int cmd_generate_dafjs(const Options& opt, std::ostream& out) {
  gen::DafjsSpec spec{opt.n, opt.m, opt.seed, opt.name.empty() ? "DAFJS" : opt.name};
  emit(opt.out, io::serialize_instance(gen::gen_dafjs(spec)), out);
  return kOk;
}

int cmd_solve(const Options& opt, std::ostream& out, std::ostream& err) {
  const Instance instance = load_instance(opt.in);
  io::SolutionRecord record;
  if (opt.method == "est") {
    const auto start = std::chrono::steady_clock::now();
    const EstResult r = est(instance);
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    io::SolverInfo info = heuristic_info(instance, "est", r.schedule.makespan, elapsed);
    info.est_makespan = r.schedule.makespan;
    record = io::make_record(instance, r.solution, r.schedule, info);
  } else {
    SolveOptions so;
    so.time_limit = opt.time_limit;
    so.threads = opt.threads;
    so.node_limit = opt.node_limit;
    const SolveResult r = solve_exact(instance, so);
    io::SolverInfo info{"bnb", r.status, r.lower_bound, r.upper_bound, r.elapsed, r.nodes, r.est_makespan};
    record = io::make_record(instance, r.solution, r.schedule, info);
  }
  if (!opt.out.empty()) io::write_file(opt.out, io::serialize_solution(record));
  const auto& info = record.solver;
  std::ostream& summary = opt.out.empty() ? err : out;
  summary << "mks " << to_string(record.schedule.makespan) << " status " << to_string(info.status) << " lb "
          << to_string(info.lower_bound) << " ub " << to_string(info.upper_bound) << " nodes " << info.nodes << "\n";
  if (opt.out.empty()) out << io::serialize_solution(record);
  const bool stopped = info.method == "bnb" && info.status != SolveStatus::optimal;
  return stopped ? kTimeoutWithBounds : kOk;
}

int cmd_emit(const Options& opt, std::ostream& out) {
  const Instance instance = load_instance(opt.in);
  const auto kind = milp::parse_model_kind(opt.model);
  const Rational bound = resolve_bound(instance, opt.bound);
  const auto model = milp::build_model(kind, instance, bound);
  emit(opt.out, opt.format == "mps" ? milp::write_mps(model) : milp::write_lp(model), out);
  return kOk;
}

void print_issues(const ValidationReport& report, std::ostream& err) {
  for (const auto& issue : report.issues) {
    err << to_string(issue.kind);
    if (!issue.subject.empty()) err << " [" << issue.subject << "]";
    err << ": " << issue.message << "\n";
  }
}

int cmd_validate(const Options& opt, std::ostream& out, std::ostream& err) {
  Instance instance;
  try {
    instance = load_instance(opt.in);
  } catch (const FjsError& e) {
    err << "invalid instance (" << to_string(e.code()) << "): " << e.what() << "\n";
    return kValidationFailure;
  }
  if (opt.sol.empty()) {
    const auto size = io::instance_size(instance);
    out << "ok: instance " << instance.name() << " (" << io::size_cell(size) << ")\n";
    return kOk;
  }
  io::SolutionRecord rec;
  try {
    rec = io::parse_solution(io::read_file(opt.sol));
  } catch (const FjsError& e) {
    err << "invalid solution (" << to_string(e.code()) << "): " << e.what() << "\n";
    return kValidationFailure;
  }
  if (rec.instance != instance.name()) {
    err << "warning: solution names instance '" << rec.instance << "', file holds '" << instance.name() << "'\n";
  }
  const auto report = validate_solution(instance, rec.solution, rec.schedule);
  if (!report.ok()) {
    print_issues(report, err);
    return kValidationFailure;
  }
  out << "ok: solution for " << instance.name() << ", makespan " << to_string(rec.schedule.makespan) << "\n";
  return kOk;
}

int cmd_decode(const Options& opt, std::ostream& out, std::ostream& err) {
  const Instance instance = load_instance(opt.in);
  const auto kind = milp::parse_model_kind(opt.model);
  milp::DecodeOptions dopt;
  dopt.tol = parse_rational(opt.tol);
  milp::Decoded decoded;
  try {
    const auto point = io::parse_point(io::read_file(opt.point));
    decoded = kind == milp::ModelKind::new_model ? milp::decode_new(instance, point, dopt)
                                                 : milp::decode_ooy(instance, point, dopt);
  } catch (const FjsError& e) {
    err << "cannot decode point (" << to_string(e.code()) << "): " << e.what() << "\n";
    return kValidationFailure;
  }
  const auto info =
      heuristic_info(instance, "milp-" + std::string(milp::to_string(kind)), decoded.schedule.makespan, 0.0);
  const auto record = io::make_record(instance, decoded.solution, decoded.schedule, info);
  emit(opt.out, io::serialize_solution(record), out);
  err << "mks " << to_string(decoded.schedule.makespan) << " (point start times give "
      << to_string(decoded.point_schedule.makespan) << ")\n";
  return kOk;
}

int cmd_report(const Options& opt, std::ostream& out) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(opt.dir)) {
    const auto name = entry.path().filename().string();
    if (entry.is_regular_file() && name.size() > 9 && name.ends_with(".sol.json")) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<io::ReportRow> rows;
  for (const auto& f : files) {
    try {
      rows.push_back(io::report_row(io::parse_solution(io::read_file(f))));
    } catch (const FjsError& e) {
      throw FjsError(e.code(), f.string() + ": " + e.what());
    }
  }
  emit(opt.out, io::render_report(rows), out);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Flexible job shop scheduling with precedence dags", "fjs"};
  app.require_subcommand(1);
  app.set_version_flag("--version",
                       std::string("fjs ") + kVersion + "\n" + std::string(io::kInstanceFormat) + "\n" +
                           std::string(io::kSolutionFormat) + "\n" + std::string(io::kPointFormat) + "\n" +
                           std::string(io::kReportFormat));
  Options opt;

  auto* generate = app.add_subcommand("generate", "Generate a random instance");
  generate->require_subcommand(1);
  auto* yfjs = generate->add_subcommand("yfjs", "Instance of Y-jobs");
  yfjs->add_option("--n", opt.n, "Number of jobs")->required()->check(CLI::PositiveNumber);
  yfjs->add_option("--o", opt.o, "Operations per job")->required()->check(CLI::PositiveNumber);
  yfjs->add_option("--m", opt.m, "Number of machines")->required()->check(CLI::PositiveNumber);
  yfjs->add_option("--q", opt.q, "Maximum machines per operation")->required()->check(CLI::PositiveNumber);
  yfjs->add_option("--seed", opt.seed, "Random seed")->required();
  yfjs->add_option("--name", opt.name, "Instance name");
  yfjs->add_option("--out", opt.out, "Output file (default: stdout)");
  auto* dafjs = generate->add_subcommand("dafjs", "Instance of assembly/disassembly dag jobs");
  dafjs->add_option("--n", opt.n, "Number of jobs")->required()->check(CLI::PositiveNumber);
  dafjs->add_option("--m", opt.m, "Number of machines")->required()->check(CLI::Range(3U, 1000000U));
  dafjs->add_option("--seed", opt.seed, "Random seed")->required();
  dafjs->add_option("--name", opt.name, "Instance name");
  dafjs->add_option("--out", opt.out, "Output file (default: stdout)");

  auto* solve = app.add_subcommand("solve", "Solve an instance");
  solve->add_option("--method", opt.method, "est or bnb")->check(CLI::IsMember({"est", "bnb"}));
  solve->add_option("--time-limit", opt.time_limit, "Seconds")->check(CLI::PositiveNumber);
  solve->add_option("--threads", opt.threads, "Search threads")->check(CLI::PositiveNumber);
  solve->add_option("--node-limit", opt.node_limit, "Stop after this many nodes");
  solve->add_option("--in", opt.in, "Instance file")->required()->check(CLI::ExistingFile);
  solve->add_option("--out", opt.out, "Solution file (default: stdout)");

  auto* emit_cmd = app.add_subcommand("emit", "Write a MILP model");
  emit_cmd->add_option("--model", opt.model, "new or ooy")->check(CLI::IsMember({"new", "ooy"}));
  emit_cmd->add_option("--format", opt.format, "lp or mps")->check(CLI::IsMember({"lp", "mps"}));
  emit_cmd->add_option("--L", opt.bound, "Big-M: auto or a positive number");
  emit_cmd->add_option("--in", opt.in, "Instance file")->required()->check(CLI::ExistingFile);
  emit_cmd->add_option("--out", opt.out, "Model file (default: stdout)");

  auto* validate = app.add_subcommand("validate", "Check an instance and optionally a solution");
  validate->add_option("--in", opt.in, "Instance file")->required()->check(CLI::ExistingFile);
  validate->add_option("--sol", opt.sol, "Solution file")->check(CLI::ExistingFile);

  auto* decode = app.add_subcommand("decode", "Turn a MILP point into a solution");
  decode->add_option("--model", opt.model, "new or ooy")->check(CLI::IsMember({"new", "ooy"}));
  decode->add_option("--in", opt.in, "Instance file")->required()->check(CLI::ExistingFile);
  decode->add_option("--point", opt.point, "Point file (JSON or 'name value' lines)")->required()->check(CLI::ExistingFile);
  decode->add_option("--tol", opt.tol, "Tolerance for binaries and constraints");
  decode->add_option("--out", opt.out, "Solution file (default: stdout)");

  auto* report = app.add_subcommand("report", "Tabulate the solution files of a directory");
  report->add_option("--dir", opt.dir, "Directory holding *.sol.json files")->required()->check(CLI::ExistingDirectory);
  report->add_option("--out", opt.out, "Report file (default: stdout)");

  // CLI11 consumes the arguments back to front, without the program name
  std::vector<std::string> reversed(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(reversed.begin(), reversed.end());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (yfjs->parsed()) return cmd_generate_yfjs(opt, out);
    if (dafjs->parsed()) return cmd_generate_dafjs(opt, out);
    if (solve->parsed()) return cmd_solve(opt, out, err);
    if (emit_cmd->parsed()) return cmd_emit(opt, out);
    if (validate->parsed()) return cmd_validate(opt, out, err);
    if (decode->parsed()) return cmd_decode(opt, out, err);
    if (report->parsed()) return cmd_report(opt, out);
  } catch (const FjsError& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return e.code() == ErrorCode::invalid_argument ? kUsage : kValidationFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kValidationFailure;
  }
  return kUsage;
}

}  // namespace fjs::cli
