#include "fjs/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "fjs/error.hpp"

namespace fjs::io {

using nlohmann::json;

namespace {

json rational_json(const Rational& r) {
  if (is_integral(r)) return r.numerator();
  return to_string(r);
}

[[noreturn]] void field_error(const std::string& where, const std::string& what) {
  throw FjsError(ErrorCode::syntax, where + ": " + what);
}

Rational rational_from(const json& j, const std::string& where, bool allow_float = false) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const FjsError& e) {
      field_error(where, e.what());
    }
  }
  if (allow_float && j.is_number_float()) return parse_rational(j.dump());
  field_error(where, "expected an integer or a \"p/q\" string");
}

const json& member(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) field_error(where, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) field_error(where, std::string("missing field '") + key + "'");
  return *it;
}

std::uint64_t unsigned_from(const json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) field_error(where, "expected a non-negative integer");
  return j.get<std::uint64_t>();
}

json parse_document(std::string_view document) {
  try {
    return json::parse(document);
  } catch (const json::parse_error& e) {
    throw FjsError(ErrorCode::syntax, std::string("malformed JSON: ") + e.what());
  }
}

void check_format(const json& doc, std::string_view expected) {
  const auto& f = member(doc, "format", "document");
  if (!f.is_string() || f.get<std::string>() != expected) {
    field_error("format", "expected \"" + std::string(expected) + "\"");
  }
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

json size_json(const InstanceSize& size) {
  return json{{"jobs", size.jobs}, {"machines", size.machines}, {"ops_max", size.ops_max}, {"ops_min", size.ops_min}};
}

}  // namespace

std::string serialize_instance(const Instance& instance) {
  json doc;
  doc["format"] = kInstanceFormat;
  doc["name"] = instance.name();
  doc["machines"] = instance.machine_count();
  json ops = json::array();
  for (OpId v = 0; v < instance.op_count(); ++v) {
    json options = json::array();
    for (const auto& o : instance.options(v)) options.push_back(json::array({o.machine, rational_json(o.time)}));
    ops.push_back(json{{"id", v}, {"options", std::move(options)}});
  }
  doc["operations"] = std::move(ops);
  json arcs = json::array();
  for (const Arc& a : instance.arcs()) arcs.push_back(json::array({a.from, a.to}));
  doc["arcs"] = std::move(arcs);
  if (!instance.job_of().empty()) doc["jobs"] = std::vector<std::uint32_t>(instance.job_of().begin(), instance.job_of().end());
  return dump(doc);
}

Instance parse_instance(std::string_view document) {
  const json doc = parse_document(document);
  check_format(doc, kInstanceFormat);
  const auto& name = member(doc, "name", "document");
  if (!name.is_string()) field_error("name", "expected a string");
  const auto machines = unsigned_from(member(doc, "machines", "document"), "machines");

  const auto& ops = member(doc, "operations", "document");
  if (!ops.is_array()) field_error("operations", "expected an array");
  std::vector<std::vector<MachineOption>> options;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const std::string where = "operations[" + std::to_string(i) + "]";
    const auto id = unsigned_from(member(ops[i], "id", where), where + ".id");
    if (id != i) field_error(where + ".id", "operation ids must be 0..n-1 in file order");
    const auto& opts = member(ops[i], "options", where);
    if (!opts.is_array()) field_error(where + ".options", "expected an array");
    std::vector<MachineOption> parsed;
    for (std::size_t j = 0; j < opts.size(); ++j) {
      const std::string w = where + ".options[" + std::to_string(j) + "]";
      if (!opts[j].is_array() || opts[j].size() != 2) field_error(w, "expected [machine, time]");
      parsed.push_back({static_cast<MachineId>(unsigned_from(opts[j][0], w)), rational_from(opts[j][1], w)});
    }
    options.push_back(std::move(parsed));
  }

  const auto& arcs_json = member(doc, "arcs", "document");
  if (!arcs_json.is_array()) field_error("arcs", "expected an array");
  std::vector<Arc> arcs;
  for (std::size_t i = 0; i < arcs_json.size(); ++i) {
    const std::string w = "arcs[" + std::to_string(i) + "]";
    if (!arcs_json[i].is_array() || arcs_json[i].size() != 2) field_error(w, "expected [from, to]");
    arcs.push_back({static_cast<OpId>(unsigned_from(arcs_json[i][0], w)),
                    static_cast<OpId>(unsigned_from(arcs_json[i][1], w))});
  }

  std::vector<std::uint32_t> job_of;
  if (const auto it = doc.find("jobs"); it != doc.end()) {
    if (!it->is_array()) field_error("jobs", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      job_of.push_back(static_cast<std::uint32_t>(unsigned_from((*it)[i], "jobs[" + std::to_string(i) + "]")));
    }
  }
  return Instance::create(name.get<std::string>(), static_cast<std::uint32_t>(machines), std::move(options),
                          std::move(arcs), std::move(job_of));
}

InstanceSize instance_size(const Instance& instance) {
  std::vector<std::uint32_t> job;
  if (!instance.job_of().empty()) {
    job.assign(instance.job_of().begin(), instance.job_of().end());
  } else {
    job = graph::weak_components(instance.op_count(), instance.arcs());
  }
  std::map<std::uint32_t, std::size_t> counts;
  for (const auto j : job) ++counts[j];
  InstanceSize size;
  size.machines = instance.machine_count();
  size.jobs = counts.size();
  for (const auto& [j, c] : counts) {
    size.ops_min = size.ops_min == 0 ? c : std::min(size.ops_min, c);
    size.ops_max = std::max(size.ops_max, c);
  }
  return size;
}

SolutionRecord make_record(const Instance& instance, const SolutionPair& sol, const Schedule& sched,
                           SolverInfo solver) {
  return {instance.name(), instance_size(instance), sol, sched, std::move(solver)};
}

std::string serialize_solution(const SolutionRecord& record) {
  const std::size_t n = record.solution.assignment.machine.size();
  std::uint32_t machines = record.size.machines;
  for (const auto k : record.solution.assignment.machine) machines = std::max(machines, k);

  // per-machine sequences in processing order
  std::vector<std::size_t> rank(n, 0);
  for (const Arc& a : record.solution.selection.pairs) {
    if (a.to < n) ++rank[a.to];
  }
  std::vector<std::vector<OpId>> seqs(machines);
  for (OpId v = 0; v < n; ++v) seqs[record.solution.assignment.machine[v] - 1].push_back(v);
  for (auto& seq : seqs) {
    std::stable_sort(seq.begin(), seq.end(), [&](OpId a, OpId b) { return rank[a] < rank[b]; });
  }

  json doc;
  doc["format"] = kSolutionFormat;
  doc["instance"] = record.instance;
  doc["size"] = size_json(record.size);
  doc["assignment"] = record.solution.assignment.machine;
  doc["sequences"] = seqs;
  json start = json::array();
  for (const auto& s : record.schedule.start) start.push_back(rational_json(s));
  doc["start"] = std::move(start);
  doc["makespan"] = rational_json(record.schedule.makespan);
  doc["critical_path"] = record.schedule.critical_path;
  json solver;
  solver["method"] = record.solver.method;
  solver["status"] = to_string(record.solver.status);
  solver["lower_bound"] = rational_json(record.solver.lower_bound);
  solver["upper_bound"] = rational_json(record.solver.upper_bound);
  solver["elapsed"] = std::round(record.solver.elapsed * 1000.0) / 1000.0;
  solver["nodes"] = record.solver.nodes;
  if (record.solver.est_makespan) solver["est_makespan"] = rational_json(*record.solver.est_makespan);
  doc["solver"] = std::move(solver);
  return dump(doc);
}

SolutionRecord parse_solution(std::string_view document) {
  const json doc = parse_document(document);
  check_format(doc, kSolutionFormat);
  SolutionRecord rec;
  const auto& name = member(doc, "instance", "document");
  if (!name.is_string()) field_error("instance", "expected a string");
  rec.instance = name.get<std::string>();

  const auto& size = member(doc, "size", "document");
  rec.size.jobs = unsigned_from(member(size, "jobs", "size"), "size.jobs");
  rec.size.machines = static_cast<std::uint32_t>(unsigned_from(member(size, "machines", "size"), "size.machines"));
  rec.size.ops_min = unsigned_from(member(size, "ops_min", "size"), "size.ops_min");
  rec.size.ops_max = unsigned_from(member(size, "ops_max", "size"), "size.ops_max");

  const auto& assignment = member(doc, "assignment", "document");
  if (!assignment.is_array()) field_error("assignment", "expected an array");
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    const auto k = unsigned_from(assignment[i], "assignment[" + std::to_string(i) + "]");
    if (k == 0) field_error("assignment[" + std::to_string(i) + "]", "machines are numbered from 1");
    rec.solution.assignment.machine.push_back(static_cast<MachineId>(k));
  }
  const auto& seqs = member(doc, "sequences", "document");
  if (!seqs.is_array()) field_error("sequences", "expected an array");
  std::vector<std::vector<OpId>> sequences;
  for (std::size_t k = 0; k < seqs.size(); ++k) {
    const std::string w = "sequences[" + std::to_string(k) + "]";
    if (!seqs[k].is_array()) field_error(w, "expected an array");
    std::vector<OpId> seq;
    for (const auto& v : seqs[k]) seq.push_back(static_cast<OpId>(unsigned_from(v, w)));
    sequences.push_back(std::move(seq));
  }
  rec.solution.selection = Selection::from_sequences(sequences);

  const auto& start = member(doc, "start", "document");
  if (!start.is_array()) field_error("start", "expected an array");
  for (std::size_t i = 0; i < start.size(); ++i) {
    rec.schedule.start.push_back(rational_from(start[i], "start[" + std::to_string(i) + "]"));
  }
  rec.schedule.makespan = rational_from(member(doc, "makespan", "document"), "makespan");
  const auto& cp = member(doc, "critical_path", "document");
  if (!cp.is_array()) field_error("critical_path", "expected an array");
  for (const auto& v : cp) rec.schedule.critical_path.push_back(static_cast<OpId>(unsigned_from(v, "critical_path")));

  const auto& solver = member(doc, "solver", "document");
  const auto& method = member(solver, "method", "solver");
  if (!method.is_string()) field_error("solver.method", "expected a string");
  rec.solver.method = method.get<std::string>();
  const auto& status = member(solver, "status", "solver");
  if (!status.is_string()) field_error("solver.status", "expected a string");
  rec.solver.status = parse_solve_status(status.get<std::string>());
  rec.solver.lower_bound = rational_from(member(solver, "lower_bound", "solver"), "solver.lower_bound");
  rec.solver.upper_bound = rational_from(member(solver, "upper_bound", "solver"), "solver.upper_bound");
  const auto& elapsed = member(solver, "elapsed", "solver");
  if (!elapsed.is_number()) field_error("solver.elapsed", "expected a number");
  rec.solver.elapsed = elapsed.get<double>();
  rec.solver.nodes = unsigned_from(member(solver, "nodes", "solver"), "solver.nodes");
  if (const auto it = solver.find("est_makespan"); it != solver.end()) {
    rec.solver.est_makespan = rational_from(*it, "solver.est_makespan");
  }
  return rec;
}

milp::ModelPoint parse_point(std::string_view document) {
  milp::ModelPoint point;
  const auto first = document.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && document[first] == '{') {
    const json doc = parse_document(document);
    check_format(doc, kPointFormat);
    const auto& values = member(doc, "values", "document");
    if (!values.is_object()) field_error("values", "expected an object");
    for (const auto& [name, value] : values.items()) {
      point.values[name] = rational_from(value, "values." + name, true);
    }
    return point;
  }
  std::istringstream in{std::string(document)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream fields(line);
    std::string name;
    std::string value;
    std::string extra;
    if (!(fields >> name >> value) || (fields >> extra)) {
      throw FjsError(ErrorCode::syntax, "line " + std::to_string(line_no) + ": expected 'name value'");
    }
    try {
      point.values[name] = parse_rational(value);
    } catch (const FjsError& e) {
      throw FjsError(ErrorCode::syntax, "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return point;
}

std::string serialize_point(const milp::ModelPoint& point, milp::ModelKind kind) {
  json doc;
  doc["format"] = kPointFormat;
  doc["model"] = milp::to_string(kind);
  json values = json::object();
  for (const auto& [name, value] : point.values) values[name] = rational_json(value);
  doc["values"] = std::move(values);
  return dump(doc);
}

ReportRow report_row(const SolutionRecord& record) {
  return {record.instance,          record.size,          record.solver.est_makespan, record.solver.method,
          record.solver.status,     record.solver.lower_bound, record.solver.upper_bound, record.solver.elapsed};
}

namespace {

std::string number_cell(const Rational& r) { return is_integral(r) ? to_string(r) : to_fixed(r, 2); }

}  // namespace

std::string mks_cell(const ReportRow& row) {
  if (row.lower_bound >= row.upper_bound) return number_cell(row.upper_bound);
  const Rational gap = row.upper_bound > 0 ? (row.upper_bound - row.lower_bound) / row.upper_bound : Rational(0);
  return "[" + number_cell(row.lower_bound) + ";" + number_cell(row.upper_bound) + "] " + to_fixed(gap * 100, 2) + "%";
}

std::string size_cell(const InstanceSize& size) {
  const std::string ops = size.ops_min == size.ops_max ? std::to_string(size.ops_min)
                                                       : std::to_string(size.ops_min) + "-" + std::to_string(size.ops_max);
  return std::to_string(size.jobs) + ", " + ops + ", " + std::to_string(size.machines);
}

std::string render_report(const std::vector<ReportRow>& rows) {
  std::vector<std::vector<std::string>> table{{"Instance", "Size", "EST", "Method", "mks", "CPU(s)"}};
  for (const auto& row : rows) {
    std::ostringstream cpu;
    cpu.setf(std::ios::fixed);
    cpu.precision(2);
    cpu << row.cpu_seconds;
    table.push_back({row.name, size_cell(row.size), row.est_makespan ? number_cell(*row.est_makespan) : "-",
                     row.method, mks_cell(row), cpu.str()});
  }
  std::vector<std::size_t> width(table.front().size(), 0);
  for (const auto& r : table) {
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
  }
  std::string out;
  for (const auto& r : table) {
    std::string line;
    for (std::size_t c = 0; c < r.size(); ++c) {
      line += r[c];
      if (c + 1 < r.size()) line += std::string(width[c] - r[c].size() + 2, ' ');
    }
    out += line + "\n";
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FjsError(ErrorCode::invalid_argument, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FjsError(ErrorCode::invalid_argument, "cannot write " + path.string());
  out << content;
}

}  // namespace fjs::io
