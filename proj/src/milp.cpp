#include "fjs/milp.hpp"

#include <algorithm>

#include "fjs/error.hpp"

namespace fjs::milp {

using fjs::to_string;

std::string_view to_string(ModelKind kind) { return kind == ModelKind::new_model ? "new" : "ooy"; }

ModelKind parse_model_kind(std::string_view text) {
  if (text == "new") return ModelKind::new_model;
  if (text == "ooy") return ModelKind::ooy;
  throw FjsError(ErrorCode::invalid_argument, "unknown model '" + std::string(text) + "' (expected new|ooy)");
}

std::size_t MilpModel::add_variable(std::string name, VarKind kind, Rational lower, std::optional<Rational> upper) {
  const std::size_t idx = vars_.size();
  const auto [it, inserted] = index_.emplace(name, idx);
  if (!inserted) throw FjsError(ErrorCode::invalid_argument, "duplicate variable " + name);
  vars_.push_back({std::move(name), kind, lower, upper});
  return idx;
}

void MilpModel::add_constraint(std::string name, std::vector<Term> terms, Relation rel, Rational rhs) {
  for (const Term& t : terms) {
    if (t.var >= vars_.size()) throw FjsError(ErrorCode::invalid_argument, "constraint " + name + " uses an undeclared variable");
  }
  rows_.push_back({std::move(name), std::move(terms), rel, rhs});
}

std::optional<std::size_t> MilpModel::find(const std::string& var) const {
  const auto it = index_.find(var);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const Constraint* MilpModel::find_constraint(const std::string& name) const {
  const auto it = std::find_if(rows_.begin(), rows_.end(), [&](const Constraint& c) { return c.name == name; });
  return it == rows_.end() ? nullptr : &*it;
}

namespace names {
std::string s(OpId v) { return "s_" + std::to_string(v); }
std::string s(OpId v, MachineId k) { return "s_" + std::to_string(v) + "_" + std::to_string(k); }
std::string t(OpId v, MachineId k) { return "t_" + std::to_string(v) + "_" + std::to_string(k); }
std::string x(OpId v, MachineId k) { return "x_" + std::to_string(v) + "_" + std::to_string(k); }
std::string y(OpId v, OpId w) { return "y_" + std::to_string(v) + "_" + std::to_string(w); }
std::string y(OpId v, OpId w, MachineId k) {
  return "y_" + std::to_string(v) + "_" + std::to_string(w) + "_" + std::to_string(k);
}
}  // namespace names

const Rational& ModelPoint::at(const std::string& name) const {
  const auto it = values.find(name);
  if (it == values.end()) throw FjsError(ErrorCode::unknown_variable, "point has no value for " + name);
  return it->second;
}

namespace {

std::string row_name(std::string_view prefix, std::initializer_list<std::uint32_t> ids) {
  std::string s(prefix);
  for (const auto id : ids) s += "_" + std::to_string(id);
  return s;
}

void require_positive_bound(const Rational& bound) {
  if (bound <= 0) throw FjsError(ErrorCode::invalid_argument, "bound L must be positive, got " + to_string(bound));
}

std::size_t phi_of(const Instance& instance) {
  std::size_t phi = 0;
  for (OpId v = 0; v < instance.op_count(); ++v) phi += instance.options(v).size();
  return phi;
}

std::size_t phi_hat_of(const Instance& instance) {
  std::size_t phi_hat = 0;
  for (OpId v = 0; v < instance.op_count(); ++v) {
    if (instance.successors(v).empty()) phi_hat += instance.options(v).size();
  }
  return phi_hat;
}

}  // namespace

MilpModel build_new_model(const Instance& instance, const Rational& bound) {
  require_positive_bound(bound);
  const auto pairs = disjunctive_pairs(instance);
  const std::size_t n = instance.op_count();
  MilpModel model(instance.name(), ModelKind::new_model);

  const std::size_t z = model.add_variable("z", VarKind::continuous, Rational(0), std::nullopt);
  std::vector<std::size_t> s(n);
  for (OpId v = 0; v < n; ++v) s[v] = model.add_variable(names::s(v), VarKind::continuous, Rational(0), std::nullopt);
  std::vector<std::vector<std::size_t>> x(n);
  for (OpId v = 0; v < n; ++v) {
    for (const auto& o : instance.options(v)) {
      x[v].push_back(model.add_variable(names::x(v, o.machine), VarKind::binary, Rational(0), Rational(1)));
    }
  }
  for (const Arc& b : pairs.all) {
    model.add_variable(names::y(b.from, b.to), VarKind::binary, Rational(0), Rational(1));
  }
  auto y = [&](OpId v, OpId w) { return *model.find(names::y(v, w)); };
  // s_v + p'_v as a term list
  auto completion = [&](OpId v) {
    std::vector<Term> terms{{s[v], Rational(1)}};
    const auto opts = instance.options(v);
    for (std::size_t i = 0; i < opts.size(); ++i) terms.push_back({x[v][i], opts[i].time});
    return terms;
  };
  auto x_of = [&](OpId v, MachineId k) { return *model.find(names::x(v, k)); };

  for (OpId v = 0; v < n; ++v) {
    auto terms = completion(v);
    terms.push_back({z, Rational(-1)});
    model.add_constraint(row_name("cmax", {v}), std::move(terms), Relation::less_equal, Rational(0));
  }
  for (OpId v = 0; v < n; ++v) {
    std::vector<Term> terms;
    for (const auto idx : x[v]) terms.push_back({idx, Rational(1)});
    model.add_constraint(row_name("assign", {v}), std::move(terms), Relation::equal, Rational(1));
  }
  for (MachineId k = 1; k <= instance.machine_count(); ++k) {
    for (const Arc& b : pairs.of(k)) {
      model.add_constraint(row_name("sel", {k, b.from, b.to}),
                           {{y(b.from, b.to), Rational(1)},
                            {y(b.to, b.from), Rational(1)},
                            {x_of(b.from, k), Rational(-1)},
                            {x_of(b.to, k), Rational(-1)}},
                           Relation::greater_equal, Rational(-1));
    }
  }
  for (const Arc& a : instance.arcs()) {
    auto terms = completion(a.from);
    terms.push_back({s[a.to], Rational(-1)});
    model.add_constraint(row_name("pprec", {a.from, a.to}), std::move(terms), Relation::less_equal, Rational(0));
  }
  for (const Arc& b : pairs.all) {
    auto terms = completion(b.from);
    terms.push_back({y(b.from, b.to), bound});
    terms.push_back({s[b.to], Rational(-1)});
    model.add_constraint(row_name("disj", {b.from, b.to}), std::move(terms), Relation::less_equal, bound);
  }
  model.set_objective({{z, Rational(1)}});

  ModelStats st;
  st.n_constraints = model.constraints().size();
  st.n_variables = model.variables().size() - 1;
  st.n_binary = static_cast<std::size_t>(std::count_if(model.variables().begin(), model.variables().end(),
                                                       [](const Variable& v) { return v.kind == VarKind::binary; }));
  st.phi = phi_of(instance);
  st.phi_hat = phi_hat_of(instance);
  st.beta = pairs.beta;
  st.bound = bound;
  model.set_stats(st);
  return model;
}

MilpModel build_ooy_model(const Instance& instance, const Rational& bound) {
  require_positive_bound(bound);
  const auto pairs = disjunctive_pairs(instance);
  const std::size_t n = instance.op_count();
  MilpModel model(instance.name(), ModelKind::ooy);

  const std::size_t z = model.add_variable("z", VarKind::continuous, Rational(0), std::nullopt);
  for (OpId v = 0; v < n; ++v) {
    for (const auto& o : instance.options(v)) {
      model.add_variable(names::s(v, o.machine), VarKind::continuous, Rational(0), std::nullopt);
    }
  }
  for (OpId v = 0; v < n; ++v) {
    for (const auto& o : instance.options(v)) {
      model.add_variable(names::t(v, o.machine), VarKind::continuous, Rational(0), std::nullopt);
    }
  }
  for (OpId v = 0; v < n; ++v) {
    for (const auto& o : instance.options(v)) {
      model.add_variable(names::x(v, o.machine), VarKind::binary, Rational(0), Rational(1));
    }
  }
  for (MachineId k = 1; k <= instance.machine_count(); ++k) {
    for (const Arc& b : pairs.of(k)) {
      model.add_variable(names::y(b.from, b.to, k), VarKind::binary, Rational(0), Rational(1));
    }
  }
  auto var = [&](const std::string& name) { return *model.find(name); };

  for (OpId v = 0; v < n; ++v) {
    if (!instance.successors(v).empty()) continue;
    for (const auto& o : instance.options(v)) {
      model.add_constraint(row_name("cmax", {v, o.machine}),
                           {{var(names::t(v, o.machine)), Rational(1)}, {z, Rational(-1)}}, Relation::less_equal,
                           Rational(0));
    }
  }
  for (OpId v = 0; v < n; ++v) {
    std::vector<Term> terms;
    for (const auto& o : instance.options(v)) terms.push_back({var(names::x(v, o.machine)), Rational(1)});
    model.add_constraint(row_name("assign", {v}), std::move(terms), Relation::equal, Rational(1));
  }
  for (OpId v = 0; v < n; ++v) {
    for (const auto& o : instance.options(v)) {
      model.add_constraint(row_name("link", {v, o.machine}),
                           {{var(names::s(v, o.machine)), Rational(1)},
                            {var(names::t(v, o.machine)), Rational(1)},
                            {var(names::x(v, o.machine)), -2 * bound}},
                           Relation::less_equal, Rational(0));
    }
  }
  for (MachineId k = 1; k <= instance.machine_count(); ++k) {
    for (const Arc& b : pairs.of(k)) {
      model.add_constraint(row_name("orient", {k, b.from, b.to}),
                           {{var(names::y(b.from, b.to, k)), Rational(1)}, {var(names::y(b.to, b.from, k)), Rational(1)}},
                           Relation::equal, Rational(1));
    }
  }
  for (OpId v = 0; v < n; ++v) {
    for (const auto& o : instance.options(v)) {
      model.add_constraint(row_name("dur", {v, o.machine}),
                           {{var(names::s(v, o.machine)), Rational(1)},
                            {var(names::t(v, o.machine)), Rational(-1)},
                            {var(names::x(v, o.machine)), bound}},
                           Relation::less_equal, bound - o.time);
    }
  }
  for (MachineId k = 1; k <= instance.machine_count(); ++k) {
    for (const Arc& b : pairs.of(k)) {
      model.add_constraint(row_name("disj", {k, b.from, b.to}),
                           {{var(names::t(b.from, k)), Rational(1)},
                            {var(names::y(b.from, b.to, k)), bound},
                            {var(names::s(b.to, k)), Rational(-1)}},
                           Relation::less_equal, bound);
    }
  }
  for (const Arc& a : instance.arcs()) {
    std::vector<Term> terms;
    for (const auto& o : instance.options(a.from)) terms.push_back({var(names::t(a.from, o.machine)), Rational(1)});
    for (const auto& o : instance.options(a.to)) terms.push_back({var(names::s(a.to, o.machine)), Rational(-1)});
    model.add_constraint(row_name("pprec", {a.from, a.to}), std::move(terms), Relation::less_equal, Rational(0));
  }
  model.set_objective({{z, Rational(1)}});

  ModelStats st;
  st.n_constraints = model.constraints().size();
  st.n_variables = model.variables().size() - 1;
  st.n_binary = static_cast<std::size_t>(std::count_if(model.variables().begin(), model.variables().end(),
                                                       [](const Variable& v) { return v.kind == VarKind::binary; }));
  st.phi = phi_of(instance);
  st.phi_hat = phi_hat_of(instance);
  st.beta = pairs.beta;
  st.bound = bound;
  model.set_stats(st);
  return model;
}

MilpModel build_model(ModelKind kind, const Instance& instance, const Rational& bound) {
  return kind == ModelKind::new_model ? build_new_model(instance, bound) : build_ooy_model(instance, bound);
}

ValidationReport check_feasible(const MilpModel& model, const ModelPoint& point, FeasibilityOptions opts) {
  for (const auto& [name, value] : point.values) {
    if (!model.find(name)) throw FjsError(ErrorCode::unknown_variable, "point names unknown variable " + name);
  }
  ValidationReport report;
  const auto& vars = model.variables();
  std::vector<Rational> val(vars.size());
  bool complete = true;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const auto it = point.values.find(vars[i].name);
    if (it == point.values.end()) {
      complete = false;
      report.issues.push_back({IssueKind::missing_value, vars[i].name, {}, "no value for " + vars[i].name});
      continue;
    }
    val[i] = it->second;
    if (val[i] < vars[i].lower - opts.tol || (vars[i].upper && val[i] > *vars[i].upper + opts.tol)) {
      report.issues.push_back({IssueKind::bound_violation, vars[i].name, {},
                               vars[i].name + " = " + to_string(val[i]) + " is outside its bounds"});
    }
    if (opts.integrality && vars[i].kind == VarKind::binary) {
      const Rational dist = std::min(abs(val[i]), abs(val[i] - 1));
      if (dist > opts.tol) {
        report.issues.push_back({IssueKind::integrality_violation, vars[i].name, {},
                                 vars[i].name + " = " + to_string(val[i]) + " is not binary"});
      }
    }
  }
  if (!complete) return report;

  for (const Constraint& c : model.constraints()) {
    Rational lhs(0);
    for (const Term& t : c.terms) lhs += t.coef * val[t.var];
    const Rational excess = c.relation == Relation::less_equal      ? lhs - c.rhs
                            : c.relation == Relation::greater_equal ? c.rhs - lhs
                                                                    : abs(lhs - c.rhs);
    if (excess > opts.tol) {
      report.issues.push_back({IssueKind::constraint_violation, c.name, {},
                               c.name + " violated by " + to_string(excess)});
    }
  }
  return report;
}

Rational objective_value(const MilpModel& model, const ModelPoint& point) {
  Rational total(0);
  for (const Term& t : model.objective()) total += t.coef * point.at(model.variables()[t.var].name);
  return total;
}

ModelPoint encode_new(const Instance& instance, const SolutionPair& sol) {
  const Schedule sched = tight_schedule(instance, sol);
  const auto pairs = disjunctive_pairs(instance);
  ModelPoint pt;
  pt.values["z"] = sched.makespan;
  for (OpId v = 0; v < instance.op_count(); ++v) {
    pt.values[names::s(v)] = sched.start[v];
    for (const auto& o : instance.options(v)) {
      pt.values[names::x(v, o.machine)] = Rational(sol.assignment.machine[v] == o.machine ? 1 : 0);
    }
  }
  for (const Arc& b : pairs.all) {
    pt.values[names::y(b.from, b.to)] = Rational(sol.selection.contains(b) ? 1 : 0);
  }
  return pt;
}

ModelPoint encode_ooy(const Instance& instance, const SolutionPair& sol, const std::vector<OpId>& op_order) {
  const std::size_t n = instance.op_count();
  std::vector<std::size_t> pos(n, n);
  if (op_order.size() != n) throw FjsError(ErrorCode::invalid_argument, "operation order is not a permutation");
  for (std::size_t i = 0; i < n; ++i) {
    if (op_order[i] >= n || pos[op_order[i]] != n) {
      throw FjsError(ErrorCode::invalid_argument, "operation order is not a permutation");
    }
    pos[op_order[i]] = i;
  }
  const Schedule sched = tight_schedule(instance, sol);
  const auto& f = sol.assignment.machine;
  const auto pairs = disjunctive_pairs(instance);

  ModelPoint pt;
  pt.values["z"] = sched.makespan;
  for (OpId v = 0; v < n; ++v) {
    for (const auto& o : instance.options(v)) {
      const bool on = f[v] == o.machine;
      pt.values[names::s(v, o.machine)] = on ? sched.start[v] : Rational(0);
      pt.values[names::t(v, o.machine)] = on ? sched.start[v] + o.time : Rational(0);
      pt.values[names::x(v, o.machine)] = Rational(on ? 1 : 0);
    }
  }
  for (MachineId k = 1; k <= instance.machine_count(); ++k) {
    for (const Arc& b : pairs.of(k)) {
      const OpId vi = b.from;
      const OpId vj = b.to;
      const bool one = (sol.selection.contains(b) && f[vi] == k && f[vj] == k) || (f[vi] != k && f[vj] == k) ||
                       (pos[vi] > pos[vj] && f[vi] != k && f[vj] != k);
      pt.values[names::y(vi, vj, k)] = Rational(one ? 1 : 0);
    }
  }
  return pt;
}

namespace {

Rational snap_binary(const std::string& name, const Rational& value, const Rational& tol) {
  if (abs(value) <= tol) return Rational(0);
  if (abs(value - 1) <= tol) return Rational(1);
  throw FjsError(ErrorCode::non_integral, name + " = " + to_string(value) + " is not integral");
}

struct SnappedPoint {
  ModelPoint point;
  MachineAssignment assignment;
};

/// Snaps every binary of the model, then reads the assignment from x.
SnappedPoint snap(const MilpModel& model, const Instance& instance, const ModelPoint& point, const Rational& tol) {
  SnappedPoint out{point, {}};
  for (const auto& var : model.variables()) {
    if (var.kind != VarKind::binary) continue;
    const auto it = out.point.values.find(var.name);
    if (it == out.point.values.end()) throw FjsError(ErrorCode::infeasible_point, "point has no value for " + var.name);
    it->second = snap_binary(var.name, it->second, tol);
  }
  out.assignment.machine.resize(instance.op_count());
  for (OpId v = 0; v < instance.op_count(); ++v) {
    std::size_t chosen = 0;
    for (const auto& o : instance.options(v)) {
      if (out.point.values.at(names::x(v, o.machine)) == 1) {
        out.assignment.machine[v] = o.machine;
        ++chosen;
      }
    }
    if (chosen == 0) {
      throw FjsError(ErrorCode::no_machine_selected, "no machine selected for operation " + std::to_string(v));
    }
    if (chosen > 1) {
      throw FjsError(ErrorCode::infeasible_point, "operation " + std::to_string(v) + " selects several machines");
    }
  }
  return out;
}

Rational decode_bound(const Instance& instance, const ModelPoint& point, const DecodeOptions& opts) {
  if (opts.bound) return *opts.bound;
  Rational bound = point.at("z");
  for (OpId v = 0; v < instance.op_count(); ++v) bound = std::max(bound, instance.max_ptime(v));
  return bound > 0 ? bound : Rational(1);
}

void require_feasible(const MilpModel& model, const ModelPoint& point, const Rational& tol) {
  const auto report = check_feasible(model, point, {tol, true});
  if (!report.ok()) {
    throw FjsError(ErrorCode::infeasible_point, "point is infeasible: " + report.issues.front().message);
  }
}

Decoded finish_decode(const Instance& instance, SolutionPair sol, std::vector<Rational> point_start,
                      const Rational& z, const Rational& tol) {
  Decoded out;
  out.schedule = tight_schedule(instance, sol);
  out.solution = std::move(sol);
  out.point_schedule.start = std::move(point_start);
  const auto p = assigned_times(instance, out.solution.assignment);
  for (OpId v = 0; v < instance.op_count(); ++v) {
    out.point_schedule.makespan = std::max(out.point_schedule.makespan, out.point_schedule.start[v] + p[v]);
  }
  if (out.schedule.makespan > z + tol) {
    throw FjsError(ErrorCode::infeasible_point, "decoded makespan exceeds z");
  }
  return out;
}

}  // namespace

Decoded decode_new(const Instance& instance, const ModelPoint& point, DecodeOptions opts) {
  const auto model = build_new_model(instance, decode_bound(instance, point, opts));
  auto snapped = snap(model, instance, point, opts.tol);
  require_feasible(model, snapped.point, opts.tol);

  const auto& f = snapped.assignment.machine;
  std::vector<Arc> y;
  for (const Arc& b : disjunctive_pairs(instance).all) {
    if (f[b.from] == f[b.to] && snapped.point.values.at(names::y(b.from, b.to)) == 1) y.push_back(b);
  }
  std::vector<Rational> start(instance.op_count());
  for (OpId v = 0; v < instance.op_count(); ++v) start[v] = snapped.point.values.at(names::s(v));
  return finish_decode(instance, {snapped.assignment, Selection::from_pairs(std::move(y))}, std::move(start),
                       snapped.point.values.at("z"), opts.tol);
}

Decoded decode_ooy(const Instance& instance, const ModelPoint& point, DecodeOptions opts) {
  const auto model = build_ooy_model(instance, decode_bound(instance, point, opts));
  auto snapped = snap(model, instance, point, opts.tol);
  require_feasible(model, snapped.point, opts.tol);

  const auto& f = snapped.assignment.machine;
  const auto pairs = disjunctive_pairs(instance);
  std::vector<Arc> y;
  for (MachineId k = 1; k <= instance.machine_count(); ++k) {
    for (const Arc& b : pairs.of(k)) {
      if (f[b.from] == k && f[b.to] == k && snapped.point.values.at(names::y(b.from, b.to, k)) == 1) y.push_back(b);
    }
  }
  std::vector<Rational> start(instance.op_count());
  for (OpId v = 0; v < instance.op_count(); ++v) start[v] = snapped.point.values.at(names::s(v, f[v]));
  return finish_decode(instance, {snapped.assignment, Selection::from_pairs(std::move(y))}, std::move(start),
                       snapped.point.values.at("z"), opts.tol);
}

ModelPoint ooy_fractional_witness(const Instance& instance, const Rational& bound) {
  require_positive_bound(bound);
  for (OpId v = 0; v < instance.op_count(); ++v) {
    for (const auto& o : instance.options(v)) {
      if (2 * o.time > bound) {
        throw FjsError(ErrorCode::precondition_violated,
                       "p(" + std::to_string(v) + "," + std::to_string(o.machine) + ") = " + to_string(o.time) +
                           " exceeds L/2 = " + to_string(bound / 2));
      }
    }
  }
  for (MachineId k = 1; k <= instance.machine_count(); ++k) {
    if (instance.machine_ops(k).size() < 2) {
      throw FjsError(ErrorCode::precondition_violated,
                     "machine " + std::to_string(k) + " can process fewer than two operations");
    }
  }
  for (OpId v = 0; v < instance.op_count(); ++v) {
    if (instance.options(v).size() < 2) {
      throw FjsError(ErrorCode::precondition_violated,
                     "operation " + std::to_string(v) +
                         " has a single eligible machine, so x is fixed to 1 and the relaxation forces z > 0");
    }
  }

  ModelPoint pt;
  pt.values["z"] = Rational(0);
  for (OpId v = 0; v < instance.op_count(); ++v) {
    const auto opts = instance.options(v);
    for (const auto& o : opts) {
      pt.values[names::s(v, o.machine)] = Rational(0);
      pt.values[names::t(v, o.machine)] = Rational(0);
      pt.values[names::x(v, o.machine)] = Rational(1, static_cast<std::int64_t>(opts.size()));
    }
  }
  const auto pairs = disjunctive_pairs(instance);
  for (MachineId k = 1; k <= instance.machine_count(); ++k) {
    for (const Arc& b : pairs.of(k)) pt.values[names::y(b.from, b.to, k)] = Rational(1, 2);
  }
  return pt;
}

Rational lb_tight(const Instance& instance) {
  std::vector<Rational> p(instance.op_count());
  for (OpId v = 0; v < instance.op_count(); ++v) p[v] = instance.min_ptime(v);
  return graph::longest_paths(instance.op_count(), instance.arcs(), p).makespan;
}

Rational default_bound(const Instance& instance, std::optional<Rational> est_makespan) {
  if (est_makespan) return *est_makespan;
  Rational total(0);
  for (OpId v = 0; v < instance.op_count(); ++v) total += instance.max_ptime(v);
  return total;
}

}  // namespace fjs::milp
