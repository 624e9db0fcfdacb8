#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "fjs/core.hpp"
#include "fjs/instance.hpp"
#include "fjs/rational.hpp"

namespace fjs::milp {

enum class VarKind { continuous, binary };
enum class Relation { less_equal, equal, greater_equal };
enum class ModelKind { new_model, ooy };

std::string_view to_string(ModelKind kind);
ModelKind parse_model_kind(std::string_view text);

struct Variable {
  std::string name;
  VarKind kind = VarKind::continuous;
  Rational lower;
  /// nullopt means +infinity.
  std::optional<Rational> upper;
};

struct Term {
  std::size_t var = 0;
  Rational coef;
};

struct Constraint {
  std::string name;
  std::vector<Term> terms;
  Relation relation = Relation::less_equal;
  Rational rhs;
};

struct ModelStats {
  std::size_t n_constraints = 0;
  /// Excludes the makespan variable z.
  std::size_t n_variables = 0;
  std::size_t n_binary = 0;
  std::size_t phi = 0;
  std::size_t phi_hat = 0;
  std::size_t beta = 0;
  Rational bound;
};

/// A solver-agnostic linear model: minimize the objective subject to the
/// constraints and variable bounds, binaries marked by kind.
class MilpModel {
 public:
  MilpModel(std::string name, ModelKind kind) : name_(std::move(name)), kind_(kind) {}

  std::size_t add_variable(std::string name, VarKind kind, Rational lower, std::optional<Rational> upper);
  void add_constraint(std::string name, std::vector<Term> terms, Relation rel, Rational rhs);
  void set_objective(std::vector<Term> terms) { objective_ = std::move(terms); }
  void set_stats(ModelStats stats) { stats_ = stats; }

  const std::string& name() const { return name_; }
  ModelKind kind() const { return kind_; }
  const std::vector<Variable>& variables() const { return vars_; }
  const std::vector<Constraint>& constraints() const { return rows_; }
  const std::vector<Term>& objective() const { return objective_; }
  const ModelStats& stats() const { return stats_; }

  std::optional<std::size_t> find(const std::string& var) const;
  const Constraint* find_constraint(const std::string& name) const;

 private:
  std::string name_;
  ModelKind kind_;
  std::vector<Variable> vars_;
  std::vector<Constraint> rows_;
  std::vector<Term> objective_;
  std::unordered_map<std::string, std::size_t> index_;
  ModelStats stats_;
};

/// Variable names as they appear in emitted files.
namespace names {
std::string s(OpId v);
std::string s(OpId v, MachineId k);
std::string t(OpId v, MachineId k);
std::string x(OpId v, MachineId k);
std::string y(OpId v, OpId w);
std::string y(OpId v, OpId w, MachineId k);
}  // namespace names

/// Values of a model's variables, keyed by variable name.
struct ModelPoint {
  std::map<std::string, Rational> values;

  const Rational& at(const std::string& name) const;
};

/// Model with starting times s_v, assignment x_{v,k} and one ordering binary
/// y_{v,w} per pair of B; the processing time p'_v is substituted inline.
/// Throws FjsError(invalid_argument) for bound <= 0.
MilpModel build_new_model(const Instance& instance, const Rational& bound);

/// The machine-indexed model with s_{v,k}, t_{v,k}, x_{v,k}, y_{v,w,k}.
MilpModel build_ooy_model(const Instance& instance, const Rational& bound);

MilpModel build_model(ModelKind kind, const Instance& instance, const Rational& bound);

struct FeasibilityOptions {
  Rational tol{0};
  /// When false the check is against the linear relaxation.
  bool integrality = true;
};

/// Evaluates every constraint, bound and (optionally) integrality
/// requirement at the point. Missing values are reported; names that are
/// not model variables throw FjsError(unknown_variable).
ValidationReport check_feasible(const MilpModel& model, const ModelPoint& point, FeasibilityOptions opts = {});

Rational objective_value(const MilpModel& model, const ModelPoint& point);

ModelPoint encode_new(const Instance& instance, const SolutionPair& sol);

/// `op_order` is the permutation v_1..v_N used by the third orientation
/// rule for pairs on machines that neither operation uses.
ModelPoint encode_ooy(const Instance& instance, const SolutionPair& sol, const std::vector<OpId>& op_order);

struct Decoded {
  SolutionPair solution;
  /// Tight schedule of the decoded pair.
  Schedule schedule;
  /// Start times read from the point (s_v, or s_{v,f(v)}); no critical path.
  Schedule point_schedule;
};

struct DecodeOptions {
  /// Binaries within tol of 0/1 are snapped; constraints may be violated
  /// by at most tol.
  Rational tol{0};
  /// Big-M used for the feasibility check. Defaults to max(z, max p).
  std::optional<Rational> bound;
};

Decoded decode_new(const Instance& instance, const ModelPoint& point, DecodeOptions opts = {});
Decoded decode_ooy(const Instance& instance, const ModelPoint& point, DecodeOptions opts = {});

/// Zero-objective point of the linear relaxation of the machine-indexed
/// model: s = t = 0, y = 1/2, z = 0 and x_{v,k} = 1/|F(v)|.
/// Throws FjsError(precondition_violated) unless p_{v,k} <= L/2 everywhere,
/// |V_k| >= 2 for every machine and |F(v)| >= 2 for every operation.
ModelPoint ooy_fractional_witness(const Instance& instance, const Rational& bound);

/// Makespan of the tight schedule of (V, A) with p''_v = min_k p_{v,k}.
Rational lb_tight(const Instance& instance);

/// est_makespan when given, otherwise sum over v of max_k p_{v,k}.
Rational default_bound(const Instance& instance, std::optional<Rational> est_makespan = std::nullopt);

}  // namespace fjs::milp
