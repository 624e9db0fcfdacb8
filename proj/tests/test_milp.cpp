#include <doctest.h>

#include "fjs/error.hpp"
#include "fjs/exact.hpp"
#include "fjs/generate.hpp"
#include "fjs/milp.hpp"
#include "support.hpp"

using namespace fjs;
using namespace fjs::milp;

namespace {

SolutionPair ex1_solution() {
  SolutionPair sol;
  sol.assignment.machine = {1, 1, 2};
  sol.selection = Selection::from_pairs({{0, 1}});
  return sol;
}

std::vector<std::string> variable_names(const MilpModel& model) {
  std::vector<std::string> out;
  for (const auto& v : model.variables()) out.push_back(v.name);
  return out;
}

template <typename F>
ErrorCode error_of(F&& f) {
  try {
    f();
  } catch (const FjsError& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::syntax;
}

/// Selection restricted to pairs on a common machine.
}  // namespace

TEST_CASE("new model of the three-operation example") {
  const auto model = build_new_model(testing::ex1(), Rational(14));
  const auto& st = model.stats();
  CHECK(st.n_constraints == 16);
  CHECK(st.n_variables == 11);
  CHECK(st.n_binary == 8);
  CHECK(st.phi == 4);
  CHECK(st.phi_hat == 3);
  CHECK(st.beta == 4);
  CHECK(st.bound == Rational(14));
  CHECK(model.constraints().size() == 16);
  CHECK(variable_names(model) ==
        std::vector<std::string>{"z", "s_0", "s_1", "s_2", "x_0_1", "x_1_1", "x_1_2", "x_2_2", "y_0_1", "y_1_0",
                                 "y_1_2", "y_2_1"});
  const auto* disj = model.find_constraint("disj_0_1");
  REQUIRE(disj != nullptr);
  CHECK(disj->rhs == Rational(14));
  CHECK(model.find_constraint("cmax_2") != nullptr);
  CHECK(model.find_constraint("sel_2_1_2") != nullptr);
}

TEST_CASE("machine-indexed model of the three-operation example") {
  const auto model = build_ooy_model(testing::ex1(), Rational(14));
  const auto& st = model.stats();
  CHECK(st.n_constraints == 24);
  CHECK(st.n_variables == 16);
  CHECK(st.n_binary == 8);
  CHECK(model.constraints().size() == 24);
  // the makespan rows only cover terminal operations b and c
  CHECK(model.find_constraint("cmax_0_1") == nullptr);
  CHECK(model.find_constraint("cmax_1_1") != nullptr);
  CHECK(model.find_constraint("cmax_1_2") != nullptr);
  CHECK(model.find_constraint("cmax_2_2") != nullptr);
  const auto* dur = model.find_constraint("dur_2_2");
  REQUIRE(dur != nullptr);
  CHECK(dur->rhs == Rational(14 - 5));
}

TEST_CASE("builders reject a non-positive bound") {
  CHECK(error_of([] { (void)build_new_model(testing::ex1(), Rational(0)); }) == ErrorCode::invalid_argument);
  CHECK(error_of([] { (void)build_ooy_model(testing::ex1(), Rational(-1)); }) == ErrorCode::invalid_argument);
}

TEST_CASE("single operation model") {
  const Instance one = Instance::create("one", 1, {{{1, Rational(5)}}}, {});
  const auto model = build_new_model(one, Rational(5));
  CHECK(model.stats().n_constraints == 2);
  CHECK(model.stats().n_variables == 2);
  const auto point = encode_new(one, {{{1}}, {}});
  CHECK(point.at("z") == Rational(5));
  CHECK(point.at("s_0") == Rational(0));
  CHECK(point.at("x_0_1") == Rational(1));
  CHECK(check_feasible(model, point).ok());
}

TEST_CASE("instances without shared machines have no ordering variables") {
  const Instance inst = Instance::create("d", 2, {{{1, Rational(2)}}, {{2, Rational(3)}}}, {{0, 1}});
  for (const auto kind : {ModelKind::new_model, ModelKind::ooy}) {
    const auto model = build_model(kind, inst, Rational(10));
    CHECK(model.stats().beta == 0);
    for (const auto& v : model.variables()) CHECK(v.name[0] != 'y');
  }
}

TEST_CASE("model sizes match the counting formulas on random instances") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const Instance inst = testing::random_instance(seed);
    const auto c = testing::count_sets(inst);
    const auto nm = build_new_model(inst, Rational(100));
    CHECK(nm.stats().n_constraints == 2 * c.ops + c.arcs + c.b + c.beta);
    CHECK(nm.stats().n_variables == c.ops + c.phi + c.b);
    CHECK(nm.stats().n_binary == c.phi + c.b);
    CHECK(nm.constraints().size() == nm.stats().n_constraints);
    CHECK(nm.variables().size() == nm.stats().n_variables + 1);
    const auto om = build_ooy_model(inst, Rational(100));
    CHECK(om.stats().n_constraints == c.ops + c.arcs + c.phi_hat + 2 * c.phi + 2 * c.beta);
    CHECK(om.stats().n_variables == 3 * c.phi + c.beta);
    CHECK(om.stats().n_binary == c.phi + c.beta);
    CHECK(om.constraints().size() == om.stats().n_constraints);
    CHECK(om.variables().size() == om.stats().n_variables + 1);
  }
}

TEST_CASE("encoding the example solution into the new model") {
  const Instance inst = testing::ex1();
  const auto point = encode_new(inst, ex1_solution());
  CHECK(point.at("z") == Rational(8));
  CHECK(point.at("s_0") == Rational(0));
  CHECK(point.at("s_1") == Rational(3));
  CHECK(point.at("s_2") == Rational(3));
  CHECK(point.at("x_1_1") == Rational(1));
  CHECK(point.at("x_1_2") == Rational(0));
  CHECK(point.at("y_0_1") == Rational(1));
  CHECK(point.at("y_1_0") == Rational(0));
  CHECK(point.at("y_1_2") == Rational(0));
  CHECK(point.at("y_2_1") == Rational(0));
  const auto model = build_new_model(inst, Rational(8));
  CHECK(check_feasible(model, point).ok());
  CHECK(objective_value(model, point) == Rational(8));

  const auto decoded = decode_new(inst, point);
  CHECK(decoded.solution.assignment.machine == std::vector<MachineId>{1, 1, 2});
  CHECK(decoded.solution.selection.pairs == std::vector<Arc>{{0, 1}});
  CHECK(decoded.schedule.makespan == Rational(8));
}

TEST_CASE("lowering z below the makespan violates the makespan rows") {
  const Instance inst = testing::ex1();
  auto point = encode_new(inst, ex1_solution());
  point.values["z"] = Rational(7);
  const auto report = check_feasible(build_new_model(inst, Rational(8)), point);
  CHECK(report.count(IssueKind::constraint_violation) == 1);
  CHECK(report.issues.front().subject == "cmax_2");
}

TEST_CASE("feasibility check reports missing values and rejects unknown names") {
  const Instance inst = testing::ex1();
  const auto model = build_new_model(inst, Rational(8));
  auto point = encode_new(inst, ex1_solution());
  point.values.erase("s_2");
  CHECK(check_feasible(model, point).count(IssueKind::missing_value) == 1);
  point = encode_new(inst, ex1_solution());
  point.values["s_9"] = Rational(0);
  CHECK(error_of([&] { (void)check_feasible(model, point); }) == ErrorCode::unknown_variable);
  point = encode_new(inst, ex1_solution());
  point.values["y_1_2"] = Rational(1, 2);
  CHECK(check_feasible(model, point).count(IssueKind::integrality_violation) == 1);
  point.values["y_1_2"] = Rational(2);
  CHECK(check_feasible(model, point).count(IssueKind::bound_violation) == 1);
}

TEST_CASE("encoding the example solution into the machine-indexed model") {
  const Instance inst = testing::ex1();
  const auto point = encode_ooy(inst, ex1_solution(), {0, 1, 2});
  CHECK(point.at("y_0_1_1") == Rational(1));
  CHECK(point.at("y_1_0_1") == Rational(0));
  CHECK(point.at("y_1_2_2") == Rational(1));
  CHECK(point.at("y_2_1_2") == Rational(0));
  CHECK(point.at("t_1_1") == Rational(5));
  CHECK(point.at("s_1_2") == Rational(0));
  CHECK(point.at("t_1_2") == Rational(0));
  CHECK(check_feasible(build_ooy_model(inst, Rational(8)), point).ok());
  const auto decoded = decode_ooy(inst, point);
  CHECK(decoded.solution.assignment.machine == std::vector<MachineId>{1, 1, 2});
  CHECK(decoded.solution.selection.pairs == std::vector<Arc>{{0, 1}});
  CHECK(decoded.schedule.makespan == Rational(8));
}

TEST_CASE("encode rejects bad inputs") {
  const Instance inst = testing::ex1();
  SolutionPair bad = ex1_solution();
  bad.selection = Selection::from_pairs({{1, 0}});
  CHECK(error_of([&] { (void)encode_new(inst, bad); }) == ErrorCode::inadmissible);
  CHECK(error_of([&] { (void)encode_ooy(inst, bad, {0, 1, 2}); }) == ErrorCode::inadmissible);
  CHECK(error_of([&] { (void)encode_ooy(inst, ex1_solution(), {0, 1}); }) == ErrorCode::invalid_argument);
  CHECK(error_of([&] { (void)encode_ooy(inst, ex1_solution(), {0, 1, 1}); }) == ErrorCode::invalid_argument);
}

TEST_CASE("decode errors") {
  const Instance inst = testing::ex1();
  SUBCASE("no machine selected") {
    auto point = encode_new(inst, ex1_solution());
    point.values["x_1_1"] = Rational(0);
    try {
      (void)decode_new(inst, point);
      FAIL("expected an error");
    } catch (const FjsError& e) {
      CHECK(e.code() == ErrorCode::no_machine_selected);
      CHECK(std::string(e.what()).find("no machine selected") != std::string::npos);
    }
  }
  SUBCASE("fractional binary") {
    auto point = encode_ooy(inst, ex1_solution(), {0, 1, 2});
    point.values["y_1_2_2"] = Rational(1, 2);
    CHECK(error_of([&] { (void)decode_ooy(inst, point); }) == ErrorCode::non_integral);
  }
  SUBCASE("infeasible point") {
    auto point = encode_new(inst, ex1_solution());
    point.values["s_2"] = Rational(1);
    CHECK(error_of([&] { (void)decode_new(inst, point); }) == ErrorCode::infeasible_point);
  }
  SUBCASE("tolerance snaps nearly integral binaries") {
    auto point = encode_new(inst, ex1_solution());
    point.values["x_1_1"] = Rational(999999, 1000000);
    point.values["x_1_2"] = Rational(1, 1000000);
    DecodeOptions opts;
    opts.tol = Rational(1, 100000);
    CHECK(decode_new(inst, point, opts).schedule.makespan == Rational(8));
  }
}

TEST_CASE("encode and decode round-trip on random admissible solutions") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    testing::RandomSpec spec;
    spec.fractional = 0.2;
    const Instance inst = testing::random_instance(seed, spec);
    const auto sol = testing::random_solution(inst, seed + 1000);
    const Schedule tight = tight_schedule(inst, sol);
    const Rational bound = default_bound(inst);

    const auto pn = encode_new(inst, sol);
    CHECK(check_feasible(build_new_model(inst, bound), pn).ok());
    const auto dn = decode_new(inst, pn);
    CHECK(dn.solution.assignment == sol.assignment);
    CHECK(testing::on_machine(dn.solution) == testing::on_machine(sol));
    CHECK(dn.schedule.makespan == tight.makespan);

    std::vector<OpId> order(inst.op_count());
    for (OpId v = 0; v < order.size(); ++v) order[v] = static_cast<OpId>(order.size() - 1 - v);
    const auto po = encode_ooy(inst, sol, order);
    CHECK(check_feasible(build_ooy_model(inst, bound), po).ok());
    const auto dd = decode_ooy(inst, po);
    CHECK(dd.solution.assignment == sol.assignment);
    CHECK(testing::on_machine(dd.solution) == testing::on_machine(sol));
    CHECK(dd.schedule.makespan == dn.schedule.makespan);
  }
}

TEST_CASE("fractional witness of the machine-indexed relaxation") {
  SUBCASE("every operation on a single machine violates the preconditions") {
    CHECK(error_of([] { (void)ooy_fractional_witness(testing::ex1(), Rational(14)); }) ==
          ErrorCode::precondition_violated);
  }
  SUBCASE("times above half the bound") {
    const Instance inst = Instance::create("w", 2, {{{1, Rational(3)}, {2, Rational(3)}}, {{1, Rational(9)}, {2, Rational(3)}}}, {});
    CHECK(error_of([&] { (void)ooy_fractional_witness(inst, Rational(14)); }) == ErrorCode::precondition_violated);
    const auto witness = ooy_fractional_witness(inst, Rational(18));
    const auto model = build_ooy_model(inst, Rational(18));
    CHECK(check_feasible(model, witness, {Rational(0), false}).ok());
    CHECK(objective_value(model, witness) == Rational(0));
    CHECK_FALSE(check_feasible(model, witness).ok());
  }
  SUBCASE("machine with one candidate operation") {
    const Instance inst = Instance::create("w", 3, {{{1, Rational(1)}, {2, Rational(1)}}, {{1, Rational(1)}, {3, Rational(1)}}}, {});
    CHECK(error_of([&] { (void)ooy_fractional_witness(inst, Rational(10)); }) == ErrorCode::precondition_violated);
  }
  SUBCASE("generated instances") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const Instance inst = gen::gen_dafjs({2, 5, seed, "W"});
      Rational pmax(0);
      for (OpId v = 0; v < inst.op_count(); ++v) pmax = std::max(pmax, inst.max_ptime(v));
      const Rational bound = std::max(default_bound(inst), 2 * pmax);
      const auto model = build_ooy_model(inst, bound);
      const auto witness = ooy_fractional_witness(inst, bound);
      CHECK(check_feasible(model, witness, {Rational(0), false}).ok());
      CHECK(objective_value(model, witness) == Rational(0));
    }
  }
}

TEST_CASE("the all-zero point is infeasible for the new relaxation") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Instance inst = testing::random_instance(seed);
    const auto model = build_new_model(inst, default_bound(inst));
    ModelPoint zero;
    for (const auto& v : model.variables()) zero.values[v.name] = Rational(0);
    CHECK_FALSE(check_feasible(model, zero, {Rational(0), false}).ok());
  }
}

TEST_CASE("tight lower bound and default bound") {
  const Instance inst = testing::ex1();
  CHECK(lb_tight(inst) == Rational(8));
  CHECK(default_bound(inst) == Rational(12));
  CHECK(default_bound(inst, Rational(8)) == Rational(8));
  const Instance one = Instance::create("one", 2, {{{1, Rational(4)}, {2, Rational(3)}}}, {});
  CHECK(lb_tight(one) == Rational(3));
  const Instance indep = Instance::create("i", 1, {{{1, Rational(4)}}, {{1, Rational(6)}}}, {});
  CHECK(lb_tight(indep) == Rational(6));
  const Instance empty = Instance::create("e", 1, {}, {});
  CHECK(default_bound(empty) == Rational(0));
}

TEST_CASE("tight lower bound never exceeds the optimum") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const Instance inst = testing::random_instance(seed);
    CHECK(lb_tight(inst) <= brute_force(inst).upper_bound);
  }
}

TEST_CASE("model kind names") {
  CHECK(to_string(ModelKind::new_model) == "new");
  CHECK(to_string(ModelKind::ooy) == "ooy");
  CHECK(parse_model_kind("ooy") == ModelKind::ooy);
  CHECK(error_of([] { (void)parse_model_kind("cplex"); }) == ErrorCode::invalid_argument);
}
