#include <doctest.h>

#include "fjs/error.hpp"
#include "fjs/instance.hpp"
#include "support.hpp"

using namespace fjs;

namespace {

ErrorCode create_error(std::uint32_t m, std::vector<std::vector<MachineOption>> options, std::vector<Arc> arcs,
                       std::vector<std::uint32_t> jobs = {}) {
  try {
    (void)Instance::create("bad", m, std::move(options), std::move(arcs), std::move(jobs));
  } catch (const FjsError& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::syntax;
}

}  // namespace

TEST_CASE("instance accessors on the three-operation example") {
  const Instance inst = testing::ex1();
  CHECK(inst.name() == "EX1");
  CHECK(inst.machine_count() == 2);
  CHECK(inst.op_count() == 3);
  CHECK(inst.arcs().size() == 2);
  CHECK(inst.ptime(1, 2) == Rational(4));
  CHECK(inst.min_ptime(1) == Rational(2));
  CHECK(inst.max_ptime(1) == Rational(4));
  CHECK(inst.eligible(0, 1));
  CHECK_FALSE(inst.eligible(0, 2));
  CHECK(inst.machine_ops(1) == std::vector<OpId>{0, 1});
  CHECK(inst.machine_ops(2) == std::vector<OpId>{1, 2});
  CHECK(std::vector<OpId>(inst.successors(0).begin(), inst.successors(0).end()) == std::vector<OpId>{1, 2});
  CHECK(std::vector<OpId>(inst.predecessors(2).begin(), inst.predecessors(2).end()) == std::vector<OpId>{0});
  CHECK(std::vector<OpId>(inst.topological_order().begin(), inst.topological_order().end()) ==
        std::vector<OpId>{0, 1, 2});
}

TEST_CASE("ptime on an ineligible machine is an error") {
  const Instance inst = testing::ex1();
  try {
    (void)inst.ptime(0, 2);
    FAIL("expected an error");
  } catch (const FjsError& e) {
    CHECK(e.code() == ErrorCode::invalid_argument);
  }
}

TEST_CASE("options and arcs are stored sorted") {
  const Instance inst = Instance::create("s", 3, {{{3, Rational(1)}, {1, Rational(2)}}, {{2, Rational(1)}}, {{1, Rational(1)}}},
                                         {{1, 2}, {0, 2}, {0, 1}});
  CHECK(inst.options(0)[0].machine == 1);
  CHECK(inst.options(0)[1].machine == 3);
  CHECK(inst.arcs()[0] == Arc{0, 1});
  CHECK(inst.arcs()[1] == Arc{0, 2});
  CHECK(inst.arcs()[2] == Arc{1, 2});
}

TEST_CASE("every structural defect has its own error code") {
  const std::vector<MachineOption> ok{{1, Rational(1)}};
  CHECK(create_error(2, {ok, ok}, {{0, 5}}) == ErrorCode::dangling_arc);
  CHECK(create_error(2, {ok, ok}, {{1, 1}}) == ErrorCode::self_loop);
  CHECK(create_error(2, {ok, ok}, {{0, 1}, {0, 1}}) == ErrorCode::duplicate_arc);
  CHECK(create_error(2, {ok, {}}, {}) == ErrorCode::empty_eligible_set);
  CHECK(create_error(2, {ok, {{3, Rational(1)}}}, {}) == ErrorCode::machine_out_of_range);
  CHECK(create_error(2, {ok, {{0, Rational(1)}}}, {}) == ErrorCode::machine_out_of_range);
  CHECK(create_error(0, {ok}, {}) == ErrorCode::machine_out_of_range);
  CHECK(create_error(2, {ok, {{1, Rational(0)}}}, {}) == ErrorCode::non_positive_time);
  CHECK(create_error(2, {ok, {{1, Rational(-1, 2)}}}, {}) == ErrorCode::non_positive_time);
  CHECK(create_error(2, {ok, {{1, Rational(1)}, {1, Rational(2)}}}, {}) == ErrorCode::duplicate_machine);
  CHECK(create_error(2, {ok, ok, ok}, {{0, 1}, {1, 2}, {2, 0}}) == ErrorCode::cycle);
  CHECK(create_error(2, {ok, ok}, {}, {0}) == ErrorCode::syntax);
}

TEST_CASE("cycle errors name a witness cycle") {
  const std::vector<MachineOption> ok{{1, Rational(1)}};
  try {
    (void)Instance::create("c", 1, {ok, ok, ok, ok}, {{0, 1}, {1, 2}, {2, 3}, {3, 1}});
    FAIL("expected a cycle error");
  } catch (const FjsError& e) {
    CHECK(e.code() == ErrorCode::cycle);
    CHECK(std::string(e.what()).find("1 -> 2 -> 3 -> 1") != std::string::npos);
  }
}

TEST_CASE("topological sort reports a cycle made of real arcs") {
  const std::vector<Arc> arcs{{0, 1}, {1, 2}, {2, 3}, {3, 1}, {0, 4}};
  const auto topo = graph::topological_sort(5, arcs);
  REQUIRE_FALSE(topo.acyclic());
  const auto& cyc = topo.cycle;
  REQUIRE(cyc.size() >= 2);
  for (std::size_t i = 0; i < cyc.size(); ++i) {
    const Arc a{cyc[i], cyc[(i + 1) % cyc.size()]};
    CHECK(std::find(arcs.begin(), arcs.end(), a) != arcs.end());
  }
}

TEST_CASE("topological sort prefers the smallest ready id") {
  const auto topo = graph::topological_sort(4, std::vector<Arc>{{3, 0}, {2, 1}});
  CHECK(topo.order == std::vector<OpId>{2, 1, 3, 0});
}

TEST_CASE("longest paths agree with explicit path enumeration") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    testing::RandomSpec spec;
    spec.max_ops = 8;
    spec.arc_probability = 0.4;
    spec.fractional = 0.3;
    const Instance inst = testing::random_instance(seed, spec);
    std::vector<Rational> duration;
    for (OpId v = 0; v < inst.op_count(); ++v) duration.push_back(inst.max_ptime(v));
    const std::vector<Arc> arcs(inst.arcs().begin(), inst.arcs().end());
    const auto lp = graph::longest_paths(inst.op_count(), arcs, duration);
    const auto oracle = testing::enumerate_longest_starts(inst.op_count(), arcs, duration);
    CHECK(lp.start == oracle);
    Rational mks(0);
    for (OpId v = 0; v < inst.op_count(); ++v) mks = std::max(mks, oracle[v] + duration[v]);
    CHECK(lp.makespan == mks);
    // the critical path is a real path whose durations add up to the makespan
    Rational sum(0);
    for (std::size_t i = 0; i < lp.critical_path.size(); ++i) {
      sum += duration[lp.critical_path[i]];
      if (i > 0) {
        const Arc a{lp.critical_path[i - 1], lp.critical_path[i]};
        CHECK(std::find(arcs.begin(), arcs.end(), a) != arcs.end());
      }
    }
    CHECK(sum == mks);
  }
}

TEST_CASE("longest paths on a cyclic graph throw") {
  const std::vector<Rational> d(2, Rational(1));
  CHECK_THROWS_AS(graph::longest_paths(2, std::vector<Arc>{{0, 1}, {1, 0}}, d), FjsError);
}

TEST_CASE("weak components are numbered by smallest member") {
  const auto comp = graph::weak_components(6, std::vector<Arc>{{4, 1}, {2, 5}});
  CHECK(comp == std::vector<std::uint32_t>{0, 1, 2, 3, 1, 2});
}
