#include "doctest.h"
#include "stabsim/basic_algorithms.hpp"
#include "stabsim/lifting.hpp"
#include "stabsim/mazurkiewicz.hpp"

using namespace stabsim;

namespace {

LabeledDigraph one_loop() {
  LabeledDigraph g;
  g.add_vertex("");
  g.add_arc(0, 0);
  return g;
}

DigraphMorphism ring_to_loop(std::size_t n) {
  DigraphMorphism m;
  m.vertex_map.assign(n, 0);
  m.arc_map.assign(n, 0);
  return m;
}

}  // namespace

TEST_SUITE_BEGIN("lifting");

TEST_CASE("fibration lift: counter on the loop lifts to rings") {
  LabeledDigraph loop = one_loop();
  Algorithm algo = chain_counter_algorithm();
  RunOptions options;
  options.step_budget = 20;
  ExecutionTrace base = run(loop, algo, DaemonPolicy::asynchronous(5), {}, options);
  REQUIRE(base.steps() == 20);

  for (std::size_t n : {2u, 3u, 5u}) {
    LabeledDigraph ring = directed_ring(n);
    LiftReport report = lift_execution(base, ring, ring_to_loop(n), algo);
    CHECK(report.steps_replayed == base.steps());
    // All ring vertices track the loop vertex exactly.
    for (std::size_t t = 0; t <= base.steps(); ++t)
      for (VertexId v = 0; v < n; ++v)
        CHECK(report.trace.configs[t][v].mem == base.configs[t][0].mem);
  }
}

TEST_CASE("identity fibration leaves the trace unchanged") {
  LabeledDigraph g = directed_ring(3, {"a", "a", "b"});
  Algorithm algo = enumeration_algorithm();
  RunOptions options;
  options.step_budget = 400;
  ExecutionTrace base = run(g, algo, DaemonPolicy::synchronous(), {0, 1, 2}, options);
  REQUIRE(base.verdict.kind == VerdictKind::Quiescent);
  LiftReport report = lift_execution(base, g, identity_morphism(g), algo);
  for (std::size_t t = 0; t <= base.steps(); ++t) CHECK(report.trace.configs[t] == base.configs[t]);
}

TEST_CASE("fibration lift rejects non-fibrations") {
  ExecutionTrace base = run(one_loop(), chain_counter_algorithm(), DaemonPolicy::synchronous(), {},
                            {5, 0, {}});
  LabeledDigraph two;
  two.add_vertex("");
  two.add_vertex("");
  two.add_arc(0, 1);
  two.add_arc(1, 0);
  two.add_arc(0, 0);
  DigraphMorphism bad;
  bad.vertex_map = {0, 0};
  bad.arc_map = {0, 0, 0};
  CHECK_THROWS_AS(lift_execution(base, two, bad, chain_counter_algorithm()), std::invalid_argument);
}

TEST_CASE("quasi-fibration lift agrees up to the radius and may diverge after") {
  // Base: 3-ring with counters started at 7. Lift target: 5-ring whose ball
  // vertices copy the base and whose outside vertices start clean at 0. The
  // divergence wave moves one hop per step, so the center agrees for t <= r
  // and (run further) diverges at t = r + 1.
  LabeledDigraph base_ring = directed_ring(3);
  LabeledDigraph big_ring = directed_ring(5);
  Algorithm algo = chain_counter_algorithm();

  Configuration base_init;
  for (int i = 0; i < 3; ++i) base_init.push_back(NodeState{"", std::int64_t{7}, nullptr});
  RunOptions options;
  options.step_budget = 12;
  options.initial = base_init;
  ExecutionTrace base = run(base_ring, algo, DaemonPolicy::synchronous(), {}, options);
  REQUIRE(base.steps() == 12);

  const int radius = 3;
  auto verdict = check_quasi_fibration(big_ring, base_ring, 0, radius, 8);
  REQUIRE(verdict.kind == QuasiFibrationKind::Yes);
  const QuasiFibrationWitness& w = *verdict.witness;

  LiftReport report = lift_execution_quasi(base, big_ring, w, algo);
  CHECK(report.steps_replayed == static_cast<std::size_t>(radius));
  // Center equality for all t <= r (part of the verified guarantee).
  for (int t = 0; t <= radius; ++t)
    CHECK(report.trace.configs[t][0].mem == base.configs[t][w.gamma_vertex[w.ball.center]].mem);

  // Extended comparison: replay the ball preimages past the radius and watch
  // the center drift from the base exactly one step after the bound.
  std::vector<std::vector<VertexId>> schedule;
  for (std::size_t t = 0; t < base.steps(); ++t) {
    std::vector<VertexId> everyone;
    for (VertexId v = 0; v < big_ring.vertex_count(); ++v) everyone.push_back(v);
    schedule.push_back(everyone);
  }
  RunOptions ext;
  ext.step_budget = base.steps();
  ext.initial = report.trace.configs.front();
  ExecutionTrace extended = run(big_ring, algo, DaemonPolicy::replay(schedule), {}, ext);
  int first_divergence = -1;
  for (std::size_t t = 0; t <= extended.steps() && first_divergence < 0; ++t)
    if (!(extended.configs[t][0].mem == base.configs[t][w.gamma_vertex[w.ball.center]].mem))
      first_divergence = static_cast<int>(t);
  CHECK(first_divergence == radius + 1);
}

TEST_CASE("quasi lift validates its witness") {
  ExecutionTrace base = run(directed_ring(3), chain_counter_algorithm(),
                            DaemonPolicy::synchronous(), {}, {5, 0, {}});
  auto verdict = check_quasi_fibration(directed_ring(5), directed_ring(3), 0, 2, 8);
  REQUIRE(verdict.kind == QuasiFibrationKind::Yes);
  QuasiFibrationWitness w = *verdict.witness;
  w.gamma_vertex[0] = (w.gamma_vertex[0] + 1) % 3;  // break the homomorphism
  CHECK_THROWS_AS(lift_execution_quasi(base, directed_ring(5), w, chain_counter_algorithm()),
                  std::invalid_argument);
}

TEST_SUITE_END();
