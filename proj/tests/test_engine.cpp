#include "doctest.h"
#include "stabsim/basic_algorithms.hpp"
#include "stabsim/corruption.hpp"
#include "stabsim/engine.hpp"
#include "stabsim/lcr.hpp"
#include "stabsim/trace_io.hpp"

using namespace stabsim;

TEST_SUITE_BEGIN("engine");

TEST_CASE("activable rules follow guards and priority order") {
  RingInstance inst = make_ring_instance({3, 1, 2});
  LabeledDigraph g = inst.graph();
  Algorithm algo = lcr_algorithm(3);
  Configuration clean = algo.clean_init(g);

  // Vertex 0 (id 3) reads pred vertex 2 (id 2): min 3 > 2, Circulate applies.
  auto rules = activable_rules(g, clean, 0, algo);
  REQUIRE(rules.size() == 1);
  CHECK(algo.rules[rules[0]].name == "Circulate");

  // Vertex 1 (id 1) reads pred id 3: no guard holds.
  CHECK(activable_rules(g, clean, 1, algo).empty());

  // Under snapLCR a requested vertex lists Initiate first.
  Algorithm snap = snap_lcr_algorithm(3);
  Configuration snap_clean = snap.clean_init(g);
  auto requested_rules = activable_rules(g, snap_clean, 0, snap, true);
  REQUIRE(!requested_rules.empty());
  CHECK(snap.rules[requested_rules[0]].name == "Initiate");
  CHECK(requested_rules[0] == 0);
}

TEST_CASE("apply_step semantics") {
  RingInstance inst = make_ring_instance({3, 1, 2});
  LabeledDigraph g = inst.graph();
  Algorithm algo = lcr_algorithm(3);
  Configuration clean = algo.clean_init(g);

  SUBCASE("empty activation set changes nothing") {
    CHECK(apply_step(g, clean, {}, algo) == clean);
  }
  SUBCASE("activating a non-activable vertex is a harness error") {
    CHECK_THROWS_AS(apply_step(g, clean, {1}, algo), std::logic_error);
  }
  SUBCASE("simultaneous activation reads pre-step state") {
    // Vertices 0 (id 3, pred id 2) and 2 (id 2, pred id 1) are both
    // activable. Synchronous application must differ from the two sequential
    // central steps: sequentially, vertex 0 sees vertex 2's already-updated
    // min. Frozen expectation derived by running both orders by hand.
    Configuration together = apply_step(g, clean, {0, 2}, algo);
    Configuration first = apply_step(g, clean, {2}, algo);
    Configuration then = apply_step(g, first, {0}, algo);
    CHECK(std::get<LcrMem>(together[0].mem).min == 2);  // pre-step value of vertex 2
    CHECK(std::get<LcrMem>(then[0].mem).min == 1);      // post-step value of vertex 2
    CHECK(!(together == then));
  }
}

TEST_CASE("run verdicts") {
  SUBCASE("algorithm with no rules is quiescent at step 0") {
    ExecutionTrace t = run(directed_ring(3), empty_algorithm(), DaemonPolicy::synchronous(), {});
    CHECK(t.verdict == RunVerdict{VerdictKind::Quiescent, 0});
    CHECK(t.configs.size() == 1);
  }
  SUBCASE("budget exhaustion is a verdict, not an error") {
    RunOptions options;
    options.step_budget = 5;
    ExecutionTrace t = run(directed_ring(3), chain_counter_algorithm(), DaemonPolicy::synchronous(),
                           {}, options);
    CHECK(t.verdict.kind == VerdictKind::BudgetExhausted);
    CHECK(t.steps() == 5);
  }
  SUBCASE("LCR on a clean ring elects the minimum id") {
    RingInstance inst = make_ring_instance({3, 1, 2});
    LabeledDigraph g = inst.graph();
    RunOptions options;
    options.step_budget = 500;
    options.silence_window = 30;
    ExecutionTrace t = run(g, lcr_algorithm(3), DaemonPolicy::synchronous(), {}, options);
    REQUIRE(t.verdict.kind == VerdictKind::OutSilent);
    int elected = 0;
    for (VertexId v = 0; v < 3; ++v) {
      if (t.terminal()[v].out == Json(kElectedLabel)) {
        ++elected;
        CHECK(ring_id(g, v) == 1);  // min-id oracle
      }
    }
    CHECK(elected == 1);
  }
  SUBCASE("structural invariant: one more configuration than activation sets") {
    ExecutionTrace t = run(directed_ring(4), chain_counter_algorithm(),
                           DaemonPolicy::asynchronous(7), {}, {20, 0, {}});
    CHECK(t.configs.size() == t.activations.size() + 1);
    CHECK(t.influenced.size() == t.configs.size());
  }
  CHECK_THROWS(run(LabeledDigraph{}, empty_algorithm(), DaemonPolicy::synchronous(), {}));
}

TEST_CASE("determinism: identical inputs give byte-identical traces") {
  RingInstance inst = make_ring_instance({5, 2, 9, 4});
  LabeledDigraph g = inst.graph();
  RunOptions options;
  options.step_budget = 200;
  options.silence_window = 25;
  for (auto daemon : {DaemonPolicy::central(42), DaemonPolicy::asynchronous(42)}) {
    ExecutionTrace a = run(g, lcr_algorithm(4), daemon, {}, options);
    ExecutionTrace b = run(g, lcr_algorithm(4), daemon, {}, options);
    CHECK(trace_to_string(a) == trace_to_string(b));
  }
}

TEST_CASE("synchronous schedule is reproducible under the asynchronous policy") {
  RingInstance inst = make_ring_instance({3, 1, 2});
  LabeledDigraph g = inst.graph();
  RunOptions options;
  options.step_budget = 60;
  options.silence_window = 20;
  ExecutionTrace sync = run(g, lcr_algorithm(3), DaemonPolicy::synchronous(), {}, options);
  // The synchronous activation sets are nonempty subsets of the activable
  // sets, so the engine replays them as an asynchronous choice.
  ExecutionTrace replay = run(g, lcr_algorithm(3), DaemonPolicy::replay(sync.activations), {},
                              options);
  for (std::size_t t = 0; t < sync.configs.size(); ++t) CHECK(replay.configs[t] == sync.configs[t]);
}

TEST_SUITE_END();

TEST_SUITE_BEGIN("influence");

TEST_CASE("influence timeline") {
  // Ring 0 -> 1 -> 2 -> 0 with the chain counter (always activable).
  LabeledDigraph g = directed_ring(3);
  Algorithm algo = chain_counter_algorithm();

  SUBCASE("at step 0 exactly the requested set is influenced") {
    ExecutionTrace t = run(g, algo, DaemonPolicy::replay({}), {0}, {5, 0, {}});
    CHECK(influenced_set(t, 0) == std::vector<VertexId>{0});
  }
  SUBCASE("an adjacent activation joins, a non-adjacent one does not") {
    // 1 reads 0 (arc 0->1): activating 1 joins. 2 reads 1 (not influenced
    // yet at that time): activating 2 first does not join.
    ExecutionTrace adj = run(g, algo, DaemonPolicy::replay({{1}}), {0}, {5, 0, {}});
    CHECK(influenced_set(adj, 1) == std::vector<VertexId>{0, 1});
    ExecutionTrace far = run(g, algo, DaemonPolicy::replay({{2}}), {0}, {5, 0, {}});
    CHECK(influenced_set(far, 1) == std::vector<VertexId>{0});
  }
  SUBCASE("recorded timeline matches the recomputation and grows monotonically") {
    ExecutionTrace t = run(g, algo, DaemonPolicy::asynchronous(3), {1}, {30, 0, {}});
    for (std::size_t step = 0; step <= t.steps(); ++step) {
      CHECK(t.influenced[step] == influenced_set(t, step));
      if (step > 0) {
        for (VertexId v : t.influenced[step - 1]) {
          const auto& now = t.influenced[step];
          CHECK(std::find(now.begin(), now.end(), v) != now.end());
        }
      }
    }
  }
  SUBCASE("chains need strictly increasing activation times") {
    // Simultaneous activation of 1 and 2 while only 0 is influenced: 1 joins
    // (reads 0), 2 does not (1 was not influenced before the step).
    ExecutionTrace t = run(g, algo, DaemonPolicy::replay({{1, 2}}), {0}, {5, 0, {}});
    CHECK(influenced_set(t, 1) == std::vector<VertexId>{0, 1});
  }
}

TEST_SUITE_END();

TEST_SUITE_BEGIN("corruption");

TEST_CASE("exhaustive corruption counts") {
  SUBCASE("one vertex with a small register domain") {
    LabeledDigraph loop;
    loop.add_vertex("");
    loop.add_arc(0, 0);
    Algorithm algo = chain_counter_algorithm();
    // chain counter domain: 8 mem values, 1 out value.
    CorruptionStream all = CorruptionStream::exhaustive(loop, algo, true);
    CHECK(all.total() == 8);
    std::size_t n = 0;
    while (all.next()) ++n;
    CHECK(n == 8);
  }
  SUBCASE("LCR domain product: ids x ttl per vertex, times out choices") {
    RingInstance inst = make_ring_instance({1, 2, 3});
    LabeledDigraph g = inst.graph();
    Algorithm algo = lcr_algorithm(3);
    // min in {sentinel, 1, 2, 3}, ttl in 0..3 -> 16 mem values; out bottom or
    // ELECTED doubles it.
    CorruptionStream mem_only = CorruptionStream::exhaustive(g, algo, false);
    CHECK(mem_only.total() == 16ull * 16 * 16);
    CorruptionStream with_out = CorruptionStream::exhaustive(g, algo, true);
    CHECK(with_out.total() == 32ull * 32 * 32);
  }
}

TEST_CASE("explicit domains reproduce the documented 12^3 count") {
  // min over exactly the id set and ttl over 0..N gives 12 mem combinations
  // per vertex on a 3-ring, independently of out.
  RingInstance inst = make_ring_instance({1, 2, 3});
  LabeledDigraph g = inst.graph();
  Algorithm algo = lcr_algorithm(3);
  algo.domain = [](const LabeledDigraph& graph, VertexId) {
    auto ids = std::make_shared<std::vector<std::int64_t>>();
    for (VertexId u = 0; u < graph.vertex_count(); ++u) ids->push_back(ring_id(graph, u));
    VertexDomain d;
    d.mem_count = ids->size() * 4;
    d.mem_at = [ids](std::uint64_t i) {
      return Mem{LcrMem{(*ids)[i % ids->size()], static_cast<std::int64_t>(i / ids->size())}};
    };
    d.mem_sample = [ids](std::mt19937_64& rng) {
      return Mem{LcrMem{(*ids)[rng() % ids->size()], static_cast<std::int64_t>(rng() % 4)}};
    };
    return d;
  };
  CorruptionStream stream = CorruptionStream::exhaustive(g, algo, false);
  CHECK(stream.total() == 12ull * 12 * 12);
}

TEST_CASE("seeded corruption is reproducible and respects include_out") {
  RingInstance inst = make_ring_instance({1, 2, 3});
  LabeledDigraph g = inst.graph();
  Algorithm algo = lcr_algorithm(3);
  auto drain = [&](std::uint64_t seed, bool out) {
    CorruptionStream s = CorruptionStream::seeded(g, algo, seed, 20, out);
    std::vector<Configuration> configs;
    while (auto c = s.next()) configs.push_back(*c);
    return configs;
  };
  CHECK(drain(7, true) == drain(7, true));
  CHECK(drain(7, true) != drain(8, true));
  for (const Configuration& c : drain(9, false))
    for (const NodeState& s : c) CHECK(s.out.is_null());
}

TEST_CASE("exhaustive mode refuses unbounded domains") {
  LabeledDigraph g = directed_ring(3, {"a", "a", "b"});
  Algorithm algo = chain_counter_algorithm();
  algo.domain = [](const LabeledDigraph&, VertexId) {
    VertexDomain d;
    d.mem_count = 0;  // sampled only
    d.mem_sample = [](std::mt19937_64&) { return Mem{std::int64_t{0}}; };
    return d;
  };
  CHECK_THROWS(CorruptionStream::exhaustive(g, algo, true));
  CorruptionStream sampled = CorruptionStream::seeded(g, algo, 1, 3, true);
  CHECK(sampled.next().has_value());
}

TEST_SUITE_END();
