#include "doctest.h"
#include "stabsim/basic_algorithms.hpp"
#include "stabsim/lcr.hpp"
#include "stabsim/mazurkiewicz.hpp"
#include "stabsim/registry.hpp"
#include "stabsim/verify.hpp"

using namespace stabsim;

namespace {

VerifyOptions small_options() {
  VerifyOptions o;
  o.daemon = DaemonPolicy::asynchronous(17);
  o.corruption_seed = 23;
  o.corruption_count = 40;
  o.step_budget = 800;
  o.silence_window = 40;
  return o;
}

}  // namespace

TEST_SUITE_BEGIN("verify");

TEST_CASE("snapLCR is caught by the snap checker") {
  RingInstance inst = make_ring_instance({1, 2, 3});
  LabeledDigraph g = inst.graph();
  VerifyOptions options = small_options();
  options.corruption_count = 60;
  VerifyReport report = verify_snap_stabilizing(g, snap_lcr_algorithm(3),
                                                election_task(id_ring_family()), options);
  CHECK(report.violated);
  REQUIRE(report.witness.has_value());
  CHECK((report.witness->clause == "correction" || report.witness->clause == "decision"));
}

TEST_CASE("an algorithm that never writes out violates the decision clause") {
  LabeledDigraph g = make_ring_instance({1, 2, 3}).graph();
  Algorithm mute = snap_lcr_algorithm(3);
  for (Rule& rule : mute.rules)
    if (rule.name == "Election")
      rule.command = [](const RuleContext& ctx) {
        return RuleEffect{ctx.self().mem, std::nullopt};
      };
  VerifyOptions options = small_options();
  options.corruption_count = 5;
  VerifyReport report =
      verify_snap_stabilizing(g, mute, election_task(id_ring_family()), options);
  CHECK(report.violated);
  REQUIRE(report.witness.has_value());
  // Either nobody ever writes (decision: zero writes after influence) or the
  // terminal labelling has no ELECTED at all.
  CHECK((report.witness->clause == "decision" || report.witness->clause == "correction"));
}

TEST_CASE("the universal algorithm snap-stabilizes on the labeled 3-ring (sampled)") {
  // The radius must exceed the member diameters for the one-shot output to be
  // final: a rename still pending anywhere keeps its own counter at -1 and
  // thereby caps every counter within the radius below the threshold. The
  // multi-size ring family gives exactly such radii (3..5); a singleton
  // family would derive r = 0 and genuinely double-write under junk waves.
  PointedFamily fam = ab_ring_family(3, 5);
  OutputRadiusPair pair = derive_size_pair(fam, 8);
  LabeledDigraph g = directed_ring(3, {"a", "a", "b"});
  EnumCorruptionProfile profile;
  profile.name_bound = 6;
  profile.out_values = {Json(nullptr), Json(3), Json(7)};
  Algorithm algo = universal_algorithm(pair, fam, profile);
  VerifyOptions options = small_options();
  options.corruption_count = 30;
  options.step_budget = 4000;
  options.silence_window = 0;  // the universal algorithm is silent: quiescence decides
  VerifyReport report = verify_snap_stabilizing(g, algo, size_task(fam), options);
  CHECK(!report.violated);
  CHECK(report.inconclusive == 0);
}

TEST_CASE("LCR stabilizes to an elected minimum under mem corruption") {
  for (std::size_t n : {3u, 4u}) {
    std::vector<std::int64_t> ids;
    for (std::size_t i = 0; i < n; ++i) ids.push_back(static_cast<std::int64_t>(2 * i + 1));
    LabeledDigraph g = make_ring_instance(ids).graph();
    VerifyOptions options = small_options();
    options.corrupt_out = false;  // the self-stabilization setting corrupts mem only
    options.corruption_count = 50;
    // The silence window must cover asynchronous convergence, which can take
    // a few N^2-length cleaning cascades before the election fires.
    options.silence_window = 20 * n * n;
    options.step_budget = 80 * n * n;
    VerifyReport report = verify_self_stabilizing(g, lcr_algorithm(n),
                                                  min_id_elected_task(id_ring_family()), options);
    CAPTURE(n);
    CHECK(!report.violated);
  }
}

TEST_CASE("a corrupted election-ready pattern leaves a stale extra ELECTED") {
  // The Election rule is the only out writer and nothing ever clears out, so
  // memory corrupted to make Election immediately applicable at a non-minimum
  // vertex leaves a second ELECTED mark forever. The min/ttl registers still
  // converge and the true minimum is elected as well: the strict exactly-one
  // relation is violated while the min-id relation holds.
  LabeledDigraph g = make_ring_instance({1, 2, 3}).graph();
  Algorithm algo = lcr_algorithm(3);
  Configuration initial = algo.clean_init(g);
  initial[1].mem = LcrMem{3, 1};  // pred of the id-3 vertex announces (3, 1)
  RunOptions options;
  options.step_budget = 500;
  options.silence_window = 40;
  options.initial = initial;
  ExecutionTrace t = run(g, algo, DaemonPolicy::synchronous(), {}, options);
  REQUIRE(t.verdict.kind == VerdictKind::OutSilent);
  CHECK(t.terminal()[2].out == Json(kElectedLabel));  // stale wrong mark (id 3)
  CHECK(t.terminal()[0].out == Json(kElectedLabel));  // true minimum (id 1)
  std::vector<Json> outs;
  for (const NodeState& s : t.terminal()) outs.push_back(s.out);
  CHECK(!election_task(id_ring_family()).relation(g, outs));
  CHECK(min_id_elected_task(id_ring_family()).relation(g, outs));
}

TEST_CASE("removing Cleaning breaks self-stabilization") {
  LabeledDigraph g = make_ring_instance({1, 2, 3}).graph();
  Algorithm crippled = lcr_algorithm(3);
  std::erase_if(crippled.rules, [](const Rule& r) { return r.name == "Cleaning"; });
  VerifyOptions options = small_options();
  options.corrupt_out = false;
  options.corruption_count = 120;
  VerifyReport report =
      verify_self_stabilizing(g, crippled, election_task(id_ring_family()), options);
  CHECK(report.violated);
}

TEST_CASE("witness minimization keeps the violation") {
  RingInstance inst = make_ring_instance({1, 2, 3});
  LabeledDigraph g = inst.graph();
  VerifyOptions options = small_options();
  VerifyReport report = verify_snap_stabilizing(g, snap_lcr_algorithm(3),
                                                election_task(id_ring_family()), options);
  REQUIRE(report.violated);
  REQUIRE(report.witness.has_value());
  // Re-run the witness and confirm the violation is real.
  RunOptions ropts;
  ropts.step_budget = options.step_budget;
  ropts.silence_window = options.silence_window;
  ropts.initial = report.witness->initial;
  ExecutionTrace t = run(g, snap_lcr_algorithm(3), DaemonPolicy::replay(report.witness->schedule),
                         report.witness->requests, ropts);
  std::vector<Json> outs;
  for (const NodeState& s : t.terminal()) outs.push_back(s.out);
  TaskSpec task = election_task(id_ring_family());
  if (report.witness->clause == "correction") CHECK(!task.relation(g, outs));
}

TEST_CASE("snap no-violation implies self no-violation on the same inputs") {
  PointedFamily fam = ab_ring_family(3, 5);
  OutputRadiusPair pair = derive_size_pair(fam, 8);
  LabeledDigraph g = directed_ring(3, {"a", "a", "b"});
  Algorithm algo = universal_algorithm(pair, fam);
  VerifyOptions options = small_options();
  options.corruption_count = 10;
  options.step_budget = 4000;
  options.silence_window = 0;
  options.request_sets = {{0}, {0, 1, 2}};
  VerifyReport snap = verify_snap_stabilizing(g, algo, size_task(fam), options);
  VerifyOptions self_options = options;
  // The self check runs without requests; fresh clean names still spread
  // because corrupted mailboxes disagree.
  VerifyReport self = verify_self_stabilizing(g, algo, size_task(fam), self_options);
  if (!snap.violated) CHECK(!self.violated);
}

TEST_CASE("exhaustive exploration of a tiny instance") {
  // Chain counter with a tiny cap: every run quiesces once all counters hit
  // the cap; outputs are never written, so the empty-relation task passes.
  LabeledDigraph g = directed_ring(2);
  Algorithm algo = chain_counter_algorithm(2);
  TaskSpec trivial;
  trivial.name = "anything";
  trivial.family = singleton_family("r2", g);
  trivial.relation = [](const LabeledDigraph&, const std::vector<Json>&) { return true; };
  VerifyOptions options;
  options.exhaustive = true;
  options.max_states = 20000;
  VerifyReport report = verify_self_stabilizing(g, algo, trivial, options);
  CHECK(!report.violated);
  CHECK(report.explored_states > 0);
  CHECK(report.exhaustive);
}

TEST_SUITE_END();
