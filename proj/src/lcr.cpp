#include "stabsim/lcr.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "stabsim/corruption.hpp"

namespace stabsim {

const char* const kElectedLabel = "ELECTED";

LabeledDigraph RingInstance::graph() const {
  std::vector<std::string> labels;
  for (std::int64_t id : ids) labels.push_back(std::to_string(id));
  LabeledDigraph g;
  for (const auto& l : labels) g.add_vertex(l);
  for (std::size_t i = 0; i < size; ++i)
    g.add_arc(static_cast<VertexId>(i), static_cast<VertexId>((i + 1) % size));
  return g;
}

RingInstance make_ring_instance(const std::vector<std::int64_t>& ids) {
  if (ids.size() < 3) throw std::invalid_argument("ring instance needs at least 3 vertices");
  std::set<std::int64_t> distinct(ids.begin(), ids.end());
  if (distinct.size() != ids.size()) throw std::invalid_argument("ring identities must be distinct");
  for (std::int64_t id : ids)
    if (id <= 0) throw std::invalid_argument("ring identities must be positive");
  return RingInstance{ids.size(), ids};
}

std::int64_t ring_id(const LabeledDigraph& g, VertexId v) { return std::stoll(g.label(v)); }

namespace {

const LcrMem& lcr(const NodeState& s) { return std::get<LcrMem>(s.mem); }

// The unique predecessor on a unidirectional ring.
VertexId pred_of(const RuleContext& ctx) {
  const auto& in = ctx.g.in_arcs(ctx.center);
  if (in.size() != 1) throw std::logic_error("lcr: vertex has no unique predecessor");
  return ctx.g.arc(in[0]).src;
}

Algorithm lcr_base(std::size_t ring_size, bool with_request_rule) {
  const std::int64_t N = static_cast<std::int64_t>(ring_size);
  Algorithm algo;
  algo.name = with_request_rule ? "snap_lcr" : "lcr";
  algo.params = Json{{"n", ring_size}};

  if (with_request_rule) {
    Rule initiate_req;
    initiate_req.name = "Initiate";
    initiate_req.consumes_request = true;
    initiate_req.guard = [](const RuleContext& ctx) { return ctx.requested; };
    initiate_req.command = [N](const RuleContext& ctx) {
      return RuleEffect{LcrMem{ring_id(ctx.g, ctx.center), N}, std::nullopt};
    };
    algo.rules.push_back(std::move(initiate_req));
  }

  Rule initiate;
  initiate.name = with_request_rule ? "InitiateLocal" : "Initiate";
  initiate.guard = [](const RuleContext& ctx) {
    const LcrMem& own = lcr(ctx.self());
    const LcrMem& before = lcr(ctx.state(pred_of(ctx)));
    return own.min < before.min && own.min < ring_id(ctx.g, ctx.center);
  };
  initiate.command = [N](const RuleContext& ctx) {
    return RuleEffect{LcrMem{ring_id(ctx.g, ctx.center), N}, std::nullopt};
  };
  algo.rules.push_back(std::move(initiate));

  Rule circulate;
  circulate.name = "Circulate";
  circulate.guard = [](const RuleContext& ctx) {
    return lcr(ctx.self()).min > lcr(ctx.state(pred_of(ctx))).min;
  };
  circulate.command = [](const RuleContext& ctx) {
    const LcrMem& before = lcr(ctx.state(pred_of(ctx)));
    return RuleEffect{LcrMem{before.min, before.ttl - 1}, std::nullopt};
  };
  algo.rules.push_back(std::move(circulate));

  Rule cleaning;
  cleaning.name = "Cleaning";
  cleaning.guard = [N](const RuleContext& ctx) {
    const LcrMem& own = lcr(ctx.self());
    const LcrMem& before = lcr(ctx.state(pred_of(ctx)));
    // A vertex is a proper chain head when it announces its own id at full
    // ttl; only those are exempt from cleaning. (Exempting on ttl alone
    // leaves corrupted quiescent chains headed by min != id alive, which
    // contradicts the stable-labelling characterization.)
    const bool proper_head = own.ttl == N && own.min == ring_id(ctx.g, ctx.center);
    return (own.min != before.min || own.ttl != before.ttl - 1) && !proper_head;
  };
  cleaning.command = [N](const RuleContext& ctx) {
    return RuleEffect{LcrMem{ring_id(ctx.g, ctx.center), N}, std::nullopt};
  };
  algo.rules.push_back(std::move(cleaning));

  Rule election;
  election.name = "Election";
  election.guard = [](const RuleContext& ctx) {
    const LcrMem& before = lcr(ctx.state(pred_of(ctx)));
    return ring_id(ctx.g, ctx.center) == before.min && before.ttl == 1;
  };
  election.command = [](const RuleContext& ctx) {
    return RuleEffect{LcrMem{lcr(ctx.self()).min, 0}, Json(kElectedLabel)};
  };
  algo.rules.push_back(std::move(election));

  algo.clean_init = [N](const LabeledDigraph& g) {
    Configuration c;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
      c.push_back(NodeState{g.label(v), LcrMem{ring_id(g, v), N}, nullptr});
    return c;
  };

  // Corruption domains: min over the id set plus a sentinel, ttl over 0..N,
  // out in {bottom, ELECTED}.
  algo.domain = [N](const LabeledDigraph& g, VertexId v) {
    (void)v;
    auto ids = std::make_shared<std::vector<std::int64_t>>();
    ids->push_back(0);  // sentinel below every real id
    for (VertexId u = 0; u < g.vertex_count(); ++u) ids->push_back(ring_id(g, u));
    VertexDomain d;
    d.mem_count = static_cast<std::uint64_t>(ids->size()) * static_cast<std::uint64_t>(N + 1);
    d.mem_at = [ids, N](std::uint64_t i) {
      return Mem{LcrMem{(*ids)[i % ids->size()],
                        static_cast<std::int64_t>(i / ids->size()) % (N + 1)}};
    };
    d.mem_sample = [ids, N](std::mt19937_64& rng) {
      return Mem{LcrMem{(*ids)[rng() % ids->size()], static_cast<std::int64_t>(rng() % (N + 1))}};
    };
    d.out_values = {Json(nullptr), Json(kElectedLabel)};
    return d;
  };
  return algo;
}

}  // namespace

Algorithm lcr_algorithm(std::size_t ring_size) { return lcr_base(ring_size, false); }
Algorithm snap_lcr_algorithm(std::size_t ring_size) { return lcr_base(ring_size, true); }

TaskSpec election_task(PointedFamily family) {
  TaskSpec task;
  task.name = "election";
  task.family = std::move(family);
  task.relation = [](const LabeledDigraph& g, const std::vector<Json>& out) {
    (void)g;
    int elected = 0;
    for (const Json& o : out)
      if (o == Json(kElectedLabel)) ++elected;
    return elected == 1;
  };
  return task;
}

TaskSpec min_id_elected_task(PointedFamily family) {
  TaskSpec task;
  task.name = "election-min-id";
  task.family = std::move(family);
  task.relation = [](const LabeledDigraph& g, const std::vector<Json>& out) {
    VertexId best = 0;
    for (VertexId v = 1; v < g.vertex_count(); ++v)
      if (ring_id(g, v) < ring_id(g, best)) best = v;
    return out[best] == Json(kElectedLabel);
  };
  return task;
}

TaskSpec size_task(PointedFamily family) {
  TaskSpec task;
  task.name = "size";
  task.family = std::move(family);
  task.relation = [](const LabeledDigraph& g, const std::vector<Json>& out) {
    for (const Json& o : out)
      if (o != Json(g.vertex_count())) return false;
    return true;
  };
  return task;
}

std::optional<SnapViolationWitness> find_snap_violation(const RingInstance& instance,
                                                        std::size_t budget) {
  const LabeledDigraph g = instance.graph();
  const Algorithm algo = snap_lcr_algorithm(instance.size);
  const std::int64_t min_id = *std::min_element(instance.ids.begin(), instance.ids.end());
  TaskSpec task = election_task(singleton_family("ring", g));
  const RunOptions options{budget, std::max<std::size_t>(4 * instance.size * instance.size, 16), {}};

  auto confirm = [&](const Configuration& initial, const std::vector<VertexId>& requests,
                     VertexId offender,
                     std::vector<std::vector<VertexId>> schedule) -> std::optional<SnapViolationWitness> {
    RunOptions replay = options;
    replay.initial = initial;
    ExecutionTrace trace = run(g, algo, DaemonPolicy::replay(schedule), requests, replay);
    bool offender_wrote = false;
    for (const auto& writers : trace.out_writes)
      for (VertexId w : writers) offender_wrote = offender_wrote || w == offender;
    std::vector<Json> outs;
    for (const NodeState& s : trace.terminal()) outs.push_back(s.out);
    if (offender_wrote && trace.terminal()[offender].out == Json(kElectedLabel) &&
        !task.relation(g, outs))
      return SnapViolationWitness{instance, initial, requests, std::move(schedule), offender,
                                  "correction"};
    return std::nullopt;
  };

  // Direct construction: corrupt the predecessor of a non-minimum vertex so
  // Election is immediately applicable there, and request the predecessor.
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (instance.ids[v] == min_id) continue;  // ELECTED would then be correct
    const VertexId before = static_cast<VertexId>((v + instance.size - 1) % instance.size);
    Configuration initial = algo.clean_init(g);
    initial[before].mem = LcrMem{instance.ids[v], 1};
    std::vector<bool> requested(g.vertex_count(), false);
    requested[before] = true;
    if (activable_rules(g, initial, v, algo, false).empty()) continue;

    // Schedule: the offender moves first, then everyone synchronously.
    std::vector<std::vector<VertexId>> schedule{{v}};
    RunOptions sync_opts = options;
    sync_opts.initial = apply_step(g, initial, {v}, algo, &requested);
    ExecutionTrace rest = run(g, algo, DaemonPolicy::synchronous(), {before}, sync_opts);
    for (const auto& a : rest.activations) schedule.push_back(a);
    if (auto witness = confirm(initial, {before}, v, std::move(schedule))) return witness;
  }

  // Fallback: seeded search over corrupted starts and asynchronous schedules.
  CorruptionStream stream = CorruptionStream::seeded(g, algo, 0xACDC, budget, true);
  std::uint64_t seed = 1;
  while (auto initial = stream.next()) {
    RunOptions opts = options;
    opts.initial = *initial;
    for (VertexId u = 0; u < g.vertex_count(); ++u) {
      ExecutionTrace probe = run(g, algo, DaemonPolicy::asynchronous(seed++), {u}, opts);
      for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (instance.ids[v] == min_id) continue;
        bool wrote = false;
        for (const auto& writers : probe.out_writes)
          for (VertexId w : writers) wrote = wrote || w == v;
        std::vector<Json> outs;
        for (const NodeState& s : probe.terminal()) outs.push_back(s.out);
        if (wrote && probe.terminal()[v].out == Json(kElectedLabel) && !task.relation(g, outs)) {
          if (auto witness = confirm(*initial, {u}, v, probe.activations)) return witness;
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace stabsim
