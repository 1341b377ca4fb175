#include "stabsim/engine.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace stabsim {

const char* daemon_kind_name(DaemonKind k) {
  switch (k) {
    case DaemonKind::Central: return "central";
    case DaemonKind::Synchronous: return "synchronous";
    case DaemonKind::Asynchronous: return "asynchronous";
    case DaemonKind::Schedule: return "schedule";
  }
  return "?";
}

DaemonKind daemon_kind_from_name(const std::string& name) {
  if (name == "central") return DaemonKind::Central;
  if (name == "synchronous") return DaemonKind::Synchronous;
  if (name == "asynchronous") return DaemonKind::Asynchronous;
  if (name == "schedule") return DaemonKind::Schedule;
  throw std::invalid_argument("unknown daemon kind: " + name);
}

const char* verdict_kind_name(VerdictKind k) {
  switch (k) {
    case VerdictKind::Quiescent: return "quiescent";
    case VerdictKind::OutSilent: return "out-silent";
    case VerdictKind::BudgetExhausted: return "budget-exhausted";
  }
  return "?";
}

Json node_state_to_json(const NodeState& s) {
  return Json{{"lambda", s.lambda}, {"mem", mem_to_json(s.mem)}, {"out", s.out}};
}

NodeState node_state_from_json(const Json& j) {
  NodeState s;
  s.lambda = j.at("lambda").get<std::string>();
  s.mem = mem_from_json(j.at("mem"));
  s.out = j.at("out");
  return s;
}

std::vector<std::size_t> activable_rules(const LabeledDigraph& g, const Configuration& config,
                                         VertexId v, const Algorithm& algorithm, bool requested) {
  if (v >= g.vertex_count()) throw std::invalid_argument("activable_rules: unknown vertex");
  std::vector<std::size_t> active;
  RuleContext ctx{g, config, v, requested};
  for (std::size_t i = 0; i < algorithm.rules.size(); ++i)
    if (algorithm.rules[i].guard(ctx)) active.push_back(i);
  return active;
}

bool vertex_activable(const LabeledDigraph& g, const Configuration& config, VertexId v,
                      const Algorithm& algorithm, bool requested) {
  RuleContext ctx{g, config, v, requested};
  for (const Rule& rule : algorithm.rules)
    if (rule.guard(ctx)) return true;
  return false;
}

Configuration apply_step(const LabeledDigraph& g, const Configuration& config,
                         const std::vector<VertexId>& activated, const Algorithm& algorithm,
                         const std::vector<bool>* requested, StepEffects* effects, bool lenient) {
  Configuration next = config;
  for (VertexId v : activated) {
    if (v >= g.vertex_count()) throw std::invalid_argument("apply_step: unknown vertex");
    const bool req = requested && (*requested)[v];
    RuleContext ctx{g, config, v, req};
    const Rule* chosen = nullptr;
    for (const Rule& rule : algorithm.rules) {
      if (rule.guard(ctx)) {
        chosen = &rule;
        break;
      }
    }
    if (!chosen) {
      if (lenient) {
        if (effects) effects->skipped.push_back(v);
        continue;
      }
      throw std::logic_error("apply_step: vertex " + std::to_string(v) + " is not activable");
    }
    RuleEffect effect = chosen->command(ctx);
    next[v].mem = std::move(effect.mem);
    if (effect.out) {
      next[v].out = std::move(*effect.out);
      if (effects) effects->wrote_out.push_back(v);
    }
    if (chosen->consumes_request && req && effects) effects->consumed_requests.push_back(v);
  }
  return next;
}

namespace {

std::vector<VertexId> sorted_unique(std::vector<VertexId> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

ExecutionTrace run(const LabeledDigraph& g, const Algorithm& algorithm, const DaemonPolicy& daemon,
                   const std::vector<VertexId>& requests, const RunOptions& options) {
  if (!strongly_connected(g)) throw std::invalid_argument("run: digraph must be strongly connected");
  if (options.step_budget < 1) throw std::invalid_argument("run: budget must be at least 1");

  ExecutionTrace trace;
  trace.graph = g;
  trace.algorithm_name = algorithm.name;
  trace.algorithm_params = algorithm.params;
  trace.daemon = daemon.kind;
  trace.seed = daemon.seed;
  trace.requests = sorted_unique(requests);
  trace.budget = options.step_budget;
  trace.silence_window = options.silence_window;

  Configuration config = options.initial ? *options.initial : algorithm.clean_init(g);
  if (config.size() != g.vertex_count()) throw std::invalid_argument("run: bad initial configuration");
  trace.configs.push_back(config);

  std::vector<bool> requested(g.vertex_count(), false);
  std::vector<bool> influenced(g.vertex_count(), false);
  for (VertexId v : trace.requests) {
    if (v >= g.vertex_count()) throw std::invalid_argument("run: request at unknown vertex");
    requested[v] = true;
    influenced[v] = true;
  }
  auto influenced_list = [&] {
    std::vector<VertexId> out;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
      if (influenced[v]) out.push_back(v);
    return out;
  };
  trace.influenced.push_back(influenced_list());

  std::mt19937_64 rng(daemon.seed);
  std::size_t last_out_change = 0;

  for (std::size_t step = 1; step <= options.step_budget; ++step) {
    std::vector<VertexId> activable;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
      if (vertex_activable(g, config, v, algorithm, requested[v])) activable.push_back(v);
    if (activable.empty()) {
      trace.verdict = {VerdictKind::Quiescent, step - 1};
      return trace;
    }

    std::vector<VertexId> activated;
    switch (daemon.kind) {
      case DaemonKind::Central: {
        std::uniform_int_distribution<std::size_t> pick(0, activable.size() - 1);
        activated.push_back(activable[pick(rng)]);
        break;
      }
      case DaemonKind::Synchronous:
        activated = activable;
        break;
      case DaemonKind::Asynchronous: {
        for (VertexId v : activable)
          if (rng() & 1) activated.push_back(v);
        if (activated.empty()) {
          std::uniform_int_distribution<std::size_t> pick(0, activable.size() - 1);
          activated.push_back(activable[pick(rng)]);
        }
        break;
      }
      case DaemonKind::Schedule: {
        if (step - 1 >= daemon.schedule.size()) {
          trace.verdict = {VerdictKind::BudgetExhausted, step - 1};
          return trace;
        }
        activated = daemon.schedule[step - 1];
        break;
      }
    }

    StepEffects effects;
    Configuration next = apply_step(g, config, activated, algorithm, &requested, &effects);

    bool out_changed = false;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
      if (config[v].out != next[v].out) out_changed = true;
    if (out_changed) last_out_change = step;

    for (VertexId v : effects.consumed_requests) requested[v] = false;
    // Causal influence: v joins when activated while itself or an in-neighbour
    // already belonged to the influenced set before this step.
    std::vector<VertexId> joining;
    for (VertexId v : activated) {
      if (influenced[v]) continue;
      for (VertexId u : g.in_sources(v)) {
        if (influenced[u]) {
          joining.push_back(v);
          break;
        }
      }
    }
    for (VertexId v : joining) influenced[v] = true;

    config = std::move(next);
    trace.configs.push_back(config);
    trace.activations.push_back(sorted_unique(activated));
    trace.out_writes.push_back(sorted_unique(std::move(effects.wrote_out)));
    trace.influenced.push_back(influenced_list());

    if (options.silence_window > 0 && step - last_out_change >= options.silence_window) {
      trace.verdict = {VerdictKind::OutSilent, step};
      return trace;
    }
  }
  trace.verdict = {VerdictKind::BudgetExhausted, options.step_budget};
  return trace;
}

std::vector<VertexId> influenced_set(const ExecutionTrace& trace, std::size_t t) {
  if (t >= trace.influenced.size())
    throw std::invalid_argument("influenced_set: step beyond trace length");
  std::vector<bool> influenced(trace.graph.vertex_count(), false);
  for (VertexId v : trace.requests) influenced[v] = true;
  for (std::size_t step = 1; step <= t; ++step) {
    std::vector<VertexId> joining;
    for (VertexId v : trace.activations[step - 1]) {
      if (influenced[v]) continue;
      for (VertexId u : trace.graph.in_sources(v)) {
        if (influenced[u]) {
          joining.push_back(v);
          break;
        }
      }
    }
    for (VertexId v : joining) influenced[v] = true;
  }
  std::vector<VertexId> out;
  for (VertexId v = 0; v < trace.graph.vertex_count(); ++v)
    if (influenced[v]) out.push_back(v);
  return out;
}

}  // namespace stabsim
