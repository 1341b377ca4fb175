#include "stabsim/verify.hpp"

#include <algorithm>
#include <sstream>

#include "stabsim/engine.hpp"

namespace stabsim {

std::string VerifyReport::summary() const {
  std::ostringstream os;
  os << (violated ? "VIOLATED" : "no-violation-within-budget");
  if (exhaustive) {
    os << " (exhaustive: fair=" << (violated ? "violated" : "ok")
       << ", all-schedules=" << (strict_violated ? "violated" : "ok") << ", states="
       << explored_states << ")";
  } else {
    os << " (runs=" << runs << ", inconclusive=" << inconclusive << ")";
  }
  if (witness) os << " clause=" << witness->clause;
  return os.str();
}

namespace {

struct Evaluation {
  enum class Outcome { Ok, Violated, Inconclusive } outcome = Outcome::Ok;
  std::string clause;
  std::string detail;
};

// Post-influence write counting per the spec of the causal decision clause:
// a write at step t counts iff the writer already belonged to the influenced
// set before the step.
Evaluation evaluate_trace(const ExecutionTrace& trace, const OutputRelation& relation,
                          bool check_decision) {
  Evaluation eval;
  const std::size_t n = trace.graph.vertex_count();
  std::vector<int> counted(n, 0);
  if (check_decision) {
    for (std::size_t t = 1; t <= trace.steps(); ++t) {
      for (VertexId v : trace.out_writes[t - 1]) {
        const auto& before = trace.influenced[t - 1];
        if (std::find(before.begin(), before.end(), v) != before.end() && ++counted[v] >= 2) {
          eval.outcome = Evaluation::Outcome::Violated;
          eval.clause = "decision";
          eval.detail = "vertex " + std::to_string(v) + " wrote out twice after influence";
          return eval;
        }
      }
    }
  }
  if (trace.verdict.kind == VerdictKind::BudgetExhausted) {
    eval.outcome = Evaluation::Outcome::Inconclusive;
    eval.detail = "budget exhausted before stabilization";
    return eval;
  }
  if (check_decision) {
    for (VertexId v : trace.influenced.back()) {
      if (counted[v] != 1) {
        eval.outcome = Evaluation::Outcome::Violated;
        eval.clause = "decision";
        eval.detail = "influenced vertex " + std::to_string(v) + " wrote " +
                      std::to_string(counted[v]) + " times after influence";
        return eval;
      }
    }
  }
  std::vector<Json> outs;
  for (const NodeState& s : trace.terminal()) outs.push_back(s.out);
  if (!relation(trace.graph, outs)) {
    eval.outcome = Evaluation::Outcome::Violated;
    eval.clause = "correction";
    eval.detail = "terminal labelling violates the task relation";
  }
  return eval;
}

std::vector<std::vector<VertexId>> default_request_sets(const LabeledDigraph& g, bool exhaustive,
                                                        bool snap) {
  std::vector<std::vector<VertexId>> sets;
  if (!snap) {
    sets.push_back({});
    return sets;
  }
  if (exhaustive) {
    const std::size_t n = g.vertex_count();
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
      std::vector<VertexId> u;
      for (std::size_t v = 0; v < n; ++v)
        if (mask >> v & 1) u.push_back(static_cast<VertexId>(v));
      sets.push_back(std::move(u));
    }
  } else {
    for (VertexId v = 0; v < g.vertex_count(); ++v) sets.push_back({v});
  }
  return sets;
}

VerifyReport verify_impl(const LabeledDigraph& g, const Algorithm& algorithm, const TaskSpec& task,
                         const VerifyOptions& options, bool snap) {
  if (!task.family.contains(g))
    throw std::invalid_argument("verify: input graph is not in the task family");
  VerifyReport report;
  report.exhaustive = options.exhaustive;
  const auto request_sets = options.request_sets.empty()
                                ? default_request_sets(g, options.exhaustive, snap)
                                : options.request_sets;

  if (options.exhaustive) {
    std::vector<ExplorerRoot> roots;
    CorruptionStream stream = CorruptionStream::exhaustive(g, algorithm, options.corrupt_out);
    while (auto initial = stream.next())
      for (const auto& u : request_sets) roots.push_back(ExplorerRoot{*initial, u});
    ExplorerOptions eopts;
    eopts.check_decision = snap;
    eopts.max_states = options.max_states;
    ExplorerResult res = explore_stabilization(g, algorithm, task.relation, roots, eopts);
    if (!res.explored_fully)
      throw std::runtime_error("verify: exhaustive exploration exceeded the state budget");
    report.explored_states = res.states;
    report.runs = roots.size();
    report.violated = res.fair_violation;
    report.strict_violated = res.strict_violation;
    if (res.witness) {
      report.witness = VerifyWitness{res.witness->initial, res.witness->requests,
                                     res.witness->schedule, res.witness->clause,
                                     res.witness->detail};
    }
    return report;
  }

  CorruptionStream stream = CorruptionStream::seeded(g, algorithm, options.corruption_seed,
                                                     options.corruption_count, options.corrupt_out);
  std::uint64_t run_index = 0;
  while (auto initial = stream.next()) {
    for (const auto& u : request_sets) {
      DaemonPolicy daemon = options.daemon;
      daemon.seed = options.daemon.seed + 0x9e3779b97f4a7c15ull * ++run_index;
      RunOptions ropts;
      ropts.step_budget = options.step_budget;
      ropts.silence_window = options.silence_window;
      ropts.initial = *initial;
      ExecutionTrace trace = run(g, algorithm, daemon, u, ropts);
      ++report.runs;
      Evaluation eval = evaluate_trace(trace, task.relation, snap);
      if (eval.outcome == Evaluation::Outcome::Inconclusive) ++report.inconclusive;
      if (eval.outcome == Evaluation::Outcome::Violated) {
        report.violated = true;
        report.strict_violated = true;
        VerifyWitness witness{*initial, u, trace.activations, eval.clause, eval.detail};
        report.witness = minimize_witness(g, algorithm, task, options, std::move(witness), snap);
        return report;
      }
    }
  }
  return report;
}

}  // namespace

VerifyReport verify_snap_stabilizing(const LabeledDigraph& g, const Algorithm& algorithm,
                                     const TaskSpec& task, const VerifyOptions& options) {
  return verify_impl(g, algorithm, task, options, true);
}

VerifyReport verify_self_stabilizing(const LabeledDigraph& g, const Algorithm& algorithm,
                                     const TaskSpec& task, const VerifyOptions& options) {
  VerifyOptions self = options;
  self.request_sets = {{}};
  return verify_impl(g, algorithm, task, self, false);
}

VerifyWitness minimize_witness(const LabeledDigraph& g, const Algorithm& algorithm,
                               const TaskSpec& task, const VerifyOptions& options,
                               VerifyWitness witness, bool check_decision) {
  const Configuration clean = algorithm.clean_init(g);
  auto still_violates = [&](const Configuration& initial,
                            std::vector<std::vector<VertexId>>* schedule_out) {
    RunOptions ropts;
    ropts.step_budget = options.step_budget;
    ropts.silence_window = options.silence_window;
    ropts.initial = initial;
    ExecutionTrace trace = run(g, algorithm, options.daemon, witness.requests, ropts);
    Evaluation eval = evaluate_trace(trace, task.relation, check_decision);
    if (eval.outcome == Evaluation::Outcome::Violated) {
      if (schedule_out) *schedule_out = trace.activations;
      witness.clause = eval.clause;
      witness.detail = eval.detail;
      return true;
    }
    return false;
  };
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    Configuration trial = witness.initial;
    trial[v] = clean[v];
    std::vector<std::vector<VertexId>> schedule;
    if (still_violates(trial, &schedule)) {
      witness.initial = std::move(trial);
      witness.schedule = std::move(schedule);
    }
  }
  return witness;
}

}  // namespace stabsim
