#include "stabsim/lifting.hpp"

#include <algorithm>
#include <sstream>

namespace stabsim {

namespace {

std::string divergence_message(const char* what, std::size_t step, VertexId v) {
  std::ostringstream os;
  os << "lift divergence (" << what << ") at step " << step << ", vertex " << v;
  return os.str();
}

}  // namespace

LiftReport lift_execution(const ExecutionTrace& base_trace, const LabeledDigraph& g,
                          const DigraphMorphism& phi, const Algorithm& algorithm) {
  if (check_fibration(g, base_trace.graph, phi) != FibrationVerdict::Fibration)
    throw std::invalid_argument("lift_execution: phi is not a fibration");

  auto pull_back = [&](const Configuration& base) {
    Configuration config(g.vertex_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      config[v] = base[phi.vertex_map[v]];
      config[v].lambda = g.label(v);  // equal by label preservation
    }
    return config;
  };

  std::vector<VertexId> requests;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (std::find(base_trace.requests.begin(), base_trace.requests.end(), phi.vertex_map[v]) !=
        base_trace.requests.end())
      requests.push_back(v);

  std::vector<std::vector<VertexId>> schedule;
  for (const auto& base_set : base_trace.activations) {
    std::vector<VertexId> lifted;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
      if (std::find(base_set.begin(), base_set.end(), phi.vertex_map[v]) != base_set.end())
        lifted.push_back(v);
    schedule.push_back(std::move(lifted));
  }

  RunOptions options;
  options.step_budget = std::max<std::size_t>(base_trace.steps(), 1);
  options.initial = pull_back(base_trace.configs.front());
  ExecutionTrace lifted = run(g, algorithm, DaemonPolicy::replay(schedule), requests, options);

  LiftReport report;
  report.steps_replayed = lifted.steps();
  if (lifted.steps() != base_trace.steps())
    throw LiftDivergence(divergence_message("length mismatch", lifted.steps(), 0));
  for (std::size_t t = 0; t <= lifted.steps(); ++t) {
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      const NodeState& mine = lifted.configs[t][v];
      const NodeState& base = base_trace.configs[t][phi.vertex_map[v]];
      if (!(mine.mem == base.mem) || mine.out != base.out)
        throw LiftDivergence(divergence_message("state mismatch", t, v));
    }
  }
  report.steps_verified = lifted.steps();
  report.trace = std::move(lifted);
  return report;
}

LiftReport lift_execution_quasi(const ExecutionTrace& base_trace, const LabeledDigraph& g,
                                const QuasiFibrationWitness& witness, const Algorithm& algorithm) {
  const VertexId center = witness.ball.vertex_of.at(witness.ball.center);
  if (!validate_quasi_fibration_witness(g, base_trace.graph, center, witness))
    throw std::invalid_argument("lift_execution_quasi: invalid witness");

  const std::size_t steps = std::min<std::size_t>(base_trace.steps(),
                                                  static_cast<std::size_t>(witness.radius));

  // gamma as a partial map on g's vertices.
  constexpr VertexId kNone = static_cast<VertexId>(-1);
  std::vector<VertexId> gamma(g.vertex_count(), kNone);
  std::vector<int> depth(g.vertex_count(), -1);
  for (VertexId x = 0; x < witness.ball.graph.vertex_count(); ++x) {
    gamma[witness.ball.vertex_of[x]] = witness.gamma_vertex[x];
    depth[witness.ball.vertex_of[x]] = witness.ball.depth[x];
  }

  Configuration config = algorithm.clean_init(g);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (gamma[v] == kNone) continue;
    config[v] = base_trace.configs.front()[gamma[v]];
    config[v].lambda = g.label(v);
  }

  ExecutionTrace lifted;
  lifted.graph = g;
  lifted.algorithm_name = algorithm.name;
  lifted.algorithm_params = algorithm.params;
  lifted.daemon = DaemonKind::Schedule;
  lifted.budget = steps;
  lifted.configs.push_back(config);

  std::vector<bool> requested(g.vertex_count(), false);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (gamma[v] == kNone) continue;
    if (std::find(base_trace.requests.begin(), base_trace.requests.end(), gamma[v]) !=
        base_trace.requests.end()) {
      requested[v] = true;
      lifted.requests.push_back(v);
    }
  }

  LiftReport report;
  for (std::size_t t = 1; t <= steps; ++t) {
    std::vector<VertexId> scheduled;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
      if (gamma[v] != kNone &&
          std::find(base_trace.activations[t - 1].begin(), base_trace.activations[t - 1].end(),
                    gamma[v]) != base_trace.activations[t - 1].end())
        scheduled.push_back(v);
    StepEffects effects;
    Configuration next =
        apply_step(g, config, scheduled, algorithm, &requested, &effects, /*lenient=*/true);
    for (VertexId v : effects.consumed_requests) requested[v] = false;
    // A skipped vertex inside the still-verified region means the activable
    // sets diverged where the quasi-lifting argument forbids it.
    for (VertexId v : effects.skipped)
      if (depth[v] <= witness.radius - static_cast<int>(t))
        throw LiftDivergence(divergence_message("guard mismatch", t, v));
    config = std::move(next);
    lifted.configs.push_back(config);
    lifted.activations.push_back(scheduled);
    lifted.out_writes.push_back(effects.wrote_out);

    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      if (gamma[v] == kNone || depth[v] > witness.radius - static_cast<int>(t)) continue;
      const NodeState& base = base_trace.configs[t][gamma[v]];
      if (!(config[v].mem == base.mem) || config[v].out != base.out)
        throw LiftDivergence(divergence_message("state mismatch", t, v));
    }
  }
  report.steps_verified = steps;
  lifted.verdict = {VerdictKind::BudgetExhausted, steps};
  lifted.influenced.assign(lifted.configs.size(), {});
  report.steps_replayed = steps;
  report.trace = std::move(lifted);
  return report;
}

}  // namespace stabsim
