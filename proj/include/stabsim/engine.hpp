#pragma once

#include "stabsim/algorithm.hpp"
#include "stabsim/daemon.hpp"

namespace stabsim {

// Indices into algorithm.rules whose guard holds at v, in priority order.
std::vector<std::size_t> activable_rules(const LabeledDigraph& g, const Configuration& config,
                                         VertexId v, const Algorithm& algorithm,
                                         bool requested = false);

bool vertex_activable(const LabeledDigraph& g, const Configuration& config, VertexId v,
                      const Algorithm& algorithm, bool requested = false);

struct StepEffects {
  std::vector<VertexId> wrote_out;
  std::vector<VertexId> consumed_requests;
  std::vector<VertexId> skipped;  // lenient mode only
};

// One atomic step: every activated vertex reads the pre-step configuration,
// applies its highest-priority activable rule, and all writes land together.
// Activating a non-activable vertex is a harness error unless `lenient`, in
// which case it is skipped and recorded.
Configuration apply_step(const LabeledDigraph& g, const Configuration& config,
                         const std::vector<VertexId>& activated, const Algorithm& algorithm,
                         const std::vector<bool>* requested = nullptr,
                         StepEffects* effects = nullptr, bool lenient = false);

enum class VerdictKind { Quiescent, OutSilent, BudgetExhausted };

struct RunVerdict {
  VerdictKind kind = VerdictKind::BudgetExhausted;
  std::size_t step = 0;  // step index at which the verdict fired
  friend bool operator==(const RunVerdict&, const RunVerdict&) = default;
};

const char* verdict_kind_name(VerdictKind k);

struct ExecutionTrace {
  LabeledDigraph graph;
  std::string algorithm_name;
  Json algorithm_params = Json::object();
  DaemonKind daemon = DaemonKind::Synchronous;
  std::uint64_t seed = 0;
  std::vector<VertexId> requests;                 // U
  std::size_t budget = 0;
  std::size_t silence_window = 0;
  std::vector<Configuration> configs;             // G_0..G_T (always recorded)
  std::vector<std::vector<VertexId>> activations; // A_1..A_T
  std::vector<std::vector<VertexId>> out_writes;  // per step: who wrote out
  std::vector<std::vector<VertexId>> influenced;  // I_0..I_T (sorted)
  RunVerdict verdict;

  std::size_t steps() const { return activations.size(); }
  const Configuration& terminal() const { return configs.back(); }
};

struct RunOptions {
  std::size_t step_budget = 1000;
  // A run is declared stabilized when no out value changed for this many
  // consecutive steps (quiescence is always definitive). 0 disables the
  // window.
  std::size_t silence_window = 0;
  std::optional<Configuration> initial;  // defaults to algorithm.clean_init
};

// Executes until quiescence, out-silence, schedule end, or budget exhaustion;
// reproducible from (graph, algorithm, daemon, requests, options).
ExecutionTrace run(const LabeledDigraph& g, const Algorithm& algorithm, const DaemonPolicy& daemon,
                   const std::vector<VertexId>& requests, const RunOptions& options = {});

// Recomputes the causal-influence set at step t (0 = before any activation)
// from the trace's request set and activation sets: a vertex joins when it is
// activated while itself or an in-neighbour was already influenced.
std::vector<VertexId> influenced_set(const ExecutionTrace& trace, std::size_t t);

}  // namespace stabsim
