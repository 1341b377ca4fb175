#pragma once

#include <functional>

#include "stabsim/algorithm.hpp"

namespace stabsim {

// Exhaustive exploration of the configuration space under the asynchronous
// daemon (every nonempty subset of the activable vertices at every state).
// States carry the per-vertex registers plus the request flags, the causal
// influence set, and a capped count of post-influence out writes, so the
// snap-stabilization clauses are decidable per state.
//
// Violations are classified twice:
//   strict: some (possibly unfair) infinite or maximal run violates a clause;
//           any reachable cycle counts as a sustainable run.
//   fair:   cycles without out writes that can be escaped are treated as
//           transient (a weakly fair daemon eventually leaves them); only
//           terminal states, write-bearing cycles, and inescapable traps
//           count.
struct ExplorerOptions {
  bool check_decision = true;  // off for plain self-stabilization checks
  std::size_t max_states = 400000;
};

struct ExplorerRoot {
  Configuration initial;
  std::vector<VertexId> requests;
};

struct ExplorerWitness {
  Configuration initial;
  std::vector<VertexId> requests;
  std::vector<std::vector<VertexId>> schedule;  // path from the root
  std::string clause;                           // decision | stabilization | correction
  bool fair = false;                            // also a violation under fairness
  std::string detail;
};

struct ExplorerResult {
  bool explored_fully = false;  // false when max_states was hit
  std::size_t states = 0;
  std::size_t transitions = 0;
  bool strict_violation = false;
  bool fair_violation = false;
  std::optional<ExplorerWitness> witness;  // the first fair one if any, else first strict
};

using OutputRelation = std::function<bool(const LabeledDigraph&, const std::vector<Json>&)>;

ExplorerResult explore_stabilization(const LabeledDigraph& g, const Algorithm& algorithm,
                                     const OutputRelation& relation,
                                     const std::vector<ExplorerRoot>& roots,
                                     const ExplorerOptions& options);

}  // namespace stabsim
