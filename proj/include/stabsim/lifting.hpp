#pragma once

#include "stabsim/engine.hpp"
#include "stabsim/quasi_fibration.hpp"

namespace stabsim {

// Raised when a replayed lift does not match the base execution where the
// lifting lemmas say it must; this indicates an engine bug, not a property of
// the inputs.
struct LiftDivergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LiftReport {
  ExecutionTrace trace;          // the lifted execution
  std::size_t steps_replayed = 0;
  std::size_t steps_verified = 0;
};

// Lifts a base execution along a fibration phi: g -> base. The lifted run
// starts from the pulled-back initial configuration, activates the preimages
// of every activation set, and is verified to satisfy, at every step and for
// every vertex v of g, (mem(v), out(v)) == (mem(phi(v)), out(phi(v))).
LiftReport lift_execution(const ExecutionTrace& base_trace, const LabeledDigraph& g,
                          const DigraphMorphism& phi, const Algorithm& algorithm);

// Lifts along a quasi-fibration witness gamma of center v and radius r. The
// base trace is truncated to r steps; ball vertices start from the states of
// their gamma images, vertices outside the ball from clean_init. Verified
// state equality is the graded one the quasi-lifting argument supports: after
// step t, every ball vertex at depth <= r - t agrees with its image (so the
// center agrees at every step t <= r). Scheduled ball vertices that turn out
// not to be activable near the rim are skipped; skipped vertices are always
// strictly deeper than the verified region.
LiftReport lift_execution_quasi(const ExecutionTrace& base_trace, const LabeledDigraph& g,
                                const QuasiFibrationWitness& witness, const Algorithm& algorithm);

}  // namespace stabsim
