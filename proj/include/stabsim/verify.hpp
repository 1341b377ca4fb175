#pragma once

#include "stabsim/corruption.hpp"
#include "stabsim/daemon.hpp"
#include "stabsim/explorer.hpp"
#include "stabsim/task.hpp"

namespace stabsim {

struct VerifyOptions {
  // Sampled mode.
  DaemonPolicy daemon = DaemonPolicy::asynchronous(1);
  std::uint64_t corruption_seed = 1;
  std::size_t corruption_count = 100;
  std::size_t step_budget = 1000;
  std::size_t silence_window = 50;
  // Request sets to test (snap checks); empty means: every nonempty subset in
  // exhaustive mode, each singleton in sampled mode.
  std::vector<std::vector<VertexId>> request_sets;
  // Exhaustive mode: full corruption product and all daemon choices.
  bool exhaustive = false;
  std::size_t max_states = 400000;
  // Whether initial out registers are corrupted too. Self-stabilization
  // corrupts mem only; snap-stabilization withstands arbitrary registers.
  bool corrupt_out = true;
};

struct VerifyWitness {
  Configuration initial;
  std::vector<VertexId> requests;
  std::vector<std::vector<VertexId>> schedule;
  std::string clause;  // decision | stabilization | correction
  std::string detail;
};

struct VerifyReport {
  bool violated = false;         // under fair schedules in exhaustive mode
  bool strict_violated = false;  // exhaustive only: counting unfair trap schedules
  std::optional<VerifyWitness> witness;
  std::size_t runs = 0;
  std::size_t inconclusive = 0;  // sampled runs that hit the budget
  std::size_t explored_states = 0;
  bool exhaustive = false;
  std::string summary() const;
};

// Checks the three snap clauses over corrupted starts, request sets, and
// schedules: every vertex writes out exactly once after joining the
// influenced set (writes before joining are attributed to corruption), the
// run stabilizes, and the terminal labelling satisfies the task relation.
VerifyReport verify_snap_stabilizing(const LabeledDigraph& g, const Algorithm& algorithm,
                                     const TaskSpec& task, const VerifyOptions& options);

// Stabilization and terminal correction only.
VerifyReport verify_self_stabilizing(const LabeledDigraph& g, const Algorithm& algorithm,
                                     const TaskSpec& task, const VerifyOptions& options);

// Greedily shrinks a sampled witness: resets corrupted registers back to the
// clean configuration wherever the violation survives.
VerifyWitness minimize_witness(const LabeledDigraph& g, const Algorithm& algorithm,
                               const TaskSpec& task, const VerifyOptions& options,
                               VerifyWitness witness, bool check_decision);

}  // namespace stabsim
