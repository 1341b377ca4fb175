#pragma once

#include "stabsim/engine.hpp"
#include "stabsim/task.hpp"
#include "stabsim/views.hpp"

namespace stabsim {

// Decreasing tuple of the current names of v's in-neighbours, one entry per
// in-arc (a self-loop contributes the vertex's own name).
LocalView current_view(const LabeledDigraph& g, const Configuration& config, VertexId v);

// Bounds for corrupting EnumMem registers. Sampled corruption draws names up
// to name_bound, views up to one entry longer than the in-degree, mailboxes
// up to mailbox_max entries; exhaustive corruption uses a small curated list
// of adversarial per-vertex states instead (converged, ghost-infested,
// wrongly armed, counter-skewed).
struct EnumCorruptionProfile {
  Name name_bound = 8;
  std::size_t mailbox_max = 4;
  std::int64_t counter_min = -1;
  std::int64_t counter_max = 3;
  std::vector<Json> out_values = {nullptr};
  bool tiny_exhaustive = false;
};

// The enumeration core: Initialization, Diffusion, Renaming. Stabilizes to
// quiescence from any initial state; on a requested run the final mailboxes
// agree everywhere and names separate exactly the (label, view) classes.
Algorithm enumeration_algorithm(EnumCorruptionProfile profile = {});

// Result of the local search for a family member matching a reconstructed
// base at the current counter radius.
struct FoundMember {
  bool found = false;
  std::size_t family_index = 0;
  VertexId center = 0;       // w: the member vertex mapped onto the name
  Json f_value = nullptr;
  std::optional<int> r_value;     // r at (member, w): the output threshold
  std::optional<int> stop_radius; // max r over the member's vertices: the
                                  // counter stop; per-vertex thresholds would
                                  // deadlock the lockstep counters below the
                                  // largest radius
};

// First family member (enumeration order) that is a quasi-fibration of the
// base of center `w` and radius `a` with the distinguished name as center
// image. Not-found reports budget exhaustion, never logical nonexistence.
FoundMember find_family_member(const PointedFamily& fam, const ReconstructedBase& base,
                               std::int64_t a, std::size_t index_budget,
                               const OutputRadiusPair* pair = nullptr);

// The full universal algorithm: the enumeration core plus the generalized SSP
// counter and the one-shot output rule parameterized by (f, r). The counter
// climbs while a < r of the locally reconstructed member; output fires once
// per mailbox epoch when the counter reaches it.
Algorithm universal_algorithm(const OutputRadiusPair& pair, const PointedFamily& fam,
                              EnumCorruptionProfile profile = {},
                              std::size_t find_budget = 1 << 20);

struct FinalConditionsReport {
  bool stabilized_input = true;      // the precondition the caller asserted
  bool mailboxes_equal = false;      // (i)
  bool strong_matches_view = false;  // (ii) strong(M, n(v)) == stored == current view
  bool names_iff_views = false;      // (iii) n(v) = n(v') iff (label, view) equal
  bool fixpoint_is_everyone = false; // V^M(n(v)) = all final names, every v
  bool all() const {
    return mailboxes_equal && strong_matches_view && names_iff_views && fixpoint_is_everyone;
  }
};

// Evaluates the terminal labelling of a (stabilized) run of the enumeration.
FinalConditionsReport check_final_conditions(const LabeledDigraph& g, const Configuration& config);

// Largest name appearing anywhere in a configuration (names, views,
// mailboxes); the t of the soft step-count bound is |V| plus this.
Name highest_name(const Configuration& config);

}  // namespace stabsim
