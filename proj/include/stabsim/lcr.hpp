#pragma once

#include "stabsim/engine.hpp"
#include "stabsim/task.hpp"

namespace stabsim {

// Unidirectional ring of known size: each vertex reads its unique predecessor
// and carries a distinct positive identity in its input label.
struct RingInstance {
  std::size_t size = 0;
  std::vector<std::int64_t> ids;  // ids[i] for vertex i, pairwise distinct

  LabeledDigraph graph() const;  // arcs i -> i+1 (mod size), labels = ids
};

RingInstance make_ring_instance(const std::vector<std::int64_t>& ids);
std::int64_t ring_id(const LabeledDigraph& g, VertexId v);

// The min/ttl token election: Initiate, Circulate, Cleaning, Election, in
// that priority order. Maintains min and ttl; Election marks the center
// ELECTED when its own id comes back with ttl 1 at the predecessor.
Algorithm lcr_algorithm(std::size_t ring_size);

// lcr_algorithm plus a request-triggered Initiate at top priority.
Algorithm snap_lcr_algorithm(std::size_t ring_size);

extern const char* const kElectedLabel;

// Exactly one vertex labeled ELECTED.
TaskSpec election_task(PointedFamily family);
// The minimum-id vertex is labeled ELECTED (the min-id oracle; stale extra
// ELECTED marks left by corrupted starts do not count against it, see the
// demonstrator notes).
TaskSpec min_id_elected_task(PointedFamily family);
// Every out equals the vertex count.
TaskSpec size_task(PointedFamily family);

struct SnapViolationWitness {
  RingInstance instance;
  Configuration initial;
  std::vector<VertexId> requests;
  std::vector<std::vector<VertexId>> schedule;
  VertexId offending_vertex = 0;
  std::string clause;  // which clause broke (decision/correction)
};

// Builds the classic counterexample: corrupt a non-minimum vertex's
// predecessor so Election is immediately applicable, request the predecessor,
// and confirm the offending ELECTED output; falls back to seeded search if
// the direct construction is rejected. Returns nothing only if no violation
// could be produced within the budget (a red flag for the acceptance suite).
std::optional<SnapViolationWitness> find_snap_violation(const RingInstance& instance,
                                                        std::size_t budget);

}  // namespace stabsim
