#pragma once

#include "stabsim/family.hpp"
#include "stabsim/mem.hpp"
#include "stabsim/quasi_fibration.hpp"

namespace stabsim {

// A terminating task: a domain family (assumed closed under corruption) and
// the specification relating an input digraph to an admissible output
// labelling (out value per vertex, null = bottom).
struct TaskSpec {
  std::string name;
  PointedFamily family;
  std::function<bool(const LabeledDigraph&, const std::vector<Json>&)> relation;
};

// The (f, r) pair: f assigns each pointed digraph its final output (null =
// bottom), r the in-ball radius that suffices to commit (nullopt = infinity).
// Condition: r(G,v) finite iff f(G,v) != bottom.
struct OutputRadiusPair {
  std::string name;
  std::function<Json(const LabeledDigraph&, VertexId)> f;
  std::function<std::optional<int>(const LabeledDigraph&, VertexId)> r;
};

// Asserts r finite <=> f defined at (g, v); throws std::logic_error on
// violation. Called by every checker on every pair it touches.
void require_pair_condition(const OutputRadiusPair& pair, const LabeledDigraph& g, VertexId v);

struct OutputFunctionReport {
  bool pass = true;
  std::optional<std::size_t> failing_index;  // family index of the witness
  LabeledDigraph witness_graph;
  std::vector<Json> witness_labelling;
};

// Checks that v -> f(G,v) satisfies the task relation on every family member
// with at most `vertex_bound` vertices; first failure is returned.
OutputFunctionReport check_output_function(const OutputRadiusPair& pair, const TaskSpec& task,
                                           std::size_t vertex_bound);

struct RLiftingWitness {
  LabeledDigraph k, h;
  VertexId v = 0;
  int radius = 0;
  VertexId gamma_v = 0;
  Json f_k, f_h;
  std::optional<int> r_k, r_h;
  bool f_violated = false;
  bool r_violated = false;
};

struct RLiftingReport {
  bool pass = true;
  std::optional<RLiftingWitness> witness;
  std::size_t checked_pairs = 0;
  std::size_t skipped_unknown = 0;  // quasi-fibration verdicts that were inconclusive
};

// Brute-force r-lifting-closure check over ordered pairs of members of
// `universe` with at most `vertex_bound` vertices: for every quasi-fibration
// witness gamma of K over H at center v and radius k <= radius_cap with
// k >= min(r(K,v), r(H,gamma(v))), both f and r must transport along gamma.
RLiftingReport check_r_lifting_closed(const OutputRadiusPair& pair, const PointedFamily& universe,
                                      std::size_t vertex_bound, int radius_cap);

// Builds the size task's pair for the given family by brute force: f is the
// member size (null outside the family); r(K,v) is one more than the largest
// radius at which some member with a different f value still quasi-fibers
// over K's minimal base toward v's class (or K over that member's base), so
// that radius-r information separates every conflicting pair. Radii are
// capped by `radius_cap`; evaluation on non-members yields (null, infinity).
OutputRadiusPair derive_size_pair(const PointedFamily& family, int radius_cap);

// The deliberately broken variant: f = |V| on family members, r identically
// the given constant.
OutputRadiusPair size_pair_with_constant_radius(const PointedFamily& family, int radius);

}  // namespace stabsim
