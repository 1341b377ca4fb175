#pragma once

#include <optional>
#include <vector>

#include "stabsim/digraph.hpp"
#include "stabsim/morphism.hpp"

namespace stabsim {

// Witness that k is a quasi-fibration of h of center v and radius r: the
// homomorphism gamma from the in-ball B^-(v,r) of k into h (gamma = phi.delta
// for some fibration phi of h and ball isomorphism delta).
struct QuasiFibrationWitness {
  InBall ball;                        // in-ball of k around the center
  std::vector<VertexId> gamma_vertex; // ball vertex -> vertex of h
  std::vector<ArcId> gamma_arc;       // ball arc -> arc of h
  int radius = 0;

  VertexId center_image() const { return gamma_vertex.at(ball.center); }
};

enum class QuasiFibrationKind { Yes, No, Unknown };

struct QuasiFibrationVerdict {
  QuasiFibrationKind kind = QuasiFibrationKind::No;
  std::optional<QuasiFibrationWitness> witness;
};

// Decides whether there is a (finite or infinite) digraph G fibred over h, a
// vertex w of G, and a center-preserving isomorphism from B^-_k(v,r) onto
// B^-_G(w,r).
//
// The decision is exact: such a witness exists iff the ball admits a
// homomorphism into h that is bijective on the in-arcs of every ball vertex
// at depth <= r-1 (a total digraph can then be grafted onto the ball's rim
// from in-tree unfoldings of h, and conversely the ball of any witness has
// this property). The search is a plain backtracking over ball vertices in
// depth order. `search_bound` is kept for interface compatibility and as a
// sanity precondition; the Unknown verdict is never produced by this
// implementation.
//
// `required_center_image` restricts gamma(v) when present.
QuasiFibrationVerdict check_quasi_fibration(
    const LabeledDigraph& k, const LabeledDigraph& h, VertexId v, int radius,
    std::size_t search_bound, std::optional<VertexId> required_center_image = std::nullopt);

// Every admissible gamma (as vertex maps on the ball); used by the r-lifting
// closure checker, which must consider all possible center images.
std::vector<QuasiFibrationWitness> quasi_fibration_witnesses(
    const LabeledDigraph& k, const LabeledDigraph& h, VertexId v, int radius,
    std::optional<VertexId> required_center_image = std::nullopt);

// Re-checks the defining conditions of a witness independently of the search.
bool validate_quasi_fibration_witness(const LabeledDigraph& k, const LabeledDigraph& h, VertexId v,
                                      const QuasiFibrationWitness& w);

// Depth-r truncation of the in-directed tree unfolding of h at root: the
// stand-in for the infinite universal total digraph fibred over h. Exposed
// for tests and as the witness-side completion of the ball.
InBall unfolding_truncation(const LabeledDigraph& h, VertexId root, int radius);

}  // namespace stabsim
