#pragma once

#include "stabsim/morphism.hpp"

namespace stabsim {

// Coarsest partition of the vertices that is stable under the multiset of
// (in-neighbour class, own label) data, computed by iterated refinement.
// classes[v] is the class index of v; class indices are 0..k-1 ordered by the
// smallest member vertex.
std::vector<std::uint32_t> refinement_classes(const LabeledDigraph& g);

struct MinimalBase {
  LabeledDigraph base;
  DigraphMorphism projection;  // g -> base, a fibration by construction
};

// Quotient of g by the coarsest stable partition. The projection passes
// check_fibration and the base admits no further merging (re-refining the
// base yields singletons only).
MinimalBase minimal_base(const LabeledDigraph& g);

}  // namespace stabsim
