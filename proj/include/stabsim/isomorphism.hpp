#pragma once

#include <optional>

#include "stabsim/morphism.hpp"

namespace stabsim {

// Label-preserving digraph isomorphism (bijective on vertices and arcs) found
// by backtracking in canonical vertex order, so the result is deterministic.
// `pin` forces pin->first of g to map onto pin->second of h. Desk scale.
std::optional<DigraphMorphism> find_isomorphism(
    const LabeledDigraph& g, const LabeledDigraph& h,
    std::optional<std::pair<VertexId, VertexId>> pin = std::nullopt);

}  // namespace stabsim
