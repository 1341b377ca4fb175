#pragma once

#include "stabsim/algorithm.hpp"

namespace stabsim {

// Always-activable counter: c := min over in-neighbour counters + 1 (own
// counter + 1 when there are no in-arcs). Information flows one hop per step,
// which makes it a sharp probe for the lifting bounds.
Algorithm chain_counter_algorithm(std::int64_t counter_cap = 1'000'000);

// No rules at all: quiescent at step 0.
Algorithm empty_algorithm();

}  // namespace stabsim
