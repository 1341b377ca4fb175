#pragma once

#include <vector>

#include "stabsim/digraph.hpp"

namespace stabsim {

struct SmallDigraphOptions {
  std::size_t max_vertices = 4;
  std::vector<std::string> labels = {"a", "b"};
  bool allow_self_loops = true;
  // Parallel arcs are never generated here.
};

// Every strongly connected vertex-labeled digraph with 1..max_vertices
// vertices, labels drawn from the given alphabet, no parallel arcs, one
// representative per isomorphism class. Deterministic order: vertex count
// ascending, then canonical form ascending.
std::vector<LabeledDigraph> enumerate_small_digraphs(const SmallDigraphOptions& opts);

}  // namespace stabsim
