#pragma once

#include <functional>
#include <memory>
#include <string>

#include "stabsim/small_digraphs.hpp"

namespace stabsim {

struct PointedDigraph {
  LabeledDigraph graph;
  VertexId vertex = 0;
};

// An enumerable family of pointed labeled digraphs. The enumerator is total
// on 0..index_count-1 and deterministic; the same index always yields the
// same pointed digraph. Conventions are size-major, vertex-minor, 0-based.
struct PointedFamily {
  std::string name;
  std::function<bool(const LabeledDigraph&)> contains;
  std::function<PointedDigraph(std::size_t)> enumerator;
  std::size_t index_count = 0;
  // Largest member vertex count; every member with at most this many vertices
  // appears at some index (up to isomorphism).
  std::size_t size_bound = 0;
};

PointedDigraph enumerate_family(const PointedFamily& fam, std::size_t index);

// Unlabeled directed rings of the given sizes.
PointedFamily ring_family(std::size_t min_size, std::size_t max_size);

// Directed rings labeled a,...,a,b of the given sizes ("a...ab" pattern, the
// single b closing onto the first a). Each of these rings is fibration
// minimal.
PointedFamily ab_ring_family(std::size_t min_size, std::size_t max_size);

// A single graph, pointed at each vertex in order.
PointedFamily singleton_family(std::string name, LabeledDigraph g);

// Every strongly connected labeled digraph within the options, one
// representative per isomorphism class (see enumerate_small_digraphs).
PointedFamily small_digraph_family(const SmallDigraphOptions& opts);

}  // namespace stabsim
