#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace stabsim {

using VertexId = std::uint32_t;
using ArcId = std::uint32_t;

struct Arc {
  VertexId src = 0;
  VertexId dst = 0;
  friend bool operator==(const Arc&, const Arc&) = default;
  friend auto operator<=>(const Arc&, const Arc&) = default;
};

// Vertex-labeled digraph with parallel arcs and self-loops. Arcs keep the
// index they were added with, so morphisms can refer to them stably even when
// arcs are parallel. Vertices are 0..n-1 in construction order; that order is
// also the canonical iteration order used by every search in this project, so
// results are reproducible.
class LabeledDigraph {
 public:
  LabeledDigraph() = default;

  VertexId add_vertex(std::string label);
  ArcId add_arc(VertexId src, VertexId dst);

  std::size_t vertex_count() const { return labels_.size(); }
  std::size_t arc_count() const { return arcs_.size(); }
  const std::string& label(VertexId v) const { return labels_.at(v); }
  const Arc& arc(ArcId a) const { return arcs_.at(a); }
  const std::vector<Arc>& arcs() const { return arcs_; }
  const std::vector<std::string>& labels() const { return labels_; }

  // Arc ids sorted ascending.
  const std::vector<ArcId>& in_arcs(VertexId v) const { return in_.at(v); }
  const std::vector<ArcId>& out_arcs(VertexId v) const { return out_.at(v); }
  std::size_t in_degree(VertexId v) const { return in_.at(v).size(); }
  std::size_t out_degree(VertexId v) const { return out_.at(v).size(); }

  // In-neighbour vertex per in-arc, one entry per arc (duplicates possible).
  std::vector<VertexId> in_sources(VertexId v) const;
  // Deduplicated closed in-neighbourhood {v} ∪ in-neighbours, sorted.
  std::vector<VertexId> closed_in_neighbourhood(VertexId v) const;

  std::set<std::string> alphabet() const;

  friend bool operator==(const LabeledDigraph& a, const LabeledDigraph& b) {
    return a.labels_ == b.labels_ && a.arcs_ == b.arcs_;
  }

 private:
  std::vector<std::string> labels_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<ArcId>> in_;
  std::vector<std::vector<ArcId>> out_;
};

struct UndirectedGraph {
  std::vector<std::string> labels;
  std::vector<std::pair<VertexId, VertexId>> edges;
};

// Each undirected edge {u,v} becomes the two arcs (u,v) and (v,u).
LabeledDigraph dir_of(const UndirectedGraph& g);

// Length of a shortest dipath from each vertex to `target` (-1 if none).
std::vector<int> distances_to(const LabeledDigraph& g, VertexId target);
std::vector<int> distances_from(const LabeledDigraph& g, VertexId source);

bool strongly_connected(const LabeledDigraph& g);
// Max shortest-dipath length over ordered pairs; requires strong connectivity.
int diameter(const LabeledDigraph& g);

// In-ball of center v and radius r: the vertices and arcs lying on a dipath
// of length <= r ending at v, as a standalone digraph plus embedding maps.
struct InBall {
  LabeledDigraph graph;
  VertexId center = 0;
  std::vector<VertexId> vertex_of;  // ball vertex -> vertex of the parent graph
  std::vector<ArcId> arc_of;        // ball arc -> arc of the parent graph
  std::vector<int> depth;           // ball vertex -> distance to the center
  int radius = 0;
};
InBall in_ball(const LabeledDigraph& g, VertexId v, int radius);

// Byte encoding of the digraph as constructed (order-sensitive).
std::string encode(const LabeledDigraph& g);
// Minimum encoding over all vertex permutations. Desk scale only; throws for
// more than 10 vertices.
std::string canonical_form(const LabeledDigraph& g);

// Directed ring 0 -> 1 -> ... -> n-1 -> 0. Labels default to "" everywhere;
// a non-empty pattern is applied cyclically.
LabeledDigraph directed_ring(std::size_t n, const std::vector<std::string>& label_pattern = {});

}  // namespace stabsim
