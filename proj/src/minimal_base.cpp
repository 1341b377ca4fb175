#include "stabsim/minimal_base.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <stdexcept>

namespace stabsim {

std::vector<std::uint32_t> refinement_classes(const LabeledDigraph& g) {
  const std::size_t n = g.vertex_count();
  if (n == 0) return {};
  // Initial colouring by label.
  std::vector<std::uint32_t> colour(n, 0);
  {
    std::map<std::string, std::uint32_t> by_label;
    for (VertexId v = 0; v < n; ++v) {
      auto [it, _] = by_label.try_emplace(g.label(v), static_cast<std::uint32_t>(by_label.size()));
      colour[v] = it->second;
    }
  }
  // Refine: colour of v <- (colour of v, sorted multiset of in-neighbour
  // colours, one entry per in-arc), until the number of classes is stable.
  for (;;) {
    std::map<std::pair<std::uint32_t, std::vector<std::uint32_t>>, std::uint32_t> next_ids;
    std::vector<std::uint32_t> next(n, 0);
    for (VertexId v = 0; v < n; ++v) {
      std::vector<std::uint32_t> in_colours;
      in_colours.reserve(g.in_degree(v));
      for (VertexId u : g.in_sources(v)) in_colours.push_back(colour[u]);
      std::sort(in_colours.begin(), in_colours.end());
      auto key = std::make_pair(colour[v], std::move(in_colours));
      auto [it, _] = next_ids.try_emplace(std::move(key), static_cast<std::uint32_t>(next_ids.size()));
      next[v] = it->second;
    }
    bool stable = next_ids.size() == *std::max_element(colour.begin(), colour.end()) + 1u;
    colour = std::move(next);
    if (stable) break;
  }
  // Renumber classes by smallest member.
  std::vector<std::uint32_t> renumber(n, static_cast<std::uint32_t>(-1));
  std::uint32_t next_id = 0;
  std::vector<std::uint32_t> out(n);
  for (VertexId v = 0; v < n; ++v) {
    if (renumber[colour[v]] == static_cast<std::uint32_t>(-1)) renumber[colour[v]] = next_id++;
    out[v] = renumber[colour[v]];
  }
  return out;
}

MinimalBase minimal_base(const LabeledDigraph& g) {
  if (!strongly_connected(g)) throw std::invalid_argument("minimal_base: digraph must be strongly connected");
  const std::vector<std::uint32_t> cls = refinement_classes(g);
  const std::uint32_t n_classes = *std::max_element(cls.begin(), cls.end()) + 1;

  MinimalBase result;
  std::vector<VertexId> representative(n_classes);
  for (std::uint32_t c = 0; c < n_classes; ++c) {
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      if (cls[v] == c) {
        representative[c] = v;
        result.base.add_vertex(g.label(v));
        break;
      }
    }
  }

  // Base arcs into class c mirror the in-arcs of its representative: one base
  // arc per in-arc, grouped by source class. At the refinement fixpoint every
  // member of c has the same multiset of in-neighbour classes, so each member
  // can pair its own in-arcs with these base arcs group by group.
  std::vector<std::vector<ArcId>> base_in_by_class(n_classes);  // class c -> base arcs into c, by source class order
  for (std::uint32_t c = 0; c < n_classes; ++c) {
    std::vector<std::uint32_t> in_classes;
    for (VertexId u : g.in_sources(representative[c])) in_classes.push_back(cls[u]);
    std::sort(in_classes.begin(), in_classes.end());
    for (std::uint32_t sc : in_classes)
      base_in_by_class[c].push_back(result.base.add_arc(sc, c));
  }

  result.projection.vertex_map.resize(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) result.projection.vertex_map[v] = cls[v];
  result.projection.arc_map.resize(g.arc_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const std::uint32_t c = cls[v];
    // Pair this vertex's in-arcs (sorted by source class, then arc id) with
    // the base arcs into c (sorted by source class by construction).
    std::vector<std::pair<std::uint32_t, ArcId>> own;
    for (ArcId a : g.in_arcs(v)) own.emplace_back(cls[g.arc(a).src], a);
    std::sort(own.begin(), own.end());
    assert(own.size() == base_in_by_class[c].size());
    for (std::size_t i = 0; i < own.size(); ++i)
      result.projection.arc_map[own[i].second] = base_in_by_class[c][i];
  }
  assert(is_fibration(g, result.base, result.projection));
  return result;
}

}  // namespace stabsim
