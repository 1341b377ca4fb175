#include "stabsim/isomorphism.hpp"

#include <algorithm>
#include <map>

namespace stabsim {

namespace {

constexpr VertexId kUnassigned = static_cast<VertexId>(-1);

// Number of arcs u -> v.
int multiplicity(const LabeledDigraph& g, VertexId u, VertexId v) {
  int count = 0;
  for (ArcId a : g.out_arcs(u))
    if (g.arc(a).dst == v) ++count;
  return count;
}

struct Search {
  const LabeledDigraph& g;
  const LabeledDigraph& h;
  std::vector<VertexId> map;        // g vertex -> h vertex
  std::vector<bool> used;           // h vertex already taken

  bool consistent(VertexId v, VertexId image) const {
    if (g.label(v) != h.label(image)) return false;
    if (g.in_degree(v) != h.in_degree(image)) return false;
    if (g.out_degree(v) != h.out_degree(image)) return false;
    // Arc multiplicities against every already-assigned vertex (including v
    // itself for self-loops).
    for (VertexId u = 0; u < g.vertex_count(); ++u) {
      VertexId iu = (u == v) ? image : map[u];
      if (iu == kUnassigned) continue;
      if (multiplicity(g, u, v) != multiplicity(h, iu, image)) return false;
      if (multiplicity(g, v, u) != multiplicity(h, image, iu)) return false;
    }
    return true;
  }

  bool extend(VertexId v) {
    if (v == g.vertex_count()) return true;
    if (map[v] != kUnassigned) return extend(v + 1);
    for (VertexId image = 0; image < h.vertex_count(); ++image) {
      if (used[image] || !consistent(v, image)) continue;
      map[v] = image;
      used[image] = true;
      if (extend(v + 1)) return true;
      map[v] = kUnassigned;
      used[image] = false;
    }
    return false;
  }
};

}  // namespace

std::optional<DigraphMorphism> find_isomorphism(
    const LabeledDigraph& g, const LabeledDigraph& h,
    std::optional<std::pair<VertexId, VertexId>> pin) {
  if (g.vertex_count() != h.vertex_count() || g.arc_count() != h.arc_count()) return std::nullopt;

  Search search{g, h, std::vector<VertexId>(g.vertex_count(), kUnassigned),
                std::vector<bool>(h.vertex_count(), false)};
  if (pin) {
    auto [v, image] = *pin;
    if (v >= g.vertex_count() || image >= h.vertex_count()) return std::nullopt;
    if (!search.consistent(v, image)) return std::nullopt;
    search.map[v] = image;
    search.used[image] = true;
  }
  if (g.vertex_count() > 0 && !search.extend(0)) return std::nullopt;

  DigraphMorphism m;
  m.vertex_map = search.map;
  m.arc_map.resize(g.arc_count());
  // Multiplicities match, so parallel arcs can be paired off in index order.
  std::map<std::pair<VertexId, VertexId>, std::vector<ArcId>> free_arcs;
  for (ArcId a = 0; a < h.arc_count(); ++a)
    free_arcs[{h.arc(a).src, h.arc(a).dst}].push_back(a);
  for (auto& [key, list] : free_arcs) std::reverse(list.begin(), list.end());
  for (ArcId a = 0; a < g.arc_count(); ++a) {
    const Arc& arc = g.arc(a);
    auto& list = free_arcs[{m.vertex_map[arc.src], m.vertex_map[arc.dst]}];
    m.arc_map[a] = list.back();
    list.pop_back();
  }
  return m;
}

}  // namespace stabsim
