#include "stabsim/small_digraphs.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace stabsim {

namespace {

// All arc slots (u,v) for n vertices, self-loops optional, in a fixed order.
std::vector<Arc> arc_slots(std::size_t n, bool loops) {
  std::vector<Arc> slots;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = 0; v < n; ++v)
      if (loops || u != v) slots.push_back(Arc{u, v});
  return slots;
}

}  // namespace

std::vector<LabeledDigraph> enumerate_small_digraphs(const SmallDigraphOptions& opts) {
  if (opts.max_vertices > 4)
    throw std::invalid_argument("enumerate_small_digraphs: exhaustive generation beyond 4 vertices is not supported");
  if (opts.labels.empty()) throw std::invalid_argument("enumerate_small_digraphs: empty alphabet");

  std::vector<LabeledDigraph> out;
  for (std::size_t n = 1; n <= opts.max_vertices; ++n) {
    const std::vector<Arc> slots = arc_slots(n, opts.allow_self_loops);
    if (slots.size() >= 63) throw std::invalid_argument("enumerate_small_digraphs: too many arc slots");
    const std::uint64_t arc_sets = std::uint64_t{1} << slots.size();
    std::uint64_t label_count = 1;
    for (std::size_t i = 0; i < n; ++i) label_count *= opts.labels.size();

    std::map<std::string, LabeledDigraph> classes;  // canonical form -> representative
    for (std::uint64_t arcs = 0; arcs < arc_sets; ++arcs) {
      // Strong connectivity does not depend on the labelling; test it once.
      LabeledDigraph skeleton;
      for (std::size_t i = 0; i < n; ++i) skeleton.add_vertex("");
      for (std::size_t s = 0; s < slots.size(); ++s)
        if (arcs >> s & 1) skeleton.add_arc(slots[s].src, slots[s].dst);
      if (!strongly_connected(skeleton)) continue;

      for (std::uint64_t lab = 0; lab < label_count; ++lab) {
        LabeledDigraph g;
        std::uint64_t code = lab;
        for (std::size_t i = 0; i < n; ++i) {
          g.add_vertex(opts.labels[code % opts.labels.size()]);
          code /= opts.labels.size();
        }
        for (std::size_t s = 0; s < slots.size(); ++s)
          if (arcs >> s & 1) g.add_arc(slots[s].src, slots[s].dst);
        classes.try_emplace(canonical_form(g), std::move(g));
      }
    }
    for (auto& [form, g] : classes) out.push_back(std::move(g));
  }
  return out;
}

}  // namespace stabsim
