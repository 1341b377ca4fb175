#include "stabsim/family.hpp"

#include <stdexcept>

#include "stabsim/isomorphism.hpp"

namespace stabsim {

namespace {

std::vector<std::string> ab_pattern(std::size_t n) {
  std::vector<std::string> pattern(n, "a");
  pattern[n - 1] = "b";
  return pattern;
}

bool is_unlabeled_ring(const LabeledDigraph& g, std::size_t min_size, std::size_t max_size) {
  const std::size_t n = g.vertex_count();
  if (n < min_size || n > max_size) return false;
  for (const auto& l : g.labels())
    if (!l.empty()) return false;
  return g.arc_count() == n && strongly_connected(g) &&
         find_isomorphism(g, directed_ring(n)).has_value();
}

PointedFamily pointed_over(std::string name, std::vector<LabeledDigraph> members,
                           std::function<bool(const LabeledDigraph&)> contains) {
  PointedFamily fam;
  fam.name = std::move(name);
  fam.contains = std::move(contains);
  std::size_t total = 0;
  for (const auto& g : members) {
    total += g.vertex_count();
    fam.size_bound = std::max(fam.size_bound, g.vertex_count());
  }
  fam.index_count = total;
  auto shared = std::make_shared<std::vector<LabeledDigraph>>(std::move(members));
  fam.enumerator = [shared](std::size_t index) {
    for (const auto& g : *shared) {
      if (index < g.vertex_count()) return PointedDigraph{g, static_cast<VertexId>(index)};
      index -= g.vertex_count();
    }
    throw std::out_of_range("family enumerator: index out of range");
  };
  return fam;
}

}  // namespace

PointedDigraph enumerate_family(const PointedFamily& fam, std::size_t index) {
  if (index >= fam.index_count) throw std::out_of_range("enumerate_family: index out of range");
  return fam.enumerator(index);
}

PointedFamily ring_family(std::size_t min_size, std::size_t max_size) {
  if (min_size < 1 || min_size > max_size) throw std::invalid_argument("ring_family: bad size range");
  std::vector<LabeledDigraph> members;
  for (std::size_t n = min_size; n <= max_size; ++n) members.push_back(directed_ring(n));
  return pointed_over("rings " + std::to_string(min_size) + ".." + std::to_string(max_size),
                      std::move(members),
                      [min_size, max_size](const LabeledDigraph& g) {
                        return is_unlabeled_ring(g, min_size, max_size);
                      });
}

PointedFamily ab_ring_family(std::size_t min_size, std::size_t max_size) {
  if (min_size < 2 || min_size > max_size) throw std::invalid_argument("ab_ring_family: bad size range");
  std::vector<LabeledDigraph> members;
  for (std::size_t n = min_size; n <= max_size; ++n)
    members.push_back(directed_ring(n, ab_pattern(n)));
  return pointed_over("ab-rings " + std::to_string(min_size) + ".." + std::to_string(max_size),
                      std::move(members),
                      [min_size, max_size](const LabeledDigraph& g) {
                        const std::size_t n = g.vertex_count();
                        if (n < min_size || n > max_size) return false;
                        return find_isomorphism(g, directed_ring(n, ab_pattern(n))).has_value();
                      });
}

PointedFamily singleton_family(std::string name, LabeledDigraph g) {
  LabeledDigraph copy = g;
  return pointed_over(std::move(name), {std::move(copy)},
                      [g](const LabeledDigraph& candidate) {
                        return find_isomorphism(candidate, g).has_value();
                      });
}

PointedFamily small_digraph_family(const SmallDigraphOptions& opts) {
  std::vector<LabeledDigraph> members = enumerate_small_digraphs(opts);
  return pointed_over("all strongly connected digraphs <= " + std::to_string(opts.max_vertices),
                      std::move(members),
                      [opts](const LabeledDigraph& g) {
                        if (g.vertex_count() == 0 || g.vertex_count() > opts.max_vertices) return false;
                        if (!strongly_connected(g)) return false;
                        for (const auto& l : g.labels()) {
                          bool known = false;
                          for (const auto& allowed : opts.labels) known = known || l == allowed;
                          if (!known) return false;
                        }
                        return true;
                      });
}

}  // namespace stabsim
