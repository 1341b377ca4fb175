#include "stabsim/task.hpp"

#include <map>
#include <stdexcept>

#include "stabsim/isomorphism.hpp"
#include "stabsim/minimal_base.hpp"

namespace stabsim {

void require_pair_condition(const OutputRadiusPair& pair, const LabeledDigraph& g, VertexId v) {
  const bool f_defined = !pair.f(g, v).is_null();
  const bool r_finite = pair.r(g, v).has_value();
  if (f_defined != r_finite)
    throw std::logic_error("output/radius pair violates the finiteness condition at vertex " +
                           std::to_string(v));
}

namespace {

// Distinct member graphs of the family (by canonical form), each with the
// family index of its first pointed appearance.
std::vector<std::pair<std::size_t, LabeledDigraph>> member_graphs(const PointedFamily& fam,
                                                                  std::size_t vertex_bound) {
  std::vector<std::pair<std::size_t, LabeledDigraph>> out;
  std::map<std::string, bool> seen;
  for (std::size_t i = 0; i < fam.index_count; ++i) {
    PointedDigraph p = fam.enumerator(i);
    if (p.graph.vertex_count() > vertex_bound) continue;
    auto [it, inserted] = seen.try_emplace(canonical_form(p.graph), true);
    if (inserted) out.emplace_back(i, std::move(p.graph));
  }
  return out;
}

}  // namespace

OutputFunctionReport check_output_function(const OutputRadiusPair& pair, const TaskSpec& task,
                                           std::size_t vertex_bound) {
  OutputFunctionReport report;
  for (auto& [index, g] : member_graphs(task.family, vertex_bound)) {
    std::vector<Json> labelling;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      require_pair_condition(pair, g, v);
      labelling.push_back(pair.f(g, v));
    }
    if (!task.relation(g, labelling)) {
      report.pass = false;
      report.failing_index = index;
      report.witness_graph = g;
      report.witness_labelling = std::move(labelling);
      return report;
    }
  }
  return report;
}

RLiftingReport check_r_lifting_closed(const OutputRadiusPair& pair, const PointedFamily& universe,
                                      std::size_t vertex_bound, int radius_cap) {
  RLiftingReport report;
  auto members = member_graphs(universe, vertex_bound);
  for (auto& [ik, k] : members) {
    for (auto& [ih, h] : members) {
      for (VertexId v = 0; v < k.vertex_count(); ++v) {
        require_pair_condition(pair, k, v);
        for (int radius = 0; radius <= radius_cap; ++radius) {
          for (const QuasiFibrationWitness& w : quasi_fibration_witnesses(k, h, v, radius)) {
            ++report.checked_pairs;
            const VertexId gv = w.center_image();
            require_pair_condition(pair, h, gv);
            std::optional<int> rk = pair.r(k, v);
            std::optional<int> rh = pair.r(h, gv);
            std::optional<int> gate;  // min(rk, rh), absent = infinity
            if (rk && rh) gate = std::min(*rk, *rh);
            else if (rk) gate = rk;
            else if (rh) gate = rh;
            if (!gate || radius < *gate) continue;
            const Json fk = pair.f(k, v);
            const Json fh = pair.f(h, gv);
            const bool f_bad = fk != fh;
            const bool r_bad = rk != rh;
            if (f_bad || r_bad) {
              report.pass = false;
              report.witness = RLiftingWitness{k, h, v, radius, gv, fk, fh, rk, rh, f_bad, r_bad};
              return report;
            }
          }
        }
      }
    }
  }
  return report;
}

namespace {

struct PointedKey {
  LabeledDigraph graph;
  VertexId vertex;
};

// Identifies (g, v) with a family member via pinned isomorphism; returns the
// member list position or nothing.
std::optional<std::size_t> locate(const std::vector<PointedDigraph>& members,
                                  const LabeledDigraph& g, VertexId v) {
  for (std::size_t i = 0; i < members.size(); ++i)
    if (find_isomorphism(g, members[i].graph, {{v, members[i].vertex}})) return i;
  return std::nullopt;
}

}  // namespace

OutputRadiusPair derive_size_pair(const PointedFamily& family, int radius_cap) {
  // Materialize every pointed member once.
  auto members = std::make_shared<std::vector<PointedDigraph>>();
  for (std::size_t i = 0; i < family.index_count; ++i) members->push_back(family.enumerator(i));

  // Per pointed member: the minimal base and the image of the point in it.
  struct BaseInfo {
    LabeledDigraph base;
    VertexId image;
  };
  std::vector<BaseInfo> bases;
  for (const auto& m : *members) {
    MinimalBase mb = minimal_base(m.graph);
    bases.push_back({mb.base, mb.projection.vertex_map[m.vertex]});
  }

  // Largest conflicting quasi-fibration radius touching each pointed member,
  // in either direction, among members with a different size.
  auto radii = std::make_shared<std::vector<int>>(members->size(), 0);
  auto max_conflict_radius = [&](std::size_t from, std::size_t to) {
    // largest k <= cap with (members[from]) quasi-fibring over bases[to]
    // hitting the image of 'to's point; -1 if none.
    const auto& k_graph = (*members)[from].graph;
    int best = -1;
    for (int radius = 0; radius <= radius_cap; ++radius) {
      auto verdict = check_quasi_fibration(k_graph, bases[to].base, (*members)[from].vertex, radius,
                                           k_graph.vertex_count(), bases[to].image);
      if (verdict.kind != QuasiFibrationKind::Yes) break;  // radii are monotone
      best = radius;
    }
    return best;
  };
  for (std::size_t i = 0; i < members->size(); ++i) {
    int worst = -1;
    for (std::size_t j = 0; j < members->size(); ++j) {
      if ((*members)[i].graph.vertex_count() == (*members)[j].graph.vertex_count()) continue;
      worst = std::max(worst, max_conflict_radius(j, i));
      worst = std::max(worst, max_conflict_radius(i, j));
    }
    (*radii)[i] = worst + 1;
  }

  OutputRadiusPair pair;
  pair.name = "size:" + family.name;
  pair.f = [members](const LabeledDigraph& g, VertexId v) -> Json {
    if (locate(*members, g, v)) return Json(g.vertex_count());
    return Json(nullptr);
  };
  pair.r = [members, radii](const LabeledDigraph& g, VertexId v) -> std::optional<int> {
    if (auto i = locate(*members, g, v)) return (*radii)[*i];
    return std::nullopt;
  };
  return pair;
}

OutputRadiusPair size_pair_with_constant_radius(const PointedFamily& family, int radius) {
  auto members = std::make_shared<std::vector<PointedDigraph>>();
  for (std::size_t i = 0; i < family.index_count; ++i) members->push_back(family.enumerator(i));
  OutputRadiusPair pair;
  pair.name = "size-const-r:" + family.name;
  pair.f = [members](const LabeledDigraph& g, VertexId v) -> Json {
    if (locate(*members, g, v)) return Json(g.vertex_count());
    return Json(nullptr);
  };
  pair.r = [members, radius](const LabeledDigraph& g, VertexId v) -> std::optional<int> {
    if (locate(*members, g, v)) return radius;
    return std::nullopt;
  };
  return pair;
}

}  // namespace stabsim
