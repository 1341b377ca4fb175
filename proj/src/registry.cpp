#include "stabsim/registry.hpp"

#include <set>
#include <stdexcept>

#include "stabsim/basic_algorithms.hpp"
#include "stabsim/isomorphism.hpp"
#include "stabsim/lcr.hpp"

namespace stabsim {

PointedFamily id_ring_family() {
  PointedFamily fam;
  fam.name = "id-rings";
  fam.index_count = 0;
  fam.size_bound = 0;
  fam.enumerator = [](std::size_t) -> PointedDigraph {
    throw std::out_of_range("id-rings family is a membership domain only");
  };
  fam.contains = [](const LabeledDigraph& g) {
    const std::size_t n = g.vertex_count();
    if (n < 3 || g.arc_count() != n) return false;
    LabeledDigraph shape;
    for (std::size_t i = 0; i < n; ++i) shape.add_vertex("");
    for (const Arc& a : g.arcs()) shape.add_arc(a.src, a.dst);
    if (!find_isomorphism(shape, directed_ring(n))) return false;
    std::set<std::int64_t> ids;
    for (VertexId v = 0; v < n; ++v) {
      try {
        std::int64_t id = std::stoll(g.label(v));
        if (id <= 0 || !ids.insert(id).second) return false;
      } catch (const std::exception&) {
        return false;
      }
    }
    return true;
  };
  return fam;
}

namespace {

std::size_t require_ring_size(const LabeledDigraph& g) {
  if (!id_ring_family().contains(g))
    throw std::invalid_argument("algorithm requires a unidirectional ring with distinct ids");
  return g.vertex_count();
}

EnumCorruptionProfile profile_from_params(const Json& params) {
  EnumCorruptionProfile profile;
  if (params.contains("name_bound")) profile.name_bound = params["name_bound"].get<Name>();
  if (params.contains("mailbox_max")) profile.mailbox_max = params["mailbox_max"].get<std::size_t>();
  if (params.contains("counter_max")) profile.counter_max = params["counter_max"].get<std::int64_t>();
  if (params.contains("tiny_exhaustive")) profile.tiny_exhaustive = params["tiny_exhaustive"].get<bool>();
  if (params.contains("out_values"))
    profile.out_values = params["out_values"].get<std::vector<Json>>();
  return profile;
}

}  // namespace

Algorithm build_algorithm(const std::string& name, const Json& params, const LabeledDigraph& g) {
  if (name == "lcr") return lcr_algorithm(require_ring_size(g));
  if (name == "snap_lcr") return snap_lcr_algorithm(require_ring_size(g));
  if (name == "chain_counter") return chain_counter_algorithm();
  if (name == "empty") return empty_algorithm();
  if (name == "enumeration") return enumeration_algorithm(profile_from_params(params));
  if (name == "universal-size-ab-rings") {
    PointedFamily fam = build_family("ab-rings-3-5");
    EnumCorruptionProfile profile = profile_from_params(params);
    if (!params.contains("out_values"))
      profile.out_values = {Json(nullptr), Json(3), Json(4), Json(5)};
    return universal_algorithm(build_pair("size-ab-rings"), fam, profile);
  }
  if (name == "universal-size-small") {
    PointedFamily fam = build_family("small-4-ab");
    return universal_algorithm(size_pair_with_constant_radius(fam, 4), fam,
                               profile_from_params(params));
  }
  throw std::invalid_argument("unknown algorithm: " + name);
}

TaskSpec build_task(const std::string& name) {
  if (name == "election") return election_task(id_ring_family());
  if (name == "size-ab-rings") return size_task(build_family("ab-rings-3-5"));
  if (name == "size-ab-3") return size_task(build_family("ab-ring-3"));
  throw std::invalid_argument("unknown task: " + name);
}

OutputRadiusPair build_pair(const std::string& name) {
  if (name == "size-ab-rings") return derive_size_pair(build_family("ab-rings-3-5"), 6);
  if (name == "broken-size-r1") return size_pair_with_constant_radius(build_family("rings-3-6"), 1);
  throw std::invalid_argument("unknown pair: " + name);
}

PointedFamily build_family(const std::string& name) {
  if (name == "rings-3-5") return ring_family(3, 5);
  if (name == "rings-3-6") return ring_family(3, 6);
  if (name == "rings-2-6") return ring_family(2, 6);
  if (name == "ab-rings-3-5") return ab_ring_family(3, 5);
  if (name == "ab-ring-3") return singleton_family("ab-ring-3", directed_ring(3, {"a", "a", "b"}));
  if (name == "small-3-ab")
    return small_digraph_family({.max_vertices = 3, .labels = {"a", "b"}, .allow_self_loops = true});
  if (name == "small-4-ab")
    return small_digraph_family({.max_vertices = 4, .labels = {"a", "b"}, .allow_self_loops = true});
  if (name == "id-rings") return id_ring_family();
  throw std::invalid_argument("unknown family: " + name);
}

std::vector<std::string> algorithm_names() {
  return {"lcr", "snap_lcr", "chain_counter", "empty", "enumeration",
          "universal-size-ab-rings", "universal-size-small"};
}
std::vector<std::string> task_names() { return {"election", "size-ab-rings", "size-ab-3"}; }
std::vector<std::string> pair_names() { return {"size-ab-rings", "broken-size-r1"}; }
std::vector<std::string> family_names() {
  return {"rings-3-5", "rings-3-6", "rings-2-6", "ab-rings-3-5", "ab-ring-3",
          "small-3-ab", "small-4-ab", "id-rings"};
}

}  // namespace stabsim
