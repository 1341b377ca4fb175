#pragma once

#include <functional>
#include <optional>
#include <random>

#include "stabsim/digraph.hpp"
#include "stabsim/mem.hpp"

namespace stabsim {

// (lambda, mem, out) as held by one vertex. lambda is the read-only input
// label; out is null until written (corruption aside).
struct NodeState {
  std::string lambda;
  Mem mem;
  Json out = nullptr;
  friend bool operator==(const NodeState&, const NodeState&) = default;
};

using Configuration = std::vector<NodeState>;

Json node_state_to_json(const NodeState& s);
NodeState node_state_from_json(const Json& j);

// What a guard or command may read: the center's own state, the states of its
// in-neighbours, and the request flag at the center. Commands write only the
// center's registers; reading anything beyond the closed in-neighbourhood
// breaks the model (and the lifting lemmas will catch it in tests).
struct RuleContext {
  const LabeledDigraph& g;
  const Configuration& config;
  VertexId center;
  bool requested = false;

  const NodeState& self() const { return config[center]; }
  const NodeState& state(VertexId v) const { return config[v]; }
  std::vector<VertexId> in_sources() const { return g.in_sources(center); }
};

struct RuleEffect {
  Mem mem;
  std::optional<Json> out;  // engaged = a write event, even if the value repeats
};

struct Rule {
  std::string name;
  bool consumes_request = false;
  std::function<bool(const RuleContext&)> guard;
  std::function<RuleEffect(const RuleContext&)> command;
};

// Corruption domain of one vertex: an enumerable (mem, out) space. mem_count
// of zero means the mem space is too large to enumerate; sampling must still
// work. out_values always lists the candidate out corruptions (include null).
struct VertexDomain {
  std::uint64_t mem_count = 0;
  std::function<Mem(std::uint64_t)> mem_at;
  std::function<Mem(std::mt19937_64&)> mem_sample;
  std::vector<Json> out_values = {nullptr};
};

struct Algorithm {
  std::string name;
  Json params = Json::object();
  std::vector<Rule> rules;  // priority order, rules[0] is highest
  std::function<Configuration(const LabeledDigraph&)> clean_init;
  std::function<VertexDomain(const LabeledDigraph&, VertexId)> domain;
};

}  // namespace stabsim
