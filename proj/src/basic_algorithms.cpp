#include "stabsim/basic_algorithms.hpp"

#include <algorithm>

namespace stabsim {

Algorithm chain_counter_algorithm(std::int64_t counter_cap) {
  Algorithm algo;
  algo.name = "chain_counter";
  algo.params = Json{{"cap", counter_cap}};
  Rule tick;
  tick.name = "Tick";
  tick.guard = [counter_cap](const RuleContext& ctx) {
    return std::get<std::int64_t>(ctx.self().mem) < counter_cap;
  };
  tick.command = [](const RuleContext& ctx) {
    std::int64_t best = std::get<std::int64_t>(ctx.self().mem);
    bool any = false;
    for (VertexId u : ctx.in_sources()) {
      std::int64_t c = std::get<std::int64_t>(ctx.state(u).mem);
      best = any ? std::min(best, c) : c;
      any = true;
    }
    return RuleEffect{best + 1, std::nullopt};
  };
  algo.rules.push_back(std::move(tick));
  algo.clean_init = [](const LabeledDigraph& g) {
    Configuration c;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
      c.push_back(NodeState{g.label(v), std::int64_t{0}, nullptr});
    return c;
  };
  algo.domain = [](const LabeledDigraph& g, VertexId v) {
    (void)g;
    (void)v;
    VertexDomain d;
    d.mem_count = 8;
    d.mem_at = [](std::uint64_t i) { return Mem{static_cast<std::int64_t>(i)}; };
    d.mem_sample = [](std::mt19937_64& rng) {
      return Mem{static_cast<std::int64_t>(rng() % 8)};
    };
    return d;
  };
  return algo;
}

Algorithm empty_algorithm() {
  Algorithm algo;
  algo.name = "empty";
  algo.clean_init = [](const LabeledDigraph& g) {
    Configuration c;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
      c.push_back(NodeState{g.label(v), std::monostate{}, nullptr});
    return c;
  };
  algo.domain = [](const LabeledDigraph&, VertexId) {
    VertexDomain d;
    d.mem_count = 1;
    d.mem_at = [](std::uint64_t) { return Mem{std::monostate{}}; };
    d.mem_sample = [](std::mt19937_64&) { return Mem{std::monostate{}}; };
    return d;
  };
  return algo;
}

}  // namespace stabsim
