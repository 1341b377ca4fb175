#include "stabsim/corruption.hpp"

#include <stdexcept>

namespace stabsim {

CorruptionStream CorruptionStream::exhaustive(const LabeledDigraph& g, const Algorithm& algorithm,
                                              bool include_out) {
  auto domains = std::make_shared<std::vector<VertexDomain>>();
  std::uint64_t total = 1;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    domains->push_back(algorithm.domain(g, v));
    const VertexDomain& d = domains->back();
    if (d.mem_count == 0)
      throw std::invalid_argument("exhaustive corruption: unbounded mem domain at vertex " +
                                  std::to_string(v));
    if (d.out_values.empty()) throw std::invalid_argument("exhaustive corruption: empty out domain");
    total *= d.mem_count * (include_out ? d.out_values.size() : 1);
  }

  CorruptionStream stream;
  stream.total_ = total;
  auto graph = std::make_shared<LabeledDigraph>(g);
  auto index = std::make_shared<std::uint64_t>(0);
  stream.next_ = [domains, graph, index, total, include_out]() -> std::optional<Configuration> {
    if (*index >= total) return std::nullopt;
    std::uint64_t code = (*index)++;
    Configuration config;
    for (VertexId v = 0; v < graph->vertex_count(); ++v) {
      const VertexDomain& d = (*domains)[v];
      const std::uint64_t radix = d.mem_count * (include_out ? d.out_values.size() : 1);
      std::uint64_t digit = code % radix;
      code /= radix;
      NodeState s;
      s.lambda = graph->label(v);
      s.mem = d.mem_at(digit % d.mem_count);
      s.out = include_out ? d.out_values[digit / d.mem_count] : Json(nullptr);
      config.push_back(std::move(s));
    }
    return config;
  };
  return stream;
}

CorruptionStream CorruptionStream::seeded(const LabeledDigraph& g, const Algorithm& algorithm,
                                          std::uint64_t seed, std::size_t count, bool include_out) {
  auto domains = std::make_shared<std::vector<VertexDomain>>();
  for (VertexId v = 0; v < g.vertex_count(); ++v) domains->push_back(algorithm.domain(g, v));

  CorruptionStream stream;
  stream.total_ = count;
  auto graph = std::make_shared<LabeledDigraph>(g);
  auto rng = std::make_shared<std::mt19937_64>(seed);
  auto remaining = std::make_shared<std::size_t>(count);
  stream.next_ = [domains, graph, rng, remaining, include_out]() -> std::optional<Configuration> {
    if (*remaining == 0) return std::nullopt;
    --*remaining;
    Configuration config;
    for (VertexId v = 0; v < graph->vertex_count(); ++v) {
      const VertexDomain& d = (*domains)[v];
      NodeState s;
      s.lambda = graph->label(v);
      s.mem = d.mem_sample(*rng);
      if (include_out && !d.out_values.empty()) {
        std::uniform_int_distribution<std::size_t> pick(0, d.out_values.size() - 1);
        s.out = d.out_values[pick(*rng)];
      }
      config.push_back(std::move(s));
    }
    return config;
  };
  return stream;
}

std::optional<Configuration> CorruptionStream::next() { return next_(); }

}  // namespace stabsim
