#include "stabsim/trace_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "stabsim/graph_io.hpp"

namespace stabsim {

namespace {

constexpr int kTraceVersion = 1;

Json graph_to_json(const LabeledDigraph& g) {
  Json arcs = Json::array();
  for (const Arc& a : g.arcs()) arcs.push_back(Json::array({a.src, a.dst}));
  return Json{{"labels", g.labels()}, {"arcs", arcs}};
}

LabeledDigraph graph_from_json(const Json& j) {
  LabeledDigraph g;
  for (const auto& l : j.at("labels")) g.add_vertex(l.get<std::string>());
  for (const auto& a : j.at("arcs")) g.add_arc(a.at(0).get<VertexId>(), a.at(1).get<VertexId>());
  return g;
}

Json vertex_lists_to_json(const std::vector<std::vector<VertexId>>& lists) {
  Json out = Json::array();
  for (const auto& list : lists) out.push_back(Json(list));
  return out;
}

std::vector<std::vector<VertexId>> vertex_lists_from_json(const Json& j) {
  std::vector<std::vector<VertexId>> out;
  for (const auto& list : j) out.push_back(list.get<std::vector<VertexId>>());
  return out;
}

}  // namespace

Json trace_to_json(const ExecutionTrace& trace) {
  Json configs = Json::array();
  for (const Configuration& c : trace.configs) {
    Json states = Json::array();
    for (const NodeState& s : c) states.push_back(node_state_to_json(s));
    configs.push_back(std::move(states));
  }
  Json verdict{{"kind", verdict_kind_name(trace.verdict.kind)}, {"step", trace.verdict.step}};
  return Json{{"schema", "stabsim-trace"},
              {"version", kTraceVersion},
              {"graph", graph_to_json(trace.graph)},
              {"algorithm", Json{{"name", trace.algorithm_name}, {"params", trace.algorithm_params}}},
              {"daemon", daemon_kind_name(trace.daemon)},
              {"seed", trace.seed},
              {"requests", trace.requests},
              {"budget", trace.budget},
              {"silence_window", trace.silence_window},
              {"configurations", std::move(configs)},
              {"activations", vertex_lists_to_json(trace.activations)},
              {"out_writes", vertex_lists_to_json(trace.out_writes)},
              {"influenced", vertex_lists_to_json(trace.influenced)},
              {"verdict", std::move(verdict)}};
}

ExecutionTrace trace_from_json(const Json& j) {
  if (j.at("schema") != "stabsim-trace" || j.at("version").get<int>() != kTraceVersion)
    throw std::runtime_error("trace_from_json: unsupported schema/version");
  ExecutionTrace trace;
  trace.graph = graph_from_json(j.at("graph"));
  trace.algorithm_name = j.at("algorithm").at("name").get<std::string>();
  trace.algorithm_params = j.at("algorithm").at("params");
  trace.daemon = daemon_kind_from_name(j.at("daemon").get<std::string>());
  trace.seed = j.at("seed").get<std::uint64_t>();
  trace.requests = j.at("requests").get<std::vector<VertexId>>();
  trace.budget = j.at("budget").get<std::size_t>();
  trace.silence_window = j.at("silence_window").get<std::size_t>();
  for (const auto& states : j.at("configurations")) {
    Configuration c;
    for (const auto& s : states) c.push_back(node_state_from_json(s));
    trace.configs.push_back(std::move(c));
  }
  trace.activations = vertex_lists_from_json(j.at("activations"));
  trace.out_writes = vertex_lists_from_json(j.at("out_writes"));
  trace.influenced = vertex_lists_from_json(j.at("influenced"));
  const Json& v = j.at("verdict");
  const std::string kind = v.at("kind").get<std::string>();
  if (kind == "quiescent") trace.verdict.kind = VerdictKind::Quiescent;
  else if (kind == "out-silent") trace.verdict.kind = VerdictKind::OutSilent;
  else if (kind == "budget-exhausted") trace.verdict.kind = VerdictKind::BudgetExhausted;
  else throw std::runtime_error("trace_from_json: unknown verdict kind");
  trace.verdict.step = v.at("step").get<std::size_t>();
  return trace;
}

std::string trace_to_string(const ExecutionTrace& trace) {
  return trace_to_json(trace).dump(2) + "\n";
}

ExecutionTrace replay_trace(const ExecutionTrace& source, const Algorithm& algorithm) {
  RunOptions options;
  options.step_budget = source.budget;
  options.silence_window = source.silence_window;
  options.initial = source.configs.front();
  ExecutionTrace replayed = run(source.graph, algorithm, DaemonPolicy::replay(source.activations),
                                source.requests, options);
  replayed.daemon = source.daemon;
  replayed.seed = source.seed;
  return replayed;
}

void save_trace_file(const ExecutionTrace& trace, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write trace file: " + path);
  f << trace_to_string(trace);
}

ExecutionTrace load_trace_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open trace file: " + path);
  Json j = Json::parse(f);
  return trace_from_json(j);
}

}  // namespace stabsim
