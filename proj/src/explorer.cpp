#include "stabsim/explorer.hpp"

#include <algorithm>
#include <unordered_map>

#include "stabsim/engine.hpp"

namespace stabsim {

namespace {

// Interned per-vertex register states keep the visited set small: a state key
// is the sequence of node ids plus the per-vertex flag bytes.
struct NodeInterner {
  std::unordered_map<std::string, std::uint32_t> ids;
  std::vector<NodeState> states;

  std::uint32_t intern(const NodeState& s) {
    std::string key;
    key.reserve(48);
    encode_mem(s.mem, key);
    key += '|';
    key += s.out.is_null() ? std::string("~") : s.out.dump();
    auto [it, inserted] = ids.try_emplace(std::move(key), static_cast<std::uint32_t>(states.size()));
    if (inserted) states.push_back(s);
    return it->second;
  }
};

struct PackedState {
  std::vector<std::uint32_t> nodes;
  std::vector<std::uint8_t> flags;  // bit0 requested, bit1 influenced, bits2-3 writes (capped 2)

  std::string key() const {
    std::string k;
    k.reserve(nodes.size() * 5);
    for (std::uint32_t id : nodes) {
      k.append(reinterpret_cast<const char*>(&id), sizeof(id));
    }
    k.append(reinterpret_cast<const char*>(flags.data()), flags.size());
    return k;
  }
};

constexpr std::uint8_t kRequested = 1;
constexpr std::uint8_t kInfluenced = 2;

int writes_of(std::uint8_t flag) { return (flag >> 2) & 3; }
std::uint8_t with_writes(std::uint8_t flag, int w) {
  return static_cast<std::uint8_t>((flag & 3) | (std::min(w, 2) << 2));
}

struct Edge {
  std::uint32_t to;
  std::uint32_t action;  // index into the action table
  bool writes_out;
};

}  // namespace

ExplorerResult explore_stabilization(const LabeledDigraph& g, const Algorithm& algorithm,
                                     const OutputRelation& relation,
                                     const std::vector<ExplorerRoot>& roots,
                                     const ExplorerOptions& options) {
  ExplorerResult result;
  const std::size_t n = g.vertex_count();

  NodeInterner interner;
  std::unordered_map<std::string, std::uint32_t> state_ids;
  std::vector<PackedState> states;
  std::vector<std::vector<Edge>> edges;
  std::vector<std::int32_t> parent;          // discovery parent state
  std::vector<std::uint32_t> parent_action;  // action taken from the parent
  std::vector<std::int32_t> root_of;         // which root discovered the state
  std::vector<std::vector<VertexId>> actions;
  std::vector<bool> terminal_bad;            // per state: terminal clause violation
  std::vector<std::string> terminal_clause;

  auto unpack = [&](const PackedState& ps) {
    Configuration c;
    for (std::uint32_t id : ps.nodes) c.push_back(interner.states[id]);
    return c;
  };

  auto intern_state = [&](const Configuration& config, const std::vector<std::uint8_t>& flags,
                          std::int32_t from, std::uint32_t action,
                          std::int32_t root) -> std::pair<std::uint32_t, bool> {
    PackedState ps;
    for (const NodeState& s : config) ps.nodes.push_back(interner.intern(s));
    ps.flags = flags;
    std::string key = ps.key();
    auto [it, inserted] = state_ids.try_emplace(std::move(key), static_cast<std::uint32_t>(states.size()));
    if (inserted) {
      states.push_back(std::move(ps));
      edges.emplace_back();
      parent.push_back(from);
      parent_action.push_back(action);
      root_of.push_back(root);
      terminal_bad.push_back(false);
      terminal_clause.emplace_back();
    }
    return {it->second, inserted};
  };

  auto record_witness = [&](std::uint32_t state, const std::string& clause, bool fair,
                            const std::string& detail) {
    result.strict_violation = true;
    if (fair) result.fair_violation = true;
    const bool upgrade = result.witness && fair && !result.witness->fair;
    if (result.witness && !upgrade) return;
    ExplorerWitness w;
    w.clause = clause;
    w.fair = fair;
    w.detail = detail;
    std::vector<std::uint32_t> path_actions;
    std::uint32_t cursor = state;
    while (parent[cursor] >= 0) {
      path_actions.push_back(parent_action[cursor]);
      cursor = static_cast<std::uint32_t>(parent[cursor]);
    }
    std::reverse(path_actions.begin(), path_actions.end());
    for (std::uint32_t a : path_actions) w.schedule.push_back(actions[a]);
    const ExplorerRoot& root = roots[root_of[state]];
    w.initial = root.initial;
    w.requests = root.requests;
    result.witness = std::move(w);
  };

  // Breadth-first closure over all roots with a shared visited set.
  std::vector<std::uint32_t> queue;
  for (std::size_t r = 0; r < roots.size(); ++r) {
    std::vector<std::uint8_t> flags(n, 0);
    for (VertexId v : roots[r].requests) flags[v] = kRequested | kInfluenced;
    auto [id, inserted] =
        intern_state(roots[r].initial, flags, -1, 0, static_cast<std::int32_t>(r));
    if (inserted) queue.push_back(id);
  }

  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    if (states.size() > options.max_states) break;
    const std::uint32_t sid = queue[qi];
    const Configuration config = unpack(states[sid]);
    const std::vector<std::uint8_t> flags = states[sid].flags;

    std::vector<VertexId> activable;
    for (VertexId v = 0; v < n; ++v)
      if (vertex_activable(g, config, v, algorithm, flags[v] & kRequested)) activable.push_back(v);

    if (activable.empty()) {
      // Terminal: correction always, decision when requested.
      std::vector<Json> outs;
      for (const NodeState& s : config) outs.push_back(s.out);
      std::string clause;
      if (!relation(g, outs)) clause = "correction";
      if (clause.empty() && options.check_decision) {
        for (VertexId v = 0; v < n; ++v)
          if ((flags[v] & kInfluenced) && writes_of(flags[v]) != 1) clause = "decision";
      }
      if (!clause.empty()) {
        terminal_bad[sid] = true;
        terminal_clause[sid] = clause;
        record_witness(sid, clause, true, "terminal state");
      }
      continue;
    }

    // Every nonempty subset of the activable vertices.
    const std::size_t subsets = (std::size_t{1} << activable.size());
    for (std::size_t mask = 1; mask < subsets; ++mask) {
      std::vector<VertexId> activated;
      for (std::size_t b = 0; b < activable.size(); ++b)
        if (mask >> b & 1) activated.push_back(activable[b]);

      std::vector<bool> requested(n, false);
      for (VertexId v = 0; v < n; ++v) requested[v] = flags[v] & kRequested;
      StepEffects effects;
      Configuration next = apply_step(g, config, activated, algorithm, &requested, &effects);

      std::vector<std::uint8_t> next_flags = flags;
      for (VertexId v : effects.consumed_requests)
        next_flags[v] = static_cast<std::uint8_t>(next_flags[v] & ~kRequested);
      // Influence joins: activated with an influenced in-neighbour (before the
      // step).
      for (VertexId v : activated) {
        if (flags[v] & kInfluenced) continue;
        for (VertexId u : g.in_sources(v))
          if (flags[u] & kInfluenced) {
            next_flags[v] |= kInfluenced;
            break;
          }
      }
      bool wrote = false;
      std::string decision_overflow;
      for (VertexId v : effects.wrote_out) {
        wrote = true;
        if (flags[v] & kInfluenced) {  // counted only once influenced before the step
          const int w = writes_of(flags[v]) + 1;
          next_flags[v] = with_writes(next_flags[v], w);
          if (options.check_decision && w >= 2)
            decision_overflow = "vertex " + std::to_string(v) + " wrote twice after influence";
        }
      }

      actions.push_back(activated);
      const std::uint32_t action_id = static_cast<std::uint32_t>(actions.size() - 1);
      auto [tid, inserted] = intern_state(next, next_flags, static_cast<std::int32_t>(sid),
                                          action_id, root_of[sid]);
      edges[sid].push_back(Edge{tid, action_id, wrote});
      ++result.transitions;
      if (inserted) queue.push_back(tid);
      if (!decision_overflow.empty()) record_witness(tid, "decision", true, decision_overflow);
    }
  }

  result.states = states.size();
  result.explored_fully = states.size() <= options.max_states;
  if (!result.explored_fully) return result;

  // Tarjan SCC (iterative) over the explored graph.
  const std::uint32_t N = static_cast<std::uint32_t>(states.size());
  std::vector<std::int32_t> index(N, -1), low(N, 0), comp(N, -1);
  std::vector<bool> on_stack(N, false);
  std::vector<std::uint32_t> stack;
  std::int32_t next_index = 0;
  std::int32_t comp_count = 0;
  struct Frame {
    std::uint32_t v;
    std::size_t edge;
  };
  for (std::uint32_t start = 0; start < N; ++start) {
    if (index[start] >= 0) continue;
    std::vector<Frame> call{{start, 0}};
    index[start] = low[start] = next_index++;
    stack.push_back(start);
    on_stack[start] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.edge < edges[f.v].size()) {
        const std::uint32_t to = edges[f.v][f.edge++].to;
        if (index[to] < 0) {
          index[to] = low[to] = next_index++;
          stack.push_back(to);
          on_stack[to] = true;
          call.push_back({to, 0});
        } else if (on_stack[to]) {
          low[f.v] = std::min(low[f.v], index[to]);
        }
      } else {
        if (low[f.v] == index[f.v]) {
          for (;;) {
            const std::uint32_t w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp[w] = comp_count;
            if (w == f.v) break;
          }
          ++comp_count;
        }
        const std::uint32_t child = f.v;
        call.pop_back();
        if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[child]);
      }
    }
  }

  // Per component: cyclic? internal write edge? escapable?
  std::vector<int> size(comp_count, 0);
  std::vector<bool> cyclic(comp_count, false), write_edge(comp_count, false), sink(comp_count, true);
  for (std::uint32_t v = 0; v < N; ++v) ++size[comp[v]];
  for (std::uint32_t v = 0; v < N; ++v) {
    for (const Edge& e : edges[v]) {
      if (comp[e.to] == comp[v]) {
        cyclic[comp[v]] = true;
        if (e.writes_out) write_edge[comp[v]] = true;
      } else {
        sink[comp[v]] = false;
      }
    }
  }

  std::vector<std::uint32_t> representative(comp_count, 0);
  for (std::uint32_t v = N; v-- > 0;) representative[comp[v]] = v;  // smallest id
  for (std::int32_t c = 0; c < comp_count; ++c) {
    if (!cyclic[c]) continue;
    const std::uint32_t rep = representative[c];
    if (write_edge[c]) {
      record_witness(rep, "stabilization", true, "reachable cycle keeps writing out");
      continue;
    }
    // Outputs are frozen on this cycle; an execution may stay here forever.
    const Configuration config = unpack(states[rep]);
    std::vector<Json> outs;
    for (const NodeState& s : config) outs.push_back(s.out);
    std::string clause;
    if (!relation(g, outs)) clause = "correction";
    if (clause.empty() && options.check_decision) {
      for (VertexId v = 0; v < n; ++v)
        if ((states[rep].flags[v] & kInfluenced) && writes_of(states[rep].flags[v]) != 1)
          clause = "decision";
    }
    if (!clause.empty())
      record_witness(rep, clause, /*fair=*/sink[c],
                     sink[c] ? "inescapable trap with bad frozen labelling"
                             : "escapable cycle with bad frozen labelling (unfair schedules only)");
  }
  return result;
}

}  // namespace stabsim
