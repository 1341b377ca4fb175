#include "stabsim/digraph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace stabsim {

VertexId LabeledDigraph::add_vertex(std::string label) {
  labels_.push_back(std::move(label));
  in_.emplace_back();
  out_.emplace_back();
  return static_cast<VertexId>(labels_.size() - 1);
}

ArcId LabeledDigraph::add_arc(VertexId src, VertexId dst) {
  if (src >= labels_.size() || dst >= labels_.size())
    throw std::invalid_argument("add_arc: endpoint is not a declared vertex");
  arcs_.push_back(Arc{src, dst});
  const ArcId id = static_cast<ArcId>(arcs_.size() - 1);
  out_[src].push_back(id);
  in_[dst].push_back(id);
  return id;
}

std::vector<VertexId> LabeledDigraph::in_sources(VertexId v) const {
  std::vector<VertexId> srcs;
  srcs.reserve(in_.at(v).size());
  for (ArcId a : in_.at(v)) srcs.push_back(arcs_[a].src);
  return srcs;
}

std::vector<VertexId> LabeledDigraph::closed_in_neighbourhood(VertexId v) const {
  std::vector<VertexId> ball = in_sources(v);
  ball.push_back(v);
  std::sort(ball.begin(), ball.end());
  ball.erase(std::unique(ball.begin(), ball.end()), ball.end());
  return ball;
}

std::set<std::string> LabeledDigraph::alphabet() const {
  return std::set<std::string>(labels_.begin(), labels_.end());
}

LabeledDigraph dir_of(const UndirectedGraph& g) {
  LabeledDigraph d;
  for (const auto& l : g.labels) d.add_vertex(l);
  for (auto [u, v] : g.edges) {
    if (u == v) throw std::invalid_argument("dir_of: input graph must be simple");
    d.add_arc(u, v);
    d.add_arc(v, u);
  }
  return d;
}

namespace {

std::vector<int> bfs(const LabeledDigraph& g, VertexId start, bool backwards) {
  std::vector<int> dist(g.vertex_count(), -1);
  std::deque<VertexId> queue{start};
  dist.at(start) = 0;
  while (!queue.empty()) {
    VertexId u = queue.front();
    queue.pop_front();
    const auto& arcs = backwards ? g.in_arcs(u) : g.out_arcs(u);
    for (ArcId a : arcs) {
      VertexId w = backwards ? g.arc(a).src : g.arc(a).dst;
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

}  // namespace

std::vector<int> distances_to(const LabeledDigraph& g, VertexId target) {
  return bfs(g, target, /*backwards=*/true);
}

std::vector<int> distances_from(const LabeledDigraph& g, VertexId source) {
  return bfs(g, source, /*backwards=*/false);
}

bool strongly_connected(const LabeledDigraph& g) {
  if (g.vertex_count() == 0) return false;
  for (int d : distances_from(g, 0))
    if (d < 0) return false;
  for (int d : distances_to(g, 0))
    if (d < 0) return false;
  return true;
}

int diameter(const LabeledDigraph& g) {
  if (!strongly_connected(g)) throw std::invalid_argument("diameter: digraph is not strongly connected");
  int dia = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    for (int d : distances_from(g, v)) dia = std::max(dia, d);
  return dia;
}

InBall in_ball(const LabeledDigraph& g, VertexId v, int radius) {
  if (v >= g.vertex_count()) throw std::invalid_argument("in_ball: unknown vertex");
  if (radius < 0) throw std::invalid_argument("in_ball: negative radius");

  // A vertex u is in the ball iff d(u,v) <= r; an arc a is on a dipath of
  // length <= r ending at v iff d(t(a),v) <= r-1 (walk through a first).
  const std::vector<int> dist = distances_to(g, v);
  InBall ball;
  ball.radius = radius;
  std::vector<VertexId> members;
  for (VertexId u = 0; u < g.vertex_count(); ++u)
    if (dist[u] >= 0 && dist[u] <= radius) members.push_back(u);

  std::vector<VertexId> to_ball(g.vertex_count(), 0);
  for (VertexId u : members) {
    to_ball[u] = ball.graph.add_vertex(g.label(u));
    ball.vertex_of.push_back(u);
    ball.depth.push_back(dist[u]);
  }
  ball.center = to_ball[v];
  for (ArcId a = 0; a < g.arc_count(); ++a) {
    const Arc& arc = g.arc(a);
    if (dist[arc.dst] >= 0 && dist[arc.dst] <= radius - 1) {
      ball.graph.add_arc(to_ball[arc.src], to_ball[arc.dst]);
      ball.arc_of.push_back(a);
    }
  }
  return ball;
}

std::string encode(const LabeledDigraph& g) {
  std::ostringstream os;
  os << g.vertex_count() << ';';
  for (VertexId v = 0; v < g.vertex_count(); ++v) os << g.label(v) << ',';
  os << '|';
  std::vector<Arc> arcs = g.arcs();
  std::sort(arcs.begin(), arcs.end());
  for (const Arc& a : arcs) os << a.src << '>' << a.dst << ',';
  return os.str();
}

std::string canonical_form(const LabeledDigraph& g) {
  const std::size_t n = g.vertex_count();
  if (n > 10) throw std::invalid_argument("canonical_form: too many vertices for brute force");
  std::vector<VertexId> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::string> best_labels;
  std::vector<Arc> best_arcs;
  bool have_best = false;
  std::vector<std::string> labels(n);
  std::vector<Arc> arcs(g.arc_count());
  do {
    // perm[v] is the new name of vertex v.
    for (VertexId v = 0; v < n; ++v) labels[perm[v]] = g.label(v);
    for (ArcId a = 0; a < g.arc_count(); ++a)
      arcs[a] = Arc{perm[g.arc(a).src], perm[g.arc(a).dst]};
    std::sort(arcs.begin(), arcs.end());
    if (!have_best || std::tie(labels, arcs) < std::tie(best_labels, best_arcs)) {
      best_labels = labels;
      best_arcs = arcs;
      have_best = true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::ostringstream os;
  os << n << ';';
  for (const auto& l : best_labels) os << l << ',';
  os << '|';
  for (const Arc& a : best_arcs) os << a.src << '>' << a.dst << ',';
  return os.str();
}

LabeledDigraph directed_ring(std::size_t n, const std::vector<std::string>& label_pattern) {
  LabeledDigraph g;
  for (std::size_t i = 0; i < n; ++i)
    g.add_vertex(label_pattern.empty() ? std::string{} : label_pattern[i % label_pattern.size()]);
  for (std::size_t i = 0; i < n; ++i)
    g.add_arc(static_cast<VertexId>(i), static_cast<VertexId>((i + 1) % n));
  return g;
}

}  // namespace stabsim
