#include "stabsim/quasi_fibration.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>
#include <numeric>
#include <stdexcept>

namespace stabsim {

namespace {

constexpr VertexId kUnassigned = static_cast<VertexId>(-1);

int multiplicity(const LabeledDigraph& g, VertexId u, VertexId v) {
  int count = 0;
  for (ArcId a : g.out_arcs(u))
    if (g.arc(a).dst == v) ++count;
  return count;
}

// Backtracking search for homomorphisms pi: ball -> h that are bijective on
// the in-arcs of every ball vertex of depth <= radius-1.
struct BallHomomorphismSearch {
  const LabeledDigraph& h;
  const InBall& ball;
  std::optional<VertexId> pinned_center;
  bool collect_all = false;

  std::vector<VertexId> pi;
  std::vector<VertexId> order;  // ball vertices sorted by (depth, id)
  std::vector<std::vector<VertexId>> found;

  explicit BallHomomorphismSearch(const LabeledDigraph& h_, const InBall& ball_,
                                  std::optional<VertexId> pin, bool all)
      : h(h_), ball(ball_), pinned_center(pin), collect_all(all) {
    pi.assign(ball.graph.vertex_count(), kUnassigned);
    order.resize(ball.graph.vertex_count());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](VertexId a, VertexId b) { return ball.depth[a] < ball.depth[b]; });
  }

  bool deep(VertexId x) const { return ball.depth[x] <= ball.radius - 1; }

  bool admissible(VertexId x, VertexId u) const {
    if (ball.graph.label(x) != h.label(u)) return false;
    if (deep(x) && ball.graph.in_degree(x) != h.in_degree(u)) return false;
    // Count constraints at every deep target adjacent to x. All ball arcs end
    // at deep vertices by construction of the in-ball.
    auto count_ok = [&](VertexId target, VertexId target_image) {
      std::map<VertexId, int> assigned;
      for (ArcId a : ball.graph.in_arcs(target)) {
        VertexId src = ball.graph.arc(a).src;
        VertexId img = (src == x) ? u : pi[src];
        if (img != kUnassigned) ++assigned[img];
      }
      for (auto [img, cnt] : assigned)
        if (cnt > multiplicity(h, img, target_image)) return false;
      return true;
    };
    if (ball.graph.in_degree(x) > 0 && !count_ok(x, u)) return false;
    for (ArcId a : ball.graph.out_arcs(x)) {
      VertexId y = ball.graph.arc(a).dst;
      VertexId yi = (y == x) ? u : pi[y];
      if (yi != kUnassigned && !count_ok(y, yi)) return false;
    }
    return true;
  }

  bool complete_ok() const {
    for (VertexId y = 0; y < ball.graph.vertex_count(); ++y) {
      if (!deep(y)) continue;
      std::map<VertexId, int> got;
      for (ArcId a : ball.graph.in_arcs(y)) ++got[pi[ball.graph.arc(a).src]];
      for (ArcId a : h.in_arcs(pi[y])) --got[h.arc(a).src];
      for (auto [_, cnt] : got)
        if (cnt != 0) return false;
    }
    return true;
  }

  // Returns true once a witness is found and collect_all is off.
  bool run(std::size_t pos) {
    if (pos == order.size()) {
      if (!complete_ok()) return false;
      found.push_back(pi);
      return !collect_all;
    }
    VertexId x = order[pos];
    if (x == ball.center && pinned_center) {
      VertexId u = *pinned_center;
      if (!admissible(x, u)) return false;
      pi[x] = u;
      bool done = run(pos + 1);
      pi[x] = kUnassigned;
      return done;
    }
    for (VertexId u = 0; u < h.vertex_count(); ++u) {
      if (!admissible(x, u)) continue;
      pi[x] = u;
      if (run(pos + 1)) {
        pi[x] = kUnassigned;
        return true;
      }
      pi[x] = kUnassigned;
    }
    return false;
  }
};

QuasiFibrationWitness make_witness(const LabeledDigraph& h, const InBall& ball,
                                   std::vector<VertexId> pi, int radius) {
  QuasiFibrationWitness w;
  w.ball = ball;
  w.gamma_vertex = std::move(pi);
  w.radius = radius;
  w.gamma_arc.resize(ball.graph.arc_count());
  // Per deep target, pair ball in-arcs with h in-arcs grouped by source image
  // in index order; the multiset equality guarantees a perfect matching.
  for (VertexId y = 0; y < ball.graph.vertex_count(); ++y) {
    std::map<VertexId, std::deque<ArcId>> available;
    for (ArcId a : h.in_arcs(w.gamma_vertex[y])) available[h.arc(a).src].push_back(a);
    for (ArcId a : ball.graph.in_arcs(y)) {
      auto& pool = available[w.gamma_vertex[ball.graph.arc(a).src]];
      assert(!pool.empty());
      w.gamma_arc[a] = pool.front();
      pool.pop_front();
    }
  }
  return w;
}

}  // namespace

QuasiFibrationVerdict check_quasi_fibration(const LabeledDigraph& k, const LabeledDigraph& h,
                                            VertexId v, int radius, std::size_t search_bound,
                                            std::optional<VertexId> required_center_image) {
  if (v >= k.vertex_count()) throw std::invalid_argument("check_quasi_fibration: unknown center");
  if (search_bound < k.vertex_count())
    throw std::invalid_argument("check_quasi_fibration: search_bound below |V(k)|");
  InBall ball = in_ball(k, v, radius);
  BallHomomorphismSearch search(h, ball, required_center_image, /*all=*/false);
  search.run(0);
  QuasiFibrationVerdict verdict;
  if (search.found.empty()) {
    verdict.kind = QuasiFibrationKind::No;
    return verdict;
  }
  verdict.kind = QuasiFibrationKind::Yes;
  verdict.witness = make_witness(h, ball, search.found.front(), radius);
  return verdict;
}

std::vector<QuasiFibrationWitness> quasi_fibration_witnesses(
    const LabeledDigraph& k, const LabeledDigraph& h, VertexId v, int radius,
    std::optional<VertexId> required_center_image) {
  if (v >= k.vertex_count()) throw std::invalid_argument("quasi_fibration_witnesses: unknown center");
  InBall ball = in_ball(k, v, radius);
  BallHomomorphismSearch search(h, ball, required_center_image, /*all=*/true);
  search.run(0);
  std::vector<QuasiFibrationWitness> out;
  out.reserve(search.found.size());
  for (auto& pi : search.found) out.push_back(make_witness(h, ball, std::move(pi), radius));
  return out;
}

bool validate_quasi_fibration_witness(const LabeledDigraph& k, const LabeledDigraph& h, VertexId v,
                                      const QuasiFibrationWitness& w) {
  // The stored ball must be the in-ball of k around v.
  InBall expect = in_ball(k, v, w.radius);
  if (!(expect.graph == w.ball.graph) || expect.center != w.ball.center ||
      expect.vertex_of != w.ball.vertex_of)
    return false;
  // gamma is a homomorphism.
  DigraphMorphism gamma{w.gamma_vertex, w.gamma_arc};
  if (morphism_error(w.ball.graph, h, gamma)) return false;
  // Bijective on in-arcs of every vertex of depth <= r-1.
  for (VertexId y = 0; y < w.ball.graph.vertex_count(); ++y) {
    if (w.ball.depth[y] > w.radius - 1) continue;
    std::vector<ArcId> images;
    for (ArcId a : w.ball.graph.in_arcs(y)) images.push_back(w.gamma_arc[a]);
    std::sort(images.begin(), images.end());
    if (std::adjacent_find(images.begin(), images.end()) != images.end()) return false;
    if (images.size() != h.in_degree(w.gamma_vertex[y])) return false;
  }
  return true;
}

InBall unfolding_truncation(const LabeledDigraph& h, VertexId root, int radius) {
  if (root >= h.vertex_count()) throw std::invalid_argument("unfolding_truncation: unknown root");
  InBall tree;
  tree.radius = radius;
  tree.center = tree.graph.add_vertex(h.label(root));
  tree.vertex_of.push_back(root);  // projection onto h, not an embedding
  tree.depth.push_back(0);
  std::deque<VertexId> frontier{tree.center};
  while (!frontier.empty()) {
    VertexId node = frontier.front();
    frontier.pop_front();
    if (tree.depth[node] >= radius) continue;
    for (ArcId a : h.in_arcs(tree.vertex_of[node])) {
      VertexId child = tree.graph.add_vertex(h.label(h.arc(a).src));
      tree.vertex_of.push_back(h.arc(a).src);
      tree.depth.push_back(tree.depth[node] + 1);
      tree.graph.add_arc(child, node);
      tree.arc_of.push_back(a);
      frontier.push_back(child);
    }
  }
  return tree;
}

}  // namespace stabsim
