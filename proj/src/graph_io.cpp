#include "stabsim/graph_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace stabsim {

namespace {

constexpr const char* kMagic = "stabsim-graph v1";

[[noreturn]] void fail(const std::string& what) {
  throw std::runtime_error("graph parse error: " + what);
}

}  // namespace

std::string serialize_graph(const LabeledDigraph& g) {
  std::ostringstream os;
  os << kMagic << '\n';
  os << "vertices " << g.vertex_count() << '\n';
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const std::string& label = g.label(v);
    if (label == "-" || label.find_first_of(" \t\n") != std::string::npos)
      throw std::invalid_argument("serialize_graph: label not representable: '" + label + "'");
    os << v << ' ' << (label.empty() ? "-" : label) << '\n';
  }
  os << "arcs " << g.arc_count() << '\n';
  for (ArcId a = 0; a < g.arc_count(); ++a)
    os << a << ' ' << g.arc(a).src << ' ' << g.arc(a).dst << '\n';
  return os.str();
}

LabeledDigraph parse_graph(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != kMagic) fail("missing version tag");

  std::size_t n = 0;
  if (!(is >> line >> n) || line != "vertices") fail("missing vertex section");
  LabeledDigraph g;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t id;
    std::string label;
    if (!(is >> id >> label)) fail("truncated vertex list");
    if (id != i) fail("vertex ids must be 0..n-1 in order");
    g.add_vertex(label == "-" ? std::string{} : label);
  }
  std::size_t m = 0;
  if (!(is >> line >> m) || line != "arcs") fail("missing arc section");
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t id, src, dst;
    if (!(is >> id >> src >> dst)) fail("truncated arc list");
    if (id != i) fail("arc indices must be 0..m-1 in order");
    if (src >= n || dst >= n) fail("arc endpoint out of range");
    g.add_arc(static_cast<VertexId>(src), static_cast<VertexId>(dst));
  }
  std::string rest;
  if (is >> rest) fail("trailing content");
  return g;
}

LabeledDigraph load_graph_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open graph file: " + path);
  std::ostringstream buffer;
  buffer << f.rdbuf();
  return parse_graph(buffer.str());
}

void save_graph_file(const LabeledDigraph& g, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write graph file: " + path);
  f << serialize_graph(g);
}

}  // namespace stabsim
