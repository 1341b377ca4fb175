#pragma once

#include <string>

#include "stabsim/digraph.hpp"

namespace stabsim {

// Text format (docs/graph-format.md). Serialization is canonical, so
// parse(serialize(g)) == g and serialize(parse(s)) == s for well-formed s.
std::string serialize_graph(const LabeledDigraph& g);
LabeledDigraph parse_graph(const std::string& text);

LabeledDigraph load_graph_file(const std::string& path);
void save_graph_file(const LabeledDigraph& g, const std::string& path);

}  // namespace stabsim
