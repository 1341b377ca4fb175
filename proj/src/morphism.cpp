#include "stabsim/morphism.hpp"

#include <sstream>

namespace stabsim {

std::optional<std::string> morphism_error(const LabeledDigraph& from, const LabeledDigraph& to,
                                          const DigraphMorphism& m) {
  if (m.vertex_map.size() != from.vertex_count()) return "vertex_map has the wrong size";
  if (m.arc_map.size() != from.arc_count()) return "arc_map has the wrong size";
  for (VertexId v = 0; v < from.vertex_count(); ++v) {
    if (m.vertex_map[v] >= to.vertex_count()) return "vertex_map out of range";
    if (from.label(v) != to.label(m.vertex_map[v])) {
      std::ostringstream os;
      os << "label not preserved at vertex " << v;
      return os.str();
    }
  }
  for (ArcId a = 0; a < from.arc_count(); ++a) {
    if (m.arc_map[a] >= to.arc_count()) return "arc_map out of range";
    const Arc& src_arc = from.arc(a);
    const Arc& dst_arc = to.arc(m.arc_map[a]);
    if (m.vertex_map[src_arc.src] != dst_arc.src || m.vertex_map[src_arc.dst] != dst_arc.dst) {
      std::ostringstream os;
      os << "incidence not preserved at arc " << a;
      return os.str();
    }
  }
  return std::nullopt;
}

FibrationVerdict check_fibration(const LabeledDigraph& total, const LabeledDigraph& base,
                                 const DigraphMorphism& m, std::string* why,
                                 bool strict_both_sides) {
  if (auto err = morphism_error(total, base, m)) {
    if (why) *why = *err;
    return FibrationVerdict::InvalidMorphism;
  }
  // count[a][v]: preimage arcs of base arc a ending at total vertex v.
  for (ArcId a = 0; a < base.arc_count(); ++a) {
    const VertexId target = base.arc(a).dst;
    for (VertexId v = 0; v < total.vertex_count(); ++v) {
      if (m.vertex_map[v] != target) continue;
      int count = 0;
      for (ArcId ta : total.in_arcs(v))
        if (m.arc_map[ta] == a) ++count;
      if (count != 1) {
        if (why) {
          std::ostringstream os;
          os << "base arc " << a << " has " << count << " lifts ending at vertex " << v;
          *why = os.str();
        }
        return FibrationVerdict::NotFibration;
      }
    }
    if (strict_both_sides) {
      const VertexId source = base.arc(a).src;
      for (VertexId v = 0; v < total.vertex_count(); ++v) {
        if (m.vertex_map[v] != source) continue;
        int count = 0;
        for (ArcId ta : total.out_arcs(v))
          if (m.arc_map[ta] == a) ++count;
        if (count != 1) {
          if (why) {
            std::ostringstream os;
            os << "base arc " << a << " has " << count << " lifts starting at vertex " << v;
            *why = os.str();
          }
          return FibrationVerdict::NotFibration;
        }
      }
    }
  }
  return FibrationVerdict::Fibration;
}

DigraphMorphism identity_morphism(const LabeledDigraph& g) {
  DigraphMorphism m;
  m.vertex_map.resize(g.vertex_count());
  m.arc_map.resize(g.arc_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) m.vertex_map[v] = v;
  for (ArcId a = 0; a < g.arc_count(); ++a) m.arc_map[a] = a;
  return m;
}

}  // namespace stabsim
