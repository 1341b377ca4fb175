#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stabsim/digraph.hpp"

namespace stabsim {

// Total map between digraphs: vertex_map[v] and arc_map[a] are indexed by the
// source digraph's vertex/arc ids.
struct DigraphMorphism {
  std::vector<VertexId> vertex_map;
  std::vector<ArcId> arc_map;

  friend bool operator==(const DigraphMorphism&, const DigraphMorphism&) = default;
};

// Empty result means the morphism is valid (incidence and labels preserved);
// otherwise a description of the first violation.
std::optional<std::string> morphism_error(const LabeledDigraph& from, const LabeledDigraph& to,
                                          const DigraphMorphism& m);

enum class FibrationVerdict {
  Fibration,
  NotFibration,
  InvalidMorphism,
};

// Unique arc lifting at the target side: for each arc a of `base` and each
// vertex v of `total` mapped onto t(a), exactly one preimage arc of a ends at
// v. With `strict_both_sides` the symmetric source-side condition is checked
// as well (an opfibration/covering-style requirement, off by default).
FibrationVerdict check_fibration(const LabeledDigraph& total, const LabeledDigraph& base,
                                 const DigraphMorphism& m, std::string* why = nullptr,
                                 bool strict_both_sides = false);

inline bool is_fibration(const LabeledDigraph& total, const LabeledDigraph& base,
                         const DigraphMorphism& m) {
  return check_fibration(total, base, m) == FibrationVerdict::Fibration;
}

DigraphMorphism identity_morphism(const LabeledDigraph& g);

}  // namespace stabsim
