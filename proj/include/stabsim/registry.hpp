#pragma once

#include "stabsim/mazurkiewicz.hpp"
#include "stabsim/task.hpp"

namespace stabsim {

// Built-in name -> object mappings used by the CLI and the manifest loader.
// Algorithms may consult the input graph (the LCR variants read the ring size
// off it).
Algorithm build_algorithm(const std::string& name, const Json& params, const LabeledDigraph& g);
TaskSpec build_task(const std::string& name);
OutputRadiusPair build_pair(const std::string& name);
PointedFamily build_family(const std::string& name);

std::vector<std::string> algorithm_names();
std::vector<std::string> task_names();
std::vector<std::string> pair_names();
std::vector<std::string> family_names();

// Rings with pairwise-distinct positive integer identities as labels.
// Enumeration is intentionally empty; the family is a membership domain.
PointedFamily id_ring_family();

}  // namespace stabsim
