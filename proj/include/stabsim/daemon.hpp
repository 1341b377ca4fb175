#pragma once

#include <cstdint>
#include <vector>

#include "stabsim/digraph.hpp"

namespace stabsim {

enum class DaemonKind { Central, Synchronous, Asynchronous, Schedule };

// The adversary choosing activation sets. Central picks one activable vertex,
// synchronous picks all of them, asynchronous a nonempty subset (both random
// choices driven by the seed); Schedule replays explicit sets.
struct DaemonPolicy {
  DaemonKind kind = DaemonKind::Synchronous;
  std::uint64_t seed = 0;
  std::vector<std::vector<VertexId>> schedule;

  static DaemonPolicy central(std::uint64_t seed) { return {DaemonKind::Central, seed, {}}; }
  static DaemonPolicy synchronous() { return {DaemonKind::Synchronous, 0, {}}; }
  static DaemonPolicy asynchronous(std::uint64_t seed) { return {DaemonKind::Asynchronous, seed, {}}; }
  static DaemonPolicy replay(std::vector<std::vector<VertexId>> sched) {
    return {DaemonKind::Schedule, 0, std::move(sched)};
  }
};

const char* daemon_kind_name(DaemonKind k);
DaemonKind daemon_kind_from_name(const std::string& name);

}  // namespace stabsim
