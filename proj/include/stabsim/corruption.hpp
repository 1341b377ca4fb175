#pragma once

#include "stabsim/algorithm.hpp"

namespace stabsim {

// Stream of corrupted initial configurations over the algorithm's declared
// register domains. Exhaustive mode enumerates the full product across
// vertices and refuses unbounded domains; seeded mode is reproducible from
// the seed. include_out=false leaves every out register at bottom (the
// self-stabilization setting corrupts mem only).
class CorruptionStream {
 public:
  static CorruptionStream exhaustive(const LabeledDigraph& g, const Algorithm& algorithm,
                                     bool include_out);
  static CorruptionStream seeded(const LabeledDigraph& g, const Algorithm& algorithm,
                                 std::uint64_t seed, std::size_t count, bool include_out);

  std::optional<Configuration> next();
  // Total number of configurations the stream will yield.
  std::uint64_t total() const { return total_; }

 private:
  std::function<std::optional<Configuration>()> next_;
  std::uint64_t total_ = 0;
};

}  // namespace stabsim
