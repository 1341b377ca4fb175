#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include <json.hpp>

#include "stabsim/views.hpp"

namespace stabsim {

using Json = nlohmann::json;

struct LcrMem {
  std::int64_t min = 0;
  std::int64_t ttl = 0;
  friend bool operator==(const LcrMem&, const LcrMem&) = default;
  friend auto operator<=>(const LcrMem&, const LcrMem&) = default;
};

// Per-node state of the enumeration algorithm: name, latest stored view,
// mailbox, gSSP counter, and whether the output rule is armed for the current
// mailbox (it disarms on writing and re-arms whenever the mailbox changes).
struct EnumMem {
  Name n = 0;
  LocalView stored_view;
  Mailbox mailbox;
  std::int64_t counter = -1;
  bool armed = true;
  friend bool operator==(const EnumMem&, const EnumMem&) = default;
};

// std::monostate: no internal memory; std::int64_t: a plain counter register;
// Json: escape hatch for ad-hoc algorithms.
using Mem = std::variant<std::monostate, std::int64_t, LcrMem, EnumMem, Json>;

Json mem_to_json(const Mem& mem);
Mem mem_from_json(const Json& j);
// Compact byte encoding for hashing and state-space keys.
void encode_mem(const Mem& mem, std::string& out);

}  // namespace stabsim
