#include "stabsim/mem.hpp"

#include <stdexcept>

namespace stabsim {

namespace {

Json view_to_json(const LocalView& v) { return Json(v.names()); }

LocalView view_from_json(const Json& j) {
  return LocalView(j.get<std::vector<Name>>());
}

}  // namespace

Json mem_to_json(const Mem& mem) {
  return std::visit(
      [](const auto& value) -> Json {
        using T = std::decay_t<decltype(value)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return Json{{"kind", "none"}};
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return Json{{"kind", "int"}, {"value", value}};
        } else if constexpr (std::is_same_v<T, LcrMem>) {
          return Json{{"kind", "lcr"}, {"min", value.min}, {"ttl", value.ttl}};
        } else if constexpr (std::is_same_v<T, EnumMem>) {
          Json mbox = Json::array();
          for (const auto& e : value.mailbox.entries())
            mbox.push_back(Json::array({e.n, e.label, view_to_json(e.view)}));
          return Json{{"kind", "enum"},   {"n", value.n},
                      {"view", view_to_json(value.stored_view)},
                      {"mbox", mbox},     {"a", value.counter},
                      {"armed", value.armed}};
        } else {
          return Json{{"kind", "json"}, {"value", value}};
        }
      },
      mem);
}

Mem mem_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "none") return std::monostate{};
  if (kind == "int") return j.at("value").get<std::int64_t>();
  if (kind == "lcr") return LcrMem{j.at("min").get<std::int64_t>(), j.at("ttl").get<std::int64_t>()};
  if (kind == "enum") {
    EnumMem m;
    m.n = j.at("n").get<Name>();
    m.stored_view = view_from_json(j.at("view"));
    std::vector<MailboxEntry> entries;
    for (const auto& e : j.at("mbox"))
      entries.push_back(MailboxEntry{e.at(0).get<Name>(), e.at(1).get<std::string>(), view_from_json(e.at(2))});
    m.mailbox = Mailbox(std::move(entries));
    m.counter = j.at("a").get<std::int64_t>();
    m.armed = j.at("armed").get<bool>();
    return m;
  }
  if (kind == "json") return j.at("value");
  throw std::runtime_error("mem_from_json: unknown kind '" + kind + "'");
}

void encode_mem(const Mem& mem, std::string& out) {
  std::visit(
      [&out](const auto& value) {
        using T = std::decay_t<decltype(value)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          out += 'M';
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          out += 'I';
          out += std::to_string(value);
        } else if constexpr (std::is_same_v<T, LcrMem>) {
          out += 'L';
          out += std::to_string(value.min);
          out += ',';
          out += std::to_string(value.ttl);
        } else if constexpr (std::is_same_v<T, EnumMem>) {
          out += 'E';
          out += std::to_string(value.n);
          out += ';';
          for (Name x : value.stored_view.names()) {
            out += std::to_string(x);
            out += ',';
          }
          out += ';';
          for (const auto& e : value.mailbox.entries()) {
            out += std::to_string(e.n);
            out += ':';
            out += e.label;
            out += ':';
            for (Name x : e.view.names()) {
              out += std::to_string(x);
              out += ',';
            }
            out += '/';
          }
          out += ';';
          out += std::to_string(value.counter);
          out += value.armed ? "T" : "F";
        } else {
          out += 'J';
          out += value.dump();
        }
      },
      mem);
}

}  // namespace stabsim
