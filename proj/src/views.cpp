#include "stabsim/views.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace stabsim {

LocalView::LocalView(std::vector<Name> names) : names_(std::move(names)) {
  std::sort(names_.begin(), names_.end(), std::greater<>());
}

bool view_less(const LocalView& a, const LocalView& b, ViewLengthRule rule) {
  const auto& x = a.names();
  const auto& y = b.names();
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
    if (x[i] != y[i]) return x[i] < y[i];
  }
  if (x.size() == y.size()) return false;
  bool a_shorter = x.size() < y.size();
  return rule == ViewLengthRule::PrefixSmaller ? a_shorter : !a_shorter;
}

int delta(const LocalView& view, Name n) {
  return static_cast<int>(std::count(view.names().begin(), view.names().end(), n));
}

LocalView substitute(const LocalView& view, Name n, Name replacement) {
  std::vector<Name> names = view.names();
  for (Name& x : names)
    if (x == n) x = replacement;
  return LocalView(std::move(names));
}

bool evidence_less(const std::string& la, const LocalView& va, const std::string& lb,
                   const LocalView& vb, ViewLengthRule rule) {
  if (la != lb) return la < lb;
  return view_less(va, vb, rule);
}

Mailbox::Mailbox(std::vector<MailboxEntry> entries) : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end());
  entries_.erase(std::unique(entries_.begin(), entries_.end()), entries_.end());
}

void Mailbox::insert(MailboxEntry entry) {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), entry);
  if (it != entries_.end() && *it == entry) return;
  entries_.insert(it, std::move(entry));
}

void Mailbox::merge(const Mailbox& other) {
  for (const auto& e : other.entries_) insert(e);
}

bool Mailbox::contains(const MailboxEntry& entry) const {
  return std::binary_search(entries_.begin(), entries_.end(), entry);
}

bool Mailbox::contains_name(Name n) const {
  for (const auto& e : entries_)
    if (e.n == n) return true;
  return false;
}

std::optional<MailboxEntry> strong(const Mailbox& m, Name n, ViewLengthRule rule) {
  std::optional<MailboxEntry> best;
  for (const auto& e : m.entries()) {
    if (e.n != n) continue;
    if (!best || evidence_less(best->label, best->view, e.label, e.view, rule)) best = e;
  }
  return best;
}

std::vector<Name> v_fixpoint(const Mailbox& m, Name n, ViewLengthRule rule) {
  if (!m.contains_name(n)) throw std::invalid_argument("v_fixpoint: name has no mailbox entry");
  std::set<Name> closure{n};
  for (;;) {
    std::set<Name> next = closure;
    for (Name s : closure) {
      auto evidence = strong(m, s, rule);
      if (!evidence) continue;
      for (Name t : evidence->view.names())
        if (delta(evidence->view, t) == 1) next.insert(t);
    }
    if (next == closure) break;
    closure = std::move(next);
  }
  return std::vector<Name>(closure.begin(), closure.end());
}

VertexId ReconstructedBase::vertex_of_name(Name n) const {
  for (VertexId v = 0; v < name_of.size(); ++v)
    if (name_of[v] == n) return v;
  throw std::invalid_argument("vertex_of_name: unknown name");
}

ReconstructedBase reconstruct_base(const Mailbox& m, Name n, ViewLengthRule rule) {
  ReconstructedBase base;
  base.name_of = v_fixpoint(m, n, rule);
  for (Name name : base.name_of) {
    auto evidence = strong(m, name, rule);
    base.graph.add_vertex(evidence ? evidence->label : std::string{});
  }
  base.distinguished = base.vertex_of_name(n);
  // Arc n1 -> n2 when n1 occurs exactly once in the strong view of n2; with
  // parallel-arc inputs the multiplicity is deliberately collapsed to one.
  for (VertexId target = 0; target < base.name_of.size(); ++target) {
    auto evidence = strong(m, base.name_of[target], rule);
    if (!evidence) continue;
    for (VertexId source = 0; source < base.name_of.size(); ++source) {
      if (delta(evidence->view, base.name_of[source]) == 1)
        base.graph.add_arc(source, target);
    }
  }
  return base;
}

}  // namespace stabsim
