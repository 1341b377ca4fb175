#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stabsim/digraph.hpp"

namespace stabsim {

using Name = std::int64_t;

// Tuple of names sorted in non-increasing order.
class LocalView {
 public:
  LocalView() = default;
  explicit LocalView(std::vector<Name> names);  // sorts

  const std::vector<Name>& names() const { return names_; }
  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }

  friend bool operator==(const LocalView&, const LocalView&) = default;
  // Container ordering only (lexicographic on the stored tuples); the domain
  // order is view_less below.
  friend auto operator<=>(const LocalView&, const LocalView&) = default;

 private:
  std::vector<Name> names_;
};

enum class ViewLengthRule {
  // A proper prefix is smaller than its extensions: (3) < (3,1).
  PrefixSmaller,
  // The opposite convention, kept around to confirm results do not hinge on
  // the choice.
  PrefixLarger,
};

// The total strength order on views: lexicographic on the non-increasing
// tuples, ties between a tuple and its extension broken by `rule`.
bool view_less(const LocalView& a, const LocalView& b,
               ViewLengthRule rule = ViewLengthRule::PrefixSmaller);

// Occurrences of n in the view.
int delta(const LocalView& view, Name n);

// Copy of the view with every occurrence of n replaced by replacement.
LocalView substitute(const LocalView& view, Name n, Name replacement);

// What a vertex knows about one name: the vertex label seen carrying it and
// the local view recorded for it. The label rides along so that bases
// reconstructed from mailboxes keep the input labelling (the enumeration must
// separate equally-shaped vertices with different labels).
struct MailboxEntry {
  Name n = 0;
  std::string label;
  LocalView view;

  friend bool operator==(const MailboxEntry&, const MailboxEntry&) = default;
  friend auto operator<=>(const MailboxEntry&, const MailboxEntry&) = default;
};

// Strength order on (label, view) evidence for a fixed name: labels compare
// as strings, ties broken by view_less.
bool evidence_less(const std::string& la, const LocalView& va, const std::string& lb,
                   const LocalView& vb, ViewLengthRule rule = ViewLengthRule::PrefixSmaller);

// Finite set of mailbox entries, kept sorted and deduplicated.
class Mailbox {
 public:
  Mailbox() = default;
  explicit Mailbox(std::vector<MailboxEntry> entries);  // sorts, dedupes

  void insert(MailboxEntry entry);
  void merge(const Mailbox& other);
  bool contains(const MailboxEntry& entry) const;
  bool contains_name(Name n) const;
  const std::vector<MailboxEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  friend bool operator==(const Mailbox&, const Mailbox&) = default;
  friend auto operator<=>(const Mailbox&, const Mailbox&) = default;

 private:
  std::vector<MailboxEntry> entries_;
};

// The dominating (label, view) evidence recorded for n, or nothing if n has
// no entry.
std::optional<MailboxEntry> strong(const Mailbox& m, Name n,
                                   ViewLengthRule rule = ViewLengthRule::PrefixSmaller);

// Least fixpoint of V_0 = {n}, V_{i+1} = V_i + { t | exists s in V_i with
// delta(strong(s).view, t) == 1 }. Ghost entries not reachable from n stay
// out. Result sorted ascending.
std::vector<Name> v_fixpoint(const Mailbox& m, Name n,
                             ViewLengthRule rule = ViewLengthRule::PrefixSmaller);

// The digraph induced by the mailbox from name n: one vertex per fixpoint
// name (ascending name order), labeled by its strong entry's label (empty if
// the name has no entry), one arc n1 -> n2 whenever n1 occurs exactly once in
// the strong view of n2.
struct ReconstructedBase {
  LabeledDigraph graph;
  std::vector<Name> name_of;   // graph vertex -> name
  VertexId distinguished = 0;  // the vertex carrying the queried name
  VertexId vertex_of_name(Name n) const;
};
ReconstructedBase reconstruct_base(const Mailbox& m, Name n,
                                   ViewLengthRule rule = ViewLengthRule::PrefixSmaller);

}  // namespace stabsim
