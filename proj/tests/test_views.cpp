#include "doctest.h"
#include "stabsim/isomorphism.hpp"
#include "stabsim/views.hpp"

using namespace stabsim;

namespace {

MailboxEntry entry(Name n, std::string label, std::vector<Name> view) {
  return MailboxEntry{n, std::move(label), LocalView(std::move(view))};
}

}  // namespace

TEST_SUITE_BEGIN("views");

TEST_CASE("local views sort decreasingly") {
  CHECK(LocalView({2, 5, 2}).names() == std::vector<Name>{5, 2, 2});
  CHECK(LocalView(std::vector<Name>{}).names().empty());
  CHECK(LocalView({1, 1}).names() == std::vector<Name>{1, 1});
}

TEST_CASE("view order") {
  // Lexicographic on the decreasing tuples: decided by the first components.
  CHECK(view_less(LocalView({2, 1}), LocalView({3, 1})));
  CHECK(!view_less(LocalView({3, 1}), LocalView({2, 1})));
  CHECK(view_less(LocalView({3, 1}), LocalView({3, 2})));
  LocalView n({4, 2});
  CHECK(!view_less(n, n));
  SUBCASE("prefix convention") {
    CHECK(view_less(LocalView({3}), LocalView({3, 1})));
    CHECK(!view_less(LocalView({3, 1}), LocalView({3})));
    CHECK(view_less(LocalView({3, 1}), LocalView({3}), ViewLengthRule::PrefixLarger));
  }
  SUBCASE("total order on a small sample") {
    std::vector<LocalView> sample = {LocalView(std::vector<Name>{}),     LocalView({1}),    LocalView({2}),
                                     LocalView({2, 1}), LocalView({2, 2}), LocalView({3})};
    for (std::size_t i = 0; i < sample.size(); ++i)
      for (std::size_t j = 0; j < sample.size(); ++j) {
        const bool lt = view_less(sample[i], sample[j]);
        const bool gt = view_less(sample[j], sample[i]);
        if (i == j) CHECK((!lt && !gt));
        else CHECK(lt != gt);
      }
  }
}

TEST_CASE("delta and substitute") {
  LocalView v({3, 2, 2});
  CHECK(delta(v, 2) == 2);
  CHECK(delta(v, 7) == 0);
  CHECK(delta(LocalView(std::vector<Name>{}), 1) == 0);
  CHECK(substitute(v, 2, 5).names() == std::vector<Name>{5, 5, 3});
  CHECK(substitute(v, 2, 2) == v);
  CHECK(substitute(LocalView({1}), 2, 9).names() == std::vector<Name>{1});
}

TEST_CASE("mailbox strong") {
  Mailbox m({entry(1, "a", {2}), entry(1, "a", {3})});
  auto s = strong(m, 1);
  REQUIRE(s.has_value());
  CHECK(s->view.names() == std::vector<Name>{3});
  CHECK(!strong(m, 5).has_value());
  Mailbox singleton({entry(2, "a", {1, 1})});
  CHECK(strong(singleton, 2)->view.names() == std::vector<Name>{1, 1});
  // Label dominates the evidence order.
  Mailbox labeled({entry(4, "a", {9}), entry(4, "b", {1})});
  CHECK(strong(labeled, 4)->label == "b");
}

TEST_CASE("name fixpoint") {
  SUBCASE("two-step closure") {
    Mailbox m({entry(1, "x", {2}), entry(2, "x", {1})});
    CHECK(v_fixpoint(m, 1) == std::vector<Name>{1, 2});
  }
  SUBCASE("self-loop base") {
    Mailbox m({entry(1, "x", {1})});
    CHECK(v_fixpoint(m, 1) == std::vector<Name>{1});
  }
  SUBCASE("ghost entries stay out") {
    Mailbox m({entry(1, "x", {2}), entry(2, "x", {1}), entry(9, "x", {9})});
    auto fix = v_fixpoint(m, 1);
    CHECK(fix == std::vector<Name>{1, 2});
  }
  SUBCASE("doubled names do not propagate (delta must be exactly one)") {
    Mailbox m({entry(1, "x", {2, 2})});
    CHECK(v_fixpoint(m, 1) == std::vector<Name>{1});
  }
  CHECK_THROWS(v_fixpoint(Mailbox{}, 1));
}

TEST_CASE("base reconstruction") {
  SUBCASE("labeled 3-cycle comes back with its orientation") {
    // Names 1 -> 2 -> 3 -> 1 with labels a, b, c: the view of a name is its
    // single in-neighbour.
    Mailbox m({entry(1, "a", {3}), entry(2, "b", {1}), entry(3, "c", {2})});
    ReconstructedBase base = reconstruct_base(m, 1);
    CHECK(base.graph.vertex_count() == 3);
    CHECK(base.graph.arc_count() == 3);
    CHECK(base.name_of[base.distinguished] == 1);
    auto iso = find_isomorphism(base.graph, directed_ring(3, {"a", "b", "c"}));
    REQUIRE(iso.has_value());
    // Orientation check: the reversed ring is not isomorphic.
    LabeledDigraph reversed;
    for (auto l : {"a", "c", "b"}) reversed.add_vertex(l);
    reversed.add_arc(0, 1);
    reversed.add_arc(1, 2);
    reversed.add_arc(2, 0);
    CHECK(!find_isomorphism(base.graph, reversed).has_value());
  }
  SUBCASE("ghosts excluded") {
    Mailbox m({entry(1, "x", {2}), entry(2, "x", {1}), entry(9, "x", {9})});
    ReconstructedBase base = reconstruct_base(m, 2);
    CHECK(base.graph.vertex_count() == 2);
    CHECK(base.name_of == std::vector<Name>{1, 2});
  }
}

TEST_SUITE_END();
