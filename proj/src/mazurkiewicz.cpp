#include "stabsim/mazurkiewicz.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

namespace stabsim {

LocalView current_view(const LabeledDigraph& g, const Configuration& config, VertexId v) {
  std::vector<Name> names;
  for (VertexId u : g.in_sources(v)) names.push_back(std::get<EnumMem>(config[u].mem).n);
  return LocalView(std::move(names));
}

namespace {

const EnumMem& emem(const NodeState& s) { return std::get<EnumMem>(s.mem); }

MailboxEntry own_entry(const RuleContext& ctx) {
  return MailboxEntry{emem(ctx.self()).n, ctx.self().lambda,
                      current_view(ctx.g, ctx.config, ctx.center)};
}

bool ball_mailboxes_equal(const RuleContext& ctx) {
  const Mailbox& mine = emem(ctx.self()).mailbox;
  for (VertexId w : ctx.g.closed_in_neighbourhood(ctx.center))
    if (!(emem(ctx.state(w)).mailbox == mine)) return false;
  return true;
}

// ---- the three enumeration rules ----

Rule initialization_rule() {
  Rule r;
  r.name = "Initialization";
  r.consumes_request = true;
  r.guard = [](const RuleContext& ctx) { return ctx.requested; };
  r.command = [](const RuleContext& ctx) {
    EnumMem m;
    m.n = 0;
    m.stored_view = current_view(ctx.g, ctx.config, ctx.center);
    m.mailbox = Mailbox{};
    m.counter = -1;
    m.armed = true;
    return RuleEffect{std::move(m), std::nullopt};
  };
  return r;
}

Rule diffusion_rule() {
  Rule r;
  r.name = "Diffusion";
  r.guard = [](const RuleContext& ctx) {
    const EnumMem& me = emem(ctx.self());
    for (VertexId w : ctx.g.closed_in_neighbourhood(ctx.center))
      if (!(emem(ctx.state(w)).mailbox == me.mailbox)) return true;
    if (!me.mailbox.contains(own_entry(ctx))) return true;
    return me.stored_view != current_view(ctx.g, ctx.config, ctx.center);
  };
  r.command = [](const RuleContext& ctx) {
    EnumMem m = emem(ctx.self());
    Mailbox merged;
    for (VertexId w : ctx.g.closed_in_neighbourhood(ctx.center))
      merged.merge(emem(ctx.state(w)).mailbox);
    merged.insert(own_entry(ctx));
    const bool changed = !(merged == m.mailbox);
    m.mailbox = std::move(merged);
    m.stored_view = current_view(ctx.g, ctx.config, ctx.center);
    m.counter = -1;
    if (changed) m.armed = true;
    return RuleEffect{std::move(m), std::nullopt};
  };
  return r;
}

Rule renaming_rule() {
  Rule r;
  r.name = "Renaming";
  r.guard = [](const RuleContext& ctx) {
    if (!ball_mailboxes_equal(ctx)) return false;
    const EnumMem& me = emem(ctx.self());
    if (me.n == 0) return true;
    const LocalView view = current_view(ctx.g, ctx.config, ctx.center);
    for (const MailboxEntry& e : me.mailbox.entries()) {
      if (e.n == me.n && evidence_less(ctx.self().lambda, view, e.label, e.view)) return true;
      if (delta(e.view, me.n) >= 2) return true;
    }
    return false;
  };
  r.command = [](const RuleContext& ctx) {
    EnumMem m = emem(ctx.self());
    // Fresh name: above every name in the mailbox (components and views) and
    // the node's own.
    Name top = m.n;
    for (const MailboxEntry& e : m.mailbox.entries()) {
      top = std::max(top, e.n);
      for (Name x : e.view.names()) top = std::max(top, x);
    }
    m.n = top + 1;
    for (VertexId w : ctx.g.closed_in_neighbourhood(ctx.center)) {
      if (w == ctx.center) continue;
      const EnumMem& other = emem(ctx.state(w));
      m.mailbox.insert(MailboxEntry{other.n, ctx.state(w).lambda, other.stored_view});
    }
    m.mailbox.insert(own_entry(ctx));
    m.counter = -1;
    m.armed = true;
    return RuleEffect{std::move(m), std::nullopt};
  };
  return r;
}

// ---- counter and output rules ----

struct ThresholdOracle {
  PointedFamily fam;
  OutputRadiusPair pair;
  std::size_t find_budget;
  std::mutex mutex;
  std::map<std::string, FoundMember> cache;

  FoundMember lookup(const EnumMem& m) {
    std::string key;
    key.reserve(64);
    encode_mem(Mem{m}, key);
    key.resize(key.rfind(';'));  // drop counter/armed: the base depends on (mailbox, n) only
    key += '@';
    key += std::to_string(m.counter);
    std::scoped_lock lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    FoundMember found;
    if (m.mailbox.contains_name(m.n)) {
      ReconstructedBase base = reconstruct_base(m.mailbox, m.n);
      found = find_family_member(fam, base, m.counter, find_budget, &pair);
    }
    cache.emplace(key, found);
    return found;
  }

  // True while the counter is still below the base-level stop (or no stop can
  // be computed yet).
  bool below_threshold(const EnumMem& m) {
    if (m.counter < 0) return true;
    FoundMember found = lookup(m);
    if (!found.found || !found.stop_radius) return true;
    return m.counter < *found.stop_radius;
  }

  // Engaged when the counter has provably reached the radius of the
  // reconstructed member.
  std::optional<Json> output_value(const EnumMem& m) {
    if (m.counter < 0) return std::nullopt;
    FoundMember found = lookup(m);
    if (!found.found || !found.r_value || m.counter < *found.r_value) return std::nullopt;
    return found.f_value;
  }
};

// On directed in-balls the literal two-sided counter guards can wedge: a ring
// of counters like (1, -1, 0) satisfies every in-constraint but keeps one
// vertex two below an in-neighbour it cannot influence, so its climb stays
// blocked while its reset is a no-op. The counter is therefore maintained as
// a recomputation, a := 1 + min over the closed in-ball, firing only when the
// value actually changes; the staircase certification (the in-ball held
// counters >= a-1 with equal mailboxes when a was set) is unchanged.

std::int64_t recomputed_counter(const RuleContext& ctx) {
  std::int64_t low = emem(ctx.self()).counter;
  for (VertexId w : ctx.g.closed_in_neighbourhood(ctx.center))
    low = std::min(low, emem(ctx.state(w)).counter);
  return low + 1;
}

Rule fix_gssp_rule() {
  Rule r;
  r.name = "FixGSSP";
  r.guard = [](const RuleContext& ctx) {
    const EnumMem& me = emem(ctx.self());
    if (me.counter == -1) return false;  // the reset would change nothing
    for (VertexId w : ctx.g.closed_in_neighbourhood(ctx.center)) {
      const EnumMem& other = emem(ctx.state(w));
      if (std::abs(other.counter - me.counter) >= 2) return true;
      if (!(other.mailbox == me.mailbox)) return true;
    }
    return false;
  };
  r.command = [](const RuleContext& ctx) {
    EnumMem m = emem(ctx.self());
    m.counter = -1;
    return RuleEffect{std::move(m), std::nullopt};
  };
  return r;
}

Rule gssp_rule(std::shared_ptr<ThresholdOracle> oracle) {
  Rule r;
  r.name = "GSSP";
  r.guard = [oracle](const RuleContext& ctx) {
    const EnumMem& me = emem(ctx.self());
    for (VertexId w : ctx.g.closed_in_neighbourhood(ctx.center))
      if (!(emem(ctx.state(w)).mailbox == me.mailbox)) return false;
    if (me.counter == recomputed_counter(ctx)) return false;
    return oracle->below_threshold(me);
  };
  r.command = [](const RuleContext& ctx) {
    EnumMem m = emem(ctx.self());
    m.counter = recomputed_counter(ctx);
    return RuleEffect{std::move(m), std::nullopt};
  };
  return r;
}

Rule output_rule(std::shared_ptr<ThresholdOracle> oracle) {
  Rule r;
  r.name = "Output";
  r.guard = [oracle](const RuleContext& ctx) {
    const EnumMem& me = emem(ctx.self());
    if (!me.armed) return false;
    if (!ball_mailboxes_equal(ctx)) return false;
    return oracle->output_value(me).has_value();
  };
  r.command = [oracle](const RuleContext& ctx) {
    EnumMem m = emem(ctx.self());
    std::optional<Json> value = oracle->output_value(m);
    m.armed = false;
    return RuleEffect{std::move(m), std::move(value)};
  };
  return r;
}

// ---- corruption ----

LocalView sample_view(std::mt19937_64& rng, std::size_t max_len, Name name_bound) {
  std::vector<Name> names;
  const std::size_t len = rng() % (max_len + 1);
  for (std::size_t i = 0; i < len; ++i) names.push_back(static_cast<Name>(rng() % (name_bound + 1)));
  return LocalView(std::move(names));
}

Configuration converged_reference(const LabeledDigraph& g, EnumCorruptionProfile profile);

std::function<VertexDomain(const LabeledDigraph&, VertexId)> make_domain(
    EnumCorruptionProfile profile) {
  return [profile](const LabeledDigraph& g, VertexId v) {
    VertexDomain d;
    d.out_values = profile.out_values;
    const std::size_t view_len = g.in_degree(v) + 1;
    auto labels = std::make_shared<std::vector<std::string>>();
    for (const auto& l : g.alphabet()) labels->push_back(l);

    if (profile.tiny_exhaustive) {
      auto states = std::make_shared<std::vector<EnumMem>>();
      const EnumMem settled = std::get<EnumMem>(converged_reference(g, profile)[v].mem);
      EnumMem clean;
      states->push_back(clean);                              // fresh zero state
      EnumMem done = settled;                                // plausibly finished
      done.counter = profile.counter_max;
      done.armed = false;
      states->push_back(done);
      EnumMem rearmed = done;                                // finished but armed
      rearmed.armed = true;
      states->push_back(rearmed);
      EnumMem ghost;                                         // unreachable junk name
      ghost.n = profile.name_bound - 1;
      ghost.stored_view = LocalView({profile.name_bound - 1});
      ghost.mailbox.insert(
          MailboxEntry{profile.name_bound - 1, g.label(v), LocalView({profile.name_bound - 1})});
      ghost.counter = 0;
      states->push_back(ghost);
      EnumMem crossed;                                       // foreign small names
      crossed.n = 2;
      crossed.stored_view = LocalView({1});
      crossed.mailbox.insert(MailboxEntry{2, g.label(v), LocalView({1})});
      crossed.mailbox.insert(MailboxEntry{1, (*labels)[0], LocalView({2})});
      crossed.counter = 1;
      states->push_back(crossed);
      EnumMem reset = done;                                  // finished, counter lost
      reset.counter = -1;
      reset.armed = true;
      states->push_back(reset);
      EnumMem noself;                                        // mailbox missing the own entry
      noself.n = 2;
      noself.stored_view = LocalView({1});
      noself.counter = 2;
      states->push_back(noself);
      EnumMem skew = done;                                   // counter far from neighbours
      skew.counter = 0;
      skew.armed = false;
      states->push_back(skew);
      d.mem_count = states->size();
      d.mem_at = [states](std::uint64_t i) { return Mem{(*states)[i % states->size()]}; };
      d.mem_sample = [states](std::mt19937_64& rng) {
        return Mem{(*states)[rng() % states->size()]};
      };
      return d;
    }

    d.mem_count = 0;  // sampled only
    d.mem_at = nullptr;
    d.mem_sample = [profile, view_len, labels](std::mt19937_64& rng) {
      EnumMem m;
      m.n = static_cast<Name>(rng() % (profile.name_bound + 1));
      m.stored_view = sample_view(rng, view_len, profile.name_bound);
      const std::size_t entries = rng() % (profile.mailbox_max + 1);
      for (std::size_t i = 0; i < entries; ++i) {
        MailboxEntry e;
        e.n = static_cast<Name>(rng() % (profile.name_bound + 1));
        e.label = (*labels)[rng() % labels->size()];
        e.view = sample_view(rng, view_len, profile.name_bound);
        m.mailbox.insert(std::move(e));
      }
      const std::uint64_t span =
          static_cast<std::uint64_t>(profile.counter_max - profile.counter_min + 1);
      m.counter = profile.counter_min + static_cast<std::int64_t>(rng() % span);
      m.armed = rng() & 1;
      return Mem{std::move(m)};
    };
    return d;
  };
}

Configuration enum_clean_init(const LabeledDigraph& g) {
  Configuration c;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    c.push_back(NodeState{g.label(v), EnumMem{}, nullptr});
  return c;
}

// A converged enumeration state for the curated corruption list: run the core
// synchronously from clean with everyone requested. Cached per graph.
Configuration converged_reference(const LabeledDigraph& g, EnumCorruptionProfile profile) {
  static std::mutex mutex;
  static std::map<std::string, Configuration> cache;
  std::scoped_lock lock(mutex);
  auto it = cache.find(encode(g));
  if (it != cache.end()) return it->second;

  Algorithm core;
  core.name = "enumeration";
  core.rules = {initialization_rule(), diffusion_rule(), renaming_rule()};
  core.clean_init = enum_clean_init;
  core.domain = nullptr;
  std::vector<VertexId> everyone;
  for (VertexId v = 0; v < g.vertex_count(); ++v) everyone.push_back(v);
  RunOptions options;
  options.step_budget = 200 * g.vertex_count() * g.vertex_count();
  ExecutionTrace trace = run(g, core, DaemonPolicy::synchronous(), everyone, options);
  (void)profile;
  cache.emplace(encode(g), trace.terminal());
  return trace.terminal();
}

}  // namespace

Algorithm enumeration_algorithm(EnumCorruptionProfile profile) {
  Algorithm algo;
  algo.name = "enumeration";
  algo.params = Json{{"name_bound", profile.name_bound}};
  algo.rules = {initialization_rule(), diffusion_rule(), renaming_rule()};
  algo.clean_init = enum_clean_init;
  algo.domain = make_domain(profile);
  return algo;
}

FoundMember find_family_member(const PointedFamily& fam, const ReconstructedBase& base,
                               std::int64_t a, std::size_t index_budget,
                               const OutputRadiusPair* pair) {
  FoundMember result;
  if (a < 0) return result;
  const std::size_t limit = std::min<std::size_t>(index_budget, fam.index_count);
  for (std::size_t i = 0; i < limit; ++i) {
    PointedDigraph candidate = fam.enumerator(i);
    auto verdict =
        check_quasi_fibration(candidate.graph, base.graph, candidate.vertex, static_cast<int>(a),
                              candidate.graph.vertex_count(), base.distinguished);
    if (verdict.kind != QuasiFibrationKind::Yes) continue;
    result.found = true;
    result.family_index = i;
    result.center = candidate.vertex;
    if (pair) {
      require_pair_condition(*pair, candidate.graph, candidate.vertex);
      result.f_value = pair->f(candidate.graph, candidate.vertex);
      result.r_value = pair->r(candidate.graph, candidate.vertex);
      result.stop_radius = 0;
      for (VertexId w = 0; w < candidate.graph.vertex_count(); ++w) {
        std::optional<int> rw = pair->r(candidate.graph, w);
        if (!rw) {
          result.stop_radius = std::nullopt;  // infinite: the counter never stops
          break;
        }
        result.stop_radius = std::max(*result.stop_radius, *rw);
      }
    }
    return result;
  }
  return result;
}

Algorithm universal_algorithm(const OutputRadiusPair& pair, const PointedFamily& fam,
                              EnumCorruptionProfile profile, std::size_t find_budget) {
  auto oracle = std::make_shared<ThresholdOracle>();
  oracle->fam = fam;
  oracle->pair = pair;
  oracle->find_budget = find_budget;

  Algorithm algo;
  algo.name = "universal";
  algo.params = Json{{"pair", pair.name}, {"family", fam.name}};
  algo.rules = {initialization_rule(), diffusion_rule(), renaming_rule(),
                fix_gssp_rule(),       gssp_rule(oracle), output_rule(oracle)};
  algo.clean_init = enum_clean_init;
  algo.domain = make_domain(profile);
  return algo;
}

FinalConditionsReport check_final_conditions(const LabeledDigraph& g, const Configuration& config) {
  FinalConditionsReport report;
  if (config.empty()) return report;

  report.mailboxes_equal = true;
  const Mailbox& first = std::get<EnumMem>(config[0].mem).mailbox;
  for (const NodeState& s : config)
    if (!(std::get<EnumMem>(s.mem).mailbox == first)) report.mailboxes_equal = false;

  report.strong_matches_view = true;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const EnumMem& m = std::get<EnumMem>(config[v].mem);
    const LocalView now = current_view(g, config, v);
    auto evidence = strong(m.mailbox, m.n);
    if (!evidence || evidence->view != now || m.stored_view != now ||
        evidence->label != config[v].lambda)
      report.strong_matches_view = false;
  }

  report.names_iff_views = true;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    for (VertexId u = 0; u < g.vertex_count(); ++u) {
      const EnumMem& mv = std::get<EnumMem>(config[v].mem);
      const EnumMem& mu = std::get<EnumMem>(config[u].mem);
      const bool same_name = mv.n == mu.n;
      const bool same_class = config[v].lambda == config[u].lambda &&
                              current_view(g, config, v) == current_view(g, config, u);
      if (same_name != same_class) report.names_iff_views = false;
    }
  }

  report.fixpoint_is_everyone = true;
  std::vector<Name> all_names;
  for (const NodeState& s : config) all_names.push_back(std::get<EnumMem>(s.mem).n);
  std::sort(all_names.begin(), all_names.end());
  all_names.erase(std::unique(all_names.begin(), all_names.end()), all_names.end());
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const EnumMem& m = std::get<EnumMem>(config[v].mem);
    if (!m.mailbox.contains_name(m.n)) {
      report.fixpoint_is_everyone = false;
      continue;
    }
    if (v_fixpoint(m.mailbox, m.n) != all_names) report.fixpoint_is_everyone = false;
  }
  return report;
}

Name highest_name(const Configuration& config) {
  Name top = 0;
  for (const NodeState& s : config) {
    if (!std::holds_alternative<EnumMem>(s.mem)) continue;
    const EnumMem& m = std::get<EnumMem>(s.mem);
    top = std::max(top, m.n);
    for (Name x : m.stored_view.names()) top = std::max(top, x);
    for (const MailboxEntry& e : m.mailbox.entries()) {
      top = std::max(top, e.n);
      for (Name x : e.view.names()) top = std::max(top, x);
    }
  }
  return top;
}

}  // namespace stabsim
