// Command-line front end: simulate runs and replay traces, or dispatch the
// verification checkers. Exit codes: 0 pass / no violation, 1 violation or
// failed check, 2 budget-limited verdict, 3 usage error, 4 I/O error.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "stabsim/graph_io.hpp"
#include "stabsim/lcr.hpp"
#include "stabsim/minimal_base.hpp"
#include "stabsim/registry.hpp"
#include "stabsim/trace_io.hpp"
#include "stabsim/verify.hpp"

using namespace stabsim;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitBudget = 2;
constexpr int kExitUsage = 3;
constexpr int kExitIo = 4;

struct Settings {
  std::string manifest_path;
  std::string graph_path;
  std::vector<std::int64_t> ring_ids;
  std::string algorithm = "lcr";
  Json params = Json::object();
  std::string daemon = "asynchronous";
  std::uint64_t seed = 1;
  std::vector<VertexId> requests;
  std::string schedule_path;
  std::string corrupt = "seeded";
  std::uint64_t corrupt_seed = 1;
  std::size_t corrupt_count = 100;
  bool corrupt_out = true;
  bool corrupt_mem_only = false;
  std::size_t budget = 1000;
  std::size_t silence = 50;
  std::size_t bound = 5;
  int radius_cap = 6;
  std::size_t max_states = 400000;
  std::string task = "election";
  std::string pair = "size-ab-rings";
  std::string universe = "ab-rings-3-5";
  std::string out_path;
  std::string mode = "snap";
  std::string base_path;
  std::string morphism_path;
};

// Manifest values fill every field the command line did not set explicitly.
void apply_manifest(Settings& s, const CLI::App* cmd) {
  if (s.manifest_path.empty()) return;
  std::ifstream f(s.manifest_path);
  if (!f) throw std::runtime_error("cannot open manifest: " + s.manifest_path);
  Json m = Json::parse(f);
  if (m.value("schema", "") != "stabsim-manifest" || m.value("version", 0) != 1)
    throw std::invalid_argument("manifest: expected schema stabsim-manifest v1");
  auto flag_given = [cmd](const std::string& name) {
    const CLI::Option* opt = cmd->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };
  if (m.contains("graph") && !flag_given("--graph")) s.graph_path = m["graph"].get<std::string>();
  if (m.contains("ring_ids") && !flag_given("--ring-ids"))
    s.ring_ids = m["ring_ids"].get<std::vector<std::int64_t>>();
  if (m.contains("algorithm") && !flag_given("--algorithm")) {
    s.algorithm = m["algorithm"].value("name", s.algorithm);
    if (m["algorithm"].contains("params")) s.params = m["algorithm"]["params"];
  }
  if (m.contains("daemon")) {
    if (!flag_given("--daemon")) s.daemon = m["daemon"].value("kind", s.daemon);
    if (!flag_given("--seed")) s.seed = m["daemon"].value("seed", s.seed);
  }
  if (m.contains("requests") && !flag_given("--requests"))
    s.requests = m["requests"].get<std::vector<VertexId>>();
  if (m.contains("schedule") && !flag_given("--schedule"))
    s.schedule_path = m["schedule"].get<std::string>();
  if (m.contains("corrupt")) {
    if (!flag_given("--corrupt")) s.corrupt = m["corrupt"].value("strategy", s.corrupt);
    if (!flag_given("--corrupt-seed")) s.corrupt_seed = m["corrupt"].value("seed", s.corrupt_seed);
    if (!flag_given("--corrupt-count"))
      s.corrupt_count = m["corrupt"].value("count", s.corrupt_count);
    s.corrupt_out = m["corrupt"].value("include_out", s.corrupt_out);
  }
  if (!flag_given("--budget")) s.budget = m.value("budget", s.budget);
  if (!flag_given("--silence")) s.silence = m.value("silence_window", s.silence);
  if (!flag_given("--bound")) s.bound = m.value("bound", s.bound);
  if (!flag_given("--radius-cap")) s.radius_cap = m.value("radius_cap", s.radius_cap);
  if (!flag_given("--max-states")) s.max_states = m.value("max_states", s.max_states);
  if (!flag_given("--task")) s.task = m.value("task", s.task);
  if (!flag_given("--pair")) s.pair = m.value("pair", s.pair);
  if (!flag_given("--universe")) s.universe = m.value("universe", s.universe);
  if (!flag_given("--out")) s.out_path = m.value("out", s.out_path);
  if (!flag_given("--mode")) s.mode = m.value("mode", s.mode);
}

LabeledDigraph load_input_graph(const Settings& s) {
  if (!s.ring_ids.empty()) return make_ring_instance(s.ring_ids).graph();
  if (s.graph_path.empty()) throw std::invalid_argument("no input graph (--graph or --ring-ids)");
  return load_graph_file(s.graph_path);
}

DaemonPolicy daemon_of(const Settings& s) {
  DaemonPolicy d;
  d.kind = daemon_kind_from_name(s.daemon);
  d.seed = s.seed;
  return d;
}

Json witness_to_json(const VerifyWitness& w) {
  Json initial = Json::array();
  for (const NodeState& st : w.initial) initial.push_back(node_state_to_json(st));
  Json schedule = Json::array();
  for (const auto& a : w.schedule) schedule.push_back(Json(a));
  return Json{{"schema", "stabsim-witness"}, {"version", 1},
              {"clause", w.clause},          {"detail", w.detail},
              {"initial", std::move(initial)}, {"requests", w.requests},
              {"schedule", std::move(schedule)}};
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write: " + path);
  f << content;
}

int cmd_simulate(const Settings& s) {
  if (!s.schedule_path.empty()) {
    ExecutionTrace source = load_trace_file(s.schedule_path);
    Algorithm algorithm = build_algorithm(source.algorithm_name, source.algorithm_params, source.graph);
    ExecutionTrace replayed = replay_trace(source, algorithm);
    std::string text = trace_to_string(replayed);
    if (!s.out_path.empty()) write_file(s.out_path, text);
    const bool identical = text == trace_to_string(source);
    std::cout << "replayed " << replayed.steps() << " steps, verdict "
              << verdict_kind_name(replayed.verdict.kind) << " at step " << replayed.verdict.step
              << (identical ? " (byte-identical to source)" : " (DIFFERS from source)") << "\n";
    return identical ? kExitPass : kExitViolation;
  }

  LabeledDigraph g = load_input_graph(s);
  Algorithm algorithm = build_algorithm(s.algorithm, s.params, g);
  RunOptions options;
  options.step_budget = s.budget;
  options.silence_window = s.silence;
  ExecutionTrace trace = run(g, algorithm, daemon_of(s), s.requests, options);
  if (!s.out_path.empty()) write_file(s.out_path, trace_to_string(trace));
  std::cout << "algorithm " << algorithm.name << " on " << g.vertex_count() << " vertices, daemon "
            << s.daemon << ", seed " << s.seed << "\n";
  std::cout << "verdict: " << verdict_kind_name(trace.verdict.kind) << " at step "
            << trace.verdict.step << " (" << trace.steps() << " steps recorded)\n";
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (!trace.terminal()[v].out.is_null())
      std::cout << "  out(" << v << ") = " << trace.terminal()[v].out.dump() << "\n";
  return trace.verdict.kind == VerdictKind::BudgetExhausted ? kExitBudget : kExitPass;
}

int cmd_verify(const Settings& s) {
  if (s.mode == "snap" || s.mode == "self") {
    LabeledDigraph g = load_input_graph(s);
    Algorithm algorithm = build_algorithm(s.algorithm, s.params, g);
    TaskSpec task = build_task(s.task);
    VerifyOptions options;
    options.daemon = daemon_of(s);
    options.corruption_seed = s.corrupt_seed;
    options.corruption_count = s.corrupt_count;
    options.step_budget = s.budget;
    options.silence_window = s.silence;
    options.exhaustive = s.corrupt == "exhaustive";
    options.max_states = s.max_states;
    options.corrupt_out = s.corrupt_out && !s.corrupt_mem_only;
    if (!s.requests.empty()) options.request_sets = {s.requests};
    VerifyReport report = s.mode == "snap" ? verify_snap_stabilizing(g, algorithm, task, options)
                                           : verify_self_stabilizing(g, algorithm, task, options);
    std::cout << s.mode << " verification of " << algorithm.name << " against task " << task.name
              << ": " << report.summary() << "\n";
    if (report.witness) {
      std::cout << "  witness: " << report.witness->clause << " -- " << report.witness->detail
                << "\n";
      if (!s.out_path.empty())
        write_file(s.out_path, witness_to_json(*report.witness).dump(2) + "\n");
    }
    if (report.violated) return kExitViolation;
    return report.inconclusive > 0 ? kExitBudget : kExitPass;
  }
  if (s.mode == "rlift") {
    OutputRadiusPair pair = build_pair(s.pair);
    PointedFamily universe = build_family(s.universe);
    RLiftingReport report = check_r_lifting_closed(pair, universe, s.bound, s.radius_cap);
    std::cout << "r-lifting closure of pair " << pair.name << " over " << universe.name
              << " (bound " << s.bound << ", radius cap " << s.radius_cap
              << "): " << (report.pass ? "PASS" : "FAIL") << " (" << report.checked_pairs
              << " witnesses checked, " << report.skipped_unknown << " unknown)\n";
    if (report.witness) {
      const RLiftingWitness& w = *report.witness;
      std::cout << "  witness: |K|=" << w.k.vertex_count() << " |H|=" << w.h.vertex_count()
                << " v=" << w.v << " k=" << w.radius << " gamma(v)=" << w.gamma_v
                << " f: " << w.f_k.dump() << " vs " << w.f_h.dump() << "\n";
    }
    return report.pass ? kExitPass : kExitViolation;
  }
  if (s.mode == "fibration") {
    LabeledDigraph total = load_input_graph(s);
    if (s.base_path.empty() || s.morphism_path.empty())
      throw std::invalid_argument("fibration mode needs --base and --morphism");
    LabeledDigraph base = load_graph_file(s.base_path);
    std::ifstream mf(s.morphism_path);
    if (!mf) throw std::runtime_error("cannot open morphism: " + s.morphism_path);
    Json mj = Json::parse(mf);
    DigraphMorphism phi{mj.at("vertex_map").get<std::vector<VertexId>>(),
                        mj.at("arc_map").get<std::vector<ArcId>>()};
    std::string why;
    FibrationVerdict verdict = check_fibration(total, base, phi, &why);
    switch (verdict) {
      case FibrationVerdict::Fibration:
        std::cout << "fibration: yes\n";
        return kExitPass;
      case FibrationVerdict::NotFibration:
        std::cout << "fibration: no (" << why << ")\n";
        return kExitViolation;
      case FibrationVerdict::InvalidMorphism:
        std::cout << "invalid morphism: " << why << "\n";
        return kExitUsage;
    }
  }
  if (s.mode == "base") {
    LabeledDigraph g = load_input_graph(s);
    MinimalBase mb = minimal_base(g);
    std::cout << "minimal base: " << mb.base.vertex_count() << " vertices, "
              << mb.base.arc_count() << " arcs\n";
    if (!s.out_path.empty()) write_file(s.out_path, serialize_graph(mb.base));
    return kExitPass;
  }
  throw std::invalid_argument("unknown mode: " + s.mode);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"simulator and verifier for stabilizing algorithms on anonymous directed networks"};
  app.require_subcommand(1);
  Settings s;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--manifest", s.manifest_path, "run manifest (JSON)");
    cmd->add_option("--graph", s.graph_path, "input graph file");
    cmd->add_option("--ring-ids", s.ring_ids, "build a unidirectional ring with these identities")
        ->delimiter(',');
    cmd->add_option("--algorithm", s.algorithm, "registered algorithm name");
    cmd->add_option("--daemon", s.daemon, "central|synchronous|asynchronous");
    cmd->add_option("--seed", s.seed, "daemon seed");
    cmd->add_option("--requests", s.requests, "requested vertices")->delimiter(',');
    cmd->add_option("--budget", s.budget, "step budget");
    cmd->add_option("--silence", s.silence, "out-silence window");
    cmd->add_option("--out", s.out_path, "output file");
  };

  CLI::App* simulate = app.add_subcommand("simulate", "run an algorithm and emit a trace");
  add_common(simulate);
  simulate->add_option("--schedule", s.schedule_path, "replay the schedule of this trace file");

  CLI::App* verify = app.add_subcommand("verify", "dispatch a verification checker");
  add_common(verify);
  verify->add_option("--mode", s.mode, "snap|self|rlift|fibration|base");
  verify->add_option("--task", s.task, "registered task name");
  verify->add_option("--pair", s.pair, "registered output/radius pair");
  verify->add_option("--universe", s.universe, "registered family for rlift");
  verify->add_option("--corrupt", s.corrupt, "seeded|exhaustive");
  verify->add_option("--corrupt-seed", s.corrupt_seed, "corruption seed");
  verify->add_option("--corrupt-count", s.corrupt_count, "number of corrupted starts");
  verify->add_flag("--mem-only", s.corrupt_mem_only, "do not corrupt out registers");
  verify->add_option("--bound", s.bound, "vertex bound for checkers");
  verify->add_option("--radius-cap", s.radius_cap, "radius cap for rlift");
  verify->add_option("--max-states", s.max_states, "state cap for exhaustive exploration");
  verify->add_option("--base", s.base_path, "base graph file (fibration mode)");
  verify->add_option("--morphism", s.morphism_path, "morphism JSON file (fibration mode)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    apply_manifest(s, simulate->parsed() ? simulate : verify);
    if (simulate->parsed()) return cmd_simulate(s);
    return cmd_verify(s);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
}
