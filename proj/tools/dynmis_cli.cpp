// Command-line driver: generate update streams, replay them on the dynamic
// MIS engines or the distributed simulator, verify against the oracle, and
// emit deterministic metric reports.

#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "dynmis/congest/simulator.hpp"
#include "dynmis/engine.hpp"
#include "dynmis/oracle.hpp"
#include "dynmis/stream.hpp"
#include "dynmis/workload.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitMalformed = 2;
constexpr int kExitAudit = 3;

using Clock = std::chrono::steady_clock;

void emit_stream(const dynmis::Stream& s, const std::string& out_path) {
  if (out_path.empty() || out_path == "-")
    dynmis::write_stream(std::cout, s);
  else
    dynmis::save_stream(out_path, s);
}

struct RunOptions {
  std::string path;
  std::string algo = "sublinear";
  std::uint64_t delta_bound = 0;
  bool verify = false;
  bool per_update = false;
};

int cmd_run(const RunOptions& opt) {
  dynmis::Stream stream = dynmis::load_stream(opt.path);
  dynmis::AlgoKind kind = opt.algo == "delta"       ? dynmis::AlgoKind::Delta
                          : opt.algo == "sublinear" ? dynmis::AlgoKind::Sublinear
                                                    : dynmis::AlgoKind::Auto;
  // Concrete engines are kept around for their epoch tables.
  std::unique_ptr<dynmis::SublinearEngine> sub;
  std::unique_ptr<dynmis::DeltaEngine> delta;
  std::unique_ptr<dynmis::AutoEngine> auto_eng;
  std::unique_ptr<dynmis::MisEngine> facade;
  if (kind == dynmis::AlgoKind::Sublinear)
    sub = std::make_unique<dynmis::SublinearEngine>(stream.n);
  else if (kind == dynmis::AlgoKind::Delta)
    delta = std::make_unique<dynmis::DeltaEngine>(
        stream.n, opt.delta_bound ? opt.delta_bound
                                  : (stream.n ? stream.n - 1 : 0));
  else
    auto_eng = std::make_unique<dynmis::AutoEngine>(stream.n, opt.delta_bound);
  if (kind != dynmis::AlgoKind::Auto && kind != dynmis::AlgoKind::Delta &&
      !sub)
    return kExitUsage;

  auto apply = [&](const dynmis::UpdateEvent& ev) {
    if (sub) return sub->apply(ev);
    if (delta) return delta->apply(ev);
    return auto_eng->apply(ev);
  };
  auto audit = [&]() -> std::string {
    if (delta) return delta->audit();
    if (auto_eng) return auto_eng->audit();
    auto flags = sub->mis_flags();
    auto mis = dynmis::oracle::check_mis(sub->graph(), flags);
    if (!mis.empty())
      return std::string(dynmis::oracle::to_string(mis.front().kind)) +
             " at vertex " + std::to_string(mis.front().a);
    auto inv = dynmis::oracle::audit_invariants(sub->graph());
    if (!inv.empty())
      return std::string(dynmis::oracle::to_string(inv.front().kind)) +
             " at vertex " + std::to_string(inv.front().a) + " expected " +
             std::to_string(inv.front().expected) + " stored " +
             std::to_string(inv.front().stored);
    return {};
  };

  auto t0 = Clock::now();
  std::uint64_t total_adjustments = 0;
  std::uint64_t live_m = 0;
  for (const auto& ev : stream.events) {
    dynmis::AdjustmentReport report = apply(ev);
    total_adjustments += report.total_adjustments();
    if (opt.per_update) {
      std::cout << "u " << ev.index << " removed=" << report.removed.size()
                << " inserted=" << report.inserted.size()
                << " ops=" << report.ops_spent << "\n";
    }
    if (opt.verify) {
      std::string finding = audit();
      if (!finding.empty()) {
        std::cerr << "audit failure after update " << ev.index << ": "
                  << finding << "\n";
        return kExitAudit;
      }
    }
  }
  if (sub) live_m = sub->graph().edge_count();
  if (delta) live_m = delta->edge_count();
  if (auto_eng) live_m = auto_eng->edge_count();
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0);

  const dynmis::CostLedger& ledger = sub     ? sub->ledger()
                                     : delta ? delta->ledger()
                                             : auto_eng->ledger();
  std::cout << "algo: " << opt.algo << "\n";
  std::cout << "n: " << stream.n << "\n";
  std::cout << "updates: " << stream.events.size() << "\n";
  if (!auto_eng) std::cout << "final_m: " << live_m << "\n";
  std::cout << "adjustments: " << ledger.adjustments << "\n";
  std::cout << "rebuild_adjustments: " << ledger.rebuild_adjustments << "\n";
  std::cout << "total_adjustments_reported: " << total_adjustments << "\n";
  std::cout << "ops: " << ledger.total_ops << "\n";
  if (sub) {
    std::cout << "epochs:\n";
    for (const auto& row : sub->epoch_history())
      std::cout << "  m_snapshot=" << row.m_snapshot << " t_high=" << row.t_high
                << " updates=" << row.updates << " ops=" << row.ops << "\n";
  }
  if (auto_eng) {
    std::cout << "epochs:\n";
    for (const auto& row : auto_eng->epoch_log())
      std::cout << "  m_snapshot=" << row.m_snapshot
                << " engine=" << dynmis::to_string(row.mode)
                << " updates=" << row.updates << "\n";
  }
  std::cout << "wall_time_ms: " << ms.count() << "\n";
  return kExitOk;
}

// Adapter so the oracle can walk the simulator's per-node adjacency.
struct SimGraphView {
  const dynmis::congest::CongestSimulator& sim;
  std::size_t vertex_count() const { return sim.vertex_count(); }
  template <class F>
  void for_neighbors(dynmis::VertexId v, F&& f) const {
    for (dynmis::VertexId x : sim.node(v).neighbors()) f(x);
  }
};

int cmd_simulate(const std::string& path, bool verify, bool per_update) {
  dynmis::Stream stream = dynmis::load_stream(path);
  dynmis::congest::CongestSimulator sim(stream.n);
  auto t0 = Clock::now();
  for (const auto& ev : stream.events) {
    auto um = sim.sim_apply(ev);
    if (per_update)
      std::cout << "u " << ev.index << " removed=" << um.removed.size()
                << " inserted=" << um.inserted.size() << " rounds=" << um.rounds
                << " messages=" << um.messages << "\n";
    if (verify) {
      auto flags = sim.mis_flags();
      SimGraphView view{sim};
      auto findings = dynmis::oracle::check_mis(view, flags);
      if (!findings.empty()) {
        std::cerr << "audit failure after update " << ev.index << ": "
                  << dynmis::oracle::to_string(findings.front().kind)
                  << " at vertex " << findings.front().a << "\n";
        return kExitAudit;
      }
    }
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0);
  const auto& m = sim.metrics();
  std::cout << "algo: simulate\n";
  std::cout << "n: " << stream.n << "\n";
  std::cout << "updates: " << stream.events.size() << "\n";
  std::cout << "final_m: " << sim.edge_count() << "\n";
  std::cout << "adjustments: " << m.total_adjustments << "\n";
  std::cout << "rounds: " << m.total_rounds << "\n";
  std::cout << "messages: " << m.total_messages << "\n";
  std::cout << "epoch_rounds: " << m.epoch_rounds << "\n";
  std::cout << "epoch_messages: " << m.epoch_messages << "\n";
  std::cout << "epoch_rebuilds: " << m.epoch_rebuilds << "\n";
  std::cout << "max_payload_bits: " << m.max_payload_bits << "\n";
  std::cout << "procedure_bound_violations: " << m.procedure_bound_violations << "\n";
  std::cout << "wall_time_ms: " << ms.count() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deterministic fully dynamic maximal-independent-set engine"};
  app.require_subcommand(1);

  // --- gen ------------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "generate an update stream");
  gen->require_subcommand(1);
  std::size_t g_n = 16, g_steps = 100, g_window = 32;
  double g_bias = 0.5;
  std::uint64_t g_seed = 1;
  std::string g_out;

  auto* gr = gen->add_subcommand("random", "seeded insert/delete mix");
  gr->add_option("--n", g_n)->required();
  gr->add_option("--steps", g_steps)->required();
  gr->add_option("--insert-bias", g_bias);
  gr->add_option("--seed", g_seed);
  gr->add_option("--out", g_out);

  auto* ga = gen->add_subcommand("adversary", "worst-case adjustment stream");
  ga->add_option("--n", g_n)->required();
  ga->add_option("--out", g_out);

  auto* gs = gen->add_subcommand("sliding", "sliding-window stream");
  gs->add_option("--n", g_n)->required();
  gs->add_option("--steps", g_steps)->required();
  gs->add_option("--window", g_window);
  gs->add_option("--seed", g_seed);
  gs->add_option("--out", g_out);

  auto* gm = gen->add_subcommand("mixed", "mixed edge/vertex update stream");
  gm->add_option("--n", g_n)->required();
  gm->add_option("--steps", g_steps)->required();
  gm->add_option("--seed", g_seed);
  gm->add_option("--out", g_out);

  // --- run ------------------------------------------------------------------
  RunOptions run_opt;
  auto* run = app.add_subcommand("run", "replay a stream on an engine");
  run->add_option("stream", run_opt.path)->required();
  run->add_option("--algo", run_opt.algo)
      ->check(CLI::IsMember({"delta", "sublinear", "auto"}));
  run->add_option("--delta-bound", run_opt.delta_bound);
  run->add_flag("--verify", run_opt.verify);
  run->add_flag("--per-update", run_opt.per_update);

  // --- simulate ---------------------------------------------------------------
  std::string sim_path;
  bool sim_verify = false, sim_per_update = false;
  auto* simc = app.add_subcommand("simulate", "replay on the CONGEST simulator");
  simc->add_option("stream", sim_path)->required();
  simc->add_flag("--verify", sim_verify);
  simc->add_flag("--per-update", sim_per_update);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gr->parsed()) {
      emit_stream(dynmis::gen_random(g_n, g_steps, g_bias, g_seed), g_out);
      return kExitOk;
    }
    if (ga->parsed()) {
      emit_stream(dynmis::gen_adversary(g_n), g_out);
      return kExitOk;
    }
    if (gs->parsed()) {
      emit_stream(dynmis::gen_sliding_window(g_n, g_steps, g_window, g_seed), g_out);
      return kExitOk;
    }
    if (gm->parsed()) {
      emit_stream(dynmis::gen_mixed_vertex(g_n, g_steps, g_seed), g_out);
      return kExitOk;
    }
    if (run->parsed()) return cmd_run(run_opt);
    if (simc->parsed()) return cmd_simulate(sim_path, sim_verify, sim_per_update);
  } catch (const dynmis::StreamParseError& e) {
    std::cerr << "malformed stream: " << e.what() << "\n";
    return kExitMalformed;
  } catch (const dynmis::GraphError& e) {
    std::cerr << "stream precondition violation: " << e.what() << "\n";
    return kExitMalformed;
  } catch (const std::invalid_argument& e) {
    std::cerr << "bad parameters: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMalformed;
  }
  return kExitUsage;
}
