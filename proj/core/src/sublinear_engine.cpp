#include "dynmis/sublinear_engine.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace dynmis {

SublinearEngine::SublinearEngine(std::size_t n) : graph_(n), budget_(n, 0) {}

SublinearEngine::SublinearEngine(std::size_t n,
                                 const std::vector<std::pair<VertexId, VertexId>>& edges,
                                 std::uint64_t start_index)
    : graph_(n), budget_(n, 0), update_index_(start_index) {
  for (auto [u, v] : edges) graph_.insert_edge_raw(u, v);
  std::uint64_t m_eff = std::max<std::uint64_t>(graph_.edge_count(), 1);
  graph_.reinitialize_for_epoch(EpochConfig::for_edge_count(m_eff, start_index));
  preprocess();
  epoch_ops_mark_ = graph_.ledger().total_ops;
}

std::vector<bool> SublinearEngine::mis_flags() const {
  std::vector<bool> flags(graph_.vertex_count());
  for (VertexId v = 0; v < flags.size(); ++v) flags[v] = graph_.mis_flag(v);
  return flags;
}

std::vector<EpochStats> SublinearEngine::epoch_history() const {
  std::vector<EpochStats> out = closed_epochs_;
  out.push_back({graph_.epoch().m_snapshot, graph_.epoch().t_high, epoch_updates_,
                 graph_.ledger().total_ops - epoch_ops_mark_});
  return out;
}

void SublinearEngine::preprocess() {
  // Greedy MIS in ascending id over the non-isolated vertices (isolated ones
  // already carry the flag), then both update procedures per member.
  std::vector<VertexId> order(graph_.non_isolated().begin(), graph_.non_isolated().end());
  std::sort(order.begin(), order.end());
  graph_.ledger().charge(order.size() + 1);

  std::vector<bool> blocked(graph_.vertex_count(), false);
  for (VertexId v : order) {
    if (blocked[v]) {
      budget_[v] = 1;  // charging-scheme token for a future re-insertion
      continue;
    }
    graph_.set_mis_flag(v, true);
    update_neighbors(v, true);
    update_two_hop_neighbors(v, true);
    budget_[v] = 0;
    graph_.ledger().charge(graph_.degree(v));
    graph_.for_neighbors(v, [&](VertexId u) { blocked[u] = true; });
  }
}

std::uint64_t SublinearEngine::update_neighbors(VertexId u, bool joined) {
  const int delta = joined ? +1 : -1;
  std::uint64_t touched = 0;
  if (graph_.class_of(u) == DegreeClass::High) {
    // Low neighbors deliberately stay stale about High members (Invariant 1).
    for (int c = 0; c < kNumClasses; ++c) {
      if (static_cast<DegreeClass>(c) == DegreeClass::Low) continue;
      graph_.for_neighbors_in_class(u, static_cast<DegreeClass>(c), [&](VertexId x) {
        graph_.adjust_mis_nei(x, delta);
        ++touched;
      });
    }
  } else {
    graph_.for_neighbors(u, [&](VertexId x) {
      graph_.adjust_mis_nei(x, delta);
      ++touched;
    });
  }
  graph_.ledger().charge(touched + 1);
  return touched + 1;
}

std::uint64_t SublinearEngine::update_two_hop_neighbors(VertexId u, bool joined) {
  DegreeClass c = graph_.class_of(u);
  if (c != DegreeClass::MedLow && c != DegreeClass::Low) {
    graph_.ledger().charge(1);
    return 1;
  }
  const int delta = joined ? +1 : -1;
  std::uint64_t touched = 0;
  graph_.for_neighbors_in_class(u, DegreeClass::Low, [&](VertexId w) {
    graph_.for_neighbors(w, [&](VertexId x) {
      graph_.adjust_mis_2hop(x, w, delta);
      ++touched;
    });
  });
  graph_.ledger().charge(touched + 1);
  return touched + 1;
}

void SublinearEngine::join(VertexId v, AdjustmentReport& report) {
  assert(!graph_.mis_flag(v));
  graph_.set_mis_flag(v, true);
  update_neighbors(v, true);
  update_two_hop_neighbors(v, true);
  graph_.ledger().adjustments++;
  if (budget_[v] > 0) budget_[v]--;
  report.inserted.push_back(v);
}

void SublinearEngine::leave(VertexId v, AdjustmentReport& report) {
  assert(graph_.mis_flag(v));
  graph_.set_mis_flag(v, false);
  update_neighbors(v, false);
  update_two_hop_neighbors(v, false);
  graph_.ledger().adjustments++;
  budget_[v]++;
  report.removed.push_back(v);
}

AdjustmentReport SublinearEngine::apply(const UpdateEvent& ev) {
  ++update_index_;
  ++epoch_updates_;
  AdjustmentReport report;
  switch (ev.op) {
    case UpdateOp::EdgeInsert:
      report = handle_insert(ev.u, ev.v);
      break;
    case UpdateOp::EdgeDelete:
      report = handle_delete(ev.u, ev.v);
      break;
    case UpdateOp::VertexInsert: {
      std::uint64_t before = graph_.ledger().total_ops;
      if (ev.u >= graph_.vertex_count())
        throw GraphError(GraphErrorCode::OutOfRange, "vertex id out of range");
      if (graph_.degree(ev.u) != 0)
        throw GraphError(GraphErrorCode::UnsupportedOp,
                         "vertex insert on a non-isolated vertex");
      graph_.ledger().charge(1);
      assert(graph_.mis_flag(ev.u));  // isolated vertices always sit in M
      report.ops_spent = graph_.ledger().total_ops - before;
      break;
    }
    case UpdateOp::VertexDelete: {
      std::uint64_t before = graph_.ledger().total_ops;
      if (ev.u >= graph_.vertex_count())
        throw GraphError(GraphErrorCode::OutOfRange, "vertex id out of range");
      if (graph_.mis_flag(ev.u) && graph_.degree(ev.u) > 0) leave(ev.u, report);
      std::vector<VertexId> former;
      graph_.for_neighbors(ev.u, [&](VertexId x) { former.push_back(x); });
      for (VertexId x : former) graph_.delete_edge_raw(ev.u, x);
      graph_.set_mis_flag(ev.u, true);  // now isolated; isolated stay in M
      std::sort(former.begin(), former.end());
      for (VertexId x : former) {
        if (graph_.mis_flag(x) || graph_.mis_nei(x) != 0) continue;
        if (graph_.class_of(x) == DegreeClass::Low) {
          bool blocked = false;
          graph_.ledger().charge(graph_.degree(x));
          graph_.for_neighbors(x, [&](VertexId y) { blocked = blocked || graph_.mis_flag(y); });
          if (blocked) continue;
        }
        join(x, report);
      }
      report.ops_spent = graph_.ledger().total_ops - before;
      break;
    }
  }
  last_rebuilt_ = epoch_check_and_rebuild();
  return report;
}

AdjustmentReport SublinearEngine::handle_insert(VertexId u, VertexId v) {
  AdjustmentReport report;
  std::uint64_t before = graph_.ledger().total_ops;
  EdgeChangeReport change = graph_.insert_edge_raw(u, v);
  if (change.mis_conflict) {
    VertexId u_t = std::min(u, v);
    leave(u_t, report);
    removal_queue_.push_back(u_t);
    while (!removal_queue_.empty()) {
      VertexId w = removal_queue_.front();
      removal_queue_.pop_front();
      process_removed(w, report);
    }
  }
  report.ops_spent = graph_.ledger().total_ops - before;
  return report;
}

AdjustmentReport SublinearEngine::handle_delete(VertexId u, VertexId v) {
  AdjustmentReport report;
  std::uint64_t before = graph_.ledger().total_ops;
  bool um = graph_.mis_flag(u);
  bool vm = graph_.mis_flag(v);
  if (um && vm && graph_.has_edge(u, v))
    throw std::logic_error("adjacent MIS members found before an edge deletion");
  graph_.delete_edge_raw(u, v);
  if (um != vm) {
    VertexId x = um ? v : u;
    if (graph_.mis_nei(x) == 0) {
      bool blocked = false;
      if (graph_.class_of(x) == DegreeClass::Low) {
        // The counter of a Low vertex ignores High members: confirm by scan.
        graph_.ledger().charge(graph_.degree(x));
        graph_.for_neighbors(x, [&](VertexId y) { blocked = blocked || graph_.mis_flag(y); });
      }
      if (!blocked) join(x, report);
    }
  }
  report.ops_spent = graph_.ledger().total_ops - before;
  return report;
}

void SublinearEngine::process_removed(VertexId w, AdjustmentReport& report) {
  // Phase 1: non-Low neighbors carry exhaustive counters; join on mis_nei=0.
  std::vector<VertexId> cand;
  for (int c = 0; c < kNumClasses; ++c) {
    if (static_cast<DegreeClass>(c) == DegreeClass::Low) continue;
    graph_.for_neighbors_in_class(w, static_cast<DegreeClass>(c),
                                  [&](VertexId x) { cand.push_back(x); });
  }
  std::sort(cand.begin(), cand.end());
  graph_.ledger().charge(cand.size() + 1);
  for (VertexId x : cand)
    if (!graph_.mis_flag(x) && graph_.mis_nei(x) == 0) join(x, report);

  // Phase 2: Low neighbors via the two-hop counters.
  resolve_low_neighbors(w, report);
}

void SublinearEngine::resolve_low_neighbors(VertexId w, AdjustmentReport& report) {
  const EpochConfig& cfg = graph_.epoch();
  const auto& table = graph_.mis_2hop_of(w);

  std::vector<VertexId> l_2hop;
  graph_.ledger().charge(table.size() + 1);
  for (const auto& [x, count] : table)
    if (count == 0 && !graph_.mis_flag(x)) l_2hop.push_back(x);
  std::sort(l_2hop.begin(), l_2hop.end());

  if (l_2hop.size() <= 4 * cfg.t_high) {
    // Case 1: L_2hop is small enough to inspect one-hop counters directly.
    std::vector<VertexId> l_1hop;
    graph_.ledger().charge(l_2hop.size());
    for (VertexId x : l_2hop)
      if (graph_.mis_nei(x) == 0) l_1hop.push_back(x);

    if (l_1hop.size() <= 4 * cfg.t_medhigh) {
      // Case 1-a: few enough candidates to scan each true neighborhood,
      // filtering out vertices blocked by High members the counters miss.
      std::vector<VertexId> l_mis;
      for (VertexId x : l_1hop) {
        graph_.ledger().charge(graph_.degree(x));
        bool blocked = false;
        graph_.for_neighbors(x, [&](VertexId y) { blocked = blocked || graph_.mis_flag(y); });
        if (!blocked) l_mis.push_back(x);
      }
      for (VertexId x : l_mis) {
        graph_.ledger().charge(1);
        if (graph_.mis_nei(x) == 0) join(x, report);  // intra-set adjacency
      }
    } else {
      // Case 1-b: bulk-insert L_1hop greedily, then evict violating High
      // members the Low counters could not see.
      std::uint32_t joined = 0;
      for (VertexId x : l_1hop) {
        graph_.ledger().charge(1);
        if (!graph_.mis_flag(x) && graph_.mis_nei(x) == 0) {
          join(x, report);
          ++joined;
        }
      }
      sweep_violating({DegreeClass::High}, joined, report);
    }
  } else {
    // Case 2: bulk-insert L_2hop greedily, then sweep High and MedHigh.
    std::uint32_t joined = 0;
    for (VertexId x : l_2hop) {
      graph_.ledger().charge(1);
      if (!graph_.mis_flag(x) && graph_.mis_nei(x) == 0) {
        join(x, report);
        ++joined;
      }
    }
    sweep_violating({DegreeClass::High, DegreeClass::MedHigh}, joined, report);
  }
}

void SublinearEngine::sweep_violating(const std::vector<DegreeClass>& classes,
                                      std::uint32_t inserted_before,
                                      AdjustmentReport& report) {
  std::vector<VertexId> marked;
  for (DegreeClass c : classes) {
    const auto& reg = graph_.class_members(c);
    graph_.ledger().charge(reg.size() + 1);
    for (VertexId x : reg)
      if (graph_.mis_flag(x) && graph_.mis_nei(x) > 0) marked.push_back(x);
  }
  std::sort(marked.begin(), marked.end());

  // Logically simultaneous removal: all flags first, then the procedures.
  for (VertexId x : marked) graph_.set_mis_flag(x, false);
  for (VertexId x : marked) {
    update_neighbors(x, false);
    update_two_hop_neighbors(x, false);
    graph_.ledger().adjustments++;
    budget_[x]++;
    report.removed.push_back(x);
    removal_queue_.push_back(x);
  }
  report.sweeps.push_back({inserted_before, static_cast<std::uint32_t>(marked.size())});
}

bool SublinearEngine::epoch_check_and_rebuild() {
  std::uint64_t m_eff = std::max<std::uint64_t>(graph_.edge_count(), 1);
  const EpochConfig cur = graph_.epoch();
  if (m_eff <= 2 * cur.m_snapshot && 2 * m_eff >= cur.m_snapshot) return false;

  std::vector<bool> before = mis_flags();  // instrumentation only, not charged
  graph_.reinitialize_for_epoch(EpochConfig::for_edge_count(m_eff, update_index_));
  std::fill(budget_.begin(), budget_.end(), 0);
  preprocess();
  std::uint64_t diff = 0;
  for (VertexId v = 0; v < before.size(); ++v)
    if (before[v] != graph_.mis_flag(v)) ++diff;
  graph_.ledger().rebuild_adjustments += diff;

  // The rebuild is charged against the updates of the epoch it closes.
  closed_epochs_.push_back({cur.m_snapshot, cur.t_high, epoch_updates_,
                            graph_.ledger().total_ops - epoch_ops_mark_});
  epoch_updates_ = 0;
  epoch_ops_mark_ = graph_.ledger().total_ops;
  return true;
}

}  // namespace dynmis
