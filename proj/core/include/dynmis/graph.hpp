#pragma once

#include <array>
#include <cstdint>
#include <list>
#include <unordered_map>
#include <vector>

#include "dynmis/cost_ledger.hpp"
#include "dynmis/ordered_set.hpp"
#include "dynmis/types.hpp"

namespace dynmis {

/// Dynamic graph over a fixed vertex set [0, n) with per-vertex 2-approximate
/// degree estimates, the four-way degree-class partition, and the one-hop /
/// two-hop MIS counters. Raw edge operations keep Invariants 1 and 2
/// consistent with the current MIS flags; flag changes themselves are driven
/// by the engines.
class DynamicGraph {
 public:
  explicit DynamicGraph(std::size_t n);

  std::size_t vertex_count() const { return records_.size(); }
  std::uint64_t edge_count() const { return live_edges_; }
  const EpochConfig& epoch() const { return epoch_; }

  EdgeChangeReport insert_edge_raw(VertexId u, VertexId v);
  EdgeChangeReport delete_edge_raw(VertexId u, VertexId v);

  bool has_edge(VertexId u, VertexId v) const;
  std::uint64_t degree(VertexId v) const { return rec(v).degree; }
  std::uint64_t degree_est(VertexId v) const { return rec(v).degree_est; }
  DegreeClass class_of(VertexId v) const { return rec(v).cls; }
  bool mis_flag(VertexId v) const { return rec(v).mis_flag; }
  std::uint64_t mis_nei(VertexId v) const { return rec(v).mis_nei; }
  const std::unordered_map<VertexId, std::uint64_t>& mis_2hop_of(VertexId v) const {
    return rec(v).mis_2hop;
  }
  /// Cached copy of u's degree estimate held by v (the NeiDeg view).
  std::uint64_t cached_neighbor_degree(VertexId v, VertexId u) const;

  template <class F>
  void for_neighbors(VertexId v, F&& f) const {
    for (const auto& lst : rec(v).nbrs)
      for (VertexId u : lst) f(u);
  }
  template <class F>
  void for_neighbors_in_class(VertexId v, DegreeClass c, F&& f) const {
    for (VertexId u : rec(v).nbrs[static_cast<int>(c)]) f(u);
  }

  const OrderedVertexSet& class_members(DegreeClass c) const {
    return registry_[static_cast<int>(c)];
  }
  const OrderedVertexSet& non_isolated() const { return non_isolated_; }

  // --- MIS state mutation, used by the engines --------------------------
  void set_mis_flag(VertexId v, bool in_mis);
  void adjust_mis_nei(VertexId v, int delta);
  void adjust_mis_2hop(VertexId owner, VertexId key, int delta);

  /// Starts a new epoch: reclassifies every vertex against `cfg`, resets
  /// degree estimates to exact degrees, clears all MIS flags of non-isolated
  /// vertices and zeroes the counters. Isolated vertices keep their flags
  /// (they are permanently in the MIS).
  void reinitialize_for_epoch(const EpochConfig& cfg);

  CostLedger& ledger() { return ledger_; }
  const CostLedger& ledger() const { return ledger_; }

 private:
  struct NeighborEntry {
    DegreeClass cls;
    std::list<VertexId>::iterator it;
    std::uint64_t cached_deg_est;
  };
  struct VertexRecord {
    std::array<std::list<VertexId>, kNumClasses> nbrs;  // per-class, insertion order
    std::unordered_map<VertexId, NeighborEntry> loc;
    std::uint64_t degree = 0;
    std::uint64_t degree_est = 0;
    DegreeClass cls = DegreeClass::Low;
    bool mis_flag = false;
    std::uint64_t mis_nei = 0;
    std::unordered_map<VertexId, std::uint64_t> mis_2hop;  // keys: Low neighbors
  };

  VertexRecord& rec(VertexId v) { return records_[v]; }
  const VertexRecord& rec(VertexId v) const { return records_[v]; }

  void check_vertex(VertexId v) const;
  void add_adjacency(VertexId v, VertexId u);
  void remove_adjacency(VertexId v, VertexId u);
  // Invariant 1: does u (with its flag set) contribute to mis_nei[v]?
  bool counts_for(VertexId u, VertexId v) const {
    return rec(v).cls != DegreeClass::Low || rec(u).cls != DegreeClass::High;
  }
  bool in_low_union(DegreeClass c) const {
    return c == DegreeClass::MedLow || c == DegreeClass::Low;
  }
  std::uint64_t scan_low_mis(VertexId v);  // |N(v) ∩ M ∩ (MedLow ∪ Low)|
  std::vector<VertexId> maybe_refresh(VertexId v);
  void on_class_change(VertexId v, DegreeClass oldc, DegreeClass newc);
  void track_isolation(VertexId v, std::uint64_t old_degree);

  std::vector<VertexRecord> records_;
  std::array<OrderedVertexSet, kNumClasses> registry_;
  OrderedVertexSet non_isolated_;
  EpochConfig epoch_ = EpochConfig::for_edge_count(1);
  std::uint64_t live_edges_ = 0;
  CostLedger ledger_;
};

}  // namespace dynmis
