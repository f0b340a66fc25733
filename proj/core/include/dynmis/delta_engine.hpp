#pragma once

#include <cstdint>
#include <vector>

#include "dynmis/cost_ledger.hpp"
#include "dynmis/ordered_set.hpp"
#include "dynmis/types.hpp"

namespace dynmis {

/// Exact-counter MIS maintainer with O(Δ) amortized update cost. Keeps its
/// own adjacency; per-vertex counters always equal |N(v) ∩ M|.
class DeltaEngine {
 public:
  /// `delta_bound` caps the maximum degree; updates exceeding it are
  /// rejected. Starts from the empty graph with every vertex in the MIS.
  DeltaEngine(std::size_t n, std::uint64_t delta_bound);

  AdjustmentReport apply(const UpdateEvent& ev);
  AdjustmentReport insert_edge(VertexId u, VertexId v);
  AdjustmentReport delete_edge(VertexId u, VertexId v);

  /// Bulk-loads an edge set and recomputes the MIS greedily by ascending id
  /// (used when the dispatcher switches engines mid-stream).
  void rebuild_from(const std::vector<std::pair<VertexId, VertexId>>& edges);

  std::size_t vertex_count() const { return adj_.size(); }
  std::uint64_t edge_count() const { return live_edges_; }
  std::uint64_t delta_bound() const { return delta_bound_; }
  bool in_mis(VertexId v) const { return in_mis_[v]; }
  std::uint64_t mis_counter(VertexId v) const { return counter_[v]; }
  std::vector<bool> mis_flags() const { return in_mis_; }
  std::uint64_t degree(VertexId v) const { return adj_[v].size(); }

  template <class F>
  void for_neighbors(VertexId v, F&& f) const {
    for (VertexId u : adj_[v]) f(u);
  }

  const CostLedger& ledger() const { return ledger_; }

  /// Full self-check: exact counters, independence, maximality, isolated
  /// vertices in the MIS. Returns a human-readable violation or empty.
  std::string audit() const;

 private:
  void check_vertex(VertexId v) const;
  void join(VertexId v, AdjustmentReport& report);
  void leave(VertexId v, AdjustmentReport& report);

  std::vector<OrderedVertexSet> adj_;
  std::vector<bool> in_mis_;
  std::vector<std::uint64_t> counter_;
  std::vector<std::uint32_t> budget_;  // charging-scheme tokens, audit only
  std::uint64_t delta_bound_;
  std::uint64_t live_edges_ = 0;
  CostLedger ledger_;
};

}  // namespace dynmis
