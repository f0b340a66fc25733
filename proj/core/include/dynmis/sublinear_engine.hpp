#pragma once

#include <cstdint>
#include <deque>
#include <utility>
#include <vector>

#include "dynmis/cost_ledger.hpp"
#include "dynmis/graph.hpp"
#include "dynmis/types.hpp"

namespace dynmis {

/// Fully dynamic MIS maintainer with O(m^{3/4}) amortized update time:
/// noisy one-hop / two-hop counters over the degree-class partition, the
/// bulk-insert / violating-sweep resolution with recursive repair, and
/// factor-2 epoch restarts.
class SublinearEngine {
 public:
  explicit SublinearEngine(std::size_t n);
  SublinearEngine(std::size_t n,
                  const std::vector<std::pair<VertexId, VertexId>>& edges,
                  std::uint64_t start_index = 0);

  AdjustmentReport apply(const UpdateEvent& ev);

  const DynamicGraph& graph() const { return graph_; }
  std::size_t vertex_count() const { return graph_.vertex_count(); }
  bool in_mis(VertexId v) const { return graph_.mis_flag(v); }
  std::vector<bool> mis_flags() const;
  const CostLedger& ledger() const { return graph_.ledger(); }
  /// Closed epochs plus the currently open one.
  std::vector<EpochStats> epoch_history() const;
  std::uint64_t update_index() const { return update_index_; }
  bool last_update_rebuilt() const { return last_rebuilt_; }

  /// Exposed for tests: recomputes the MIS greedily and re-establishes the
  /// counters; expects a freshly (re)initialized graph.
  void preprocess();

  // Data-structure update procedures (run after v changed its MIS flag).
  std::uint64_t update_neighbors(VertexId u, bool joined);
  std::uint64_t update_two_hop_neighbors(VertexId u, bool joined);

  /// Charging-scheme tokens (audit only): every vertex outside the MIS
  /// carries budget for its future re-insertion.
  std::int64_t budget(VertexId v) const { return budget_[v]; }

 private:
  AdjustmentReport handle_insert(VertexId u, VertexId v);
  AdjustmentReport handle_delete(VertexId u, VertexId v);
  void process_removed(VertexId w, AdjustmentReport& report);
  void resolve_low_neighbors(VertexId w, AdjustmentReport& report);
  void sweep_violating(const std::vector<DegreeClass>& classes,
                       std::uint32_t inserted_before, AdjustmentReport& report);
  void join(VertexId v, AdjustmentReport& report);
  void leave(VertexId v, AdjustmentReport& report);
  bool epoch_check_and_rebuild();
  void close_epoch_stats();

  DynamicGraph graph_;
  std::deque<VertexId> removal_queue_;
  std::vector<std::int64_t> budget_;
  std::uint64_t update_index_ = 0;
  std::uint64_t epoch_updates_ = 0;
  std::uint64_t epoch_ops_mark_ = 0;  // total_ops at epoch start
  std::vector<EpochStats> closed_epochs_;
  bool last_rebuilt_ = false;
};

}  // namespace dynmis
