#pragma once

#include <cstdint>
#include <deque>
#include <set>
#include <utility>
#include <vector>

#include "dynmis/congest/message.hpp"
#include "dynmis/congest/node.hpp"
#include "dynmis/types.hpp"
#include "dynmis/workload.hpp"

namespace dynmis::congest {

/// Cost/effect record of one simulated update.
struct UpdateMetrics {
  std::uint64_t index = 0;
  std::uint64_t rounds = 0;
  std::uint64_t messages = 0;
  std::vector<VertexId> removed;
  std::vector<VertexId> inserted;
  std::uint64_t adjustments() const { return removed.size() + inserted.size(); }
};

struct SimMetrics {
  std::vector<UpdateMetrics> per_update;
  std::uint64_t total_rounds = 0;
  std::uint64_t total_messages = 0;
  std::uint64_t total_adjustments = 0;
  // Epoch maintenance (flood fill + rebuild), charged to the closing epoch
  // rather than to individual updates.
  std::uint64_t epoch_rounds = 0;
  std::uint64_t epoch_messages = 0;
  std::uint64_t epoch_rebuilds = 0;
  // Per-invocation procedure accounting.
  std::uint64_t update_neighbors_calls = 0;
  std::uint64_t update_two_hop_calls = 0;
  std::uint64_t max_un_messages = 0;    // worst UpdateNeighbors invocation
  std::uint64_t max_uth_messages = 0;   // worst UpdateTwoHopNeighbors invocation
  // Invocations whose message fan-out exceeded the slack-adjusted class
  // bound (8*t_high for neighbor updates, 16*t_high for two-hop updates).
  std::uint64_t procedure_bound_violations = 0;
  std::uint64_t max_payload_bits = 0;
  std::uint64_t payload_violations = 0; // payload > 4*ceil(log2 n) bits
};

/// Deterministic synchronous-round simulator of the distributed MIS
/// maintenance protocol: per-node local state, O(log n)-bit messages,
/// coordinator-driven insertion resolution, graceful deletions, and lazy
/// per-component epoch rebuilds.
class CongestSimulator {
 public:
  explicit CongestSimulator(std::size_t n);

  UpdateMetrics sim_apply(const UpdateEvent& ev);
  /// Replays a whole stream, accumulating metrics.
  void sim_run(const Stream& s);

  std::size_t vertex_count() const { return nodes_.size(); }
  bool in_mis(VertexId v) const { return nodes_[v].in_m(); }
  std::vector<bool> mis_flags() const;
  const SimMetrics& metrics() const { return metrics_; }
  std::uint64_t edge_count() const { return edges_.size(); }
  std::uint64_t m_snapshot() const { return global_snapshot_; }

  const SimNode& node(VertexId v) const { return nodes_[v]; }
  SimNode& mutable_node(VertexId v) { return nodes_[v]; }  // test hook

 private:
  // --- transport ----------------------------------------------------------
  void round();
  void send(VertexId src, VertexId dst, MsgTag tag, std::uint64_t a = 0,
            std::uint64_t b = 0);
  bool channel_open(VertexId a, VertexId b) const;

  // --- conversations --------------------------------------------------------
  std::uint64_t conv_update_neighbors(VertexId u, bool joined);
  std::uint64_t conv_update_two_hop(VertexId u, bool joined);
  void conv_join(VertexId v);
  void conv_leave(VertexId v);
  StatusInfo conv_status(VertexId asker, VertexId x);
  bool conv_probe(VertexId asker, VertexId x);  // true = blocked by some M-member
  bool conv_self_scan(VertexId x);              // x scans its own neighborhood
  void conv_refresh(VertexId v);
  void conv_known_rebuild(VertexId v);          // re-query all neighbor flags
  void edge_two_hop_fix(VertexId a, VertexId b, int delta);

  // --- resolution -------------------------------------------------------------
  void coordinator_resolution(VertexId u_t);
  void process_removed(VertexId w);
  void resolve_low_neighbors(VertexId w);
  void sweep_violating(VertexId w, const std::vector<VertexId>& inserted_now,
                       bool include_medhigh);

  // --- epochs -----------------------------------------------------------------
  void ensure_fresh(VertexId v);
  void maybe_epoch(const std::vector<VertexId>& witnesses);
  std::vector<VertexId> flood_component(VertexId start, std::uint64_t m_new);
  void rebuild_component(const std::vector<VertexId>& comp,
                         const EpochConfig& cfg);

  void apply_edge_insert(VertexId u, VertexId v);
  void apply_edge_delete(VertexId u, VertexId v);
  void apply_vertex_insert(VertexId u);
  void apply_vertex_delete(VertexId u);

  std::vector<SimNode> nodes_;
  std::set<std::pair<VertexId, VertexId>> edges_;
  std::set<std::pair<VertexId, VertexId>> grace_;
  std::deque<VertexId> removal_queue_;
  std::uint64_t global_snapshot_ = 1;
  // Snapshot values recur as m drifts, so freshness is keyed on the epoch's
  // start index (strictly monotone), not on the snapshot itself.
  EpochConfig global_cfg_ = EpochConfig::for_edge_count(1);
  std::uint64_t update_count_ = 0;
  bool epoch_mode_ = false;  // route round/message costs to the epoch bucket
  SimMetrics metrics_;
  UpdateMetrics cur_;
};

}  // namespace dynmis::congest
