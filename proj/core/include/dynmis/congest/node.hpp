#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "dynmis/types.hpp"

namespace dynmis::congest {

/// What a node discloses when asked over the wire.
struct StatusInfo {
  bool in_m = false;
  bool nei_zero = false;
  DegreeClass cls = DegreeClass::Low;
  bool nei_positive = false;
};

/// Receiver-side consequence of a degree announcement that needs further
/// messaging (the simulator turns it into a relay conversation).
struct AnnounceReaction {
  bool relay_two_hop = false;
  int delta = 0;
};

/// Local state of one network vertex. All knowledge about other vertices
/// enters exclusively through the message handlers below; the simulator
/// never copies state across nodes directly.
class SimNode {
 public:
  SimNode() = default;
  SimNode(VertexId id, EpochConfig cfg) : id_(id), cfg_(cfg) {}

  VertexId id() const { return id_; }
  const EpochConfig& cfg() const { return cfg_; }
  bool in_m() const { return mis_flag_; }
  std::uint64_t degree() const { return nbr_.size(); }
  std::uint64_t degree_est() const { return degree_est_; }
  DegreeClass cls() const { return cfg_.classify(degree_est_); }
  DegreeClass neighbor_class(VertexId x) const {
    return cfg_.classify(nbr_.at(x).cached_est);
  }
  bool knows_in_m(VertexId x) const { return nbr_.at(x).known_in_m; }
  std::uint64_t cached_est(VertexId x) const { return nbr_.at(x).cached_est; }
  const std::map<VertexId, std::uint64_t>& two_hop() const { return mis_2hop_; }

  /// Invariant-1 view: known M-neighbors, a Low node ignoring High ones.
  std::uint64_t derived_mis_nei() const;
  StatusInfo status() const {
    std::uint64_t nei = derived_mis_nei();
    return {mis_flag_, nei == 0, cls(), nei > 0};
  }

  std::vector<VertexId> neighbors() const;          // ascending
  std::vector<VertexId> neighbors_in_class(DegreeClass c) const;
  std::vector<VertexId> non_low_neighbors() const;
  /// L_2hop: Low neighbors with a zero two-hop counter and not known in M.
  std::vector<VertexId> low_zero_two_hop() const;
  /// |N(self) ∩ knownM ∩ (MedLow ∪ Low)| — the TwoHopSet seed value.
  std::uint64_t compute_low_scan() const;

  bool needs_refresh() const;
  void refresh_est() { degree_est_ = degree(); }

  // --- message/topology handlers -----------------------------------------
  void on_new_neighbor(VertexId x, std::uint64_t est, bool in_m);
  void on_lost_neighbor(VertexId x);
  AnnounceReaction on_degree_announce(VertexId x, std::uint64_t est, bool in_m);
  void on_epoch_announce(VertexId x, std::uint64_t est);
  void on_flag_notify(VertexId x, bool joined) { nbr_.at(x).known_in_m = joined; }
  void on_status_reply(VertexId x, bool in_m) { nbr_.at(x).known_in_m = in_m; }
  void on_two_hop_set(VertexId key, std::uint64_t count);
  void on_two_hop_delta(VertexId key, int delta);

  void set_flag(bool f) { mis_flag_ = f; }
  void set_cfg(const EpochConfig& cfg) { cfg_ = cfg; }
  /// New-epoch reset: estimate snaps to the true degree, non-isolated nodes
  /// drop out of M, all neighbor knowledge is invalidated pending announces.
  void reset_for_epoch(const EpochConfig& cfg);

  /// Test hook (fault injection / information-flow checks).
  std::map<VertexId, std::uint64_t>& mutable_two_hop() { return mis_2hop_; }

 private:
  struct NeighborView {
    std::uint64_t cached_est = 0;
    bool known_in_m = false;
  };

  VertexId id_ = 0;
  EpochConfig cfg_;
  std::map<VertexId, NeighborView> nbr_;
  std::uint64_t degree_est_ = 0;
  bool mis_flag_ = true;  // isolated vertices sit in M
  std::map<VertexId, std::uint64_t> mis_2hop_;  // keys: Low neighbors
};

}  // namespace dynmis::congest
