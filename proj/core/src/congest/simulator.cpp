#include "dynmis/congest/simulator.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace dynmis::congest {

namespace {
std::pair<VertexId, VertexId> norm(VertexId a, VertexId b) {
  return {std::min(a, b), std::max(a, b)};
}
bool lowish(DegreeClass c) {
  return c == DegreeClass::MedLow || c == DegreeClass::Low;
}
}  // namespace

CongestSimulator::CongestSimulator(std::size_t n) {
  nodes_.reserve(n);
  EpochConfig cfg = EpochConfig::for_edge_count(1);
  for (std::size_t v = 0; v < n; ++v)
    nodes_.emplace_back(static_cast<VertexId>(v), cfg);
}

std::vector<bool> CongestSimulator::mis_flags() const {
  std::vector<bool> flags(nodes_.size());
  for (std::size_t v = 0; v < nodes_.size(); ++v) flags[v] = nodes_[v].in_m();
  return flags;
}

// --------------------------------------------------------------------------
// Transport
// --------------------------------------------------------------------------

void CongestSimulator::round() {
  if (epoch_mode_)
    ++metrics_.epoch_rounds;
  else
    ++cur_.rounds;
}

bool CongestSimulator::channel_open(VertexId a, VertexId b) const {
  auto e = norm(a, b);
  return edges_.count(e) != 0 || grace_.count(e) != 0;
}

void CongestSimulator::send(VertexId src, VertexId dst, MsgTag tag,
                            std::uint64_t a, std::uint64_t b) {
  if (!channel_open(src, dst))
    throw std::logic_error("message to a non-neighbor outside the grace window");
  SimMessage msg{src, dst, tag, a, b};
  std::uint64_t bits = msg.encoded_bits(nodes_.size());
  metrics_.max_payload_bits = std::max(metrics_.max_payload_bits, bits);
  if (bits > 4 * id_bits(nodes_.size())) ++metrics_.payload_violations;
  if (epoch_mode_)
    ++metrics_.epoch_messages;
  else
    ++cur_.messages;
}

// --------------------------------------------------------------------------
// Data-structure conversations
// --------------------------------------------------------------------------

std::uint64_t CongestSimulator::conv_update_neighbors(VertexId u, bool joined) {
  SimNode& nu = nodes_[u];
  std::vector<VertexId> targets = nu.cls() == DegreeClass::High
                                      ? nu.non_low_neighbors()
                                      : nu.neighbors();
  round();
  for (VertexId x : targets) {
    send(u, x, MsgTag::FlagNotify, joined);
    nodes_[x].on_flag_notify(u, joined);
  }
  if (!epoch_mode_) {
    ++metrics_.update_neighbors_calls;
    metrics_.max_un_messages = std::max<std::uint64_t>(metrics_.max_un_messages,
                                                       targets.size());
    // Degree estimates are 2-approximate and thresholds are frozen per epoch
    // while m drifts by up to a factor 2, so the nominal m^{3/4} invocation
    // bound is checked with the safe constant 8 (matching the slack used for
    // the m^{1/4} degree assertions).
    if (targets.size() > 8 * nu.cfg().t_high) ++metrics_.procedure_bound_violations;
  }
  return targets.size();
}

std::uint64_t CongestSimulator::conv_update_two_hop(VertexId u, bool joined) {
  SimNode& nu = nodes_[u];
  if (!lowish(nu.cls())) return 0;
  std::uint64_t msgs = 0;
  std::vector<VertexId> lows = nu.neighbors_in_class(DegreeClass::Low);
  round();
  for (VertexId w : lows) {
    send(u, w, MsgTag::TwoHopFlag, joined);
    ++msgs;
  }
  round();
  int delta = joined ? +1 : -1;
  for (VertexId w : lows) {
    for (VertexId x : nodes_[w].neighbors()) {
      send(w, x, MsgTag::TwoHopDelta, w, delta > 0);
      nodes_[x].on_two_hop_delta(w, delta);
      ++msgs;
    }
  }
  if (!epoch_mode_) {
    ++metrics_.update_two_hop_calls;
    metrics_.max_uth_messages = std::max(metrics_.max_uth_messages, msgs);
    if (msgs > 16 * nu.cfg().t_high) ++metrics_.procedure_bound_violations;
  }
  return msgs;
}

void CongestSimulator::conv_join(VertexId v) {
  nodes_[v].set_flag(true);
  conv_update_neighbors(v, true);
  conv_update_two_hop(v, true);
  cur_.inserted.push_back(v);
}

void CongestSimulator::conv_leave(VertexId v) {
  nodes_[v].set_flag(false);
  conv_update_neighbors(v, false);
  conv_update_two_hop(v, false);
  cur_.removed.push_back(v);
}

StatusInfo CongestSimulator::conv_status(VertexId asker, VertexId x) {
  round();
  send(asker, x, MsgTag::StatusQuery);
  round();
  StatusInfo st = nodes_[x].status();
  send(x, asker, MsgTag::StatusReply, st.in_m, st.nei_zero);
  return st;
}

bool CongestSimulator::conv_self_scan(VertexId x) {
  // x asks every neighbor whether it is in M; replies carry the exact flags
  // (this is how a Low vertex sees past its noisy counter).
  bool blocked = false;
  round();
  for (VertexId y : nodes_[x].neighbors()) send(x, y, MsgTag::StatusQuery);
  round();
  for (VertexId y : nodes_[x].neighbors()) {
    bool in_m = nodes_[y].in_m();
    send(y, x, MsgTag::StatusReply, in_m, 0);
    nodes_[x].on_status_reply(y, in_m);
    blocked = blocked || in_m;
  }
  return blocked;
}

bool CongestSimulator::conv_probe(VertexId asker, VertexId x) {
  round();
  send(asker, x, MsgTag::ProbeRequest);
  bool blocked = conv_self_scan(x);
  round();
  send(x, asker, MsgTag::ProbeReply, blocked);
  return blocked;
}

void CongestSimulator::conv_known_rebuild(VertexId v) {
  round();
  for (VertexId y : nodes_[v].neighbors()) send(v, y, MsgTag::StatusQuery);
  round();
  for (VertexId y : nodes_[v].neighbors()) {
    bool in_m = nodes_[y].in_m();
    send(y, v, MsgTag::StatusReply, in_m, 0);
    nodes_[v].on_status_reply(y, in_m);
  }
}

void CongestSimulator::conv_refresh(VertexId v) {
  SimNode& nv = nodes_[v];
  if (!nv.needs_refresh()) return;
  DegreeClass oldc = nv.cls();
  nv.refresh_est();
  DegreeClass newc = nv.cls();

  // Announce to every neighbor; receivers may need to relay two-hop deltas.
  std::vector<std::pair<VertexId, int>> relays;
  round();
  for (VertexId x : nv.neighbors()) {
    send(v, x, MsgTag::DegreeAnnounce, nv.degree_est(), nv.in_m());
    AnnounceReaction r = nodes_[x].on_degree_announce(v, nv.degree_est(), nv.in_m());
    if (r.relay_two_hop) relays.emplace_back(x, r.delta);
  }
  if (!relays.empty()) {
    round();
    for (auto [w, delta] : relays) {
      for (VertexId x : nodes_[w].neighbors()) {
        send(w, x, MsgTag::TwoHopDelta, w, delta > 0);
        nodes_[x].on_two_hop_delta(w, delta);
      }
    }
  }

  if (oldc == newc) return;
  if (newc == DegreeClass::Low) {
    // My neighbors just created a two-hop entry about me; seed its value.
    std::uint64_t c = nv.compute_low_scan();
    round();
    for (VertexId x : nv.neighbors()) {
      send(v, x, MsgTag::TwoHopSet, v, c);
      nodes_[x].on_two_hop_set(v, c);
    }
  }
  if (oldc == DegreeClass::Low) {
    // Leaving Low widens my Invariant-1 view to High members, about whom my
    // knowledge may be stale; re-query everyone.
    conv_known_rebuild(v);
  }
}

void CongestSimulator::edge_two_hop_fix(VertexId a, VertexId b, int delta) {
  // Mirrors the per-edge Invariant-2 maintenance: if a is a MedLow/Low
  // M-member and b is Low, every other neighbor of b adjusts its entry for b.
  SimNode& na = nodes_[a];
  SimNode& nb = nodes_[b];
  if (!(na.in_m() && lowish(na.cls()) && nb.cls() == DegreeClass::Low)) return;
  round();
  for (VertexId x : nb.neighbors()) {
    if (x == a) continue;
    send(b, x, MsgTag::TwoHopDelta, b, delta > 0);
    nodes_[x].on_two_hop_delta(b, delta);
  }
}

// --------------------------------------------------------------------------
// Updates
// --------------------------------------------------------------------------

UpdateMetrics CongestSimulator::sim_apply(const UpdateEvent& ev) {
  cur_ = UpdateMetrics{};
  cur_.index = update_count_;
  switch (ev.op) {
    case UpdateOp::EdgeInsert: apply_edge_insert(ev.u, ev.v); break;
    case UpdateOp::EdgeDelete: apply_edge_delete(ev.u, ev.v); break;
    case UpdateOp::VertexInsert: apply_vertex_insert(ev.u); break;
    case UpdateOp::VertexDelete: apply_vertex_delete(ev.u); break;
  }
  grace_.clear();
  ++update_count_;
  maybe_epoch({ev.u, ev.v});
  metrics_.total_rounds += cur_.rounds;
  metrics_.total_messages += cur_.messages;
  metrics_.total_adjustments += cur_.adjustments();
  metrics_.per_update.push_back(cur_);
  return cur_;
}

void CongestSimulator::sim_run(const Stream& s) {
  for (const UpdateEvent& ev : s.events) sim_apply(ev);
}

void CongestSimulator::apply_edge_insert(VertexId u, VertexId v) {
  if (u >= nodes_.size() || v >= nodes_.size())
    throw GraphError(GraphErrorCode::OutOfRange, "vertex id out of range");
  if (u == v) throw GraphError(GraphErrorCode::SelfLoop, "self loop rejected");
  auto e = norm(u, v);
  if (edges_.count(e))
    throw GraphError(GraphErrorCode::DuplicateEdge, "edge already present");
  ensure_fresh(u);
  ensure_fresh(v);
  edges_.insert(e);

  // Handshake: both endpoints learn the other's estimate and exact flag.
  bool um = nodes_[u].in_m(), vm = nodes_[v].in_m();
  std::uint64_t eu = nodes_[u].degree_est(), ev2 = nodes_[v].degree_est();
  round();
  send(u, v, MsgTag::Hello, eu, um);
  send(v, u, MsgTag::Hello, ev2, vm);
  nodes_[v].on_new_neighbor(u, eu, um);
  nodes_[u].on_new_neighbor(v, ev2, vm);

  // Invariant-2 repair for the fresh edge, in both directions.
  auto fix_insert = [&](VertexId a, VertexId b) {
    if (nodes_[b].cls() == DegreeClass::Low) {
      std::uint64_t c = nodes_[b].compute_low_scan();
      round();
      send(b, a, MsgTag::TwoHopSet, b, c);
      nodes_[a].on_two_hop_set(b, c);
      edge_two_hop_fix(a, b, +1);
    }
  };
  fix_insert(u, v);
  fix_insert(v, u);

  conv_refresh(u);
  conv_refresh(v);

  if (um && vm) coordinator_resolution(std::min(u, v));
}

void CongestSimulator::apply_edge_delete(VertexId u, VertexId v) {
  if (u >= nodes_.size() || v >= nodes_.size())
    throw GraphError(GraphErrorCode::OutOfRange, "vertex id out of range");
  auto e = norm(u, v);
  if (!edges_.count(e))
    throw GraphError(GraphErrorCode::MissingEdge, "edge not present");
  ensure_fresh(u);
  ensure_fresh(v);
  edges_.erase(e);
  grace_.insert(e);

  bool um = nodes_[u].in_m(), vm = nodes_[v].in_m();
  if (um && vm)
    throw std::logic_error("adjacent MIS members found before an edge deletion");
  round();
  send(u, v, MsgTag::StatusReply, um, 0);
  send(v, u, MsgTag::StatusReply, vm, 0);

  // Invariant-2 repair while the edge can still carry messages.
  edge_two_hop_fix(u, v, -1);
  edge_two_hop_fix(v, u, -1);
  nodes_[u].on_lost_neighbor(v);
  nodes_[v].on_lost_neighbor(u);

  conv_refresh(u);
  conv_refresh(v);

  if (um != vm) {
    VertexId x = um ? v : u;
    if (nodes_[x].derived_mis_nei() == 0) {
      bool blocked =
          nodes_[x].cls() == DegreeClass::Low ? conv_self_scan(x) : false;
      if (!blocked) conv_join(x);
    }
  }
}

void CongestSimulator::apply_vertex_insert(VertexId u) {
  if (u >= nodes_.size())
    throw GraphError(GraphErrorCode::OutOfRange, "vertex id out of range");
  if (nodes_[u].degree() != 0)
    throw GraphError(GraphErrorCode::UnsupportedOp,
                     "vertex insert on a non-isolated vertex");
  // Isolated: joins (stays in) M by a purely local decision; zero messages.
  nodes_[u].set_cfg(global_cfg_);
  nodes_[u].set_flag(true);
}

void CongestSimulator::apply_vertex_delete(VertexId u) {
  if (u >= nodes_.size())
    throw GraphError(GraphErrorCode::OutOfRange, "vertex id out of range");
  ensure_fresh(u);
  bool was_in_m = nodes_[u].in_m();
  std::vector<VertexId> former = nodes_[u].neighbors();

  if (was_in_m && !former.empty()) conv_leave(u);

  // Graceful teardown, edge by edge in ascending order.
  for (VertexId x : former) {
    auto e = norm(u, x);
    edges_.erase(e);
    grace_.insert(e);
    edge_two_hop_fix(u, x, -1);
    edge_two_hop_fix(x, u, -1);
    nodes_[u].on_lost_neighbor(x);
    nodes_[x].on_lost_neighbor(u);
    conv_refresh(u);
    conv_refresh(x);
  }
  nodes_[u].set_flag(true);  // now isolated; isolated vertices sit in M

  for (VertexId x : former) {
    if (nodes_[x].in_m() || nodes_[x].derived_mis_nei() != 0) continue;
    bool blocked =
        nodes_[x].cls() == DegreeClass::Low ? conv_self_scan(x) : false;
    if (!blocked) conv_join(x);
  }
}

// --------------------------------------------------------------------------
// Coordinator-driven insertion resolution
// --------------------------------------------------------------------------

void CongestSimulator::coordinator_resolution(VertexId u_t) {
  conv_leave(u_t);
  removal_queue_.push_back(u_t);
  while (!removal_queue_.empty()) {
    VertexId w = removal_queue_.front();
    removal_queue_.pop_front();
    process_removed(w);
  }
}

void CongestSimulator::process_removed(VertexId w) {
  // Phase 1: non-Low neighbors. One query wave, then one grant per
  // round-trip, re-confirming status before each grant.
  std::vector<VertexId> cand = nodes_[w].non_low_neighbors();
  std::vector<VertexId> joinable;
  if (!cand.empty()) {
    round();
    for (VertexId x : cand) send(w, x, MsgTag::StatusQuery);
    round();
    for (VertexId x : cand) {
      StatusInfo st = nodes_[x].status();
      send(x, w, MsgTag::StatusReply, st.in_m, st.nei_zero);
      if (!st.in_m && st.nei_zero) joinable.push_back(x);
    }
  }
  for (VertexId x : joinable) {
    StatusInfo st = conv_status(w, x);
    if (st.in_m || !st.nei_zero) continue;
    round();
    send(w, x, MsgTag::JoinGrant);
    conv_join(x);
  }

  resolve_low_neighbors(w);
}

void CongestSimulator::resolve_low_neighbors(VertexId w) {
  const EpochConfig& cfg = nodes_[w].cfg();
  std::vector<VertexId> l_2hop = nodes_[w].low_zero_two_hop();

  auto bulk_greedy = [&](const std::vector<VertexId>& cands)
      -> std::vector<VertexId> {
    std::vector<VertexId> joined;
    for (VertexId x : cands) {
      StatusInfo st = conv_status(w, x);
      if (st.in_m || !st.nei_zero) continue;
      round();
      send(w, x, MsgTag::JoinGrant);
      conv_join(x);
      joined.push_back(x);
    }
    return joined;
  };

  if (l_2hop.size() <= 4 * cfg.t_high) {
    // Case 1: query the one-hop counters across L_2hop (one wave).
    std::vector<VertexId> l_1hop;
    if (!l_2hop.empty()) {
      round();
      for (VertexId x : l_2hop) send(w, x, MsgTag::StatusQuery);
      round();
      for (VertexId x : l_2hop) {
        StatusInfo st = nodes_[x].status();
        send(x, w, MsgTag::StatusReply, st.in_m, st.nei_zero);
        if (st.nei_zero) l_1hop.push_back(x);
      }
    }

    if (l_1hop.size() <= 4 * cfg.t_medhigh) {
      // Case 1-a: exact per-candidate neighborhood probes, then grants.
      std::vector<VertexId> l_mis;
      for (VertexId x : l_1hop)
        if (!conv_probe(w, x)) l_mis.push_back(x);
      bulk_greedy(l_mis);  // re-checks the counter before each grant
    } else {
      // Case 1-b: bulk greedy insertion, then sweep the High class.
      std::vector<VertexId> joined = bulk_greedy(l_1hop);
      sweep_violating(w, joined, /*include_medhigh=*/false);
    }
  } else {
    // Case 2: bulk greedy over L_2hop, then sweep High and MedHigh.
    std::vector<VertexId> joined = bulk_greedy(l_2hop);
    sweep_violating(w, joined, /*include_medhigh=*/true);
  }
}

void CongestSimulator::sweep_violating(VertexId w,
                                       const std::vector<VertexId>& inserted_now,
                                       bool include_medhigh) {
  // Violations can only involve neighbors of the vertices just inserted
  // (everyone else's exact counters blocked conflicting joins), so the
  // inserted vertices survey their neighborhoods and relay findings.
  std::map<VertexId, VertexId> relay;  // violating vertex -> relaying neighbor
  for (VertexId x : inserted_now) {
    round();
    send(w, x, MsgTag::SurveyRequest, include_medhigh);
    round();
    for (VertexId y : nodes_[x].neighbors()) send(x, y, MsgTag::StatusQuery);
    round();
    std::vector<VertexId> found;
    for (VertexId y : nodes_[x].neighbors()) {
      StatusInfo st = nodes_[y].status();
      send(y, x, MsgTag::StatusReply, st.in_m, st.nei_zero);
      bool in_mask = st.cls == DegreeClass::High ||
                     (include_medhigh && st.cls == DegreeClass::MedHigh);
      if (st.in_m && in_mask && st.nei_positive) found.push_back(y);
    }
    round();
    for (VertexId y : found) {
      send(x, w, MsgTag::SurveyReply, y);
      relay.emplace(y, x);
    }
  }

  if (relay.empty()) return;

  // Logically simultaneous removal: orders are routed in one wave and all
  // flags drop in the same round; the update procedures follow in id order.
  round();
  for (auto& [h, via] : relay) send(w, via, MsgTag::RemoveOrder, h);
  round();
  for (auto& [h, via] : relay) send(via, h, MsgTag::RemoveOrder, h);
  for (auto& [h, via] : relay) nodes_[h].set_flag(false);
  for (auto& [h, via] : relay) {
    conv_update_neighbors(h, false);
    conv_update_two_hop(h, false);
    cur_.removed.push_back(h);
    removal_queue_.push_back(h);
  }
}

// --------------------------------------------------------------------------
// Epochs
// --------------------------------------------------------------------------

void CongestSimulator::ensure_fresh(VertexId v) {
  if (nodes_[v].cfg().epoch_start_index == global_cfg_.epoch_start_index)
    return;
  epoch_mode_ = true;
  auto comp = flood_component(v, global_snapshot_);
  rebuild_component(comp, global_cfg_);
  epoch_mode_ = false;
  ++metrics_.epoch_rebuilds;
}

void CongestSimulator::maybe_epoch(const std::vector<VertexId>& witnesses) {
  std::uint64_t m_eff = std::max<std::uint64_t>(edges_.size(), 1);
  if (m_eff <= 2 * global_snapshot_ && 2 * m_eff >= global_snapshot_) return;
  global_snapshot_ = m_eff;
  global_cfg_ = EpochConfig::for_edge_count(m_eff, update_count_);
  // The witnesses flood their components; everyone else syncs lazily on its
  // own next update.
  for (VertexId wv : witnesses) {
    if (wv >= nodes_.size()) continue;
    ensure_fresh(wv);
  }
}

std::vector<VertexId> CongestSimulator::flood_component(VertexId start,
                                                        std::uint64_t m_new) {
  std::vector<VertexId> comp{start};
  std::vector<bool> seen(nodes_.size(), false);
  seen[start] = true;
  std::vector<VertexId> frontier{start};
  while (!frontier.empty()) {
    round();
    std::vector<VertexId> next;
    for (VertexId v : frontier) {
      for (VertexId x : nodes_[v].neighbors()) {
        send(v, x, MsgTag::TerminateEpoch, m_new);
        if (!seen[x]) {
          seen[x] = true;
          next.push_back(x);
          comp.push_back(x);
        }
      }
    }
    frontier = std::move(next);
  }
  std::sort(comp.begin(), comp.end());
  return comp;
}

void CongestSimulator::rebuild_component(const std::vector<VertexId>& comp,
                                         const EpochConfig& cfg) {
  for (VertexId v : comp) nodes_[v].reset_for_epoch(cfg);

  // Announce wave: exact degrees become the new estimates everywhere.
  round();
  for (VertexId v : comp)
    for (VertexId x : nodes_[v].neighbors()) {
      send(v, x, MsgTag::EpochAnnounce, nodes_[v].degree_est());
      nodes_[x].on_epoch_announce(v, nodes_[v].degree_est());
    }

  // Greedy MIS in ascending id: a node joins iff no neighbor is known to
  // have joined; joins are broadcast to all neighbors (rebuilds are allowed
  // the full O(m) budget, so no class filtering here).
  for (VertexId v : comp) {
    SimNode& nv = nodes_[v];
    if (nv.degree() == 0) continue;  // isolated: already in M
    bool blocked = false;
    for (VertexId x : nv.neighbors()) blocked = blocked || nv.knows_in_m(x);
    if (blocked) continue;
    nv.set_flag(true);
    round();
    for (VertexId x : nv.neighbors()) {
      send(v, x, MsgTag::FlagNotify, true);
      nodes_[x].on_flag_notify(v, true);
    }
  }

  // Two-hop seeding wave from every Low node.
  round();
  for (VertexId v : comp) {
    if (nodes_[v].cls() != DegreeClass::Low || nodes_[v].degree() == 0) continue;
    std::uint64_t c = nodes_[v].compute_low_scan();
    for (VertexId x : nodes_[v].neighbors()) {
      send(v, x, MsgTag::TwoHopSet, v, c);
      nodes_[x].on_two_hop_set(v, c);
    }
  }
}

}  // namespace dynmis::congest
