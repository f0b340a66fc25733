#include "dynmis/delta_engine.hpp"

#include <string>

namespace dynmis {

DeltaEngine::DeltaEngine(std::size_t n, std::uint64_t delta_bound)
    : adj_(n),
      in_mis_(n, true),
      counter_(n, 0),
      budget_(n, 0),
      delta_bound_(delta_bound) {}

void DeltaEngine::check_vertex(VertexId v) const {
  if (v >= adj_.size())
    throw GraphError(GraphErrorCode::OutOfRange,
                     "vertex id " + std::to_string(v) + " out of range");
}

void DeltaEngine::join(VertexId v, AdjustmentReport& report) {
  in_mis_[v] = true;
  ledger_.adjustments++;
  ledger_.charge(adj_[v].size() + 1);
  for (VertexId u : adj_[v]) counter_[u]++;
  if (budget_[v] > 0) budget_[v]--;
  report.inserted.push_back(v);
}

void DeltaEngine::leave(VertexId v, AdjustmentReport& report) {
  in_mis_[v] = false;
  ledger_.adjustments++;
  ledger_.charge(adj_[v].size() + 1);
  for (VertexId u : adj_[v]) counter_[u]--;
  budget_[v]++;
  report.removed.push_back(v);
}

AdjustmentReport DeltaEngine::apply(const UpdateEvent& ev) {
  switch (ev.op) {
    case UpdateOp::EdgeInsert: return insert_edge(ev.u, ev.v);
    case UpdateOp::EdgeDelete: return delete_edge(ev.u, ev.v);
    default:
      throw GraphError(GraphErrorCode::UnsupportedOp,
                       "delta engine handles edge updates only");
  }
}

AdjustmentReport DeltaEngine::insert_edge(VertexId u, VertexId v) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw GraphError(GraphErrorCode::SelfLoop, "self loop rejected");
  if (adj_[u].contains(v))
    throw GraphError(GraphErrorCode::DuplicateEdge, "edge already present");
  if (adj_[u].size() + 1 > delta_bound_ || adj_[v].size() + 1 > delta_bound_)
    throw GraphError(GraphErrorCode::DegreeBoundExceeded,
                     "update exceeds the declared degree bound");

  std::uint64_t ops_before = ledger_.total_ops;
  ledger_.edge_updates++;
  ledger_.charge(1);
  adj_[u].insert(v);
  adj_[v].insert(u);
  ++live_edges_;

  AdjustmentReport report;
  if (in_mis_[u]) counter_[v]++;
  if (in_mis_[v]) counter_[u]++;
  if (in_mis_[u] && in_mis_[v]) {
    VertexId out = u < v ? u : v;
    leave(out, report);
    // Greedy re-maximalization over N(out) in adjacency order.
    for (VertexId w : adj_[out]) {
      ledger_.charge(1);
      if (!in_mis_[w] && counter_[w] == 0) join(w, report);
    }
  }
  report.ops_spent = ledger_.total_ops - ops_before;
  return report;
}

AdjustmentReport DeltaEngine::delete_edge(VertexId u, VertexId v) {
  check_vertex(u);
  check_vertex(v);
  if (!adj_[u].contains(v))
    throw GraphError(GraphErrorCode::MissingEdge, "edge not present");

  std::uint64_t ops_before = ledger_.total_ops;
  ledger_.edge_updates++;
  ledger_.charge(1);
  adj_[u].erase(v);
  adj_[v].erase(u);
  --live_edges_;

  AdjustmentReport report;
  if (in_mis_[u] && in_mis_[v])
    throw std::logic_error("delta engine: adjacent MIS members before deletion");
  if (in_mis_[u] || in_mis_[v]) {
    VertexId other = in_mis_[u] ? v : u;
    counter_[other]--;
    if (counter_[other] == 0) join(other, report);
  }
  report.ops_spent = ledger_.total_ops - ops_before;
  return report;
}

void DeltaEngine::rebuild_from(const std::vector<std::pair<VertexId, VertexId>>& edges) {
  for (auto& s : adj_) s.clear();
  live_edges_ = 0;
  for (auto [u, v] : edges) {
    adj_[u].insert(v);
    adj_[v].insert(u);
    ++live_edges_;
  }
  std::fill(counter_.begin(), counter_.end(), 0);
  std::fill(in_mis_.begin(), in_mis_.end(), false);
  ledger_.charge(2 * edges.size() + adj_.size());
  for (VertexId v = 0; v < adj_.size(); ++v) {
    if (counter_[v] == 0) {
      in_mis_[v] = true;
      for (VertexId u : adj_[v]) counter_[u]++;
    }
  }
}

std::string DeltaEngine::audit() const {
  for (VertexId v = 0; v < adj_.size(); ++v) {
    std::uint64_t expect = 0;
    for (VertexId u : adj_[v])
      if (in_mis_[u]) ++expect;
    if (expect != counter_[v])
      return "counter mismatch at vertex " + std::to_string(v);
    if (in_mis_[v] && expect != 0)
      return "MIS not independent at vertex " + std::to_string(v);
    if (!in_mis_[v] && expect == 0)
      return "MIS not maximal at vertex " + std::to_string(v);
  }
  return {};
}

}  // namespace dynmis
