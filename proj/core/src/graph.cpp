#include "dynmis/graph.hpp"

#include <cassert>

namespace dynmis {

DynamicGraph::DynamicGraph(std::size_t n) : records_(n) {
  for (std::size_t v = 0; v < n; ++v) {
    records_[v].mis_flag = true;  // every isolated vertex sits in the MIS
    registry_[static_cast<int>(DegreeClass::Low)].insert(static_cast<VertexId>(v));
  }
}

void DynamicGraph::check_vertex(VertexId v) const {
  if (v >= records_.size())
    throw GraphError(GraphErrorCode::OutOfRange,
                     "vertex id " + std::to_string(v) + " out of range");
}

bool DynamicGraph::has_edge(VertexId u, VertexId v) const {
  check_vertex(u);
  check_vertex(v);
  return rec(u).loc.count(v) != 0;
}

std::uint64_t DynamicGraph::cached_neighbor_degree(VertexId v, VertexId u) const {
  auto it = rec(v).loc.find(u);
  if (it == rec(v).loc.end())
    throw GraphError(GraphErrorCode::MissingEdge, "no such neighbor");
  return it->second.cached_deg_est;
}

void DynamicGraph::add_adjacency(VertexId v, VertexId u) {
  auto& r = rec(v);
  DegreeClass uc = rec(u).cls;
  auto& lst = r.nbrs[static_cast<int>(uc)];
  lst.push_back(u);
  r.loc.emplace(u, NeighborEntry{uc, std::prev(lst.end()), rec(u).degree_est});
  ++r.degree;
}

void DynamicGraph::remove_adjacency(VertexId v, VertexId u) {
  auto& r = rec(v);
  auto it = r.loc.find(u);
  assert(it != r.loc.end());
  r.nbrs[static_cast<int>(it->second.cls)].erase(it->second.it);
  r.loc.erase(it);
  --r.degree;
}

void DynamicGraph::track_isolation(VertexId v, std::uint64_t old_degree) {
  if (old_degree == 0 && rec(v).degree > 0) non_isolated_.insert(v);
  if (old_degree > 0 && rec(v).degree == 0) non_isolated_.erase(v);
}

std::uint64_t DynamicGraph::scan_low_mis(VertexId v) {
  std::uint64_t count = 0;
  ledger_.charge(rec(v).degree);
  for_neighbors(v, [&](VertexId u) {
    if (rec(u).mis_flag && in_low_union(rec(u).cls)) ++count;
  });
  return count;
}

EdgeChangeReport DynamicGraph::insert_edge_raw(VertexId u, VertexId v) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw GraphError(GraphErrorCode::SelfLoop, "self loop rejected");
  if (rec(u).loc.count(v))
    throw GraphError(GraphErrorCode::DuplicateEdge, "edge already present");

  ledger_.edge_updates++;
  ledger_.charge(1);

  EdgeChangeReport report;
  report.mis_conflict = rec(u).mis_flag && rec(v).mis_flag;

  std::uint64_t du = rec(u).degree, dv = rec(v).degree;
  add_adjacency(u, v);
  add_adjacency(v, u);
  track_isolation(u, du);
  track_isolation(v, dv);
  ++live_edges_;

  // Invariant 1, per-edge O(1) maintenance.
  if (rec(u).mis_flag && counts_for(u, v)) rec(v).mis_nei++;
  if (rec(v).mis_flag && counts_for(v, u)) rec(u).mis_nei++;

  // Invariant 2 per-edge maintenance: fresh entry for a Low endpoint plus
  // propagation of the new MedLow/Low MIS neighbor into existing entries.
  auto fix_two_hop = [&](VertexId a, VertexId b) {
    // b gained neighbor a; a needs an entry about b if b is Low.
    if (rec(b).cls == DegreeClass::Low) rec(a).mis_2hop[b] = scan_low_mis(b);
    if (rec(a).mis_flag && in_low_union(rec(a).cls) && rec(b).cls == DegreeClass::Low) {
      ledger_.charge(rec(b).degree);
      for_neighbors(b, [&](VertexId x) {
        if (x != a) rec(x).mis_2hop[b]++;
      });
    }
  };
  fix_two_hop(u, v);
  fix_two_hop(v, u);

  auto cu = maybe_refresh(u);
  auto cv = maybe_refresh(v);
  report.class_changed = std::move(cu);
  report.class_changed.insert(report.class_changed.end(), cv.begin(), cv.end());
  return report;
}

EdgeChangeReport DynamicGraph::delete_edge_raw(VertexId u, VertexId v) {
  check_vertex(u);
  check_vertex(v);
  if (!rec(u).loc.count(v))
    throw GraphError(GraphErrorCode::MissingEdge, "edge not present");

  ledger_.edge_updates++;
  ledger_.charge(1);

  EdgeChangeReport report;

  // Mirror of the insert-side Invariant 2 maintenance, applied while the
  // edge is still in the adjacency.
  auto fix_two_hop = [&](VertexId a, VertexId b) {
    if (rec(b).cls == DegreeClass::Low) rec(a).mis_2hop.erase(b);
    if (rec(a).mis_flag && in_low_union(rec(a).cls) && rec(b).cls == DegreeClass::Low) {
      ledger_.charge(rec(b).degree);
      for_neighbors(b, [&](VertexId x) {
        if (x != a) rec(x).mis_2hop[b]--;
      });
    }
  };
  fix_two_hop(u, v);
  fix_two_hop(v, u);

  if (rec(u).mis_flag && counts_for(u, v)) rec(v).mis_nei--;
  if (rec(v).mis_flag && counts_for(v, u)) rec(u).mis_nei--;

  std::uint64_t du = rec(u).degree, dv = rec(v).degree;
  remove_adjacency(u, v);
  remove_adjacency(v, u);
  track_isolation(u, du);
  track_isolation(v, dv);
  --live_edges_;

  auto cu = maybe_refresh(u);
  auto cv = maybe_refresh(v);
  report.class_changed = std::move(cu);
  report.class_changed.insert(report.class_changed.end(), cv.begin(), cv.end());
  return report;
}

std::vector<VertexId> DynamicGraph::maybe_refresh(VertexId v) {
  auto& r = rec(v);
  bool stale = (r.degree == 0 && r.degree_est != 0) || r.degree > 2 * r.degree_est ||
               2 * r.degree < r.degree_est;
  if (!stale) return {};

  r.degree_est = r.degree;
  ledger_.charge_estimate(r.degree + 1);
  for_neighbors(v, [&](VertexId u) { rec(u).loc[v].cached_deg_est = r.degree_est; });

  DegreeClass nc = epoch_.classify(r.degree_est);
  if (nc == r.cls) return {};
  DegreeClass oc = r.cls;
  on_class_change(v, oc, nc);
  return {v};
}

void DynamicGraph::on_class_change(VertexId v, DegreeClass oldc, DegreeClass newc) {
  auto& r = rec(v);
  r.cls = newc;
  registry_[static_cast<int>(oldc)].erase(v);
  registry_[static_cast<int>(newc)].insert(v);
  ledger_.charge_class_change(r.degree + 1);

  // Re-file v in every neighbor's per-class collections.
  for_neighbors(v, [&](VertexId u) {
    auto& e = rec(u).loc[v];
    rec(u).nbrs[static_cast<int>(e.cls)].erase(e.it);
    auto& lst = rec(u).nbrs[static_cast<int>(newc)];
    lst.push_back(v);
    e.cls = newc;
    e.it = std::prev(lst.end());
  });

  bool was_low = oldc == DegreeClass::Low;
  bool is_low = newc == DegreeClass::Low;
  bool was_high = oldc == DegreeClass::High;
  bool is_high = newc == DegreeClass::High;

  // Invariant 1 for v itself: the Low boundary flips which MIS neighbors
  // v's own counter may see.
  if (was_low != is_low) {
    std::uint64_t count = 0;
    ledger_.charge_class_change(r.degree);
    for_neighbors(v, [&](VertexId u) {
      if (rec(u).mis_flag && (!is_low || rec(u).cls != DegreeClass::High)) ++count;
    });
    r.mis_nei = count;
  }

  // Invariant 1 for the neighbors: Low vertices ignore High MIS members.
  if (r.mis_flag && was_high != is_high) {
    int delta = was_high ? +1 : -1;  // leaving High: Low neighbors start counting v
    ledger_.charge_class_change(r.degree);
    for_neighbors_in_class(v, DegreeClass::Low,
                           [&](VertexId u) { rec(u).mis_nei += delta; });
  }

  // Invariant 2, v as a key: entries about v exist only while v is Low.
  if (is_low && !was_low) {
    std::uint64_t c = scan_low_mis(v);
    ledger_.charge_class_change(r.degree);
    for_neighbors(v, [&](VertexId u) { rec(u).mis_2hop[v] = c; });
  } else if (was_low && !is_low) {
    ledger_.charge_class_change(r.degree);
    for_neighbors(v, [&](VertexId u) { rec(u).mis_2hop.erase(v); });
  }

  // Invariant 2, v as a counted member: the MedLow ∪ Low boundary.
  if (r.mis_flag && in_low_union(oldc) != in_low_union(newc)) {
    int delta = in_low_union(newc) ? +1 : -1;
    for_neighbors_in_class(v, DegreeClass::Low, [&](VertexId w) {
      ledger_.charge_class_change(rec(w).degree);
      for_neighbors(w, [&](VertexId x) { rec(x).mis_2hop[w] += delta; });
    });
  }
}

void DynamicGraph::set_mis_flag(VertexId v, bool in_mis) {
  check_vertex(v);
  rec(v).mis_flag = in_mis;
}

void DynamicGraph::adjust_mis_nei(VertexId v, int delta) {
  rec(v).mis_nei += delta;
}

void DynamicGraph::adjust_mis_2hop(VertexId owner, VertexId key, int delta) {
  auto it = rec(owner).mis_2hop.find(key);
  assert(it != rec(owner).mis_2hop.end());
  it->second += delta;
}

void DynamicGraph::reinitialize_for_epoch(const EpochConfig& cfg) {
  epoch_ = cfg;
  std::uint64_t work = 0;
  for (VertexId v : non_isolated_) {
    auto& r = records_[v];
    r.degree_est = r.degree;
    r.mis_flag = false;
    r.mis_nei = 0;
    r.mis_2hop.clear();
    DegreeClass nc = epoch_.classify(r.degree_est);
    if (nc != r.cls) {
      registry_[static_cast<int>(r.cls)].erase(v);
      registry_[static_cast<int>(nc)].insert(v);
      r.cls = nc;
    }
    work += 1;
  }
  // Rebuild per-class neighbor lists, caches and the zeroed 2-hop entries.
  for (VertexId v : non_isolated_) {
    auto& r = records_[v];
    std::vector<VertexId> all;
    all.reserve(r.loc.size());
    for (auto& lst : r.nbrs)
      for (VertexId u : lst) all.push_back(u);
    for (auto& lst : r.nbrs) lst.clear();
    r.loc.clear();
    for (VertexId u : all) {
      DegreeClass uc = records_[u].cls;
      auto& lst = r.nbrs[static_cast<int>(uc)];
      lst.push_back(u);
      r.loc.emplace(u, NeighborEntry{uc, std::prev(lst.end()), records_[u].degree_est});
      if (uc == DegreeClass::Low) r.mis_2hop.emplace(u, 0);
      work += 1;
    }
  }
  ledger_.charge(work);
  ledger_.rebuild_ops += work;
}

}  // namespace dynmis
