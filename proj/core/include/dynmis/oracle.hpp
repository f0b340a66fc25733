#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dynmis/graph.hpp"
#include "dynmis/types.hpp"

namespace dynmis::oracle {

enum class AuditKind {
  NotIndependent,
  NotMaximal,
  Inv1Mismatch,
  Inv2Mismatch,
  DegreeEstOut,
  ClassMismatch,
};

struct AuditFinding {
  AuditKind kind;
  VertexId a = 0;
  VertexId b = 0;  // second witness vertex, when applicable
  std::uint64_t expected = 0;
  std::uint64_t stored = 0;
};

const char* to_string(AuditKind k);

/// G needs vertex_count() and for_neighbors(v, f).
template <class G>
std::vector<AuditFinding> check_mis(const G& g, const std::vector<bool>& in_mis) {
  std::vector<AuditFinding> findings;
  const std::size_t n = g.vertex_count();
  for (VertexId v = 0; v < n; ++v) {
    bool has_mis_neighbor = false;
    g.for_neighbors(v, [&](VertexId u) {
      if (in_mis[u]) {
        has_mis_neighbor = true;
        if (in_mis[v] && v < u)
          findings.push_back({AuditKind::NotIndependent, v, u, 0, 0});
      }
    });
    if (!in_mis[v] && !has_mis_neighbor)
      findings.push_back({AuditKind::NotMaximal, v, v, 0, 0});
  }
  return findings;
}

/// Greedy MIS over the given vertex order (Fact: size >= n / (maxdeg + 1)).
template <class G>
std::vector<VertexId> greedy_mis(const G& g, std::span<const VertexId> order) {
  std::vector<bool> blocked(g.vertex_count(), false);
  std::vector<VertexId> result;
  for (VertexId v : order) {
    if (blocked[v]) continue;
    result.push_back(v);
    g.for_neighbors(v, [&](VertexId u) { blocked[u] = true; });
  }
  return result;
}

/// Recomputes every counter, estimate bound and class assignment from the
/// raw adjacency and MIS flags, reporting mismatches against stored state.
std::vector<AuditFinding> audit_invariants(const DynamicGraph& g);

}  // namespace dynmis::oracle
