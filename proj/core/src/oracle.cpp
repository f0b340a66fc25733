#include "dynmis/oracle.hpp"

namespace dynmis::oracle {

const char* to_string(AuditKind k) {
  switch (k) {
    case AuditKind::NotIndependent: return "NotIndependent";
    case AuditKind::NotMaximal: return "NotMaximal";
    case AuditKind::Inv1Mismatch: return "Inv1Mismatch";
    case AuditKind::Inv2Mismatch: return "Inv2Mismatch";
    case AuditKind::DegreeEstOut: return "DegreeEstOut";
    case AuditKind::ClassMismatch: return "ClassMismatch";
  }
  return "?";
}

std::vector<AuditFinding> audit_invariants(const DynamicGraph& g) {
  std::vector<AuditFinding> findings;
  const std::size_t n = g.vertex_count();
  const EpochConfig& cfg = g.epoch();

  for (VertexId v = 0; v < n; ++v) {
    std::uint64_t deg = g.degree(v);
    std::uint64_t est = g.degree_est(v);
    if (deg == 0) {
      if (est != 0) findings.push_back({AuditKind::DegreeEstOut, v, v, 0, est});
    } else if (est > 2 * deg || 2 * est < deg) {
      findings.push_back({AuditKind::DegreeEstOut, v, v, deg, est});
    }
    if (g.class_of(v) != cfg.classify(est))
      findings.push_back({AuditKind::ClassMismatch, v, v,
                          static_cast<std::uint64_t>(cfg.classify(est)),
                          static_cast<std::uint64_t>(g.class_of(v))});
    if (!g.class_members(g.class_of(v)).contains(v))
      findings.push_back({AuditKind::ClassMismatch, v, v, 1, 0});

    // Per-class neighbor lists must partition N(v) by current class, and the
    // NeiDeg cache must match the neighbor's current estimate.
    for (int c = 0; c < kNumClasses; ++c) {
      g.for_neighbors_in_class(v, static_cast<DegreeClass>(c), [&](VertexId u) {
        if (g.class_of(u) != static_cast<DegreeClass>(c))
          findings.push_back({AuditKind::ClassMismatch, v, u,
                              static_cast<std::uint64_t>(g.class_of(u)),
                              static_cast<std::uint64_t>(c)});
        if (g.cached_neighbor_degree(v, u) != g.degree_est(u))
          findings.push_back({AuditKind::DegreeEstOut, v, u, g.degree_est(u),
                              g.cached_neighbor_degree(v, u)});
      });
    }

    // Invariant 1.
    bool v_low = g.class_of(v) == DegreeClass::Low;
    std::uint64_t expect1 = 0;
    g.for_neighbors(v, [&](VertexId u) {
      if (g.mis_flag(u) && (!v_low || g.class_of(u) != DegreeClass::High)) ++expect1;
    });
    if (expect1 != g.mis_nei(v))
      findings.push_back({AuditKind::Inv1Mismatch, v, v, expect1, g.mis_nei(v)});

    // Invariant 2: an entry exists exactly for Low neighbors and counts the
    // neighbor's MIS neighbors inside MedLow ∪ Low.
    const auto& table = g.mis_2hop_of(v);
    std::size_t low_neighbors = 0;
    g.for_neighbors(v, [&](VertexId u) {
      if (g.class_of(u) != DegreeClass::Low) {
        if (table.count(u))
          findings.push_back({AuditKind::Inv2Mismatch, v, u, 0, 1});
        return;
      }
      ++low_neighbors;
      auto it = table.find(u);
      if (it == table.end()) {
        findings.push_back({AuditKind::Inv2Mismatch, v, u, 1, 0});
        return;
      }
      std::uint64_t expect2 = 0;
      g.for_neighbors(u, [&](VertexId w) {
        if (g.mis_flag(w) && (g.class_of(w) == DegreeClass::MedLow ||
                              g.class_of(w) == DegreeClass::Low))
          ++expect2;
      });
      if (expect2 != it->second)
        findings.push_back({AuditKind::Inv2Mismatch, v, u, expect2, it->second});
    });
    if (table.size() != low_neighbors)
      findings.push_back({AuditKind::Inv2Mismatch, v, v, low_neighbors, table.size()});
  }
  return findings;
}

}  // namespace dynmis::oracle
