#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace dynmis {

using VertexId = std::uint32_t;

/// Degree class of a vertex relative to the current epoch thresholds.
enum class DegreeClass : std::uint8_t { High = 0, MedHigh = 1, MedLow = 2, Low = 3 };

inline constexpr int kNumClasses = 4;

inline const char* to_string(DegreeClass c) {
  switch (c) {
    case DegreeClass::High: return "High";
    case DegreeClass::MedHigh: return "MedHigh";
    case DegreeClass::MedLow: return "MedLow";
    case DegreeClass::Low: return "Low";
  }
  return "?";
}

/// Smallest r >= 0 with r^k >= x (k in {2,4}); exact integer arithmetic.
std::uint64_t ceil_root(std::uint64_t x, unsigned k);

/// Edge-count snapshot frozen at epoch start plus the derived class thresholds.
struct EpochConfig {
  std::uint64_t m_snapshot = 1;
  std::uint64_t t_high = 1;     // ceil(m^{3/4})
  std::uint64_t t_medhigh = 1;  // ceil(m^{1/2})
  std::uint64_t t_medlow = 1;   // ceil(m^{1/4})
  std::uint64_t epoch_start_index = 0;

  static EpochConfig for_edge_count(std::uint64_t m, std::uint64_t start_index = 0);

  DegreeClass classify(std::uint64_t degree_est) const {
    if (degree_est >= t_high) return DegreeClass::High;
    if (degree_est >= t_medhigh) return DegreeClass::MedHigh;
    if (degree_est >= t_medlow) return DegreeClass::MedLow;
    return DegreeClass::Low;
  }
};

enum class UpdateOp : std::uint8_t { EdgeInsert, EdgeDelete, VertexInsert, VertexDelete };

/// One element of an update stream. Vertex ops use only `u`.
struct UpdateEvent {
  std::uint64_t index = 0;
  UpdateOp op = UpdateOp::EdgeInsert;
  VertexId u = 0;
  VertexId v = 0;

  static UpdateEvent edge_insert(std::uint64_t idx, VertexId u, VertexId v) {
    return {idx, UpdateOp::EdgeInsert, u, v};
  }
  static UpdateEvent edge_delete(std::uint64_t idx, VertexId u, VertexId v) {
    return {idx, UpdateOp::EdgeDelete, u, v};
  }
};

/// MIS membership changes produced by resolving one update.
struct AdjustmentReport {
  std::vector<VertexId> removed;
  std::vector<VertexId> inserted;
  std::uint64_t ops_spent = 0;

  /// Bulk-insert phases followed by a violating-vertex sweep; `inserted` is
  /// the count joined in the phase leading to this sweep.
  struct SweepStat {
    std::uint32_t inserted = 0;
    std::uint32_t removed = 0;
  };
  std::vector<SweepStat> sweeps;

  std::size_t total_adjustments() const { return removed.size() + inserted.size(); }
};

/// Returned by the raw edge operations of the dynamic graph.
struct EdgeChangeReport {
  std::vector<VertexId> class_changed;
  bool mis_conflict = false;  // both endpoints carried the MIS flag (insert only)
};

enum class GraphErrorCode {
  OutOfRange,
  SelfLoop,
  DuplicateEdge,
  MissingEdge,
  DegreeBoundExceeded,
  UnsupportedOp,
};

class GraphError : public std::runtime_error {
 public:
  GraphError(GraphErrorCode code, std::string msg)
      : std::runtime_error(std::move(msg)), code_(code) {}
  GraphErrorCode code() const { return code_; }

 private:
  GraphErrorCode code_;
};

}  // namespace dynmis
