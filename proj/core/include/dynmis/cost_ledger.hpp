#pragma once

#include <cstdint>
#include <vector>

namespace dynmis {

/// Per-epoch accounting row. `ops` includes the cost of the rebuild that
/// closed the epoch, charged against the epoch's own updates.
struct EpochStats {
  std::uint64_t m_snapshot = 1;
  std::uint64_t t_high = 1;
  std::uint64_t updates = 0;
  std::uint64_t ops = 0;
};

/// Elementary-operation instrumentation shared by the MIS engines.
struct CostLedger {
  std::uint64_t total_ops = 0;
  std::uint64_t estimate_ops = 0;      // degree-estimate refresh work
  std::uint64_t class_change_ops = 0;  // class-boundary rescan work
  std::uint64_t edge_updates = 0;
  std::uint64_t adjustments = 0;          // MIS changes from update resolution
  std::uint64_t rebuild_adjustments = 0;  // MIS changes caused by epoch rebuilds
  std::uint64_t rebuild_ops = 0;

  void charge(std::uint64_t n) { total_ops += n; }
  void charge_estimate(std::uint64_t n) {
    total_ops += n;
    estimate_ops += n;
  }
  void charge_class_change(std::uint64_t n) {
    total_ops += n;
    class_change_ops += n;
  }
};

}  // namespace dynmis
