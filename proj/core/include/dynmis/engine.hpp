#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dynmis/cost_ledger.hpp"
#include "dynmis/delta_engine.hpp"
#include "dynmis/sublinear_engine.hpp"
#include "dynmis/types.hpp"

namespace dynmis {

enum class AlgoKind { Delta, Sublinear, Auto };

/// Uniform view over the MIS maintainers used by the CLI and the harnesses.
class MisEngine {
 public:
  virtual ~MisEngine() = default;
  virtual AdjustmentReport apply(const UpdateEvent& ev) = 0;
  virtual std::size_t vertex_count() const = 0;
  virtual bool in_mis(VertexId v) const = 0;
  virtual std::vector<bool> mis_flags() const = 0;
  virtual const CostLedger& ledger() const = 0;
  /// Full self-check against recomputed ground truth; empty when clean.
  virtual std::string audit() const = 0;
  virtual const char* name() const = 0;
};

/// min{Δ, m^{3/4}} dispatcher: runs the counter engine while the declared
/// degree bound stays below the epoch's High threshold, otherwise the
/// sublinear engine; switches only at epoch boundaries, rebuilding the
/// incoming engine from the live edge set.
class AutoEngine final : public MisEngine {
 public:
  struct EpochRow {
    std::uint64_t m_snapshot;
    AlgoKind mode;
    std::uint64_t updates;
  };

  /// `delta_bound` = 0 means no bound declared (sublinear always).
  AutoEngine(std::size_t n, std::uint64_t delta_bound);

  AdjustmentReport apply(const UpdateEvent& ev) override;
  std::size_t vertex_count() const override { return n_; }
  bool in_mis(VertexId v) const override;
  std::vector<bool> mis_flags() const override;
  const CostLedger& ledger() const override;
  std::string audit() const override;
  const char* name() const override { return "auto"; }

  AlgoKind mode() const { return mode_; }
  std::uint64_t edge_count() const { return live_edges_.size(); }
  /// Closed epochs plus the open one, with the engine chosen for each.
  std::vector<EpochRow> epoch_log() const;
  std::uint64_t switch_count() const { return switch_count_; }

 private:
  static AlgoKind choose(std::uint64_t delta_bound, std::uint64_t t_high) {
    return (delta_bound > 0 && delta_bound <= t_high) ? AlgoKind::Delta
                                                      : AlgoKind::Sublinear;
  }
  void maybe_switch_epoch();
  std::vector<std::pair<VertexId, VertexId>> live_edge_list() const;

  std::size_t n_;
  std::uint64_t delta_bound_;
  AlgoKind mode_;
  std::unique_ptr<DeltaEngine> delta_;
  std::unique_ptr<SublinearEngine> sub_;
  std::set<std::pair<VertexId, VertexId>> live_edges_;  // normalized u < v
  std::uint64_t m_snapshot_ = 1;
  std::uint64_t update_index_ = 0;
  std::uint64_t epoch_updates_ = 0;
  std::uint64_t switch_count_ = 0;
  std::vector<EpochRow> closed_;
};

std::unique_ptr<MisEngine> make_engine(AlgoKind kind, std::size_t n,
                                       std::uint64_t delta_bound);

const char* to_string(AlgoKind k);

}  // namespace dynmis
