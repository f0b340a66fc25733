#include "dynmis/engine.hpp"

#include <algorithm>

#include "dynmis/oracle.hpp"

namespace dynmis {

const char* to_string(AlgoKind k) {
  switch (k) {
    case AlgoKind::Delta: return "delta";
    case AlgoKind::Sublinear: return "sublinear";
    case AlgoKind::Auto: return "auto";
  }
  return "?";
}

namespace {

std::string describe(const oracle::AuditFinding& f) {
  return std::string(oracle::to_string(f.kind)) + " at vertex " +
         std::to_string(f.a) + "/" + std::to_string(f.b) + " expected " +
         std::to_string(f.expected) + " stored " + std::to_string(f.stored);
}

std::string audit_sublinear(const SublinearEngine& eng) {
  auto flags = eng.mis_flags();
  auto mis = oracle::check_mis(eng.graph(), flags);
  if (!mis.empty()) return describe(mis.front());
  auto inv = oracle::audit_invariants(eng.graph());
  if (!inv.empty()) return describe(inv.front());
  return {};
}

class DeltaMisEngine final : public MisEngine {
 public:
  DeltaMisEngine(std::size_t n, std::uint64_t delta_bound)
      : eng_(n, delta_bound ? delta_bound : (n ? n - 1 : 0)) {}

  AdjustmentReport apply(const UpdateEvent& ev) override { return eng_.apply(ev); }
  std::size_t vertex_count() const override { return eng_.vertex_count(); }
  bool in_mis(VertexId v) const override { return eng_.in_mis(v); }
  std::vector<bool> mis_flags() const override { return eng_.mis_flags(); }
  const CostLedger& ledger() const override { return eng_.ledger(); }
  std::string audit() const override { return eng_.audit(); }
  const char* name() const override { return "delta"; }

 private:
  DeltaEngine eng_;
};

class SublinearMisEngine final : public MisEngine {
 public:
  explicit SublinearMisEngine(std::size_t n) : eng_(n) {}

  AdjustmentReport apply(const UpdateEvent& ev) override { return eng_.apply(ev); }
  std::size_t vertex_count() const override { return eng_.vertex_count(); }
  bool in_mis(VertexId v) const override { return eng_.in_mis(v); }
  std::vector<bool> mis_flags() const override { return eng_.mis_flags(); }
  const CostLedger& ledger() const override { return eng_.ledger(); }
  std::string audit() const override { return audit_sublinear(eng_); }
  const char* name() const override { return "sublinear"; }

 private:
  SublinearEngine eng_;
};

}  // namespace

AutoEngine::AutoEngine(std::size_t n, std::uint64_t delta_bound)
    : n_(n), delta_bound_(delta_bound) {
  mode_ = choose(delta_bound_, EpochConfig::for_edge_count(1).t_high);
  if (mode_ == AlgoKind::Delta)
    delta_ = std::make_unique<DeltaEngine>(n, delta_bound_);
  else
    sub_ = std::make_unique<SublinearEngine>(n);
}

bool AutoEngine::in_mis(VertexId v) const {
  return mode_ == AlgoKind::Delta ? delta_->in_mis(v) : sub_->in_mis(v);
}

std::vector<bool> AutoEngine::mis_flags() const {
  return mode_ == AlgoKind::Delta ? delta_->mis_flags() : sub_->mis_flags();
}

const CostLedger& AutoEngine::ledger() const {
  return mode_ == AlgoKind::Delta ? delta_->ledger() : sub_->ledger();
}

std::string AutoEngine::audit() const {
  return mode_ == AlgoKind::Delta ? delta_->audit() : audit_sublinear(*sub_);
}

std::vector<std::pair<VertexId, VertexId>> AutoEngine::live_edge_list() const {
  return {live_edges_.begin(), live_edges_.end()};
}

AdjustmentReport AutoEngine::apply(const UpdateEvent& ev) {
  auto norm = [](VertexId a, VertexId b) {
    return std::make_pair(std::min(a, b), std::max(a, b));
  };
  switch (ev.op) {
    case UpdateOp::EdgeInsert:
      live_edges_.insert(norm(ev.u, ev.v));
      break;
    case UpdateOp::EdgeDelete:
      live_edges_.erase(norm(ev.u, ev.v));
      break;
    case UpdateOp::VertexDelete:
      if (mode_ == AlgoKind::Delta)
        throw GraphError(GraphErrorCode::UnsupportedOp,
                         "vertex updates need the sublinear engine");
      sub_->graph().for_neighbors(ev.u, [&](VertexId x) {
        live_edges_.erase(norm(ev.u, x));
      });
      break;
    case UpdateOp::VertexInsert:
      break;
  }

  AdjustmentReport report =
      mode_ == AlgoKind::Delta ? delta_->apply(ev) : sub_->apply(ev);
  ++update_index_;
  ++epoch_updates_;
  maybe_switch_epoch();
  return report;
}

void AutoEngine::maybe_switch_epoch() {
  std::uint64_t m_eff = std::max<std::uint64_t>(live_edges_.size(), 1);
  if (m_eff <= 2 * m_snapshot_ && 2 * m_eff >= m_snapshot_) return;

  closed_.push_back({m_snapshot_, mode_, epoch_updates_});
  epoch_updates_ = 0;
  m_snapshot_ = m_eff;

  AlgoKind next = choose(delta_bound_, EpochConfig::for_edge_count(m_eff).t_high);
  if (next == mode_) return;  // the engines run their own in-mode epoching

  ++switch_count_;
  if (next == AlgoKind::Delta) {
    delta_ = std::make_unique<DeltaEngine>(n_, delta_bound_);
    delta_->rebuild_from(live_edge_list());
    sub_.reset();
  } else {
    sub_ = std::make_unique<SublinearEngine>(n_, live_edge_list(), update_index_);
    delta_.reset();
  }
  mode_ = next;
}

std::vector<AutoEngine::EpochRow> AutoEngine::epoch_log() const {
  auto out = closed_;
  out.push_back({m_snapshot_, mode_, epoch_updates_});
  return out;
}

std::unique_ptr<MisEngine> make_engine(AlgoKind kind, std::size_t n,
                                       std::uint64_t delta_bound) {
  switch (kind) {
    case AlgoKind::Delta:
      return std::make_unique<DeltaMisEngine>(n, delta_bound);
    case AlgoKind::Sublinear:
      return std::make_unique<SublinearMisEngine>(n);
    case AlgoKind::Auto:
      return std::make_unique<AutoEngine>(n, delta_bound);
  }
  return nullptr;
}

}  // namespace dynmis
