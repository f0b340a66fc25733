#include "dynmis/congest/node.hpp"

#include <stdexcept>

#include "dynmis/congest/message.hpp"

namespace dynmis::congest {

std::uint64_t id_bits(std::size_t n) {
  std::uint64_t bits = 1;
  while ((std::uint64_t{1} << bits) < n) ++bits;
  return bits;
}

std::uint64_t SimMessage::encoded_bits(std::size_t n) const {
  const std::uint64_t w = id_bits(n);
  switch (tag) {
    case MsgTag::Hello:
    case MsgTag::DegreeAnnounce: return 4 + w + 1;  // estimate + membership bit
    case MsgTag::EpochAnnounce: return 4 + w;
    case MsgTag::FlagNotify:
    case MsgTag::TwoHopFlag: return 4 + 1;
    case MsgTag::TwoHopDelta: return 4 + w + 1;   // key + sign
    case MsgTag::TwoHopSet: return 4 + 2 * w;     // key + counter
    case MsgTag::StatusQuery:
    case MsgTag::JoinGrant:
    case MsgTag::ProbeRequest:
    case MsgTag::SurveyRequest: return 4;
    case MsgTag::StatusReply: return 4 + 2;       // membership + zero bits
    case MsgTag::ProbeReply: return 4 + 1;
    case MsgTag::SurveyReply:
    case MsgTag::RemoveOrder: return 4 + w;       // one vertex id
    case MsgTag::TerminateEpoch: return 4 + 2 * w;  // edge count <= n^2
  }
  return 4;
}

namespace {
bool lowish(DegreeClass c) {
  return c == DegreeClass::MedLow || c == DegreeClass::Low;
}
}  // namespace

std::uint64_t SimNode::derived_mis_nei() const {
  const bool self_low = cls() == DegreeClass::Low;
  std::uint64_t count = 0;
  for (const auto& [x, view] : nbr_)
    if (view.known_in_m &&
        (!self_low || cfg_.classify(view.cached_est) != DegreeClass::High))
      ++count;
  return count;
}

std::vector<VertexId> SimNode::neighbors() const {
  std::vector<VertexId> out;
  out.reserve(nbr_.size());
  for (const auto& [x, view] : nbr_) out.push_back(x);
  return out;
}

std::vector<VertexId> SimNode::neighbors_in_class(DegreeClass c) const {
  std::vector<VertexId> out;
  for (const auto& [x, view] : nbr_)
    if (cfg_.classify(view.cached_est) == c) out.push_back(x);
  return out;
}

std::vector<VertexId> SimNode::non_low_neighbors() const {
  std::vector<VertexId> out;
  for (const auto& [x, view] : nbr_)
    if (cfg_.classify(view.cached_est) != DegreeClass::Low) out.push_back(x);
  return out;
}

std::vector<VertexId> SimNode::low_zero_two_hop() const {
  std::vector<VertexId> out;
  for (const auto& [w, count] : mis_2hop_)
    if (count == 0 && !nbr_.at(w).known_in_m) out.push_back(w);
  return out;
}

std::uint64_t SimNode::compute_low_scan() const {
  std::uint64_t count = 0;
  for (const auto& [x, view] : nbr_)
    if (view.known_in_m && lowish(cfg_.classify(view.cached_est))) ++count;
  return count;
}

bool SimNode::needs_refresh() const {
  std::uint64_t deg = degree();
  return (deg == 0 && degree_est_ != 0) || deg > 2 * degree_est_ ||
         2 * deg < degree_est_;
}

void SimNode::on_new_neighbor(VertexId x, std::uint64_t est, bool in_m) {
  nbr_[x] = {est, in_m};
  if (cfg_.classify(est) == DegreeClass::Low) mis_2hop_.emplace(x, 0);
}

void SimNode::on_lost_neighbor(VertexId x) {
  nbr_.erase(x);
  mis_2hop_.erase(x);
}

AnnounceReaction SimNode::on_degree_announce(VertexId x, std::uint64_t est,
                                             bool in_m) {
  auto& view = nbr_.at(x);
  DegreeClass oldc = cfg_.classify(view.cached_est);
  DegreeClass newc = cfg_.classify(est);
  view.cached_est = est;
  view.known_in_m = in_m;

  AnnounceReaction r;
  if (oldc == newc) return r;
  if (newc == DegreeClass::Low) mis_2hop_.emplace(x, 0);
  if (oldc == DegreeClass::Low) mis_2hop_.erase(x);
  // An M-member crossing the MedLow ∪ Low boundary changes what my own
  // two-hop entry (held by my neighbors) should count; I relay the delta.
  if (cls() == DegreeClass::Low && in_m && lowish(oldc) != lowish(newc)) {
    r.relay_two_hop = true;
    r.delta = lowish(newc) ? +1 : -1;
  }
  return r;
}

void SimNode::on_epoch_announce(VertexId x, std::uint64_t est) {
  nbr_.at(x) = {est, false};
  if (cfg_.classify(est) == DegreeClass::Low) mis_2hop_.emplace(x, 0);
}

void SimNode::on_two_hop_set(VertexId key, std::uint64_t count) {
  mis_2hop_.at(key) = count;
}

void SimNode::on_two_hop_delta(VertexId key, int delta) {
  auto it = mis_2hop_.find(key);
  if (it == mis_2hop_.end())
    throw std::logic_error("two-hop delta for an unknown key");
  it->second += delta;
}

void SimNode::reset_for_epoch(const EpochConfig& cfg) {
  cfg_ = cfg;
  degree_est_ = degree();
  mis_flag_ = nbr_.empty();
  mis_2hop_.clear();
  for (auto& [x, view] : nbr_) view.known_in_m = false;
}

}  // namespace dynmis::congest
