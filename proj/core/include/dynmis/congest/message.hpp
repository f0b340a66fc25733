#pragma once

#include <cstdint>

#include "dynmis/types.hpp"

namespace dynmis::congest {

/// Closed set of payload tags; the encoder budgets 4 bits for the tag.
enum class MsgTag : std::uint8_t {
  Hello,            // new edge: degree estimate + membership bit
  DegreeAnnounce,   // refreshed estimate + membership bit
  EpochAnnounce,    // post-rebuild estimate (membership implicitly false)
  FlagNotify,       // UpdateNeighbors: origin joined/left M
  TwoHopFlag,       // UpdateTwoHopNeighbors round 1 (to Low neighbors)
  TwoHopDelta,      // relayed +-1 for key vertex
  TwoHopSet,        // absolute counter value for key vertex
  StatusQuery,
  StatusReply,      // membership + counter-zero bit
  JoinGrant,
  ProbeRequest,     // ask a Low candidate to scan its own neighborhood
  ProbeReply,       // blocked bit
  SurveyRequest,    // look for violating M-members among your neighbors
  SurveyReply,      // one violating vertex id
  RemoveOrder,      // routed via a relay neighbor
  TerminateEpoch,   // flood fill: new edge count
};

/// One CONGEST message. `a`/`b` are tag-dependent payload fields (vertex ids,
/// estimates, counters, boolean bits); unused fields cost no bits.
struct SimMessage {
  VertexId src = 0;
  VertexId dst = 0;
  MsgTag tag = MsgTag::Hello;
  std::uint64_t a = 0;
  std::uint64_t b = 0;

  /// Encoded payload size in bits for an n-vertex network: 4 tag bits plus
  /// the tag's fields at ceil(log2 n) bits per id/estimate/counter (edge
  /// counts take two words). Must stay <= 4*ceil(log2 n) (CONGEST budget).
  std::uint64_t encoded_bits(std::size_t n) const;
};

std::uint64_t id_bits(std::size_t n);

}  // namespace dynmis::congest
