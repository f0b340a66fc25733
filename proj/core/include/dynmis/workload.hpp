#pragma once

#include <cstdint>
#include <vector>

#include "dynmis/types.hpp"

namespace dynmis {

/// A self-contained update stream over a fixed vertex universe.
struct Stream {
  std::size_t n = 0;
  std::vector<UpdateEvent> events;
};

/// Seeded random insert/delete mix. Tracks live edges so the stream never
/// contains a duplicate insertion or a deletion of a missing edge.
/// `insert_bias` in [0,1] is the probability of attempting an insertion.
Stream gen_random(std::size_t n, std::size_t steps, double insert_bias,
                  std::uint64_t seed);

/// Sliding-window stream: random insertions, evicting the oldest live edge
/// whenever more than `window` edges are alive.
Stream gen_sliding_window(std::size_t n, std::size_t steps, std::size_t window,
                          std::uint64_t seed);

/// Random mixed stream including vertex insertions/deletions (for the
/// distributed simulator); edge ops touch only currently active vertices.
Stream gen_mixed_vertex(std::size_t n, std::size_t steps, std::uint64_t seed);

/// Adversarial stream: builds two disjoint complete bipartite graphs
/// K_{n/4,n/4}, deletes (vertex by vertex) every edge of both left sides
/// except one retained hub per graph, then inserts the hub-hub edge, forcing
/// >= n/4 MIS adjustments in that final update. Requires n >= 8, n % 8 == 0.
Stream gen_adversary(std::size_t n);

}  // namespace dynmis
