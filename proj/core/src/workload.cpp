#include "dynmis/workload.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>

namespace dynmis {

namespace {

using EdgeSet = std::set<std::pair<VertexId, VertexId>>;

std::pair<VertexId, VertexId> norm(VertexId a, VertexId b) {
  return {std::min(a, b), std::max(a, b)};
}

// Uniform draw in [0, bound) by modulo reduction: slightly biased in theory
// but portable and fully reproducible, which matters more here.
std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) {
  return rng() % bound;
}

std::pair<VertexId, VertexId> pick_non_edge(std::mt19937_64& rng,
                                            const std::vector<VertexId>& verts,
                                            const EdgeSet& live) {
  for (int attempt = 0; attempt < 50; ++attempt) {
    VertexId a = verts[draw(rng, verts.size())];
    VertexId b = verts[draw(rng, verts.size())];
    if (a == b) continue;
    auto e = norm(a, b);
    if (!live.count(e)) return e;
  }
  // Dense fallback: enumerate the remaining non-edges deterministically.
  std::vector<std::pair<VertexId, VertexId>> holes;
  for (std::size_t i = 0; i < verts.size(); ++i)
    for (std::size_t j = i + 1; j < verts.size(); ++j)
      if (!live.count(norm(verts[i], verts[j])))
        holes.push_back(norm(verts[i], verts[j]));
  if (holes.empty()) throw std::logic_error("no non-edge available");
  return holes[draw(rng, holes.size())];
}

std::pair<VertexId, VertexId> pick_live_edge(std::mt19937_64& rng,
                                             const EdgeSet& live) {
  auto it = live.begin();
  std::advance(it, draw(rng, live.size()));
  return *it;
}

}  // namespace

Stream gen_random(std::size_t n, std::size_t steps, double insert_bias,
                  std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("gen_random needs n >= 2");
  std::mt19937_64 rng(seed);
  Stream s;
  s.n = n;
  std::vector<VertexId> verts(n);
  for (std::size_t i = 0; i < n; ++i) verts[i] = static_cast<VertexId>(i);
  EdgeSet live;
  const std::uint64_t max_edges = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  for (std::size_t i = 0; i < steps; ++i) {
    bool want_insert = (rng() % 1000000) < static_cast<std::uint64_t>(insert_bias * 1000000);
    if (live.empty()) want_insert = true;
    if (live.size() == max_edges) want_insert = false;
    if (want_insert) {
      auto e = pick_non_edge(rng, verts, live);
      live.insert(e);
      s.events.push_back(UpdateEvent::edge_insert(i, e.first, e.second));
    } else {
      auto e = pick_live_edge(rng, live);
      live.erase(e);
      s.events.push_back(UpdateEvent::edge_delete(i, e.first, e.second));
    }
  }
  return s;
}

Stream gen_sliding_window(std::size_t n, std::size_t steps, std::size_t window,
                          std::uint64_t seed) {
  if (n < 2 || window == 0)
    throw std::invalid_argument("gen_sliding_window needs n >= 2, window >= 1");
  std::mt19937_64 rng(seed);
  Stream s;
  s.n = n;
  std::vector<VertexId> verts(n);
  for (std::size_t i = 0; i < n; ++i) verts[i] = static_cast<VertexId>(i);
  EdgeSet live;
  std::vector<std::pair<VertexId, VertexId>> fifo;
  std::size_t head = 0;
  for (std::size_t i = 0; i < steps; ++i) {
    if (live.size() >= window) {
      auto e = fifo[head++];
      live.erase(e);
      s.events.push_back(UpdateEvent::edge_delete(i, e.first, e.second));
    } else {
      auto e = pick_non_edge(rng, verts, live);
      live.insert(e);
      fifo.push_back(e);
      s.events.push_back(UpdateEvent::edge_insert(i, e.first, e.second));
    }
  }
  return s;
}

Stream gen_mixed_vertex(std::size_t n, std::size_t steps, std::uint64_t seed) {
  if (n < 4) throw std::invalid_argument("gen_mixed_vertex needs n >= 4");
  std::mt19937_64 rng(seed);
  Stream s;
  s.n = n;
  std::vector<bool> active(n, true);
  std::vector<VertexId> active_list(n);
  for (std::size_t i = 0; i < n; ++i) active_list[i] = static_cast<VertexId>(i);
  EdgeSet live;

  auto rebuild_active = [&] {
    active_list.clear();
    for (VertexId v = 0; v < n; ++v)
      if (active[v]) active_list.push_back(v);
  };

  for (std::size_t i = 0; i < steps; ++i) {
    std::uint64_t roll = rng() % 100;
    if (roll < 50 || live.empty()) {
      // Edge insertion between active vertices.
      if (active_list.size() < 2) {
        // Re-activate someone first.
        VertexId v = 0;
        while (active[v]) ++v;
        active[v] = true;
        rebuild_active();
        s.events.push_back({i, UpdateOp::VertexInsert, v, 0});
        continue;
      }
      auto e = pick_non_edge(rng, active_list, live);
      live.insert(e);
      s.events.push_back(UpdateEvent::edge_insert(i, e.first, e.second));
    } else if (roll < 80) {
      auto e = pick_live_edge(rng, live);
      live.erase(e);
      s.events.push_back(UpdateEvent::edge_delete(i, e.first, e.second));
    } else if (roll < 90) {
      // Vertex deletion (graceful): one event, edges vanish with it.
      VertexId v = active_list[draw(rng, active_list.size())];
      active[v] = false;
      rebuild_active();
      for (auto it = live.begin(); it != live.end();)
        it = (it->first == v || it->second == v) ? live.erase(it) : std::next(it);
      s.events.push_back({i, UpdateOp::VertexDelete, v, 0});
    } else {
      // Vertex re-insertion, if anyone is inactive.
      std::vector<VertexId> inactive;
      for (VertexId v = 0; v < n; ++v)
        if (!active[v]) inactive.push_back(v);
      if (inactive.empty()) {
        auto e = pick_non_edge(rng, active_list, live);
        live.insert(e);
        s.events.push_back(UpdateEvent::edge_insert(i, e.first, e.second));
      } else {
        VertexId v = inactive[draw(rng, inactive.size())];
        active[v] = true;
        rebuild_active();
        s.events.push_back({i, UpdateOp::VertexInsert, v, 0});
      }
    }
  }
  return s;
}

Stream gen_adversary(std::size_t n) {
  if (n < 8 || n % 8 != 0)
    throw std::invalid_argument("gen_adversary needs n >= 8 divisible by 8");
  const VertexId k = static_cast<VertexId>(n / 4);
  Stream s;
  s.n = n;
  std::uint64_t idx = 0;

  // Each half uses ids [base, base+2k): the retained hub at `base`, its
  // opposite side R at base+1..base+k, and the doomed left-side rest D at
  // base+k+1..base+2k-1. Hub edges come first so the replayed MIS settles on
  // the left side under the engines' lowest-id tie-breaks.
  auto build = [&](VertexId base) {
    for (VertexId r = 1; r <= k; ++r)
      s.events.push_back(UpdateEvent::edge_insert(idx++, base, base + r));
    for (VertexId d = k + 1; d < 2 * k; ++d)
      for (VertexId r = 1; r <= k; ++r)
        s.events.push_back(UpdateEvent::edge_insert(idx++, base + d, base + r));
  };
  auto teardown = [&](VertexId base) {
    for (VertexId d = k + 1; d < 2 * k; ++d)
      for (VertexId r = 1; r <= k; ++r)
        s.events.push_back(UpdateEvent::edge_delete(idx++, base + d, base + r));
  };

  build(0);
  build(2 * k);
  teardown(0);
  teardown(2 * k);
  s.events.push_back(UpdateEvent::edge_insert(idx++, 0, 2 * k));
  return s;
}

}  // namespace dynmis
