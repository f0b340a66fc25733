#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <utility>

#include "dynmis/workload.hpp"

using dynmis::gen_adversary;
using dynmis::gen_mixed_vertex;
using dynmis::gen_random;
using dynmis::gen_sliding_window;
using dynmis::Stream;
using dynmis::UpdateOp;
using dynmis::VertexId;

namespace {

bool streams_equal(const Stream& a, const Stream& b) {
  if (a.n != b.n || a.events.size() != b.events.size()) return false;
  for (std::size_t i = 0; i < a.events.size(); ++i) {
    const auto& x = a.events[i];
    const auto& y = b.events[i];
    if (x.op != y.op || x.u != y.u || x.v != y.v || x.index != y.index)
      return false;
  }
  return true;
}

// Replays edge events, asserting no duplicate insert / missing delete.
// Vertex deletes drop incident edges, matching the engines' semantics.
void check_replayable(const Stream& s) {
  std::set<std::pair<VertexId, VertexId>> live;
  auto norm = [](VertexId a, VertexId b) {
    return std::make_pair(std::min(a, b), std::max(a, b));
  };
  for (const auto& ev : s.events) {
    switch (ev.op) {
      case UpdateOp::EdgeInsert:
        REQUIRE(ev.u != ev.v);
        REQUIRE(ev.u < s.n);
        REQUIRE(ev.v < s.n);
        REQUIRE(live.insert(norm(ev.u, ev.v)).second);
        break;
      case UpdateOp::EdgeDelete:
        REQUIRE(live.erase(norm(ev.u, ev.v)) == 1);
        break;
      case UpdateOp::VertexDelete:
        for (auto it = live.begin(); it != live.end();)
          it = (it->first == ev.u || it->second == ev.u) ? live.erase(it)
                                                         : std::next(it);
        break;
      case UpdateOp::VertexInsert:
        for (const auto& e : live) REQUIRE(e.first != ev.u);
        for (const auto& e : live) REQUIRE(e.second != ev.u);
        break;
    }
  }
}

}  // namespace

TEST_CASE("gen_random is deterministic per seed and replayable") {
  Stream a = gen_random(30, 500, 0.6, 99);
  Stream b = gen_random(30, 500, 0.6, 99);
  CHECK(streams_equal(a, b));
  CHECK(a.events.size() == 500);
  check_replayable(a);
  Stream c = gen_random(30, 500, 0.6, 100);
  CHECK_FALSE(streams_equal(a, c));
}

TEST_CASE("gen_random with bias 1.0 builds the complete graph") {
  const std::size_t n = 7;
  Stream s = gen_random(n, n * (n - 1) / 2, 1.0, 1);
  std::set<std::pair<VertexId, VertexId>> live;
  for (const auto& ev : s.events) {
    REQUIRE(ev.op == UpdateOp::EdgeInsert);
    live.emplace(std::min(ev.u, ev.v), std::max(ev.u, ev.v));
  }
  CHECK(live.size() == n * (n - 1) / 2);
}

TEST_CASE("gen_sliding_window keeps at most `window` live edges") {
  Stream s = gen_sliding_window(20, 800, 25, 5);
  check_replayable(s);
  std::set<std::pair<VertexId, VertexId>> live;
  auto norm = [](VertexId a, VertexId b) {
    return std::make_pair(std::min(a, b), std::max(a, b));
  };
  for (const auto& ev : s.events) {
    if (ev.op == UpdateOp::EdgeInsert)
      live.insert(norm(ev.u, ev.v));
    else
      live.erase(norm(ev.u, ev.v));
    CHECK(live.size() <= 25);
  }
}

TEST_CASE("gen_mixed_vertex emits vertex ops and stays replayable") {
  Stream s = gen_mixed_vertex(40, 2000, 11);
  check_replayable(s);
  bool has_vi = false, has_vd = false;
  for (const auto& ev : s.events) {
    has_vi |= ev.op == UpdateOp::VertexInsert;
    has_vd |= ev.op == UpdateOp::VertexDelete;
  }
  CHECK(has_vi);
  CHECK(has_vd);
  CHECK(streams_equal(s, gen_mixed_vertex(40, 2000, 11)));
}

TEST_CASE("gen_adversary event counts match the construction") {
  // Per half with k = n/4: k hub edges plus (k-1)*k doomed edges, then
  // (k-1)*k deletions; one closing hub-hub insertion.
  for (std::size_t n : {8ull, 16ull, 64ull}) {
    const std::size_t k = n / 4;
    Stream s = gen_adversary(n);
    CHECK(s.events.size() == 2 * k * k + 2 * (k - 1) * k + 1);
    check_replayable(s);
    const auto& last = s.events.back();
    CHECK(last.op == UpdateOp::EdgeInsert);
    CHECK(last.u == 0);
    CHECK(last.v == 2 * k);
    CHECK(streams_equal(s, gen_adversary(n)));
  }
  CHECK(gen_adversary(8).events.size() == 13);  // 8 builds + 4 teardowns + 1
}

TEST_CASE("gen_adversary rejects bad n") {
  CHECK_THROWS_AS(gen_adversary(12), std::invalid_argument);
  CHECK_THROWS_AS(gen_adversary(4), std::invalid_argument);
}
