#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "dynmis/delta_engine.hpp"
#include "dynmis/workload.hpp"

using dynmis::DeltaEngine;
using dynmis::GraphError;
using dynmis::GraphErrorCode;
using dynmis::VertexId;

TEST_CASE("initial state: everyone in the MIS, counters zero") {
  DeltaEngine eng(5, 4);
  for (VertexId v = 0; v < 5; ++v) {
    CHECK(eng.in_mis(v));
    CHECK(eng.mis_counter(v) == 0);
  }
  CHECK(eng.audit().empty());
}

TEST_CASE("insertion with both endpoints in M removes the lower id") {
  DeltaEngine eng(2, 1);
  auto rep = eng.insert_edge(0, 1);
  CHECK(rep.removed == std::vector<VertexId>{0});
  CHECK(rep.inserted.empty());
  CHECK_FALSE(eng.in_mis(0));
  CHECK(eng.in_mis(1));
  CHECK(eng.audit().empty());
}

TEST_CASE("greedy re-maximalization over the removed vertex's neighborhood") {
  // Target state: star center 0 in M, leaves 1..4 out, isolated 5 in M.
  // Reach it via auxiliary partners 6..9 that evict the leaves first, since
  // a direct (0, leaf) insertion would evict 0 (lowest id leaves).
  DeltaEngine eng(10, 9);
  for (VertexId v = 1; v <= 4; ++v) eng.insert_edge(v, v + 5);  // evicts v
  for (VertexId v = 1; v <= 4; ++v) eng.insert_edge(0, v);
  for (VertexId v = 1; v <= 4; ++v) eng.delete_edge(v, v + 5);
  REQUIRE(eng.in_mis(0));
  for (VertexId v = 1; v <= 4; ++v) REQUIRE_FALSE(eng.in_mis(v));
  auto rep = eng.insert_edge(0, 5);
  CHECK(rep.removed == std::vector<VertexId>{0});
  std::set<VertexId> ins(rep.inserted.begin(), rep.inserted.end());
  CHECK(ins == std::set<VertexId>{1, 2, 3, 4});
  CHECK(eng.audit().empty());
}

TEST_CASE("insertion between M and non-M only bumps a counter") {
  DeltaEngine eng(3, 2);
  eng.insert_edge(0, 1);  // 0 leaves
  auto rep = eng.insert_edge(1, 2);  // 1 in M, 2... also in M -> conflict
  // 1 < 2, so 1 leaves and 0 rejoins through 1's neighborhood scan.
  CHECK(rep.removed == std::vector<VertexId>{1});
  CHECK(rep.inserted == std::vector<VertexId>{0});
  // Triangle closure: 0 leaves again; 1 stays blocked by 2, nothing joins.
  auto rep2 = eng.insert_edge(0, 2);
  CHECK(rep2.removed == std::vector<VertexId>{0});
  CHECK(rep2.inserted.empty());
  CHECK(eng.in_mis(2));
  CHECK(eng.audit().empty());
}

TEST_CASE("deletion cases") {
  // Path 0-1-2 with M={0,2}: deleting (0,1) leaves 1 blocked by 2.
  DeltaEngine eng(3, 2);
  eng.insert_edge(0, 1);
  eng.insert_edge(1, 2);
  REQUIRE(eng.in_mis(0));
  REQUIRE(eng.in_mis(2));
  auto rep = eng.delete_edge(0, 1);
  CHECK(rep.removed.empty());
  CHECK(rep.inserted.empty());
  CHECK_FALSE(eng.in_mis(1));

  // Single edge with one endpoint in M: the other joins on deletion.
  DeltaEngine eng2(2, 1);
  eng2.insert_edge(0, 1);
  auto rep2 = eng2.delete_edge(0, 1);
  CHECK(rep2.inserted == std::vector<VertexId>{0});
  CHECK(eng2.in_mis(0));
  CHECK(eng2.in_mis(1));
  CHECK(eng2.audit().empty());
}

TEST_CASE("deletion with neither endpoint in M changes nothing") {
  // Path 1-0, 1-2, 0-3, 2-3: force 0 and 2 out, then delete (0,2)? Use a
  // 4-cycle where M={1,3} after the conflicts resolve.
  DeltaEngine eng(4, 3);
  eng.insert_edge(0, 1);  // 0 out
  eng.insert_edge(2, 3);  // 2 out
  eng.insert_edge(0, 2);  // neither in M
  auto rep = eng.delete_edge(0, 2);
  CHECK(rep.removed.empty());
  CHECK(rep.inserted.empty());
  CHECK(eng.audit().empty());
}

TEST_CASE("at most one vertex leaves M per update") {
  auto s = dynmis::gen_random(30, 3000, 0.55, 13);
  DeltaEngine eng(s.n, s.n - 1);
  for (const auto& ev : s.events) {
    auto rep = eng.apply(ev);
    CHECK(rep.removed.size() <= 1);
    REQUIRE(eng.audit().empty());
  }
}

TEST_CASE("degree bound is enforced") {
  DeltaEngine eng(5, 2);
  eng.insert_edge(0, 1);
  eng.insert_edge(0, 2);
  CHECK_THROWS_AS(eng.insert_edge(0, 3), GraphError);
  try {
    eng.insert_edge(0, 3);
  } catch (const GraphError& e) {
    CHECK(e.code() == GraphErrorCode::DegreeBoundExceeded);
  }
}

TEST_CASE("charging bound: total ops <= 32 * K * delta") {
  const std::uint64_t delta = 8;
  // Keep degrees under the bound with a sparse stream on many vertices.
  auto s = dynmis::gen_random(400, 5000, 0.5, 21);
  DeltaEngine eng(s.n, delta);
  std::uint64_t applied = 0;
  for (const auto& ev : s.events) {
    try {
      eng.apply(ev);
      ++applied;
    } catch (const GraphError&) {
      // Degree-capped insert skipped; the stream stays consistent because the
      // paired delete of a skipped edge would also throw and be skipped.
      break;
    }
  }
  CHECK(applied > 1000);
  CHECK(eng.ledger().total_ops <= 32 * applied * delta);
}

TEST_CASE("rebuild_from recomputes the greedy MIS") {
  DeltaEngine eng(6, 5);
  eng.rebuild_from({{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  CHECK(eng.in_mis(0));
  CHECK_FALSE(eng.in_mis(1));
  CHECK(eng.in_mis(2));
  CHECK_FALSE(eng.in_mis(3));
  CHECK(eng.in_mis(4));
  CHECK(eng.in_mis(5));
  CHECK(eng.audit().empty());
}
