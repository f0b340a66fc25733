#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

#include "dynmis/oracle.hpp"
#include "dynmis/sublinear_engine.hpp"
#include "dynmis/workload.hpp"

using dynmis::DegreeClass;
using dynmis::SublinearEngine;
using dynmis::UpdateEvent;
using dynmis::VertexId;
namespace oracle = dynmis::oracle;

namespace {

using Edges = std::vector<std::pair<VertexId, VertexId>>;

void require_clean(const SublinearEngine& eng) {
  auto flags = eng.mis_flags();
  REQUIRE(oracle::check_mis(eng.graph(), flags).empty());
  REQUIRE(oracle::audit_invariants(eng.graph()).empty());
}

std::set<VertexId> as_set(const std::vector<VertexId>& v) {
  return {v.begin(), v.end()};
}

}  // namespace

TEST_CASE("preprocess: triangle, empty graph, path") {
  SublinearEngine tri(3, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(tri.in_mis(0));
  CHECK_FALSE(tri.in_mis(1));
  CHECK_FALSE(tri.in_mis(2));
  CHECK(tri.graph().mis_nei(0) == 0);
  CHECK(tri.graph().mis_nei(1) == 1);
  CHECK(tri.graph().mis_nei(2) == 1);
  require_clean(tri);

  SublinearEngine empty(4);
  for (VertexId v = 0; v < 4; ++v) CHECK(empty.in_mis(v));
  require_clean(empty);

  SublinearEngine path(4, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(path.in_mis(0));
  CHECK_FALSE(path.in_mis(1));
  CHECK(path.in_mis(2));
  CHECK_FALSE(path.in_mis(3));
  require_clean(path);
}

TEST_CASE("insert between two isolated MIS members evicts the lower id") {
  SublinearEngine eng(2);
  auto rep = eng.apply(UpdateEvent::edge_insert(0, 0, 1));
  CHECK(rep.removed == std::vector<VertexId>{0});
  CHECK(rep.inserted.empty());
  CHECK_FALSE(eng.in_mis(0));
  CHECK(eng.in_mis(1));
  require_clean(eng);
}

TEST_CASE("star eviction re-admits all independent leaves") {
  // K_{1,6}: center 0 in M, Low leaves out; connecting 0 to a fresh MIS
  // member removes 0 and every leaf joins.
  Edges edges;
  for (VertexId v = 1; v <= 6; ++v) edges.emplace_back(0, v);
  SublinearEngine eng(8, edges);
  REQUIRE(eng.in_mis(0));
  auto rep = eng.apply(UpdateEvent::edge_insert(0, 0, 7));
  CHECK(rep.removed == std::vector<VertexId>{0});
  CHECK(as_set(rep.inserted) == std::set<VertexId>{1, 2, 3, 4, 5, 6});
  require_clean(eng);
}

TEST_CASE("update procedures are involutions") {
  SublinearEngine eng(4, {{0, 1}, {1, 2}, {2, 3}});
  auto snapshot = [&] {
    std::vector<std::uint64_t> vals;
    for (VertexId v = 0; v < 4; ++v) vals.push_back(eng.graph().mis_nei(v));
    return vals;
  };
  auto before = snapshot();
  eng.update_neighbors(1, true);
  eng.update_neighbors(1, false);
  CHECK(snapshot() == before);
  eng.update_two_hop_neighbors(2, true);
  eng.update_two_hop_neighbors(2, false);
  CHECK(oracle::audit_invariants(eng.graph()).empty());
}

TEST_CASE("deletion: the noisy-counter trap") {
  // Vertex 2 is Low with mis_nei = 1 (vertex 1) while a High MIS member
  // (vertex 0) is invisible to its counter. Deleting (1,2) drives the
  // counter to zero but the neighborhood scan still finds 0.
  Edges edges;
  for (VertexId v = 10; v < 90; ++v) edges.emplace_back(0, v);  // High hub
  for (VertexId v = 100; v < 110; ++v) edges.emplace_back(1, v);
  edges.emplace_back(1, 2);
  edges.emplace_back(0, 2);
  edges.emplace_back(1, 3);
  for (VertexId v = 10; v < 20; ++v) edges.emplace_back(3, v);
  for (VertexId i = 0; i < 80; ++i) edges.emplace_back(150 + 2 * i, 151 + 2 * i);
  SublinearEngine eng(320, edges);
  REQUIRE(eng.graph().class_of(0) == DegreeClass::High);
  REQUIRE(eng.graph().class_of(2) == DegreeClass::Low);
  REQUIRE(eng.in_mis(0));
  REQUIRE(eng.in_mis(1));
  REQUIRE_FALSE(eng.in_mis(2));
  REQUIRE(eng.graph().mis_nei(2) == 1);  // counts 1, not the High member 0

  std::uint64_t idx = 0;
  auto rep = eng.apply(UpdateEvent::edge_delete(idx++, 1, 2));
  CHECK(rep.inserted.empty());  // trap: counter hit 0, but the scan finds 0
  CHECK_FALSE(eng.in_mis(2));
  require_clean(eng);

  rep = eng.apply(UpdateEvent::edge_delete(idx++, 0, 2));
  CHECK(rep.inserted == std::vector<VertexId>{2});  // now truly uncovered
  require_clean(eng);

  // Non-Low vertices join on the counter alone (Invariant 1 is exhaustive).
  REQUIRE(eng.graph().class_of(3) == DegreeClass::MedLow);
  rep = eng.apply(UpdateEvent::edge_delete(idx++, 1, 3));
  CHECK(rep.inserted == std::vector<VertexId>{3});
  require_clean(eng);
}

TEST_CASE("insertion case 1-a: the per-vertex scan filters High-blocked vertices") {
  // u_t = 1 has three Low neighbors 2, 3, 4; vertex 4 is also covered by the
  // High hub 0 that Low counters ignore. After 1 leaves, only 2 and 3 join.
  Edges edges;
  for (VertexId v = 10; v < 40; ++v) edges.emplace_back(0, v);
  edges.emplace_back(1, 2);
  edges.emplace_back(1, 3);
  edges.emplace_back(1, 4);
  edges.emplace_back(0, 4);
  SublinearEngine eng(41, edges);
  REQUIRE(eng.graph().class_of(0) == DegreeClass::High);
  REQUIRE(eng.in_mis(0));
  REQUIRE(eng.in_mis(1));
  REQUIRE(eng.graph().class_of(2) == DegreeClass::Low);
  REQUIRE(eng.graph().class_of(4) == DegreeClass::Low);

  auto rep = eng.apply(UpdateEvent::edge_insert(0, 1, 5));  // 5 is isolated, in M
  CHECK(rep.removed == std::vector<VertexId>{1});
  CHECK(as_set(rep.inserted) == std::set<VertexId>{2, 3});
  CHECK_FALSE(eng.in_mis(4));
  require_clean(eng);
}

TEST_CASE("insertion case 1-b: bulk joins, then the High sweep") {
  // Scale: ~70k edges so the thresholds separate. W (1100 Low vertices) is
  // covered by u_t = 0 (MedHigh) and the High hub 1; F (3500 Low leaves)
  // only by the hub. Evicting 0 bulk-inserts W, sweeps the hub out, and the
  // recursive drain re-admits F.
  Edges edges;
  const VertexId u_t = 0, hub = 1;
  std::vector<VertexId> w_set, f_set;
  VertexId next = 2;
  for (int i = 0; i < 1100; ++i) w_set.push_back(next++);
  for (int i = 0; i < 3500; ++i) f_set.push_back(next++);
  for (VertexId w : w_set) edges.emplace_back(u_t, w);
  for (VertexId w : w_set) edges.emplace_back(hub, w);
  for (VertexId f : f_set) edges.emplace_back(hub, f);
  // Ballast bipartite block to set the epoch scale.
  std::vector<VertexId> a_set, b_set;
  for (int i = 0; i < 500; ++i) a_set.push_back(next++);
  for (int i = 0; i < 130; ++i) b_set.push_back(next++);
  for (VertexId a : a_set)
    for (VertexId b : b_set) edges.emplace_back(a, b);
  const VertexId z = next++;  // isolated trigger partner
  SublinearEngine eng(next, edges);

  const auto& cfg = eng.graph().epoch();
  REQUIRE(eng.graph().class_of(hub) == DegreeClass::High);
  REQUIRE(eng.graph().class_of(u_t) == DegreeClass::MedHigh);
  REQUIRE(eng.in_mis(u_t));
  REQUIRE(eng.in_mis(hub));
  REQUIRE(w_set.size() > 4 * cfg.t_medhigh);   // forces case 1-b
  REQUIRE(w_set.size() <= 4 * cfg.t_high);     // inside case 1
  for (VertexId w : {w_set.front(), w_set.back()})
    REQUIRE(eng.graph().class_of(w) == DegreeClass::Low);

  auto rep = eng.apply(UpdateEvent::edge_insert(0, u_t, z));
  CHECK(as_set(rep.removed) == std::set<VertexId>{u_t, hub});
  CHECK(rep.inserted.size() == w_set.size() + f_set.size());
  CHECK(rep.inserted.size() >= 2 * rep.removed.size());

  // The paper's counting guarantee for the 1-b phase.
  REQUIRE(rep.sweeps.size() >= 1);
  const auto& sweep = rep.sweeps.front();
  CHECK(sweep.inserted >= w_set.size() / (cfg.t_medlow + 1));
  CHECK(sweep.inserted >= 2 * cfg.t_medlow);
  CHECK(sweep.removed <= eng.graph().class_members(DegreeClass::High).size() + 1);
  require_clean(eng);
}

TEST_CASE("insertion case 2 chains through the removal queue") {
  // Two cascading case-2 resolutions: W and W2 are huge Low blocks, each
  // covered by one High hub; the hubs fall one after another and the net
  // report still gains twice what it loses.
  const int kBlock = 20000;
  Edges edges;
  const VertexId u_t = 0, h1 = 1, h2 = 2;
  std::vector<VertexId> w1, w2;
  VertexId next = 3;
  for (int i = 0; i < kBlock; ++i) w1.push_back(next++);
  for (int i = 0; i < kBlock; ++i) w2.push_back(next++);
  for (VertexId w : w1) edges.emplace_back(u_t, w);
  for (VertexId w : w1) edges.emplace_back(h1, w);
  for (VertexId w : w2) edges.emplace_back(h1, w);
  for (VertexId w : w2) edges.emplace_back(h2, w);
  const VertexId z = next++;
  SublinearEngine eng(next, edges);

  const auto& cfg = eng.graph().epoch();
  REQUIRE(static_cast<std::uint64_t>(kBlock) > 4 * cfg.t_high);  // case 2
  REQUIRE(eng.in_mis(u_t));
  REQUIRE(eng.in_mis(h1));
  REQUIRE(eng.in_mis(h2));
  REQUIRE(eng.graph().class_of(h1) == DegreeClass::High);

  auto rep = eng.apply(UpdateEvent::edge_insert(0, u_t, z));
  CHECK(as_set(rep.removed) == std::set<VertexId>{u_t, h1, h2});
  CHECK(rep.inserted.size() == static_cast<std::size_t>(2 * kBlock));
  CHECK(rep.inserted.size() >= 2 * rep.removed.size());
  for (const auto& sweep : rep.sweeps)
    if (sweep.removed > 0) CHECK(sweep.inserted >= 2 * sweep.removed);
  require_clean(eng);
}

TEST_CASE("epoch boundaries are strict factor-2") {
  SublinearEngine eng(6);
  std::uint64_t idx = 0;
  eng.apply(UpdateEvent::edge_insert(idx++, 0, 1));  // m=1, snapshot 1
  CHECK_FALSE(eng.last_update_rebuilt());
  eng.apply(UpdateEvent::edge_insert(idx++, 0, 2));  // m=2 == 2*1: stays
  CHECK_FALSE(eng.last_update_rebuilt());
  eng.apply(UpdateEvent::edge_insert(idx++, 0, 3));  // m=3 > 2: rebuild
  CHECK(eng.last_update_rebuilt());
  CHECK(eng.graph().epoch().m_snapshot == 3);

  eng.apply(UpdateEvent::edge_delete(idx++, 0, 3));  // m=2, 2*2 >= 3: stays
  CHECK_FALSE(eng.last_update_rebuilt());
  eng.apply(UpdateEvent::edge_delete(idx++, 0, 2));  // m=1, 2*1 < 3: rebuild
  CHECK(eng.last_update_rebuilt());
  CHECK(eng.graph().epoch().m_snapshot == 1);

  auto history = eng.epoch_history();
  REQUIRE(history.size() == 3);
  CHECK(history[0].m_snapshot == 1);
  CHECK(history[0].updates == 3);
  CHECK(history[1].m_snapshot == 3);
  CHECK(history[1].updates == 2);
  require_clean(eng);
}

TEST_CASE("vertex updates: isolated insert and graceful delete") {
  SublinearEngine eng(6, {{0, 1}, {0, 2}, {1, 3}});
  REQUIRE(eng.in_mis(0));
  // Deleting 0 removes its edges; uncovered neighbors re-join.
  eng.apply({0, dynmis::UpdateOp::VertexDelete, 0, 0});
  CHECK(eng.in_mis(0));  // isolated again, by convention in the MIS
  CHECK(eng.graph().degree(0) == 0);
  require_clean(eng);

  CHECK_THROWS_AS(eng.apply({1, dynmis::UpdateOp::VertexInsert, 1, 0}),
                  dynmis::GraphError);  // still has edges
  eng.apply({2, dynmis::UpdateOp::VertexInsert, 0, 0});
  CHECK(eng.in_mis(0));
  require_clean(eng);
}

TEST_CASE("random churn: audits, Invariant 3 and ops bounds every step") {
  auto s = dynmis::gen_random(60, 4000, 0.55, 31);
  SublinearEngine eng(s.n);
  std::uint64_t total_adjustments = 0;
  for (const auto& ev : s.events) {
    auto rep = eng.apply(ev);
    total_adjustments += rep.total_adjustments();
    CHECK((rep.removed.size() <= 1 ||
           rep.inserted.size() >= 2 * rep.removed.size()));
    std::uint64_t budget = 64 * eng.graph().epoch().t_high *
                           std::max<std::uint64_t>(1, rep.total_adjustments());
    CHECK(rep.ops_spent <= budget);
    require_clean(eng);
  }
  CHECK(total_adjustments <= 10 * (s.events.size() + s.n));
}

TEST_CASE("per-epoch amortized work bound") {
  auto s = dynmis::gen_random(80, 6000, 0.6, 77);
  SublinearEngine eng(s.n);
  for (const auto& ev : s.events) eng.apply(ev);
  for (const auto& row : eng.epoch_history()) {
    if (row.updates == 0) continue;
    CHECK(row.ops <= 64 * row.updates * row.t_high);
  }
  require_clean(eng);
}
