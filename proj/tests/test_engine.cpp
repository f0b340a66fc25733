#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "dynmis/engine.hpp"
#include "dynmis/workload.hpp"

using dynmis::AlgoKind;
using dynmis::AutoEngine;
using dynmis::UpdateEvent;
using dynmis::VertexId;

TEST_CASE("no declared degree bound means sublinear always") {
  AutoEngine eng(20, 0);
  CHECK(eng.mode() == AlgoKind::Sublinear);
  auto s = dynmis::gen_random(20, 400, 0.6, 3);
  for (const auto& ev : s.events) eng.apply(ev);
  CHECK(eng.mode() == AlgoKind::Sublinear);
  CHECK(eng.switch_count() == 0);
  CHECK(eng.audit().empty());
}

TEST_CASE("small declared bound routes to the counter engine once t_high allows") {
  // t_high starts at 1 (< 4), so the first epoch is sublinear; as soon as an
  // epoch opens with t_high >= 4 the dispatcher switches.
  AutoEngine eng(60, 4);
  CHECK(eng.mode() == AlgoKind::Sublinear);
  std::uint64_t idx = 0;
  for (VertexId v = 0; v < 30; ++v)
    eng.apply(UpdateEvent::edge_insert(idx++, 2 * v, 2 * v + 1));
  CHECK(eng.mode() == AlgoKind::Delta);  // matching: max degree 1 <= 4
  CHECK(eng.switch_count() == 1);
  CHECK(eng.edge_count() == 30);
  CHECK(eng.audit().empty());
}

TEST_CASE("dense drift switches back to sublinear at an epoch boundary") {
  AutoEngine eng(64, 6);  // delta while t_high >= 6, i.e. m modest
  std::uint64_t idx = 0;
  // Grow a matching: epochs cross t_high >= 6 quickly.
  for (VertexId v = 0; v < 32; ++v)
    eng.apply(UpdateEvent::edge_insert(idx++, 2 * v, 2 * v + 1));
  CHECK(eng.mode() == AlgoKind::Delta);
  std::uint64_t switches_mid = eng.switch_count();
  // Shrink below m where t_high < 6 (t_high(7)=5): delete down to few edges.
  for (VertexId v = 0; v < 29; ++v)
    eng.apply(UpdateEvent::edge_delete(idx++, 2 * v, 2 * v + 1));
  CHECK(eng.mode() == AlgoKind::Sublinear);
  CHECK(eng.switch_count() == switches_mid + 1);
  CHECK(eng.audit().empty());

  // Every closed epoch ran on exactly one engine.
  auto log = eng.epoch_log();
  REQUIRE_FALSE(log.empty());
  for (const auto& row : log)
    CHECK((row.mode == AlgoKind::Delta || row.mode == AlgoKind::Sublinear));
}

TEST_CASE("reports and final MIS survive engine switches under churn") {
  auto s = dynmis::gen_random(48, 3000, 0.6, 9);
  // Declare the true max degree of the stream so delta mode never rejects.
  std::vector<std::uint64_t> deg(s.n, 0);
  std::uint64_t max_deg = 1;
  for (const auto& ev : s.events) {
    if (ev.op == dynmis::UpdateOp::EdgeInsert) {
      max_deg = std::max({max_deg, ++deg[ev.u], ++deg[ev.v]});
    } else {
      --deg[ev.u];
      --deg[ev.v];
    }
  }
  AutoEngine eng(48, max_deg);
  std::uint64_t adjustments = 0;
  for (const auto& ev : s.events) {
    auto rep = eng.apply(ev);
    adjustments += rep.total_adjustments();
    REQUIRE(eng.audit().empty());
  }
  CHECK(adjustments > 0);
  CHECK(eng.switch_count() > 0);
}

TEST_CASE("make_engine factory and names") {
  auto d = dynmis::make_engine(AlgoKind::Delta, 10, 5);
  auto su = dynmis::make_engine(AlgoKind::Sublinear, 10, 0);
  auto au = dynmis::make_engine(AlgoKind::Auto, 10, 5);
  CHECK(std::string(d->name()) == "delta");
  CHECK(std::string(su->name()) == "sublinear");
  CHECK(std::string(au->name()) == "auto");
  for (auto* e : {d.get(), su.get(), au.get()}) {
    e->apply(UpdateEvent::edge_insert(0, 0, 1));
    CHECK(e->audit().empty());
    CHECK(e->vertex_count() == 10);
  }
  CHECK(std::string(dynmis::to_string(AlgoKind::Auto)) == "auto");
}
