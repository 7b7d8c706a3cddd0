#include <doctest.h>

#include "mis/benchmarks.hpp"
#include "mis/unfold.hpp"

using namespace mis;

namespace {

std::size_t slot_of(const Layout& l, const Name& agent, const Name& mod) {
  for (std::size_t i = 0; i < l.slots.size(); ++i)
    if (l.slots[i].agent_id == agent && l.slots[i].module_name == mod) return i;
  FAIL("no such slot");
  return 0;
}

}  // namespace

TEST_CASE("layout orders agents by id, modules in declaration order") {
  Mis m = bench::ttc(2);
  Layout l = Layout::of(m);
  REQUIRE(l.slots.size() == 3);
  CHECK(l.slots[0].agent_id == "ctrl");
  CHECK(l.slots[1].agent_id == "tr_1");
  CHECK(l.slots[2].agent_id == "tr_2");
  CHECK(l.agent_slots[0] == std::vector<std::size_t>{0});
}

TEST_CASE("possible interferences of the controller seeing a request") {
  Mis m = bench::ttc(1);
  Layout l = Layout::of(m);
  std::size_t ctrl = slot_of(l, "ctrl", "m");
  std::size_t train = slot_of(l, "tr_1", "m");
  GlobalState q(l.slots.size());
  q[ctrl] = "tun_free";
  q[train] = "tun_needed";
  JointAction a(l.slots.size());
  a[ctrl] = "accepting";
  a[train] = "request";
  CHECK(possible_interferences(l, q, a, ctrl) == std::set<Name>{"grant_1"});
  CHECK(possible_interferences(l, q, a, train) == std::set<Name>{"retry"});
}

TEST_CASE("successors are the product of per-module successor sets") {
  Mis m = bench::ttc(1);
  Layout l = Layout::of(m);
  std::size_t ctrl = slot_of(l, "ctrl", "m");
  std::size_t train = slot_of(l, "tr_1", "m");
  GlobalState q(l.slots.size());
  q[ctrl] = "tun_free";
  q[train] = "tun_needed";
  JointAction a(l.slots.size());
  a[ctrl] = "accepting";
  a[train] = "request";
  std::set<GlobalState> succ = successors(l, q, a);
  // product law: |succ| equals the product of per-slot branch counts
  std::size_t product = 1;
  for (std::size_t i = 0; i < l.slots.size(); ++i) {
    std::set<Name> locals;
    for (const GlobalState& t : succ) locals.insert(t[i]);
    product *= locals.size();
  }
  CHECK(succ.size() == product);
  GlobalState expect(l.slots.size());
  expect[ctrl] = "tr_1granted";
  expect[train] = "tun_needed";
  CHECK(succ == std::set<GlobalState>{expect});
}

TEST_CASE("product law holds on every reachable state of ttc(2)") {
  Mis m = bench::ttc(2);
  Ncegs n = unfold(m);
  for (std::size_t s = 0; s < n.states.size(); ++s) {
    for (const auto& [a, dests] : n.transitions[s]) {
      std::set<GlobalState> succ = successors(n.layout, n.states[s], a);
      std::size_t product = 1;
      for (std::size_t i = 0; i < n.layout.slots.size(); ++i) {
        std::set<Name> locals;
        for (const GlobalState& t : succ) locals.insert(t[i]);
        product *= locals.size();
      }
      CHECK(succ.size() == product);
      CHECK(dests.size() == succ.size());
    }
  }
}

TEST_CASE("unfolding ttc(1) reaches the full handshake cycle") {
  Ncegs n = unfold(bench::ttc(1));
  CHECK(n.init.size() == 1);
  CHECK(n.state_count() >= 4);
  CHECK(n.transition_count() >= n.state_count());  // every state has a move
  // tunnel_busy holds exactly where the controller granted or the train is in
  REQUIRE(n.valuation.count("tunnel_busy"));
  std::size_t ctrl = slot_of(n.layout, "ctrl", "m");
  for (std::size_t s : n.valuation.at("tunnel_busy"))
    CHECK(n.states[s][ctrl] == "infd");
}

TEST_CASE("observations and indistinguishability are per-agent projections") {
  Ncegs n = unfold(bench::ttc(2));
  std::size_t tr1 = n.agent_index_of("tr_1");
  for (std::size_t s = 0; s < n.state_count(); ++s) {
    CHECK(n.indistinguishable(tr1, s, s));
    CHECK(n.observation(tr1, s).size() == 1);
  }
  CHECK_THROWS_AS(n.agent_index_of("nobody"), std::out_of_range);
}

TEST_CASE("epistemic classes partition the scope") {
  Ncegs n = unfold(bench::ttc(2));
  std::set<std::size_t> scope;
  for (std::size_t s = 0; s < n.state_count(); ++s) scope.insert(s);
  auto classes = n.epistemic_classes(n.agent_index_of("tr_1"), scope);
  std::size_t total = 0;
  for (const auto& c : classes) total += c.size();
  CHECK(total == scope.size());
}

TEST_CASE("budget exhaustion raises a typed error") {
  UnfoldOptions opts;
  opts.budget = 2;
  try {
    unfold(bench::dc1(3), opts);
    FAIL("expected budget error");
  } catch (const UnfoldError& e) {
    CHECK(e.kind == UnfoldError::Kind::BudgetExceeded);
  }
}

TEST_CASE("a module with a missing transition entry reports stuckness") {
  Mis m = bench::ttc(1);
  Module* train = m.find_module("tr_1", "m");
  train->trans.erase({"tun_needed", "request", "granted"});
  try {
    unfold(m);
    FAIL("expected stuck module");
  } catch (const UnfoldError& e) {
    CHECK(e.kind == UnfoldError::Kind::StuckModule);
  }
}

TEST_CASE("signatures are stable under re-unfolding") {
  Mis m = bench::ttc(2);
  CHECK(signature(unfold(m)) == signature(unfold(m)));
}
