#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mis/benchmarks.hpp"
#include "mis/model.hpp"

using namespace mis;

TEST_CASE("bag union adds multiplicities pointwise") {
  TokenBag a{{"appr", 1}};
  TokenBag b{{"appr", 1}};
  CHECK(bag_union(a, b) == TokenBag{{"appr", 2}});
  CHECK(bag_union(a, {}) == a);
  CHECK(bag_union(TokenBag{{"try_1", 1}}, TokenBag{{"try_2", 1}}) ==
        TokenBag{{"try_1", 1}, {"try_2", 1}});
  // associativity / commutativity on a small case
  TokenBag c{{"x", 2}, {"appr", 1}};
  CHECK(bag_union(bag_union(a, b), c) == bag_union(a, bag_union(b, c)));
  CHECK(bag_union(a, c) == bag_union(c, a));
}

TEST_CASE("bag of deliveries respects recipients and broadcast") {
  TokenSet t1{{"grant", "tr_1"}};
  CHECK(bag_of_deliveries(t1, "tr_1") == TokenBag{{"grant", 1}});
  CHECK(bag_of_deliveries(t1, "tr_2") == TokenBag{});
  TokenSet t2{{"aw_reqs", ""}};
  CHECK(bag_of_deliveries(t2, "anyone") == TokenBag{{"aw_reqs", 1}});
  // same symbol via name and broadcast counts twice
  TokenSet t3{{"x", "a"}, {"x", ""}};
  CHECK(bag_of_deliveries(t3, "a") == TokenBag{{"x", 2}});
  CHECK(bag_of_deliveries(t3, "b") == TokenBag{{"x", 1}});
}

TEST_CASE("condition evaluation") {
  CHECK(eval_condition(Condition::has("grant"), "tun_needed", {{"grant", 1}}));
  CHECK(eval_condition(Condition::truth(), "anything", {}));
  CHECK_FALSE(eval_condition(Condition::count("try_1", Cmp::Ge, 2), "q",
                             {{"try_1", 1}}));
  CHECK(eval_condition(Condition::state_is("q"), "q", {}));
  CHECK_FALSE(eval_condition(Condition::negate(Condition::truth()), "q", {}));
  CHECK(eval_condition(
      Condition::disj({Condition::state_is("a"), Condition::state_is("q")}), "q",
      {}));
}

TEST_CASE("train decision list follows first match") {
  Mis m = bench::ttc(1);
  const Module* train = m.find_module("tr_1", "m");
  REQUIRE(train != nullptr);
  CHECK(eval_decision_list(train->in_list, "tun_needed", {{"grant", 1}}) ==
        std::set<Name>{"granted"});
  CHECK(eval_decision_list(train->in_list, "tun_needed", {}) ==
        std::set<Name>{"retry"});
  CHECK(eval_decision_list(train->in_list, "out", {}) == std::set<Name>{"idle"});
}

TEST_CASE("validate accepts generator output") {
  ValidationReport r = validate(bench::ttc(2));
  CHECK(r.clean());
}

TEST_CASE("validate flags shared proposition names") {
  Mis m = bench::ttc(2);
  Module* m1 = m.find_module("tr_1", "m");
  Module* m2 = m.find_module("tr_2", "m");
  m2->props = m1->props;
  m2->valuation.clear();
  for (const Name& p : m2->props) m2->valuation[p] = {"in"};
  ValidationReport r = validate(m);
  CHECK_FALSE(r.clean());
  bool found = false;
  for (const Violation& v : r.violations)
    if (v.rule.find("disjoint") != std::string::npos) found = true;
  CHECK(found);
}

TEST_CASE("validate flags a decision list without final fallback") {
  Mis m = bench::ttc(1);
  Module* train = m.find_module("tr_1", "m");
  train->in_list.entries.pop_back();  // drop the final true entry
  ValidationReport r = validate(m);
  CHECK_FALSE(r.clean());
  bool found = false;
  for (const Violation& v : r.violations)
    if (v.rule.find("total") != std::string::npos) found = true;
  CHECK(found);
}

TEST_CASE("agent symbols include token recipients") {
  Mis m = bench::ttc(1);
  const Agent* tr = m.find_agent("tr_1");
  REQUIRE(tr != nullptr);
  AgentSymbols s = agent_symbols(*tr);
  CHECK(s.agent_names.count("tr_1"));
  CHECK(s.agent_names.count("ctrl"));
  CHECK(s.interaction_symbols.count("try_1"));
  CHECK(s.actions.count("request"));
}

TEST_CASE("namesakes finds at most the agent with the same id") {
  Mis m = bench::ttc(2);
  Agent fresh;
  fresh.id = "tr_9";
  CHECK(namesakes(fresh, m).empty());
  const Agent* ctrl = m.find_agent("ctrl");
  REQUIRE(ctrl != nullptr);
  auto ns = namesakes(*ctrl, m);
  REQUIRE(ns.size() == 1);
  CHECK(ns[0]->id == "ctrl");
}

TEST_CASE("insert_agent keeps agents sorted and replaces namesakes") {
  Mis m = bench::ttc(2);
  std::vector<Name> ids;
  for (const Agent& a : m.agents) ids.push_back(a.id);
  CHECK(std::is_sorted(ids.begin(), ids.end()));
  Agent replacement = *m.find_agent("tr_1");
  replacement.modules[0].props.clear();
  replacement.modules[0].valuation.clear();
  std::size_t before = m.agents.size();
  m.insert_agent(replacement);
  CHECK(m.agents.size() == before);
  CHECK(m.find_module("tr_1", "m")->props.empty());
}
