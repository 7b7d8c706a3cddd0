#include <doctest.h>

#include "mis/benchmarks.hpp"
#include "mis/dsl.hpp"
#include "mis/openness.hpp"
#include "mis/unfold.hpp"

using namespace mis;

TEST_CASE("expand then reduce restores the original model exactly") {
  Mis m = bench::ttc(2);
  Agent fresh = *bench::ttc(3).find_agent("tr_3");
  Mis grown = expand(m, fresh);
  CHECK(grown.agents.size() == m.agents.size() + 1);
  // alphabets only grow
  for (const Name& s : m.interaction_alphabet)
    CHECK(grown.interaction_alphabet.count(s));
  Mis back = reduce(grown, "tr_3");
  CHECK(back.agents.size() == m.agents.size());
  // reduction keeps the widened alphabets: unfoldings agree even so
  CHECK(signature(unfold(back)) == signature(unfold(m)));
}

TEST_CASE("reducing an absent agent is a no-op") {
  Mis m = bench::ttc(1);
  Mis r = reduce(m, "ghost");
  CHECK(print_mis(r) == print_mis(m));
}

TEST_CASE("expansion by a namesake replaces the incumbent") {
  Mis m = bench::ttc(2);
  Agent ctrl = *bench::ttc_sabotaged(2).find_agent("ctrl");
  Mis swapped = expand(m, ctrl);
  CHECK(swapped.agents.size() == m.agents.size());
  CHECK(swapped.find_module("ctrl", "m")
            ->trans.at({"infd", "waiting", "aw_leave"}) ==
        std::set<Name>{"tun_free"});
}

TEST_CASE("condition and entry costs follow the schema") {
  CostSchema s;
  CHECK(condition_cost(Condition::truth()) == s.atom_true);
  CHECK(condition_cost(Condition::state_is("q")) == s.atom_state);
  CHECK(condition_cost(Condition::has("x")) == s.atom_has);
  CHECK(condition_cost(Condition::count("x", Cmp::Ge, 1)) == s.atom_count);
  Condition both = Condition::conj({Condition::state_is("q"), Condition::has("x")});
  CHECK(condition_cost(both) == s.atom_state + s.atom_has + s.connective);
  DecisionEntry e{both, {"imp1", "imp2"}};
  CHECK(entry_cost(e) == condition_cost(both) + 2 * s.value_symbol);
}

TEST_CASE("step costs match the schema components") {
  CostSchema s;
  CHECK(step_cost(AddState{"a", "m", "q"}) == s.state);
  CHECK(step_cost(AddAvail{"a", "m", "q", "act"}) == s.avail);
  TokenSet two{{"x", "b"}, {"y", ""}};
  CHECK(step_cost(AddOutAlternative{"a", "m", {"q", "act"}, two}) ==
        s.out_alternative_base + 2 * s.out_alternative_token);
  CHECK(step_cost(AddOutToken{"a", "m", {"q", "act"}, {}, {"x", "b"}}) ==
        s.out_token);
  CHECK(step_cost(AddTransTarget{"a", "m", {"q", "act"}, "imp", "q2"}) ==
        s.trans_target);
  CHECK(step_cost(AddGuardAtom{"a", "m", 0, Condition::has("x")}) ==
        s.guard_atom);
  CHECK(step_cost(RenameSymbol{"a", "m", RenameSymbol::Category::Interaction,
                               "x", "y"}) == s.rename);
  DecisionEntry e{Condition::truth(), {"imp"}};
  CHECK(step_cost(InsertDecisionEntry{"a", "m", 0, e}) ==
        s.atom_true + s.value_symbol);
  CHECK(step_cost(RemoveDecisionEntry{"a", "m", 0}) == 1);
}

TEST_CASE("script cost is the sum of step costs with a per-part breakdown") {
  ExpansionPlan plan = bench::family_plan("ttc", 2);
  long total = 0;
  for (const EditStep& st : plan.script.steps) total += step_cost(st);
  CHECK(script_cost(plan.script) == total);
}

TEST_CASE("applying a script and its inverse restores the base model") {
  Mis base = bench::ttc(2);
  ExpansionPlan plan = bench::family_plan("ttc", 2);
  Mis grown = expand(base, plan.fresh);
  Mis edited = apply_script(grown, plan.script);
  EditScript inv = inverse_script(plan.script, grown);
  Mis back = apply_script(edited, inv);
  CHECK(print_mis(back) == print_mis(grown));
}

TEST_CASE("bad steps raise a script error carrying the step index") {
  Mis m = bench::ttc(1);
  EditScript s;
  s.steps.push_back(AddState{"ctrl", "m", "tun_free"});  // already present
  try {
    apply_script(m, s);
    FAIL("expected script error");
  } catch (const ScriptError& e) {
    CHECK(e.step_index == 0);
  }
}

TEST_CASE("tunnel expansion plan rebuilds the next instance for cost 22") {
  for (int n = 1; n <= 3; ++n) {
    ExpansionPlan plan = bench::family_plan("ttc", n);
    CHECK(script_cost(plan.script) == 22);
    Mis expected = bench::ttc(n + 1);
    OpennessReport r =
        openness_report(bench::ttc(n), plan.fresh, plan.script, &expected);
    CHECK(r.applied);
    CHECK(r.sound);
    CHECK(r.validation.clean());
    CHECK(r.cost == 22);
  }
}

TEST_CASE("openness family fit classifies the three dining variants") {
  auto fit = [](const std::string& fam) {
    return openness_family_fit(
        [&](int n) { return bench::family(fam, n); },
        [&](int n) { return bench::family_plan(fam, n); }, 3, 5);
  };
  OpennessFit f1 = fit("dc1");
  CHECK(f1.sound);
  CHECK(f1.verdict == "O(1)");
  for (const auto& [n, c] : f1.costs) CHECK(c == 54);

  OpennessFit f2 = fit("dc2");
  CHECK(f2.sound);
  CHECK(f2.verdict == "O(n)");
  for (const auto& [n, c] : f2.costs) CHECK(c == 10 * n + 54);

  OpennessFit f0 = fit("dc0");
  CHECK(f0.sound);
  CHECK(f0.verdict == "O(0)");
  for (const auto& [n, c] : f0.costs) CHECK(c == 0);
}

TEST_CASE("step function tags the part of the module each step edits") {
  CHECK(step_function(AddAvail{"a", "m", "q", "act"}) == "d");
  CHECK(step_function(AddOutToken{"a", "m", {"q", "act"}, {}, {"x", "b"}}) == "out");
  CHECK(step_function(InsertDecisionEntry{"a", "m", 0,
                                          {Condition::truth(), {"i"}}}) == "in");
  CHECK(step_function(AddTransTarget{"a", "m", {"q", "act"}, "i", "q2"}) == "o");
  CHECK(step_function(AddState{"a", "m", "q"}) == "other");
}
