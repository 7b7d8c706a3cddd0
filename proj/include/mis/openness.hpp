#ifndef MIS_OPENNESS_HPP
#define MIS_OPENNESS_HPP

#include <functional>
#include <stdexcept>
#include <string>
#include <variant>

#include "mis/model.hpp"

namespace mis {

// M (+) a : union the alphabets with the symbols of a, then add a
// (replacing a namesake agent if present).
Mis expand(const Mis& m, const Agent& a);

// M (-) a : remove the agent, keeping all alphabets.
// Removing an absent agent is a no-op; alphabets are kept either way.
Mis reduce(const Mis& m, const Name& agent_id);

struct CostSchema {
  long state = 1;
  long init = 1;
  long avail = 2;
  long out_alternative_base = 2;
  long out_alternative_token = 2;
  long out_token = 1;
  long atom_state = 3;
  long atom_has = 3;
  long atom_count = 4;
  long atom_true = 1;
  long connective = 1;
  long value_symbol = 1;
  long guard_atom = 1;
  long trans_target = 3;
  long prop = 1;
  long valuation_state = 1;
  long rename = 2;
};

long condition_cost(const Condition& c, const CostSchema& s = {});
long entry_cost(const DecisionEntry& e, const CostSchema& s = {});

// Edit steps address a module by agent id and module name.
struct AddState { Name agent, module, state; };
struct RemoveState { Name agent, module, state; };
struct AddInit { Name agent, module, state; };
struct RemoveInit { Name agent, module, state; };
struct AddAvail { Name agent, module, state, action; };
struct RemoveAvail { Name agent, module, state, action; };
struct AddOutAlternative { Name agent, module; SituatedAction sa; TokenSet tokens; };
struct RemoveOutAlternative { Name agent, module; SituatedAction sa; TokenSet tokens; };
struct AddOutToken {
  Name agent, module;
  SituatedAction sa;
  TokenSet alternative;  // pre-step contents, identifies the alternative
  DirectedToken token;
};
struct RemoveOutToken {
  Name agent, module;
  SituatedAction sa;
  TokenSet alternative;  // pre-step contents, token included
  DirectedToken token;
};
struct InsertDecisionEntry { Name agent, module; std::size_t position; DecisionEntry entry; };
struct RemoveDecisionEntry { Name agent, module; std::size_t position; };
struct AddGuardAtom {
  Name agent, module;
  std::size_t entry;
  Condition atom;
  bool disjunct = false;  // append under or (true) / and (false)
};
struct RemoveGuardAtom {
  Name agent, module;
  std::size_t entry;
  Condition atom;
  bool disjunct = false;  // used when inverting
};
struct AddTransTarget { Name agent, module; SituatedAction sa; Name symbol, target; };
struct RemoveTransTarget { Name agent, module; SituatedAction sa; Name symbol, target; };
struct AddProp { Name agent, module, prop; };
struct RemoveProp { Name agent, module, prop; };
struct AddValuationState { Name agent, module, prop, state; };
struct RemoveValuationState { Name agent, module, prop, state; };
struct RenameSymbol {
  enum class Category { Interaction, Action, State, AgentName };
  Name agent, module;
  Category category = Category::Interaction;
  Name from, to;
};

using EditStep =
    std::variant<AddState, RemoveState, AddInit, RemoveInit, AddAvail, RemoveAvail,
                 AddOutAlternative, RemoveOutAlternative, AddOutToken, RemoveOutToken,
                 InsertDecisionEntry, RemoveDecisionEntry, AddGuardAtom, RemoveGuardAtom,
                 AddTransTarget, RemoveTransTarget, AddProp, RemoveProp,
                 AddValuationState, RemoveValuationState, RenameSymbol>;

struct EditScript {
  std::vector<EditStep> steps;
};

struct ScriptError : std::runtime_error {
  std::size_t step_index;
  ScriptError(std::size_t idx, const std::string& msg)
      : std::runtime_error("step " + std::to_string(idx) + ": " + msg), step_index(idx) {}
};

long step_cost(const EditStep& s, const CostSchema& schema = {});
long script_cost(const EditScript& s, const CostSchema& schema = {});
// Classification used by cost breakdowns: d, out, in, o, other.
std::string step_function(const EditStep& s);

Mis apply_step(Mis m, const EditStep& s, std::size_t index = 0);
Mis apply_script(const Mis& m, const EditScript& s);

// Inverse relative to the model the script applies to; applying the script
// and then its inverse restores a model whose alphabets carry no unused
// symbols.
EditScript inverse_script(const EditScript& s, const Mis& base);

struct OpennessReport {
  long cost = 0;
  std::map<std::string, long> breakdown;
  bool applied = false;     // script applied without error to m (+) fresh
  bool sound = false;       // result equals the expected model (when given)
  ValidationReport validation;
};

OpennessReport openness_report(const Mis& m, const Agent& fresh, const EditScript& s,
                               const Mis* expected = nullptr,
                               const CostSchema& schema = {});

struct ExpansionPlan {
  Agent fresh;
  EditScript script;
};

struct OpennessFit {
  std::vector<std::pair<int, long>> costs;  // n -> script cost
  bool sound = true;                        // every plan reproduces family(n+1)
  std::string verdict;                      // "O(0)", "O(1)", "O(n)" or "unclassified"
};

OpennessFit openness_family_fit(const std::function<Mis(int)>& family,
                                const std::function<ExpansionPlan(int)>& plan, int from,
                                int to, const CostSchema& schema = {});

}  // namespace mis

#endif
