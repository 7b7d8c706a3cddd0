#ifndef MIS_MODEL_HPP
#define MIS_MODEL_HPP

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace mis {

// Identifiers for states, actions, interaction symbols, agents and
// propositions are plain strings compared exactly.
using Name = std::string;

// A directed interaction token: symbol plus recipient agent name.
// An empty recipient means broadcast.
struct DirectedToken {
  Name symbol;
  Name recipient;  // "" = broadcast

  bool broadcast() const { return recipient.empty(); }
  auto operator<=>(const DirectedToken&) const = default;
};

using TokenSet = std::set<DirectedToken>;

// Multiset over interaction symbols, canonical form: no zero counts.
using TokenBag = std::map<Name, long>;

TokenBag bag_union(const TokenBag& a, const TokenBag& b);
// Multiplicity of each symbol = number of distinct directed tokens in `t`
// addressed to `receiver` or broadcast.
TokenBag bag_of_deliveries(const TokenSet& t, const Name& receiver);

enum class Cmp { Eq, Ne, Lt, Le, Gt, Ge };
bool cmp_apply(Cmp c, long lhs, long rhs);
const char* cmp_text(Cmp c);

// Guard expression over the module's local state (variable s) and the
// received bag (variable H).
struct Condition {
  enum class Kind { True, StateIs, Has, Count, Not, And, Or };

  Kind kind = Kind::True;
  Name symbol;  // StateIs: local state; Has/Count: interaction symbol
  Cmp cmp = Cmp::Eq;
  long bound = 0;  // Count only
  std::vector<Condition> children;

  static Condition truth();
  static Condition state_is(Name state);
  static Condition has(Name symbol);
  static Condition count(Name symbol, Cmp cmp, long bound);
  static Condition negate(Condition c);
  static Condition conj(std::vector<Condition> cs);
  static Condition disj(std::vector<Condition> cs);

  bool operator==(const Condition&) const = default;
};

bool eval_condition(const Condition& c, const Name& state, const TokenBag& h);

// Three-valued evaluation with the bag unknown; used by the metrics module
// to decide whether a guard is consistent with a given local state.
enum class Tri { False, True, Unknown };
Tri eval_condition_state_only(const Condition& c, const Name& state);
bool guard_state_consistent(const Condition& c, const Name& state);

struct DecisionEntry {
  Condition guard;
  std::set<Name> value;  // nonempty set of interaction symbols

  bool operator==(const DecisionEntry&) const = default;
};

// Ordered guard -> value entries; the last guard must be True so that
// evaluation is total.
struct DecisionList {
  std::vector<DecisionEntry> entries;

  bool operator==(const DecisionList&) const = default;
};

const std::set<Name>& eval_decision_list(const DecisionList& l, const Name& state,
                                         const TokenBag& h);

using SituatedAction = std::pair<Name, Name>;          // (state, action)
using TransKey = std::tuple<Name, Name, Name>;         // (state, action, symbol)

struct Module {
  Name name;
  std::set<Name> states;
  std::set<Name> init;
  std::map<Name, std::set<Name>> avail;                       // d
  std::map<SituatedAction, std::set<TokenSet>> out;           // out
  DecisionList in_list;                                       // in
  std::map<TransKey, std::set<Name>> trans;                   // o
  std::set<Name> props;                                       // Pi
  std::map<Name, std::set<Name>> valuation;                   // pi

  bool operator==(const Module&) const = default;
};

struct Agent {
  Name id;
  std::vector<Module> modules;  // nonempty, ordered

  bool operator==(const Agent&) const = default;
};

struct Mis {
  std::set<Name> agent_names;          // Agtnames
  std::set<Name> actions;              // Act
  std::set<Name> interaction_alphabet; // In
  std::vector<Agent> agents;           // kept sorted by id

  std::size_t cardinality() const { return agents.size(); }
  const Agent* find_agent(const Name& id) const;
  Agent* find_agent(const Name& id);
  const Module* find_module(const Name& agent_id, const Name& module_name) const;
  Module* find_module(const Name& agent_id, const Name& module_name);
  // Inserts keeping agents sorted by id; replaces an existing namesake.
  void insert_agent(Agent a);

  bool operator==(const Mis&) const = default;
};

enum class Severity { Error, Warning };

struct Violation {
  Severity severity = Severity::Error;
  std::string location;  // e.g. "agent tr_1 / module m / in_list"
  std::string rule;      // short rule id, e.g. "decision list totality"
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool clean() const;           // no errors (warnings allowed)
  bool empty() const { return violations.empty(); }
};

ValidationReport validate(const Mis& m);

// Symbols occurring anywhere inside an agent's modules.
struct AgentSymbols {
  std::set<Name> agent_names;          // agt(a), includes a.id
  std::set<Name> actions;              // act(a)
  std::set<Name> interaction_symbols;  // in(a)
};

AgentSymbols agent_symbols(const Agent& a);

// Agents of m with the same id as a (at most one by construction).
std::vector<const Agent*> namesakes(const Agent& a, const Mis& m);

// Symbols referenced inside the condition.
void collect_condition_symbols(const Condition& c, std::set<Name>& symbols);
void collect_condition_states(const Condition& c, std::set<Name>& states);

}  // namespace mis

#endif
