#ifndef MIS_UNFOLD_HPP
#define MIS_UNFOLD_HPP

#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "mis/model.hpp"

namespace mis {

struct UnfoldError : std::runtime_error {
  enum class Kind { StuckModule, NoAvailableAction, BudgetExceeded };
  Kind kind;
  UnfoldError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

// Flattened module layout: modules of all agents in canonical order
// (agents sorted by id, modules in declaration order).
struct ModuleSlot {
  Name agent_id;
  Name module_name;
  std::size_t agent_index = 0;
  const Module* mod = nullptr;
};

struct Layout {
  std::vector<ModuleSlot> slots;
  std::vector<Name> agent_ids;
  std::vector<std::vector<std::size_t>> agent_slots;  // per agent, slot indices

  static Layout of(const Mis& m);
};

// A global state: one local state per module slot.
using GlobalState = std::vector<Name>;
// A joint action: one action per module slot.
using JointAction = std::vector<Name>;

struct UnfoldOptions {
  bool reachable_only = true;
  std::size_t budget = 1'000'000;  // max explored global states
};

struct Ncegs {
  Layout layout;
  std::vector<GlobalState> states;
  std::map<GlobalState, std::size_t> index;
  std::vector<std::size_t> init;
  // transitions[s][a] = set of successor state indices
  std::vector<std::map<JointAction, std::set<std::size_t>>> transitions;
  // proposition -> states where it holds (from the owning module's valuation)
  std::map<Name, std::set<std::size_t>> valuation;

  std::size_t state_count() const { return states.size(); }
  std::size_t transition_count() const;  // number of (s, a, s') triples

  // Agent i's view of a global state: the tuple of its modules' states.
  std::vector<Name> observation(std::size_t agent_index, std::size_t state) const;
  bool indistinguishable(std::size_t agent_index, std::size_t s1, std::size_t s2) const;
  // Epistemic classes of an agent over a set of states.
  std::vector<std::vector<std::size_t>> epistemic_classes(
      std::size_t agent_index, const std::set<std::size_t>& scope) const;

  std::size_t agent_index_of(const Name& agent_id) const;
};

// Possible interferences of module slot i at global state q under joint
// action a: every impression set reachable over out-alternative choices.
std::set<Name> possible_interferences(const Layout& layout, const GlobalState& q,
                                      const JointAction& a, std::size_t i);

// Successor global states; throws UnfoldError(StuckModule) when some module
// has an impression with no transition entry.
std::set<GlobalState> successors(const Layout& layout, const GlobalState& q,
                                 const JointAction& a);

Ncegs unfold(const Mis& m, const UnfoldOptions& opts = {});

// Canonical comparable form, independent of state numbering.
struct NcegsSignature {
  std::set<GlobalState> states;
  std::set<GlobalState> init;
  std::set<std::tuple<GlobalState, JointAction, GlobalState>> transitions;
  std::map<Name, std::set<GlobalState>> valuation;

  bool operator==(const NcegsSignature&) const = default;
};

NcegsSignature signature(const Ncegs& n);

}  // namespace mis

#endif
