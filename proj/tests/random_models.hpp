#ifndef TESTS_RANDOM_MODELS_HPP
#define TESTS_RANDOM_MODELS_HPP

// Seeded generator of small well-formed models: total transition tables,
// nonempty availability, alphabets containing exactly the used symbols.

#include <random>
#include <string>
#include <vector>

#include "mis/model.hpp"

namespace testgen {

using mis::Agent;
using mis::Condition;
using mis::Mis;
using mis::Module;
using mis::Name;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  int pick(int lo, int hi) {  // inclusive
    return std::uniform_int_distribution<int>(lo, hi)(gen_);
  }
  bool chance(double p) {
    return std::uniform_real_distribution<double>(0, 1)(gen_) < p;
  }
  template <class T>
  const T& among(const std::vector<T>& xs) {
    return xs[static_cast<std::size_t>(pick(0, static_cast<int>(xs.size()) - 1))];
  }

 private:
  std::mt19937_64 gen_;
};

inline Condition random_guard(Rng& rng, const std::vector<Name>& states,
                              const std::vector<Name>& symbols, int depth) {
  int kind = depth > 0 ? rng.pick(0, 5) : rng.pick(0, 2);
  switch (kind) {
    case 0: return Condition::state_is(rng.among(states));
    case 1: return Condition::has(rng.among(symbols));
    case 2:
      return Condition::count(rng.among(symbols),
                              static_cast<mis::Cmp>(rng.pick(0, 5)),
                              rng.pick(0, 2));
    case 3:
      return Condition::negate(random_guard(rng, states, symbols, depth - 1));
    case 4:
      return Condition::conj({random_guard(rng, states, symbols, depth - 1),
                              random_guard(rng, states, symbols, depth - 1)});
    default:
      return Condition::disj({random_guard(rng, states, symbols, depth - 1),
                              random_guard(rng, states, symbols, depth - 1)});
  }
}

inline Module random_module(Rng& rng, const Name& name,
                            const std::vector<Name>& agent_ids,
                            const std::vector<Name>& actions,
                            const std::vector<Name>& symbols) {
  Module m;
  m.name = name;
  int n_states = rng.pick(2, 3);
  std::vector<Name> states;
  for (int i = 0; i < n_states; ++i) {
    states.push_back("q" + std::to_string(i));
    m.states.insert(states.back());
  }
  m.init.insert(rng.among(states));
  if (rng.chance(0.3)) m.init.insert(rng.among(states));

  for (const Name& q : states) {
    std::set<Name> acts;
    acts.insert(rng.among(actions));
    if (rng.chance(0.4)) acts.insert(rng.among(actions));
    m.avail[q] = acts;
  }

  for (const Name& q : states)
    for (const Name& act : m.avail[q]) {
      std::set<mis::TokenSet> alts;
      int n_alts = rng.pick(1, 2);
      for (int alt = 0; alt < n_alts; ++alt) {
        mis::TokenSet ts;
        int n_tok = rng.pick(0, 2);
        for (int t = 0; t < n_tok; ++t) {
          Name recipient = rng.chance(0.3) ? Name() : rng.among(agent_ids);
          ts.insert({rng.among(symbols), recipient});
        }
        alts.insert(ts);
      }
      m.out[{q, act}] = alts;
    }

  int n_entries = rng.pick(1, 3);
  std::set<Name> impression_symbols;
  for (int e = 0; e < n_entries; ++e) {
    mis::DecisionEntry entry;
    entry.guard = random_guard(rng, states, symbols, 2);
    entry.value.insert(rng.among(symbols));
    if (rng.chance(0.3)) entry.value.insert(rng.among(symbols));
    impression_symbols.insert(entry.value.begin(), entry.value.end());
    m.in_list.entries.push_back(entry);
  }
  mis::DecisionEntry fallback;
  fallback.guard = Condition::truth();
  fallback.value.insert(rng.among(symbols));
  impression_symbols.insert(fallback.value.begin(), fallback.value.end());
  m.in_list.entries.push_back(fallback);

  // Total transition table over every impression symbol the list can emit.
  for (const Name& q : states)
    for (const Name& act : m.avail[q])
      for (const Name& sym : impression_symbols) {
        std::set<Name> targets;
        targets.insert(rng.among(states));
        if (rng.chance(0.3)) targets.insert(rng.among(states));
        m.trans[{q, act, sym}] = targets;
      }
  return m;
}

inline Mis random_mis(std::uint64_t seed) {
  Rng rng(seed);
  int n_agents = rng.pick(2, 3);
  std::vector<Name> ids;
  for (int i = 0; i < n_agents; ++i) ids.push_back(Name(1, char('A' + i)));

  std::vector<Name> actions, symbols;
  for (int i = 0, n = rng.pick(2, 3); i < n; ++i)
    actions.push_back("act" + std::to_string(i));
  for (int i = 0, n = rng.pick(2, 4); i < n; ++i)
    symbols.push_back("sym" + std::to_string(i));

  Mis m;
  int prop_seq = 0;
  for (const Name& id : ids) {
    Agent a;
    a.id = id;
    a.modules.push_back(random_module(rng, "m", ids, actions, symbols));
    Module& mod = a.modules.back();
    if (rng.chance(0.5)) {
      Name prop = "p" + std::to_string(prop_seq++);
      mod.props.insert(prop);
      std::set<Name> holds;
      holds.insert(*mod.states.begin());
      mod.valuation[prop] = holds;
    }
    m.insert_agent(std::move(a));
  }
  for (const Agent& a : m.agents) {
    mis::AgentSymbols s = agent_symbols(a);
    m.agent_names.insert(s.agent_names.begin(), s.agent_names.end());
    m.actions.insert(s.actions.begin(), s.actions.end());
    m.interaction_alphabet.insert(s.interaction_symbols.begin(),
                                  s.interaction_symbols.end());
  }
  return m;
}

}  // namespace testgen

#endif
