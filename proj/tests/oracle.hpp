#ifndef TESTS_ORACLE_HPP
#define TESTS_ORACLE_HPP

// Independent brute-force unfolding used to cross-check the engine. It
// enumerates every combination of out alternatives literally and re-derives
// delivery bags, guard evaluation and first-match decision lists from
// scratch, sharing only the data types with the engine.

#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "mis/model.hpp"
#include "mis/unfold.hpp"

namespace oracle {

using mis::Agent;
using mis::Condition;
using mis::GlobalState;
using mis::JointAction;
using mis::Mis;
using mis::Module;
using mis::Name;

struct Slot {
  Name agent;
  const Module* mod;
};

inline std::vector<Slot> slots_of(const Mis& m) {
  std::vector<Slot> slots;
  for (const Agent& a : m.agents)
    for (const Module& mod : a.modules) slots.push_back({a.id, &mod});
  return slots;
}

inline long multiplicity(const Condition& c, const std::map<Name, long>& bag) {
  auto it = bag.find(c.symbol);
  return it == bag.end() ? 0 : it->second;
}

inline bool cond_holds(const Condition& c, const Name& state,
                       const std::map<Name, long>& bag) {
  using K = Condition::Kind;
  switch (c.kind) {
    case K::True: return true;
    case K::StateIs: return state == c.symbol;
    case K::Has: return multiplicity(c, bag) >= 1;
    case K::Count: {
      long got = multiplicity(c, bag);
      switch (c.cmp) {
        case mis::Cmp::Eq: return got == c.bound;
        case mis::Cmp::Ne: return got != c.bound;
        case mis::Cmp::Lt: return got < c.bound;
        case mis::Cmp::Le: return got <= c.bound;
        case mis::Cmp::Gt: return got > c.bound;
        case mis::Cmp::Ge: return got >= c.bound;
      }
      return false;
    }
    case K::Not: return !cond_holds(c.children[0], state, bag);
    case K::And:
      for (const Condition& k : c.children)
        if (!cond_holds(k, state, bag)) return false;
      return true;
    case K::Or:
      for (const Condition& k : c.children)
        if (cond_holds(k, state, bag)) return true;
      return false;
  }
  return false;
}

inline std::set<Name> first_match(const Module& mod, const Name& state,
                                  const std::map<Name, long>& bag) {
  for (const mis::DecisionEntry& e : mod.in_list.entries)
    if (cond_holds(e.guard, state, bag)) return e.value;
  throw std::logic_error("oracle: decision list fell through");
}

// Possible impression symbols of every slot under (q, a): enumerate all
// combinations of alternatives, deliver every token literally, evaluate
// every decision list.
inline std::vector<std::set<Name>> impressions(const std::vector<Slot>& slots,
                                               const GlobalState& q,
                                               const JointAction& a) {
  std::size_t k = slots.size();
  std::vector<std::vector<const mis::TokenSet*>> choices(k);
  for (std::size_t j = 0; j < k; ++j) {
    auto it = slots[j].mod->out.find({q[j], a[j]});
    if (it == slots[j].mod->out.end() || it->second.empty())
      throw std::logic_error("oracle: missing out entry");
    for (const mis::TokenSet& t : it->second) choices[j].push_back(&t);
  }
  std::vector<std::set<Name>> result(k);
  std::vector<std::size_t> pick(k, 0);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) {
      std::map<Name, long> bag;
      for (std::size_t j = 0; j < k; ++j)
        for (const mis::DirectedToken& tok : *choices[j][pick[j]])
          if (tok.recipient.empty() || tok.recipient == slots[i].agent)
            bag[tok.symbol] += 1;
      for (const Name& sym : first_match(*slots[i].mod, q[i], bag))
        result[i].insert(sym);
    }
    std::size_t j = 0;
    while (j < k && ++pick[j] == choices[j].size()) pick[j++] = 0;
    if (j == k) break;
  }
  return result;
}

inline std::set<GlobalState> successors(const std::vector<Slot>& slots,
                                        const GlobalState& q, const JointAction& a) {
  std::vector<std::set<Name>> gammas = impressions(slots, q, a);
  std::vector<std::vector<Name>> nexts(slots.size());
  for (std::size_t i = 0; i < slots.size(); ++i) {
    std::set<Name> acc;
    for (const Name& g : gammas[i]) {
      auto it = slots[i].mod->trans.find({q[i], a[i], g});
      if (it != slots[i].mod->trans.end())
        acc.insert(it->second.begin(), it->second.end());
    }
    if (acc.empty()) throw std::logic_error("oracle: stuck module");
    nexts[i].assign(acc.begin(), acc.end());
  }
  std::set<GlobalState> out;
  GlobalState cur(slots.size());
  std::vector<std::size_t> pick(slots.size(), 0);
  while (true) {
    for (std::size_t i = 0; i < slots.size(); ++i) cur[i] = nexts[i][pick[i]];
    out.insert(cur);
    std::size_t j = 0;
    while (j < slots.size() && ++pick[j] == nexts[j].size()) pick[j++] = 0;
    if (j == slots.size()) break;
  }
  return out;
}

inline std::vector<JointAction> joint_actions(const std::vector<Slot>& slots,
                                              const GlobalState& q) {
  std::vector<std::vector<Name>> avail(slots.size());
  for (std::size_t i = 0; i < slots.size(); ++i) {
    auto it = slots[i].mod->avail.find(q[i]);
    if (it == slots[i].mod->avail.end() || it->second.empty())
      throw std::logic_error("oracle: no available action");
    avail[i].assign(it->second.begin(), it->second.end());
  }
  std::vector<JointAction> out;
  JointAction cur(slots.size());
  std::vector<std::size_t> pick(slots.size(), 0);
  while (true) {
    for (std::size_t i = 0; i < slots.size(); ++i) cur[i] = avail[i][pick[i]];
    out.push_back(cur);
    std::size_t j = 0;
    while (j < slots.size() && ++pick[j] == avail[j].size()) pick[j++] = 0;
    if (j == slots.size()) break;
  }
  return out;
}

inline mis::NcegsSignature unfold(const Mis& m) {
  std::vector<Slot> slots = slots_of(m);
  mis::NcegsSignature sig;

  std::vector<std::vector<Name>> inits(slots.size());
  for (std::size_t i = 0; i < slots.size(); ++i)
    inits[i].assign(slots[i].mod->init.begin(), slots[i].mod->init.end());
  std::deque<GlobalState> queue;
  for (std::size_t i = 0; i < slots.size(); ++i)
    if (inits[i].empty()) return sig;  // empty init: nothing reachable
  GlobalState cur(slots.size());
  std::vector<std::size_t> pick(slots.size(), 0);
  while (true) {
    for (std::size_t i = 0; i < slots.size(); ++i) cur[i] = inits[i][pick[i]];
    sig.init.insert(cur);
    std::size_t j = 0;
    while (j < slots.size() && ++pick[j] == inits[j].size()) pick[j++] = 0;
    if (j == slots.size()) break;
  }
  for (const GlobalState& q : sig.init) {
    sig.states.insert(q);
    queue.push_back(q);
  }
  while (!queue.empty()) {
    GlobalState q = queue.front();
    queue.pop_front();
    for (const JointAction& a : joint_actions(slots, q))
      for (const GlobalState& s : successors(slots, q, a)) {
        sig.transitions.insert({q, a, s});
        if (sig.states.insert(s).second) queue.push_back(s);
      }
  }
  for (std::size_t i = 0; i < slots.size(); ++i)
    for (const auto& [prop, locals] : slots[i].mod->valuation)
      for (const GlobalState& q : sig.states)
        if (locals.count(q[i])) sig.valuation[prop].insert(q);
  return sig;
}

}  // namespace oracle

#endif
