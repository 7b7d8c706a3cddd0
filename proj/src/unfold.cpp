#include "mis/unfold.hpp"

#include <algorithm>
#include <deque>

namespace mis {

Layout Layout::of(const Mis& m) {
  Layout l;
  for (std::size_t ai = 0; ai < m.agents.size(); ++ai) {
    const Agent& a = m.agents[ai];
    l.agent_ids.push_back(a.id);
    l.agent_slots.emplace_back();
    for (const Module& mod : a.modules) {
      l.agent_slots.back().push_back(l.slots.size());
      l.slots.push_back({a.id, mod.name, ai, &mod});
    }
  }
  return l;
}

std::size_t Ncegs::transition_count() const {
  std::size_t n = 0;
  for (const auto& per_state : transitions)
    for (const auto& [a, dests] : per_state) n += dests.size();
  return n;
}

std::vector<Name> Ncegs::observation(std::size_t agent_index, std::size_t state) const {
  std::vector<Name> obs;
  for (std::size_t slot : layout.agent_slots.at(agent_index))
    obs.push_back(states[state][slot]);
  return obs;
}

bool Ncegs::indistinguishable(std::size_t agent_index, std::size_t s1,
                              std::size_t s2) const {
  for (std::size_t slot : layout.agent_slots.at(agent_index))
    if (states[s1][slot] != states[s2][slot]) return false;
  return true;
}

std::vector<std::vector<std::size_t>> Ncegs::epistemic_classes(
    std::size_t agent_index, const std::set<std::size_t>& scope) const {
  std::map<std::vector<Name>, std::vector<std::size_t>> classes;
  for (std::size_t s : scope) classes[observation(agent_index, s)].push_back(s);
  std::vector<std::vector<std::size_t>> r;
  for (auto& [obs, members] : classes) r.push_back(std::move(members));
  return r;
}

std::size_t Ncegs::agent_index_of(const Name& agent_id) const {
  for (std::size_t i = 0; i < layout.agent_ids.size(); ++i)
    if (layout.agent_ids[i] == agent_id) return i;
  throw std::out_of_range("no agent named " + agent_id);
}

namespace {

// All bags an agent can receive at (q, a): fold over sender modules of the
// alternative deliveries, deduplicating as we go.
std::set<TokenBag> receivable_bags(const Layout& layout, const GlobalState& q,
                                   const JointAction& a, const Name& receiver) {
  std::set<TokenBag> acc;
  acc.insert(TokenBag{});
  for (std::size_t j = 0; j < layout.slots.size(); ++j) {
    const Module& mj = *layout.slots[j].mod;
    auto it = mj.out.find({q[j], a[j]});
    if (it == mj.out.end())
      throw UnfoldError(UnfoldError::Kind::StuckModule,
                        "module " + layout.slots[j].agent_id + "." +
                            layout.slots[j].module_name + " has no out entry for (" +
                            q[j] + ", " + a[j] + ")");
    std::set<TokenBag> contrib;
    for (const TokenSet& t : it->second) contrib.insert(bag_of_deliveries(t, receiver));
    std::set<TokenBag> next;
    for (const TokenBag& b : acc)
      for (const TokenBag& c : contrib) next.insert(bag_union(b, c));
    acc = std::move(next);
  }
  return acc;
}

std::set<Name> impressions_of(const Module& m, const Name& local_state,
                              const std::set<TokenBag>& bags) {
  std::set<Name> r;
  for (const TokenBag& h : bags) {
    const std::set<Name>& v = eval_decision_list(m.in_list, local_state, h);
    r.insert(v.begin(), v.end());
  }
  return r;
}

std::set<Name> slot_successors(const Layout& layout, const GlobalState& q,
                               const JointAction& a, std::size_t i,
                               const std::set<Name>& impressions) {
  const ModuleSlot& slot = layout.slots[i];
  const Module& m = *slot.mod;
  std::set<Name> r;
  for (const Name& gamma : impressions) {
    auto it = m.trans.find({q[i], a[i], gamma});
    if (it == m.trans.end())
      throw UnfoldError(UnfoldError::Kind::StuckModule,
                        "module " + slot.agent_id + "." + slot.module_name +
                            " is stuck: no transition for state " + q[i] + ", action " +
                            a[i] + ", impression " + gamma);
    r.insert(it->second.begin(), it->second.end());
  }
  return r;
}

void product_rec(const std::vector<std::vector<Name>>& parts, std::size_t i,
                 GlobalState& cur, std::set<GlobalState>& out) {
  if (i == parts.size()) {
    out.insert(cur);
    return;
  }
  for (const Name& x : parts[i]) {
    cur.push_back(x);
    product_rec(parts, i + 1, cur, out);
    cur.pop_back();
  }
}

std::vector<JointAction> joint_actions(const Layout& layout, const GlobalState& q,
                                       bool throw_on_empty) {
  std::vector<std::vector<Name>> options;
  for (std::size_t i = 0; i < layout.slots.size(); ++i) {
    const Module& m = *layout.slots[i].mod;
    auto it = m.avail.find(q[i]);
    if (it == m.avail.end() || it->second.empty()) {
      if (throw_on_empty)
        throw UnfoldError(UnfoldError::Kind::NoAvailableAction,
                          "module " + layout.slots[i].agent_id + "." +
                              layout.slots[i].module_name +
                              " has no available action at state " + q[i]);
      return {};
    }
    options.emplace_back(it->second.begin(), it->second.end());
  }
  std::vector<JointAction> r;
  JointAction cur;
  // iterative product
  std::vector<std::size_t> idx(options.size(), 0);
  for (;;) {
    cur.clear();
    for (std::size_t i = 0; i < options.size(); ++i) cur.push_back(options[i][idx[i]]);
    r.push_back(cur);
    std::size_t i = options.size();
    while (i > 0) {
      --i;
      if (++idx[i] < options[i].size()) break;
      idx[i] = 0;
      if (i == 0) return r;
    }
  }
}

}  // namespace

std::set<Name> possible_interferences(const Layout& layout, const GlobalState& q,
                                      const JointAction& a, std::size_t i) {
  std::set<TokenBag> bags = receivable_bags(layout, q, a, layout.slots[i].agent_id);
  return impressions_of(*layout.slots[i].mod, q[i], bags);
}

std::set<GlobalState> successors(const Layout& layout, const GlobalState& q,
                                 const JointAction& a) {
  // Receivable bags are shared by all modules of the same agent.
  std::vector<std::set<TokenBag>> agent_bags;
  for (const Name& id : layout.agent_ids)
    agent_bags.push_back(receivable_bags(layout, q, a, id));

  std::vector<std::vector<Name>> parts;
  for (std::size_t i = 0; i < layout.slots.size(); ++i) {
    std::set<Name> imp =
        impressions_of(*layout.slots[i].mod, q[i], agent_bags[layout.slots[i].agent_index]);
    std::set<Name> succ = slot_successors(layout, q, a, i, imp);
    parts.emplace_back(succ.begin(), succ.end());
  }
  std::set<GlobalState> r;
  GlobalState cur;
  cur.reserve(parts.size());
  product_rec(parts, 0, cur, r);
  return r;
}

Ncegs unfold(const Mis& m, const UnfoldOptions& opts) {
  Ncegs n;
  n.layout = Layout::of(m);
  const Layout& layout = n.layout;

  auto intern = [&](const GlobalState& q) -> std::size_t {
    auto it = n.index.find(q);
    if (it != n.index.end()) return it->second;
    if (n.states.size() >= opts.budget)
      throw UnfoldError(UnfoldError::Kind::BudgetExceeded,
                        "exploration budget of " + std::to_string(opts.budget) +
                            " states exceeded");
    std::size_t id = n.states.size();
    n.states.push_back(q);
    n.index.emplace(q, id);
    n.transitions.emplace_back();
    return id;
  };

  // Initial global states: product of module initial sets.
  {
    std::vector<std::vector<Name>> inits;
    for (const ModuleSlot& slot : layout.slots)
      inits.emplace_back(slot.mod->init.begin(), slot.mod->init.end());
    std::set<GlobalState> init_states;
    GlobalState cur;
    product_rec(inits, 0, cur, init_states);
    for (const GlobalState& q : init_states) n.init.push_back(intern(q));
  }

  std::deque<std::size_t> frontier(n.init.begin(), n.init.end());

  if (!opts.reachable_only) {
    std::vector<std::vector<Name>> all;
    for (const ModuleSlot& slot : layout.slots)
      all.emplace_back(slot.mod->states.begin(), slot.mod->states.end());
    std::set<GlobalState> everything;
    GlobalState cur;
    product_rec(all, 0, cur, everything);
    for (const GlobalState& q : everything) frontier.push_back(intern(q));
  }

  std::set<std::size_t> expanded;
  while (!frontier.empty()) {
    std::size_t s = frontier.front();
    frontier.pop_front();
    if (!expanded.insert(s).second) continue;
    const GlobalState q = n.states[s];
    for (const JointAction& a : joint_actions(layout, q, /*throw_on_empty=*/true)) {
      std::set<GlobalState> succ = successors(layout, q, a);
      auto& dests = n.transitions[s][a];
      for (const GlobalState& t : succ) {
        std::size_t id = intern(t);
        dests.insert(id);
        if (!expanded.count(id)) frontier.push_back(id);
      }
    }
  }

  for (std::size_t i = 0; i < layout.slots.size(); ++i) {
    for (const auto& [p, local_states] : layout.slots[i].mod->valuation) {
      auto& holds = n.valuation[p];
      for (std::size_t s = 0; s < n.states.size(); ++s)
        if (local_states.count(n.states[s][i])) holds.insert(s);
    }
  }

  return n;
}

NcegsSignature signature(const Ncegs& n) {
  NcegsSignature sig;
  for (const GlobalState& q : n.states) sig.states.insert(q);
  for (std::size_t s : n.init) sig.init.insert(n.states[s]);
  for (std::size_t s = 0; s < n.transitions.size(); ++s)
    for (const auto& [a, dests] : n.transitions[s])
      for (std::size_t d : dests) sig.transitions.insert({n.states[s], a, n.states[d]});
  for (const auto& [p, states] : n.valuation) {
    auto& dst = sig.valuation[p];
    for (std::size_t s : states) dst.insert(n.states[s]);
  }
  return sig;
}

}  // namespace mis
