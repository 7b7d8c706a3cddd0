#include "mis/model.hpp"

#include <algorithm>
#include <stdexcept>

namespace mis {

TokenBag bag_union(const TokenBag& a, const TokenBag& b) {
  TokenBag r = a;
  for (const auto& [sym, n] : b) {
    long& slot = r[sym];
    slot += n;
    if (slot == 0) r.erase(sym);
  }
  return r;
}

TokenBag bag_of_deliveries(const TokenSet& t, const Name& receiver) {
  TokenBag r;
  for (const DirectedToken& tok : t) {
    if (tok.broadcast() || tok.recipient == receiver) r[tok.symbol] += 1;
  }
  return r;
}

bool cmp_apply(Cmp c, long lhs, long rhs) {
  switch (c) {
    case Cmp::Eq: return lhs == rhs;
    case Cmp::Ne: return lhs != rhs;
    case Cmp::Lt: return lhs < rhs;
    case Cmp::Le: return lhs <= rhs;
    case Cmp::Gt: return lhs > rhs;
    case Cmp::Ge: return lhs >= rhs;
  }
  return false;
}

const char* cmp_text(Cmp c) {
  switch (c) {
    case Cmp::Eq: return "=";
    case Cmp::Ne: return "!=";
    case Cmp::Lt: return "<";
    case Cmp::Le: return "<=";
    case Cmp::Gt: return ">";
    case Cmp::Ge: return ">=";
  }
  return "?";
}

Condition Condition::truth() { return Condition{}; }

Condition Condition::state_is(Name state) {
  Condition c;
  c.kind = Kind::StateIs;
  c.symbol = std::move(state);
  return c;
}

Condition Condition::has(Name symbol) {
  Condition c;
  c.kind = Kind::Has;
  c.symbol = std::move(symbol);
  return c;
}

Condition Condition::count(Name symbol, Cmp cmp, long bound) {
  Condition c;
  c.kind = Kind::Count;
  c.symbol = std::move(symbol);
  c.cmp = cmp;
  c.bound = bound;
  return c;
}

Condition Condition::negate(Condition inner) {
  Condition c;
  c.kind = Kind::Not;
  c.children.push_back(std::move(inner));
  return c;
}

Condition Condition::conj(std::vector<Condition> cs) {
  Condition c;
  c.kind = Kind::And;
  c.children = std::move(cs);
  return c;
}

Condition Condition::disj(std::vector<Condition> cs) {
  Condition c;
  c.kind = Kind::Or;
  c.children = std::move(cs);
  return c;
}

bool eval_condition(const Condition& c, const Name& state, const TokenBag& h) {
  switch (c.kind) {
    case Condition::Kind::True:
      return true;
    case Condition::Kind::StateIs:
      return state == c.symbol;
    case Condition::Kind::Has: {
      auto it = h.find(c.symbol);
      return it != h.end() && it->second > 0;
    }
    case Condition::Kind::Count: {
      auto it = h.find(c.symbol);
      long n = it == h.end() ? 0 : it->second;
      return cmp_apply(c.cmp, n, c.bound);
    }
    case Condition::Kind::Not:
      return !eval_condition(c.children.front(), state, h);
    case Condition::Kind::And:
      return std::all_of(c.children.begin(), c.children.end(), [&](const Condition& k) {
        return eval_condition(k, state, h);
      });
    case Condition::Kind::Or:
      return std::any_of(c.children.begin(), c.children.end(), [&](const Condition& k) {
        return eval_condition(k, state, h);
      });
  }
  return false;
}

Tri eval_condition_state_only(const Condition& c, const Name& state) {
  switch (c.kind) {
    case Condition::Kind::True:
      return Tri::True;
    case Condition::Kind::StateIs:
      return state == c.symbol ? Tri::True : Tri::False;
    case Condition::Kind::Has:
    case Condition::Kind::Count:
      return Tri::Unknown;
    case Condition::Kind::Not: {
      Tri inner = eval_condition_state_only(c.children.front(), state);
      if (inner == Tri::True) return Tri::False;
      if (inner == Tri::False) return Tri::True;
      return Tri::Unknown;
    }
    case Condition::Kind::And: {
      Tri acc = Tri::True;
      for (const Condition& k : c.children) {
        Tri t = eval_condition_state_only(k, state);
        if (t == Tri::False) return Tri::False;
        if (t == Tri::Unknown) acc = Tri::Unknown;
      }
      return acc;
    }
    case Condition::Kind::Or: {
      Tri acc = Tri::False;
      for (const Condition& k : c.children) {
        Tri t = eval_condition_state_only(k, state);
        if (t == Tri::True) return Tri::True;
        if (t == Tri::Unknown) acc = Tri::Unknown;
      }
      return acc;
    }
  }
  return Tri::Unknown;
}

bool guard_state_consistent(const Condition& c, const Name& state) {
  return eval_condition_state_only(c, state) != Tri::False;
}

const std::set<Name>& eval_decision_list(const DecisionList& l, const Name& state,
                                         const TokenBag& h) {
  for (const DecisionEntry& e : l.entries) {
    if (eval_condition(e.guard, state, h)) return e.value;
  }
  throw std::logic_error("decision list is not total");
}

const Agent* Mis::find_agent(const Name& id) const {
  for (const Agent& a : agents)
    if (a.id == id) return &a;
  return nullptr;
}

Agent* Mis::find_agent(const Name& id) {
  for (Agent& a : agents)
    if (a.id == id) return &a;
  return nullptr;
}

const Module* Mis::find_module(const Name& agent_id, const Name& module_name) const {
  const Agent* a = find_agent(agent_id);
  if (!a) return nullptr;
  for (const Module& m : a->modules)
    if (m.name == module_name) return &m;
  return nullptr;
}

Module* Mis::find_module(const Name& agent_id, const Name& module_name) {
  Agent* a = find_agent(agent_id);
  if (!a) return nullptr;
  for (Module& m : a->modules)
    if (m.name == module_name) return &m;
  return nullptr;
}

void Mis::insert_agent(Agent a) {
  for (Agent& existing : agents) {
    if (existing.id == a.id) {
      existing = std::move(a);
      return;
    }
  }
  auto pos = std::lower_bound(agents.begin(), agents.end(), a,
                              [](const Agent& x, const Agent& y) { return x.id < y.id; });
  agents.insert(pos, std::move(a));
}

bool ValidationReport::clean() const {
  return std::none_of(violations.begin(), violations.end(), [](const Violation& v) {
    return v.severity == Severity::Error;
  });
}

void collect_condition_symbols(const Condition& c, std::set<Name>& symbols) {
  if (c.kind == Condition::Kind::Has || c.kind == Condition::Kind::Count)
    symbols.insert(c.symbol);
  for (const Condition& k : c.children) collect_condition_symbols(k, symbols);
}

void collect_condition_states(const Condition& c, std::set<Name>& states) {
  if (c.kind == Condition::Kind::StateIs) states.insert(c.symbol);
  for (const Condition& k : c.children) collect_condition_states(k, states);
}

namespace {

bool guard_is_true(const Condition& c) { return c.kind == Condition::Kind::True; }

void check_condition_shape(const Condition& c, const std::string& loc,
                           std::vector<Violation>& out) {
  switch (c.kind) {
    case Condition::Kind::Not:
      if (c.children.size() != 1)
        out.push_back({Severity::Error, loc, "condition arity", "not takes one operand"});
      break;
    case Condition::Kind::And:
    case Condition::Kind::Or:
      if (c.children.empty())
        out.push_back({Severity::Error, loc, "condition arity",
                       "and/or needs at least one operand"});
      break;
    default:
      break;
  }
  for (const Condition& k : c.children) check_condition_shape(k, loc, out);
}

}  // namespace

AgentSymbols agent_symbols(const Agent& a) {
  AgentSymbols s;
  s.agent_names.insert(a.id);
  for (const Module& m : a.modules) {
    for (const auto& [state, acts] : m.avail) {
      (void)state;
      s.actions.insert(acts.begin(), acts.end());
    }
    for (const auto& [sa, alts] : m.out) {
      s.actions.insert(sa.second);
      for (const TokenSet& t : alts) {
        for (const DirectedToken& tok : t) {
          s.interaction_symbols.insert(tok.symbol);
          if (!tok.broadcast()) s.agent_names.insert(tok.recipient);
        }
      }
    }
    for (const DecisionEntry& e : m.in_list.entries) {
      collect_condition_symbols(e.guard, s.interaction_symbols);
      s.interaction_symbols.insert(e.value.begin(), e.value.end());
    }
    for (const auto& [key, targets] : m.trans) {
      (void)targets;
      s.actions.insert(std::get<1>(key));
      s.interaction_symbols.insert(std::get<2>(key));
    }
  }
  return s;
}

std::vector<const Agent*> namesakes(const Agent& a, const Mis& m) {
  std::vector<const Agent*> r;
  for (const Agent& b : m.agents)
    if (b.id == a.id) r.push_back(&b);
  return r;
}

ValidationReport validate(const Mis& m) {
  ValidationReport rep;
  auto add = [&](Severity sev, std::string loc, std::string rule, std::string msg) {
    rep.violations.push_back({sev, std::move(loc), std::move(rule), std::move(msg)});
  };

  std::set<Name> seen_ids;
  std::map<Name, std::string> prop_owner;  // proposition -> first declaring module

  for (const Agent& a : m.agents) {
    std::string aloc = "agent " + a.id;
    if (!seen_ids.insert(a.id).second)
      add(Severity::Error, aloc, "agent uniqueness", "duplicate agent id");
    if (!m.agent_names.count(a.id))
      add(Severity::Error, aloc, "agent declared", "agent id not in agtnames");
    if (a.modules.empty())
      add(Severity::Error, aloc, "agent nonempty", "agent has no modules");

    std::set<Name> module_names;
    for (const Module& mod : a.modules) {
      std::string loc = aloc + " / module " + mod.name;
      if (!module_names.insert(mod.name).second)
        add(Severity::Error, loc, "module uniqueness", "duplicate module name in agent");
      if (mod.states.empty())
        add(Severity::Error, loc, "states nonempty", "module has no states");
      if (mod.init.empty())
        add(Severity::Warning, loc, "init nonempty", "module has no initial state");
      for (const Name& q : mod.init)
        if (!mod.states.count(q))
          add(Severity::Error, loc, "init declared", "initial state " + q + " not declared");

      for (const auto& [q, acts] : mod.avail) {
        if (!mod.states.count(q))
          add(Severity::Error, loc + " / d", "state declared", "state " + q + " not declared");
        if (acts.empty())
          add(Severity::Error, loc + " / d", "avail nonempty",
              "no available action at state " + q);
        for (const Name& act : acts)
          if (!m.actions.count(act))
            add(Severity::Error, loc + " / d", "action declared",
                "action " + act + " not in act");
      }
      for (const Name& q : mod.states)
        if (!mod.avail.count(q) || mod.avail.at(q).empty())
          add(Severity::Error, loc + " / d", "avail nonempty",
              "no available action at state " + q);

      for (const auto& [sa, alts] : mod.out) {
        std::string oloc = loc + " / out(" + sa.first + ", " + sa.second + ")";
        if (!mod.states.count(sa.first))
          add(Severity::Error, oloc, "state declared", "state not declared");
        auto it = mod.avail.find(sa.first);
        if (it == mod.avail.end() || !it->second.count(sa.second))
          add(Severity::Error, oloc, "out on available",
              "action not available at state " + sa.first);
        if (alts.empty())
          add(Severity::Error, oloc, "out nonempty", "no alternative token set");
        for (const TokenSet& t : alts) {
          for (const DirectedToken& tok : t) {
            if (!m.interaction_alphabet.count(tok.symbol))
              add(Severity::Error, oloc, "symbol declared",
                  "symbol " + tok.symbol + " not in interaction alphabet");
            if (!tok.broadcast() && !m.agent_names.count(tok.recipient))
              add(Severity::Error, oloc, "recipient declared",
                  "recipient " + tok.recipient + " not in agtnames");
          }
        }
      }
      for (const auto& [q, acts] : mod.avail)
        for (const Name& act : acts)
          if (!mod.out.count({q, act}))
            add(Severity::Error, loc + " / out", "out total",
                "no out entry for available action (" + q + ", " + act + ")");

      std::string iloc = loc + " / in_list";
      if (mod.in_list.entries.empty() || !guard_is_true(mod.in_list.entries.back().guard)) {
        add(Severity::Error, iloc, "decision list totality",
            "last entry must have guard true");
      }
      for (std::size_t i = 0; i < mod.in_list.entries.size(); ++i) {
        const DecisionEntry& e = mod.in_list.entries[i];
        check_condition_shape(e.guard, iloc, rep.violations);
        if (e.value.empty())
          add(Severity::Error, iloc, "value nonempty",
              "entry " + std::to_string(i) + " has empty value");
        for (const Name& v : e.value)
          if (!m.interaction_alphabet.count(v))
            add(Severity::Error, iloc, "symbol declared",
                "value symbol " + v + " not in interaction alphabet");
        std::set<Name> guard_syms, guard_states;
        collect_condition_symbols(e.guard, guard_syms);
        collect_condition_states(e.guard, guard_states);
        for (const Name& g : guard_syms)
          if (!m.interaction_alphabet.count(g))
            add(Severity::Error, iloc, "symbol declared",
                "guard symbol " + g + " not in interaction alphabet");
        for (const Name& q : guard_states)
          if (!mod.states.count(q))
            add(Severity::Error, iloc, "state declared",
                "guard state " + q + " not declared");
        if (i + 1 < mod.in_list.entries.size() && guard_is_true(e.guard))
          add(Severity::Warning, iloc, "unreachable entries",
              "entries after entry " + std::to_string(i) + " are unreachable");
      }

      for (const auto& [key, targets] : mod.trans) {
        std::string tloc = loc + " / o";
        const auto& [q, act, sym] = key;
        if (!mod.states.count(q))
          add(Severity::Error, tloc, "state declared", "state " + q + " not declared");
        if (!m.actions.count(act))
          add(Severity::Error, tloc, "action declared", "action " + act + " not in act");
        if (!m.interaction_alphabet.count(sym))
          add(Severity::Error, tloc, "symbol declared",
              "symbol " + sym + " not in interaction alphabet");
        if (targets.empty())
          add(Severity::Error, tloc, "targets nonempty",
              "empty successor set for (" + q + ", " + act + ", " + sym + ")");
        for (const Name& t : targets)
          if (!mod.states.count(t))
            add(Severity::Error, tloc, "state declared",
                "target state " + t + " not declared");
      }

      for (const Name& p : mod.props) {
        auto [it, fresh] = prop_owner.insert({p, loc});
        if (!fresh)
          add(Severity::Error, loc + " / props", "proposition disjointness",
              "proposition " + p + " also declared in " + it->second);
      }
      for (const auto& [p, qs] : mod.valuation) {
        if (!mod.props.count(p))
          add(Severity::Error, loc + " / pi", "proposition declared",
              "proposition " + p + " not declared in props");
        for (const Name& q : qs)
          if (!mod.states.count(q))
            add(Severity::Error, loc + " / pi", "state declared",
                "valuation state " + q + " not declared");
      }
    }
  }

  for (const Name& n : m.agent_names)
    if (!m.find_agent(n))
      add(Severity::Warning, "mis", "agent realized",
          "agtnames entry " + n + " has no agent");

  return rep;
}

}  // namespace mis
