#include "mis/openness.hpp"

#include <algorithm>

namespace mis {

Mis expand(const Mis& m, const Agent& a) {
  Mis r = m;
  AgentSymbols syms = agent_symbols(a);
  r.agent_names.insert(syms.agent_names.begin(), syms.agent_names.end());
  r.actions.insert(syms.actions.begin(), syms.actions.end());
  r.interaction_alphabet.insert(syms.interaction_symbols.begin(),
                                syms.interaction_symbols.end());
  r.insert_agent(a);
  return r;
}

Mis reduce(const Mis& m, const Name& agent_id) {
  Mis r = m;
  auto it = std::find_if(r.agents.begin(), r.agents.end(),
                         [&](const Agent& a) { return a.id == agent_id; });
  if (it != r.agents.end()) r.agents.erase(it);
  return r;
}

long condition_cost(const Condition& c, const CostSchema& s) {
  switch (c.kind) {
    case Condition::Kind::True: return s.atom_true;
    case Condition::Kind::StateIs: return s.atom_state;
    case Condition::Kind::Has: return s.atom_has;
    case Condition::Kind::Count: return s.atom_count;
    case Condition::Kind::Not:
    case Condition::Kind::And:
    case Condition::Kind::Or: {
      long total = s.connective;
      for (const Condition& k : c.children) total += condition_cost(k, s);
      return total;
    }
  }
  return 0;
}

long entry_cost(const DecisionEntry& e, const CostSchema& s) {
  return condition_cost(e.guard, s) +
         s.value_symbol * static_cast<long>(e.value.size());
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

struct SymbolDelta {
  std::set<Name> symbols;  // interaction symbols
  std::set<Name> actions;
  std::set<Name> names;  // agent names (recipients)
};

void collect_tokens(const TokenSet& t, SymbolDelta& d) {
  for (const DirectedToken& tok : t) {
    d.symbols.insert(tok.symbol);
    if (!tok.broadcast()) d.names.insert(tok.recipient);
  }
}

// Names referenced by a step, used both for alphabet extension on additions
// and as removal candidates on deletions.
SymbolDelta step_delta(const EditStep& s) {
  SymbolDelta d;
  std::visit(
      overloaded{
          [&](const AddState&) {}, [&](const RemoveState&) {}, [&](const AddInit&) {},
          [&](const RemoveInit&) {},
          [&](const AddAvail& x) { d.actions.insert(x.action); },
          [&](const RemoveAvail& x) { d.actions.insert(x.action); },
          [&](const AddOutAlternative& x) { collect_tokens(x.tokens, d); },
          [&](const RemoveOutAlternative& x) { collect_tokens(x.tokens, d); },
          [&](const AddOutToken& x) {
            d.symbols.insert(x.token.symbol);
            if (!x.token.broadcast()) d.names.insert(x.token.recipient);
          },
          [&](const RemoveOutToken& x) {
            d.symbols.insert(x.token.symbol);
            if (!x.token.broadcast()) d.names.insert(x.token.recipient);
          },
          [&](const InsertDecisionEntry& x) {
            collect_condition_symbols(x.entry.guard, d.symbols);
            d.symbols.insert(x.entry.value.begin(), x.entry.value.end());
          },
          [&](const RemoveDecisionEntry&) {},
          [&](const AddGuardAtom& x) { collect_condition_symbols(x.atom, d.symbols); },
          [&](const RemoveGuardAtom& x) { collect_condition_symbols(x.atom, d.symbols); },
          [&](const AddTransTarget& x) { d.symbols.insert(x.symbol); },
          [&](const RemoveTransTarget& x) { d.symbols.insert(x.symbol); },
          [&](const AddProp&) {}, [&](const RemoveProp&) {},
          [&](const AddValuationState&) {}, [&](const RemoveValuationState&) {},
          [&](const RenameSymbol& x) {
            switch (x.category) {
              case RenameSymbol::Category::Interaction: d.symbols.insert(x.to); break;
              case RenameSymbol::Category::Action: d.actions.insert(x.to); break;
              case RenameSymbol::Category::AgentName: d.names.insert(x.to); break;
              case RenameSymbol::Category::State: break;
            }
          }},
      s);
  return d;
}

bool is_addition(const EditStep& s) {
  return std::visit(
      overloaded{[](const AddState&) { return true; },
                 [](const AddInit&) { return true; },
                 [](const AddAvail&) { return true; },
                 [](const AddOutAlternative&) { return true; },
                 [](const AddOutToken&) { return true; },
                 [](const InsertDecisionEntry&) { return true; },
                 [](const AddGuardAtom&) { return true; },
                 [](const AddTransTarget&) { return true; },
                 [](const AddProp&) { return true; },
                 [](const AddValuationState&) { return true; },
                 [](const RenameSymbol&) { return true; },
                 [](const auto&) { return false; }},
      s);
}

SymbolDelta usage(const Mis& m) {
  SymbolDelta u;
  for (const Agent& a : m.agents) {
    AgentSymbols s = agent_symbols(a);
    u.symbols.insert(s.interaction_symbols.begin(), s.interaction_symbols.end());
    u.actions.insert(s.actions.begin(), s.actions.end());
    u.names.insert(s.agent_names.begin(), s.agent_names.end());
  }
  return u;
}

void extend_alphabets(Mis& m, const SymbolDelta& d) {
  m.interaction_alphabet.insert(d.symbols.begin(), d.symbols.end());
  m.actions.insert(d.actions.begin(), d.actions.end());
  m.agent_names.insert(d.names.begin(), d.names.end());
}

// Drop candidate names that no module references any more.
void shrink_alphabets(Mis& m, const SymbolDelta& candidates) {
  if (candidates.symbols.empty() && candidates.actions.empty() &&
      candidates.names.empty())
    return;
  SymbolDelta used = usage(m);
  for (const Name& x : candidates.symbols)
    if (!used.symbols.count(x)) m.interaction_alphabet.erase(x);
  for (const Name& x : candidates.actions)
    if (!used.actions.count(x)) m.actions.erase(x);
  for (const Name& x : candidates.names)
    if (!used.names.count(x)) m.agent_names.erase(x);
}

struct StepContext {
  Mis& m;
  std::size_t index;

  [[noreturn]] void fail(const std::string& msg) const { throw ScriptError(index, msg); }

  Module& module(const Name& agent, const Name& mod) const {
    Module* p = m.find_module(agent, mod);
    if (!p) fail("no module " + agent + "." + mod);
    return *p;
  }
};

void rename_in_condition(Condition& c, const Name& from, const Name& to, bool states) {
  bool symbol_atom = c.kind == Condition::Kind::Has || c.kind == Condition::Kind::Count;
  bool state_atom = c.kind == Condition::Kind::StateIs;
  if (((states && state_atom) || (!states && symbol_atom)) && c.symbol == from)
    c.symbol = to;
  for (Condition& k : c.children) rename_in_condition(k, from, to, states);
}

bool condition_mentions(const Condition& c, const Name& name, bool states) {
  bool symbol_atom = c.kind == Condition::Kind::Has || c.kind == Condition::Kind::Count;
  bool state_atom = c.kind == Condition::Kind::StateIs;
  if (((states && state_atom) || (!states && symbol_atom)) && c.symbol == name) return true;
  for (const Condition& k : c.children)
    if (condition_mentions(k, name, states)) return true;
  return false;
}

bool module_mentions(const Module& mod, const Name& x, RenameSymbol::Category cat) {
  using C = RenameSymbol::Category;
  switch (cat) {
    case C::State: {
      if (mod.states.count(x) || mod.init.count(x) || mod.avail.count(x)) return true;
      for (const auto& [sa, alts] : mod.out) {
        (void)alts;
        if (sa.first == x) return true;
      }
      for (const DecisionEntry& e : mod.in_list.entries)
        if (condition_mentions(e.guard, x, true)) return true;
      for (const auto& [key, targets] : mod.trans)
        if (std::get<0>(key) == x || targets.count(x)) return true;
      for (const auto& [p, qs] : mod.valuation) {
        (void)p;
        if (qs.count(x)) return true;
      }
      return false;
    }
    case C::Action: {
      for (const auto& [q, acts] : mod.avail) {
        (void)q;
        if (acts.count(x)) return true;
      }
      for (const auto& [sa, alts] : mod.out) {
        (void)alts;
        if (sa.second == x) return true;
      }
      for (const auto& [key, targets] : mod.trans) {
        (void)targets;
        if (std::get<1>(key) == x) return true;
      }
      return false;
    }
    case C::Interaction: {
      for (const auto& [sa, alts] : mod.out) {
        (void)sa;
        for (const TokenSet& t : alts)
          for (const DirectedToken& tok : t)
            if (tok.symbol == x) return true;
      }
      for (const DecisionEntry& e : mod.in_list.entries) {
        if (condition_mentions(e.guard, x, false) || e.value.count(x)) return true;
      }
      for (const auto& [key, targets] : mod.trans) {
        (void)targets;
        if (std::get<2>(key) == x) return true;
      }
      return false;
    }
    case C::AgentName: {
      for (const auto& [sa, alts] : mod.out) {
        (void)sa;
        for (const TokenSet& t : alts)
          for (const DirectedToken& tok : t)
            if (!tok.broadcast() && tok.recipient == x) return true;
      }
      return false;
    }
  }
  return false;
}

void rename_in_module(Module& mod, const Name& from, const Name& to,
                      RenameSymbol::Category cat) {
  using C = RenameSymbol::Category;
  auto rename_set = [&](std::set<Name>& s) {
    if (s.erase(from)) s.insert(to);
  };
  auto rekey = [&](auto& map, auto map_key) {
    std::remove_reference_t<decltype(map)> out;
    for (auto& [k, v] : map) out[map_key(k)] = std::move(v);
    map = std::move(out);
  };
  switch (cat) {
    case C::State: {
      rename_set(mod.states);
      rename_set(mod.init);
      rekey(mod.avail, [&](const Name& k) { return k == from ? to : k; });
      rekey(mod.out, [&](const SituatedAction& k) {
        return SituatedAction{k.first == from ? to : k.first, k.second};
      });
      for (DecisionEntry& e : mod.in_list.entries)
        rename_in_condition(e.guard, from, to, true);
      rekey(mod.trans, [&](const TransKey& k) {
        return TransKey{std::get<0>(k) == from ? to : std::get<0>(k), std::get<1>(k),
                        std::get<2>(k)};
      });
      for (auto& [key, targets] : mod.trans) {
        (void)key;
        rename_set(targets);
      }
      for (auto& [p, qs] : mod.valuation) {
        (void)p;
        rename_set(qs);
      }
      break;
    }
    case C::Action: {
      for (auto& [q, acts] : mod.avail) {
        (void)q;
        rename_set(acts);
      }
      rekey(mod.out, [&](const SituatedAction& k) {
        return SituatedAction{k.first, k.second == from ? to : k.second};
      });
      rekey(mod.trans, [&](const TransKey& k) {
        return TransKey{std::get<0>(k), std::get<1>(k) == from ? to : std::get<1>(k),
                        std::get<2>(k)};
      });
      break;
    }
    case C::Interaction: {
      for (auto& [sa, alts] : mod.out) {
        (void)sa;
        std::set<TokenSet> next;
        for (TokenSet t : alts) {
          TokenSet nt;
          for (DirectedToken tok : t) {
            if (tok.symbol == from) tok.symbol = to;
            nt.insert(tok);
          }
          next.insert(nt);
        }
        alts = std::move(next);
      }
      for (DecisionEntry& e : mod.in_list.entries) {
        rename_in_condition(e.guard, from, to, false);
        rename_set(e.value);
      }
      rekey(mod.trans, [&](const TransKey& k) {
        return TransKey{std::get<0>(k), std::get<1>(k),
                        std::get<2>(k) == from ? to : std::get<2>(k)};
      });
      break;
    }
    case C::AgentName: {
      for (auto& [sa, alts] : mod.out) {
        (void)sa;
        std::set<TokenSet> next;
        for (TokenSet t : alts) {
          TokenSet nt;
          for (DirectedToken tok : t) {
            if (!tok.broadcast() && tok.recipient == from) tok.recipient = to;
            nt.insert(tok);
          }
          next.insert(nt);
        }
        alts = std::move(next);
      }
      break;
    }
  }
}

void do_apply(StepContext ctx, const EditStep& step) {
  std::visit(
      overloaded{
          [&](const AddState& x) {
            Module& mod = ctx.module(x.agent, x.module);
            if (!mod.states.insert(x.state).second)
              ctx.fail("state " + x.state + " already exists");
          },
          [&](const RemoveState& x) {
            Module& mod = ctx.module(x.agent, x.module);
            if (!mod.states.count(x.state)) ctx.fail("no state " + x.state);
            Module probe = mod;
            probe.states.erase(x.state);
            if (module_mentions(probe, x.state, RenameSymbol::Category::State))
              ctx.fail("state " + x.state + " is still referenced");
            mod.states.erase(x.state);
          },
          [&](const AddInit& x) {
            Module& mod = ctx.module(x.agent, x.module);
            if (!mod.states.count(x.state)) ctx.fail("no state " + x.state);
            if (!mod.init.insert(x.state).second)
              ctx.fail("state " + x.state + " already initial");
          },
          [&](const RemoveInit& x) {
            Module& mod = ctx.module(x.agent, x.module);
            if (!mod.init.erase(x.state)) ctx.fail("state " + x.state + " not initial");
          },
          [&](const AddAvail& x) {
            Module& mod = ctx.module(x.agent, x.module);
            if (!mod.states.count(x.state)) ctx.fail("no state " + x.state);
            if (!mod.avail[x.state].insert(x.action).second)
              ctx.fail("action already available");
          },
          [&](const RemoveAvail& x) {
            Module& mod = ctx.module(x.agent, x.module);
            auto it = mod.avail.find(x.state);
            if (it == mod.avail.end() || !it->second.erase(x.action))
              ctx.fail("action not available");
            if (it->second.empty()) mod.avail.erase(it);
          },
          [&](const AddOutAlternative& x) {
            Module& mod = ctx.module(x.agent, x.module);
            if (!mod.states.count(x.sa.first)) ctx.fail("no state " + x.sa.first);
            if (!mod.out[x.sa].insert(x.tokens).second)
              ctx.fail("alternative already present");
          },
          [&](const RemoveOutAlternative& x) {
            Module& mod = ctx.module(x.agent, x.module);
            auto it = mod.out.find(x.sa);
            if (it == mod.out.end() || !it->second.erase(x.tokens))
              ctx.fail("no such alternative");
            if (it->second.empty()) mod.out.erase(it);
          },
          [&](const AddOutToken& x) {
            Module& mod = ctx.module(x.agent, x.module);
            auto it = mod.out.find(x.sa);
            if (it == mod.out.end() || !it->second.count(x.alternative))
              ctx.fail("no such alternative");
            if (x.alternative.count(x.token)) ctx.fail("token already present");
            TokenSet grown = x.alternative;
            grown.insert(x.token);
            if (it->second.count(grown)) ctx.fail("grown alternative already present");
            it->second.erase(x.alternative);
            it->second.insert(std::move(grown));
          },
          [&](const RemoveOutToken& x) {
            Module& mod = ctx.module(x.agent, x.module);
            auto it = mod.out.find(x.sa);
            if (it == mod.out.end() || !it->second.count(x.alternative))
              ctx.fail("no such alternative");
            if (!x.alternative.count(x.token)) ctx.fail("token not in alternative");
            TokenSet shrunk = x.alternative;
            shrunk.erase(x.token);
            if (it->second.count(shrunk)) ctx.fail("shrunk alternative already present");
            it->second.erase(x.alternative);
            it->second.insert(std::move(shrunk));
          },
          [&](const InsertDecisionEntry& x) {
            Module& mod = ctx.module(x.agent, x.module);
            if (x.position > mod.in_list.entries.size()) ctx.fail("position out of range");
            mod.in_list.entries.insert(
                mod.in_list.entries.begin() + static_cast<long>(x.position), x.entry);
          },
          [&](const RemoveDecisionEntry& x) {
            Module& mod = ctx.module(x.agent, x.module);
            if (x.position >= mod.in_list.entries.size())
              ctx.fail("position out of range");
            mod.in_list.entries.erase(mod.in_list.entries.begin() +
                                      static_cast<long>(x.position));
          },
          [&](const AddGuardAtom& x) {
            Module& mod = ctx.module(x.agent, x.module);
            if (x.entry >= mod.in_list.entries.size()) ctx.fail("entry out of range");
            Condition& g = mod.in_list.entries[x.entry].guard;
            Condition::Kind want =
                x.disjunct ? Condition::Kind::Or : Condition::Kind::And;
            if (g.kind == want) {
              g.children.push_back(x.atom);
            } else {
              Condition wrapped;
              wrapped.kind = want;
              wrapped.children.push_back(std::move(g));
              wrapped.children.push_back(x.atom);
              g = std::move(wrapped);
            }
          },
          [&](const RemoveGuardAtom& x) {
            Module& mod = ctx.module(x.agent, x.module);
            if (x.entry >= mod.in_list.entries.size()) ctx.fail("entry out of range");
            Condition& g = mod.in_list.entries[x.entry].guard;
            if (g.kind != Condition::Kind::And && g.kind != Condition::Kind::Or)
              ctx.fail("guard has no top-level connective");
            auto it = std::find(g.children.begin(), g.children.end(), x.atom);
            if (it == g.children.end()) ctx.fail("atom not found in guard");
            g.children.erase(it);
            if (g.children.size() == 1) {
              Condition only = std::move(g.children.front());
              g = std::move(only);
            }
          },
          [&](const AddTransTarget& x) {
            Module& mod = ctx.module(x.agent, x.module);
            if (!mod.states.count(x.target)) ctx.fail("no state " + x.target);
            if (!mod.trans[{x.sa.first, x.sa.second, x.symbol}].insert(x.target).second)
              ctx.fail("target already present");
          },
          [&](const RemoveTransTarget& x) {
            Module& mod = ctx.module(x.agent, x.module);
            auto it = mod.trans.find({x.sa.first, x.sa.second, x.symbol});
            if (it == mod.trans.end() || !it->second.erase(x.target))
              ctx.fail("no such transition target");
            if (it->second.empty()) mod.trans.erase(it);
          },
          [&](const AddProp& x) {
            Module& mod = ctx.module(x.agent, x.module);
            if (!mod.props.insert(x.prop).second) ctx.fail("proposition already present");
          },
          [&](const RemoveProp& x) {
            Module& mod = ctx.module(x.agent, x.module);
            if (mod.valuation.count(x.prop)) ctx.fail("proposition still has a valuation");
            if (!mod.props.erase(x.prop)) ctx.fail("no such proposition");
          },
          [&](const AddValuationState& x) {
            Module& mod = ctx.module(x.agent, x.module);
            if (!mod.props.count(x.prop)) ctx.fail("no such proposition");
            if (!mod.states.count(x.state)) ctx.fail("no state " + x.state);
            if (!mod.valuation[x.prop].insert(x.state).second)
              ctx.fail("valuation state already present");
          },
          [&](const RemoveValuationState& x) {
            Module& mod = ctx.module(x.agent, x.module);
            auto it = mod.valuation.find(x.prop);
            if (it == mod.valuation.end() || !it->second.erase(x.state))
              ctx.fail("no such valuation state");
            if (it->second.empty()) mod.valuation.erase(it);
          },
          [&](const RenameSymbol& x) {
            Module& mod = ctx.module(x.agent, x.module);
            if (module_mentions(mod, x.to, x.category))
              ctx.fail("rename target " + x.to + " already occurs");
            if (!module_mentions(mod, x.from, x.category))
              ctx.fail("rename source " + x.from + " does not occur");
            rename_in_module(mod, x.from, x.to, x.category);
          }},
      step);
}

}  // namespace

long step_cost(const EditStep& s, const CostSchema& c) {
  return std::visit(
      overloaded{[&](const AddState&) { return c.state; },
                 [&](const RemoveState&) { return c.state; },
                 [&](const AddInit&) { return c.init; },
                 [&](const RemoveInit&) { return c.init; },
                 [&](const AddAvail&) { return c.avail; },
                 [&](const RemoveAvail&) { return c.avail; },
                 [&](const AddOutAlternative& x) {
                   return c.out_alternative_base +
                          c.out_alternative_token * static_cast<long>(x.tokens.size());
                 },
                 [&](const RemoveOutAlternative& x) {
                   return c.out_alternative_base +
                          c.out_alternative_token * static_cast<long>(x.tokens.size());
                 },
                 [&](const AddOutToken&) { return c.out_token; },
                 [&](const RemoveOutToken&) { return c.out_token; },
                 [&](const InsertDecisionEntry& x) { return entry_cost(x.entry, c); },
                 [&](const RemoveDecisionEntry&) { return c.value_symbol; },
                 [&](const AddGuardAtom&) { return c.guard_atom; },
                 [&](const RemoveGuardAtom&) { return c.guard_atom; },
                 [&](const AddTransTarget&) { return c.trans_target; },
                 [&](const RemoveTransTarget&) { return c.trans_target; },
                 [&](const AddProp&) { return c.prop; },
                 [&](const RemoveProp&) { return c.prop; },
                 [&](const AddValuationState&) { return c.valuation_state; },
                 [&](const RemoveValuationState&) { return c.valuation_state; },
                 [&](const RenameSymbol&) { return c.rename; }},
      s);
}

long script_cost(const EditScript& s, const CostSchema& schema) {
  long total = 0;
  for (const EditStep& step : s.steps) total += step_cost(step, schema);
  return total;
}

std::string step_function(const EditStep& s) {
  return std::visit(
      overloaded{[](const AddAvail&) { return std::string("d"); },
                 [](const RemoveAvail&) { return std::string("d"); },
                 [](const AddOutAlternative&) { return std::string("out"); },
                 [](const RemoveOutAlternative&) { return std::string("out"); },
                 [](const AddOutToken&) { return std::string("out"); },
                 [](const RemoveOutToken&) { return std::string("out"); },
                 [](const InsertDecisionEntry&) { return std::string("in"); },
                 [](const RemoveDecisionEntry&) { return std::string("in"); },
                 [](const AddGuardAtom&) { return std::string("in"); },
                 [](const RemoveGuardAtom&) { return std::string("in"); },
                 [](const AddTransTarget&) { return std::string("o"); },
                 [](const RemoveTransTarget&) { return std::string("o"); },
                 [](const auto&) { return std::string("other"); }},
      s);
}

Mis apply_step(Mis m, const EditStep& s, std::size_t index) {
  SymbolDelta d = step_delta(s);
  // the removed entry's symbols are shrink candidates; resolve them before
  // the entry disappears
  if (const auto* r = std::get_if<RemoveDecisionEntry>(&s)) {
    if (const Module* mod = m.find_module(r->agent, r->module))
      if (r->position < mod->in_list.entries.size()) {
        const DecisionEntry& e = mod->in_list.entries[r->position];
        collect_condition_symbols(e.guard, d.symbols);
        d.symbols.insert(e.value.begin(), e.value.end());
      }
  }
  do_apply(StepContext{m, index}, s);
  if (is_addition(s)) {
    extend_alphabets(m, d);
    if (const auto* r = std::get_if<RenameSymbol>(&s)) {
      SymbolDelta gone;
      switch (r->category) {
        case RenameSymbol::Category::Interaction: gone.symbols.insert(r->from); break;
        case RenameSymbol::Category::Action: gone.actions.insert(r->from); break;
        case RenameSymbol::Category::AgentName: gone.names.insert(r->from); break;
        case RenameSymbol::Category::State: break;
      }
      shrink_alphabets(m, gone);
    }
  } else {
    shrink_alphabets(m, d);
  }
  return m;
}

Mis apply_script(const Mis& m, const EditScript& s) {
  Mis cur = m;
  for (std::size_t i = 0; i < s.steps.size(); ++i)
    cur = apply_step(std::move(cur), s.steps[i], i);
  return cur;
}

EditScript inverse_script(const EditScript& s, const Mis& base) {
  EditScript inv;
  Mis cur = base;
  for (std::size_t i = 0; i < s.steps.size(); ++i) {
    const EditStep& step = s.steps[i];
    EditStep reverse = std::visit(
        overloaded{
            [&](const AddState& x) -> EditStep {
              return RemoveState{x.agent, x.module, x.state};
            },
            [&](const RemoveState& x) -> EditStep {
              return AddState{x.agent, x.module, x.state};
            },
            [&](const AddInit& x) -> EditStep {
              return RemoveInit{x.agent, x.module, x.state};
            },
            [&](const RemoveInit& x) -> EditStep {
              return AddInit{x.agent, x.module, x.state};
            },
            [&](const AddAvail& x) -> EditStep {
              return RemoveAvail{x.agent, x.module, x.state, x.action};
            },
            [&](const RemoveAvail& x) -> EditStep {
              return AddAvail{x.agent, x.module, x.state, x.action};
            },
            [&](const AddOutAlternative& x) -> EditStep {
              return RemoveOutAlternative{x.agent, x.module, x.sa, x.tokens};
            },
            [&](const RemoveOutAlternative& x) -> EditStep {
              return AddOutAlternative{x.agent, x.module, x.sa, x.tokens};
            },
            [&](const AddOutToken& x) -> EditStep {
              TokenSet grown = x.alternative;
              grown.insert(x.token);
              return RemoveOutToken{x.agent, x.module, x.sa, grown, x.token};
            },
            [&](const RemoveOutToken& x) -> EditStep {
              TokenSet shrunk = x.alternative;
              shrunk.erase(x.token);
              return AddOutToken{x.agent, x.module, x.sa, shrunk, x.token};
            },
            [&](const InsertDecisionEntry& x) -> EditStep {
              return RemoveDecisionEntry{x.agent, x.module, x.position};
            },
            [&](const RemoveDecisionEntry& x) -> EditStep {
              const Module* mod = cur.find_module(x.agent, x.module);
              if (!mod || x.position >= mod->in_list.entries.size())
                throw ScriptError(i, "cannot invert entry removal");
              return InsertDecisionEntry{x.agent, x.module, x.position,
                                         mod->in_list.entries[x.position]};
            },
            [&](const AddGuardAtom& x) -> EditStep {
              return RemoveGuardAtom{x.agent, x.module, x.entry, x.atom, x.disjunct};
            },
            [&](const RemoveGuardAtom& x) -> EditStep {
              const Module* mod = cur.find_module(x.agent, x.module);
              bool disjunct = x.disjunct;
              if (mod && x.entry < mod->in_list.entries.size())
                disjunct = mod->in_list.entries[x.entry].guard.kind ==
                           Condition::Kind::Or;
              return AddGuardAtom{x.agent, x.module, x.entry, x.atom, disjunct};
            },
            [&](const AddTransTarget& x) -> EditStep {
              return RemoveTransTarget{x.agent, x.module, x.sa, x.symbol, x.target};
            },
            [&](const RemoveTransTarget& x) -> EditStep {
              return AddTransTarget{x.agent, x.module, x.sa, x.symbol, x.target};
            },
            [&](const AddProp& x) -> EditStep {
              return RemoveProp{x.agent, x.module, x.prop};
            },
            [&](const RemoveProp& x) -> EditStep {
              return AddProp{x.agent, x.module, x.prop};
            },
            [&](const AddValuationState& x) -> EditStep {
              return RemoveValuationState{x.agent, x.module, x.prop, x.state};
            },
            [&](const RemoveValuationState& x) -> EditStep {
              return AddValuationState{x.agent, x.module, x.prop, x.state};
            },
            [&](const RenameSymbol& x) -> EditStep {
              return RenameSymbol{x.agent, x.module, x.category, x.to, x.from};
            }},
        step);
    inv.steps.push_back(std::move(reverse));
    cur = apply_step(std::move(cur), step, i);
  }
  std::reverse(inv.steps.begin(), inv.steps.end());
  return inv;
}

OpennessReport openness_report(const Mis& m, const Agent& fresh, const EditScript& s,
                               const Mis* expected, const CostSchema& schema) {
  OpennessReport rep;
  rep.cost = script_cost(s, schema);
  for (const EditStep& step : s.steps) rep.breakdown[step_function(step)] +=
      step_cost(step, schema);
  Mis grown = expand(m, fresh);
  try {
    Mis result = apply_script(grown, s);
    rep.applied = true;
    rep.validation = validate(result);
    if (expected) rep.sound = result == *expected;
  } catch (const ScriptError&) {
    rep.applied = false;
  }
  return rep;
}

OpennessFit openness_family_fit(const std::function<Mis(int)>& family,
                                const std::function<ExpansionPlan(int)>& plan, int from,
                                int to, const CostSchema& schema) {
  OpennessFit fit;
  for (int n = from; n <= to; ++n) {
    ExpansionPlan p = plan(n);
    fit.costs.emplace_back(n, script_cost(p.script, schema));
    Mis target = family(n + 1);
    OpennessReport rep = openness_report(family(n), p.fresh, p.script, &target, schema);
    fit.sound = fit.sound && rep.applied && rep.sound;
  }
  bool all_zero = true, all_equal = true, diffs_equal = fit.costs.size() >= 2;
  for (std::size_t i = 0; i < fit.costs.size(); ++i) {
    if (fit.costs[i].second != 0) all_zero = false;
    if (fit.costs[i].second != fit.costs[0].second) all_equal = false;
  }
  if (fit.costs.size() >= 3) {
    long d0 = fit.costs[1].second - fit.costs[0].second;
    for (std::size_t i = 2; i < fit.costs.size(); ++i)
      if (fit.costs[i].second - fit.costs[i - 1].second != d0) diffs_equal = false;
    if (d0 == 0) diffs_equal = false;
  } else if (fit.costs.size() == 2) {
    diffs_equal = fit.costs[1].second != fit.costs[0].second;
  }
  if (all_zero) fit.verdict = "O(0)";
  else if (all_equal) fit.verdict = "O(1)";
  else if (diffs_equal) fit.verdict = "O(n)";
  else fit.verdict = "unclassified";
  return fit;
}

}  // namespace mis
