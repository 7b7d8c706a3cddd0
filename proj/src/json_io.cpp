#include "mis/json_io.hpp"

#include <sstream>

#include "mis/dsl.hpp"

namespace mis {

using nlohmann::json;

namespace {

json token_json(const DirectedToken& t) {
  return json{{"symbol", t.symbol}, {"to", t.recipient}};
}

json token_set_json(const TokenSet& ts) {
  json arr = json::array();
  for (const DirectedToken& t : ts) arr.push_back(token_json(t));
  return arr;
}

json decision_list_json(const DecisionList& l) {
  json arr = json::array();
  for (const DecisionEntry& e : l.entries)
    arr.push_back(json{{"guard", print_condition(e.guard)}, {"value", e.value}});
  return arr;
}

json module_json(const Module& m) {
  json d = json::object();
  for (const auto& [q, acts] : m.avail) d[q] = acts;
  json out = json::array();
  for (const auto& [sa, alts] : m.out) {
    json alternatives = json::array();
    for (const TokenSet& ts : alts) alternatives.push_back(token_set_json(ts));
    out.push_back(json{{"state", sa.first},
                       {"action", sa.second},
                       {"alternatives", alternatives}});
  }
  json o = json::array();
  for (const auto& [key, targets] : m.trans)
    o.push_back(json{{"state", std::get<0>(key)},
                     {"action", std::get<1>(key)},
                     {"symbol", std::get<2>(key)},
                     {"targets", targets}});
  json pi = json::object();
  for (const auto& [p, qs] : m.valuation) pi[p] = qs;
  return json{{"name", m.name}, {"states", m.states},   {"init", m.init},
              {"d", d},         {"out", out},           {"in_list", decision_list_json(m.in_list)},
              {"o", o},         {"props", m.props},     {"pi", pi}};
}

std::string join(const std::vector<Name>& xs, const char* sep) {
  std::string r;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) r += sep;
    r += xs[i];
  }
  return r;
}

}  // namespace

json mis_to_json(const Mis& m) {
  json agents = json::array();
  for (const Agent& a : m.agents) {
    json mods = json::array();
    for (const Module& mod : a.modules) mods.push_back(module_json(mod));
    agents.push_back(json{{"id", a.id}, {"modules", mods}});
  }
  return json{{"agtnames", m.agent_names},
              {"act", m.actions},
              {"in", m.interaction_alphabet},
              {"agents", agents}};
}

json ncegs_to_json(const Ncegs& n) {
  json slots = json::array();
  for (const ModuleSlot& s : n.layout.slots)
    slots.push_back(json{{"agent", s.agent_id}, {"module", s.module_name}});
  json states = json::array();
  for (const GlobalState& q : n.states) states.push_back(q);
  json transitions = json::array();
  for (std::size_t s = 0; s < n.transitions.size(); ++s)
    for (const auto& [a, succs] : n.transitions[s])
      for (std::size_t t : succs)
        transitions.push_back(json{{"from", s}, {"action", a}, {"to", t}});
  json valuation = json::object();
  for (const auto& [p, qs] : n.valuation) valuation[p] = qs;
  json classes = json::object();
  std::set<std::size_t> all;
  for (std::size_t s = 0; s < n.states.size(); ++s) all.insert(s);
  for (std::size_t a = 0; a < n.layout.agent_ids.size(); ++a)
    classes[n.layout.agent_ids[a]] = n.epistemic_classes(a, all);
  return json{{"slots", slots},
              {"states", states},
              {"init", n.init},
              {"transitions", transitions},
              {"valuation", valuation},
              {"epistemic_classes", classes}};
}

json validation_to_json(const ValidationReport& r) {
  json arr = json::array();
  for (const Violation& v : r.violations)
    arr.push_back(json{{"severity", v.severity == Severity::Error ? "error" : "warning"},
                       {"location", v.location},
                       {"rule", v.rule},
                       {"message", v.message}});
  return json{{"clean", r.clean()}, {"violations", arr}};
}

json trace_to_json(const Ncegs& n, const Trace& t) {
  json steps = json::array();
  for (const TraceStep& s : t.steps)
    steps.push_back(json{{"state", n.states[s.state]}, {"action", s.action}});
  return json{{"steps", steps}, {"final_state", n.states[t.final_state]}};
}

std::string ncegs_to_dot(const Ncegs& n) {
  std::ostringstream os;
  os << "digraph ncegs {\n";
  os << "  rankdir=LR;\n";
  std::set<std::size_t> inits(n.init.begin(), n.init.end());
  for (std::size_t s = 0; s < n.states.size(); ++s) {
    os << "  s" << s << " [label=\"" << join(n.states[s], ",") << "\"";
    if (inits.count(s)) os << ", shape=doublecircle";
    os << "];\n";
  }
  for (std::size_t s = 0; s < n.transitions.size(); ++s)
    for (const auto& [a, succs] : n.transitions[s])
      for (std::size_t t : succs)
        os << "  s" << s << " -> s" << t << " [label=\"" << join(a, ",")
           << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace mis
