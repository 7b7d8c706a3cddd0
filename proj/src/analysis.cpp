#include "mis/analysis.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <sstream>

namespace mis {

Predicate Predicate::truth() { return Predicate{}; }

Predicate Predicate::falsity() {
  Predicate p;
  p.kind = Kind::False;
  return p;
}

Predicate Predicate::of_prop(Name name) {
  Predicate p;
  p.kind = Kind::Prop;
  p.prop = std::move(name);
  return p;
}

Predicate Predicate::local(std::size_t slot, Name state) {
  Predicate p;
  p.kind = Kind::Local;
  p.slot = slot;
  p.local_state = std::move(state);
  return p;
}

Predicate Predicate::negate(Predicate inner) {
  Predicate p;
  p.kind = Kind::Not;
  p.children.push_back(std::move(inner));
  return p;
}

Predicate Predicate::conj(std::vector<Predicate> ps) {
  if (ps.size() == 1) return std::move(ps.front());
  Predicate p;
  p.kind = Kind::And;
  p.children = std::move(ps);
  return p;
}

Predicate Predicate::disj(std::vector<Predicate> ps) {
  if (ps.size() == 1) return std::move(ps.front());
  Predicate p;
  p.kind = Kind::Or;
  p.children = std::move(ps);
  return p;
}

bool eval_predicate(const Ncegs& n, const Predicate& p, std::size_t state) {
  switch (p.kind) {
    case Predicate::Kind::True:
      return true;
    case Predicate::Kind::False:
      return false;
    case Predicate::Kind::Prop: {
      auto it = n.valuation.find(p.prop);
      return it != n.valuation.end() && it->second.count(state) > 0;
    }
    case Predicate::Kind::Local:
      return n.states[state][p.slot] == p.local_state;
    case Predicate::Kind::Not:
      return !eval_predicate(n, p.children.front(), state);
    case Predicate::Kind::And:
      return std::all_of(p.children.begin(), p.children.end(), [&](const Predicate& k) {
        return eval_predicate(n, k, state);
      });
    case Predicate::Kind::Or:
      return std::any_of(p.children.begin(), p.children.end(), [&](const Predicate& k) {
        return eval_predicate(n, k, state);
      });
  }
  return false;
}

namespace {

class PredParser {
 public:
  PredParser(const std::string& text, const Ncegs& n) : text_(text), n_(n) {}

  Predicate run() {
    Predicate p = disjunction();
    skip_ws();
    if (pos_ != text_.size())
      throw PredicateError("unexpected trailing input in predicate: '" +
                           text_.substr(pos_) + "'");
    return p;
  }

 private:
  Predicate disjunction() {
    std::vector<Predicate> parts;
    parts.push_back(conjunction());
    while (word_ahead("or")) parts.push_back(conjunction());
    return Predicate::disj(std::move(parts));
  }

  Predicate conjunction() {
    std::vector<Predicate> parts;
    parts.push_back(unary());
    while (word_ahead("and")) parts.push_back(unary());
    return Predicate::conj(std::move(parts));
  }

  Predicate unary() {
    skip_ws();
    if (word_ahead("not")) return Predicate::negate(unary());
    if (consume('(')) {
      Predicate p = disjunction();
      expect(')');
      return p;
    }
    std::string id = ident();
    if (id == "true") return Predicate::truth();
    if (id == "false") return Predicate::falsity();
    if (id == "local") {
      expect('(');
      std::string module_ref = ident();
      expect(',');
      std::string state = ident();
      expect(')');
      return Predicate::local(resolve_slot(module_ref), state);
    }
    if (!n_.valuation.count(id))
      throw PredicateError("unknown proposition '" + id + "'");
    return Predicate::of_prop(id);
  }

  std::size_t resolve_slot(const std::string& ref) {
    const Layout& l = n_.layout;
    std::vector<std::size_t> hits;
    auto dot = ref.find('.');
    if (dot != std::string::npos) {
      Name agent = ref.substr(0, dot), mod = ref.substr(dot + 1);
      for (std::size_t i = 0; i < l.slots.size(); ++i)
        if (l.slots[i].agent_id == agent && l.slots[i].module_name == mod)
          hits.push_back(i);
    } else {
      for (std::size_t i = 0; i < l.slots.size(); ++i)
        if (l.slots[i].agent_id == ref) hits.push_back(i);
      if (hits.size() > 1) {
        throw PredicateError("agent '" + ref +
                             "' has several modules; use agent.module");
      }
      if (hits.empty()) {
        for (std::size_t i = 0; i < l.slots.size(); ++i)
          if (l.slots[i].module_name == ref) hits.push_back(i);
        if (hits.size() > 1)
          throw PredicateError("module name '" + ref +
                               "' is ambiguous; use agent.module");
      }
    }
    if (hits.empty()) throw PredicateError("unknown module reference '" + ref + "'");
    return hits.front();
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool word_ahead(const std::string& w) {
    skip_ws();
    std::size_t save = pos_;
    std::string id;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      id += text_[pos_++];
    if (id == w) return true;
    pos_ = save;
    return false;
  }

  bool consume(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!consume(c))
      throw PredicateError(std::string("expected '") + c + "' in predicate");
  }

  std::string ident() {
    skip_ws();
    std::string id;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      id += text_[pos_++];
    if (id.empty()) throw PredicateError("expected identifier in predicate");
    return id;
  }

  const std::string& text_;
  const Ncegs& n_;
  std::size_t pos_ = 0;
};

}  // namespace

Predicate parse_predicate(const std::string& text, const Ncegs& n) {
  return PredParser(text, n).run();
}

ReachabilityInfo reachable(const Ncegs& n) {
  ReachabilityInfo info;
  std::deque<std::size_t> frontier(n.init.begin(), n.init.end());
  for (std::size_t s : n.init) info.states.insert(s);
  while (!frontier.empty()) {
    std::size_t s = frontier.front();
    frontier.pop_front();
    for (const auto& [a, dests] : n.transitions[s]) {
      info.transition_triples += dests.size();
      for (std::size_t d : dests)
        if (info.states.insert(d).second) frontier.push_back(d);
    }
  }
  return info;
}

bool replay(const Ncegs& n, const Trace& t) {
  std::size_t cur;
  if (t.steps.empty()) {
    cur = t.final_state;
    return std::find(n.init.begin(), n.init.end(), cur) != n.init.end();
  }
  cur = t.steps.front().state;
  if (std::find(n.init.begin(), n.init.end(), cur) == n.init.end()) return false;
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    if (t.steps[i].state != cur) return false;
    const auto& per_state = n.transitions[cur];
    auto it = per_state.find(t.steps[i].action);
    if (it == per_state.end()) return false;
    std::size_t next = (i + 1 < t.steps.size()) ? t.steps[i + 1].state : t.final_state;
    if (!it->second.count(next)) return false;
    cur = next;
  }
  return true;
}

std::string format_trace(const Ncegs& n, const Trace& t) {
  std::ostringstream os;
  auto show_state = [&](std::size_t s) {
    os << "(";
    for (std::size_t i = 0; i < n.states[s].size(); ++i) {
      if (i) os << ", ";
      os << n.layout.slots[i].agent_id << "." << n.layout.slots[i].module_name << "="
         << n.states[s][i];
    }
    os << ")";
  };
  for (const TraceStep& step : t.steps) {
    show_state(step.state);
    os << "\n  --[";
    for (std::size_t i = 0; i < step.action.size(); ++i) {
      if (i) os << ", ";
      os << step.action[i];
    }
    os << "]-->\n";
  }
  show_state(t.final_state);
  os << "\n";
  return os.str();
}

CheckResult check_invariant(const Ncegs& n, const Predicate& p) {
  CheckResult r;
  std::map<std::size_t, std::pair<std::size_t, JointAction>> parent;
  std::deque<std::size_t> frontier;
  std::set<std::size_t> seen;

  auto build_trace = [&](std::size_t bad) {
    Trace t;
    t.final_state = bad;
    std::vector<TraceStep> rev;
    std::size_t cur = bad;
    while (parent.count(cur)) {
      auto& [prev, act] = parent.at(cur);
      rev.push_back({prev, act});
      cur = prev;
    }
    std::reverse(rev.begin(), rev.end());
    t.steps = std::move(rev);
    return t;
  };

  for (std::size_t s : n.init) {
    if (seen.insert(s).second) frontier.push_back(s);
  }
  // BFS gives a minimal-length counterexample.
  while (!frontier.empty()) {
    std::size_t s = frontier.front();
    frontier.pop_front();
    if (!eval_predicate(n, p, s)) {
      r.holds = false;
      r.counterexample = build_trace(s);
      return r;
    }
    for (const auto& [a, dests] : n.transitions[s]) {
      for (std::size_t d : dests) {
        if (seen.insert(d).second) {
          parent.emplace(d, std::make_pair(s, a));
          frontier.push_back(d);
        }
      }
    }
  }
  return r;
}

EpistemicResult epistemic_check(const Ncegs& n, const Name& agent_id,
                                const Predicate& scope, const Predicate& secret) {
  EpistemicResult r;
  std::size_t agent = n.agent_index_of(agent_id);
  ReachabilityInfo reach = reachable(n);
  std::set<std::size_t> in_scope;
  for (std::size_t s : reach.states)
    if (eval_predicate(n, scope, s)) in_scope.insert(s);

  for (const auto& cls : n.epistemic_classes(agent, in_scope)) {
    bool some_true = false, some_false = false;
    for (std::size_t s : cls) {
      if (eval_predicate(n, secret, s)) some_true = true;
      else some_false = true;
    }
    if (!(some_true && some_false)) {
      r.holds = false;
      r.witness = cls.front();
      return r;
    }
  }
  return r;
}

}  // namespace mis
