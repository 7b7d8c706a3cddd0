#ifndef MIS_ANALYSIS_HPP
#define MIS_ANALYSIS_HPP

#include <optional>
#include <string>
#include <vector>

#include "mis/unfold.hpp"

namespace mis {

// Boolean state predicate over an unfolded system: atoms are propositions
// and local(module, state) tests.
struct Predicate {
  enum class Kind { True, False, Prop, Local, Not, And, Or };

  Kind kind = Kind::True;
  Name prop;               // Prop
  std::size_t slot = 0;    // Local: module slot index
  Name local_state;        // Local
  std::vector<Predicate> children;

  static Predicate truth();
  static Predicate falsity();
  static Predicate of_prop(Name p);
  static Predicate local(std::size_t slot, Name state);
  static Predicate negate(Predicate p);
  static Predicate conj(std::vector<Predicate> ps);
  static Predicate disj(std::vector<Predicate> ps);
};

struct PredicateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Grammar: true | false | <prop> | local(<module>, <state>) | not p |
// p and p | p or p | (p).  Module references resolve by agent id (single
// module), module name (globally unique) or agent.module.
Predicate parse_predicate(const std::string& text, const Ncegs& n);

bool eval_predicate(const Ncegs& n, const Predicate& p, std::size_t state);

struct ReachabilityInfo {
  std::set<std::size_t> states;
  std::size_t transition_triples = 0;
};

ReachabilityInfo reachable(const Ncegs& n);

struct TraceStep {
  std::size_t state;
  JointAction action;
};

struct Trace {
  std::vector<TraceStep> steps;
  std::size_t final_state = 0;
};

// True iff every step is a transition of n and the trace starts in an
// initial state.
bool replay(const Ncegs& n, const Trace& t);

std::string format_trace(const Ncegs& n, const Trace& t);

struct CheckResult {
  bool holds = true;
  std::optional<Trace> counterexample;  // minimal-length witness when !holds
};

CheckResult check_invariant(const Ncegs& n, const Predicate& p);

struct EpistemicResult {
  bool holds = true;
  // When !holds: a scope state whose epistemic class (within scope) settles
  // the secret.
  std::optional<std::size_t> witness;
};

// In every reachable scope state, the agent cannot rule out either value of
// the secret: its epistemic class within the scope contains both a state
// satisfying `secret` and one satisfying its negation.
EpistemicResult epistemic_check(const Ncegs& n, const Name& agent_id,
                                const Predicate& scope, const Predicate& secret);

}  // namespace mis

#endif
