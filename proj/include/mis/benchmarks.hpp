#ifndef MIS_BENCHMARKS_HPP
#define MIS_BENCHMARKS_HPP

#include <string>
#include <vector>

#include "mis/model.hpp"
#include "mis/openness.hpp"

namespace mis {
namespace bench {

// Train tunnel controller: n trains sharing one tunnel guarded by a
// controller agent. n >= 1.
Mis ttc(int n);
// Variant with a controller bug: the tunnel is released while the granted
// train is still inside; mutual exclusion fails for n >= 2.
Mis ttc_sabotaged(int n);

// Dining cryptographers, broadcast coins and utterances. n >= 2.
Mis dc1(int n);
// Dining cryptographers, channel-based variant: utterances travel on
// directed channels and every cryptographer carries its own tally module.
Mis dc2(int n);
// Identifier-free dining cryptographers: pairing, payment resolution and
// utterance slots are negotiated anonymously over broadcasts. n >= 2.
Mis dc0(int n);

std::vector<std::string> family_names();
bool has_family(const std::string& name);
Mis family(const std::string& name, int n);

// Plan turning family(n) into family(n+1): a fresh agent plus an edit
// script over family(n) (+) fresh.
ExpansionPlan family_plan(const std::string& name, int n);

// Mutual exclusion invariant text for ttc(n).
std::string ttc_mutex_predicate(int n);

}  // namespace bench
}  // namespace mis

#endif
