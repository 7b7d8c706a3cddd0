#ifndef MIS_METRICS_HPP
#define MIS_METRICS_HPP

#include <functional>

#include "mis/model.hpp"
#include "mis/unfold.hpp"

namespace mis {

// Number of distinct interaction tokens one out alternative can address to
// other agents or broadcast, maximised over actions and alternatives.
std::size_t out_degree(const Module& m, const Agent& owner, const Name& state);

// Number of distinct interaction symbols tested by guards of decision
// entries consistent with the local state.
std::size_t in_degree(const Module& m, const Name& state);

std::size_t module_interaction_complexity(const Module& m, const Agent& owner);
std::size_t agent_interaction_complexity(const Agent& a);
std::size_t interaction_complexity(const Mis& m);

// Number of reachable transition triples of the unfolding.
std::size_t global_complexity(const Mis& m, std::size_t budget = 1'000'000);

enum class SparsenessClass { Constant, Logtime, Linear };

struct SparsenessRow {
  int n = 0;
  std::size_t cardinality = 0;
  std::size_t ic = 0;
  std::size_t gc = 0;
  double bound = 0;  // value of the candidate bound at fitted c
  double ratio = 0;  // ic / f(gc)
};

struct SparsenessReport {
  SparsenessClass cls = SparsenessClass::Logtime;
  std::vector<SparsenessRow> rows;
  double fitted_c = 0;
  bool stable = false;        // max ratio attained before the largest n
  bool multi_agent = false;   // stable logtime fit and cardinality >= 2 throughout
};

using FamilyFn = std::function<Mis(int)>;

SparsenessReport sparseness_check(const FamilyFn& family, int from, int to,
                                  SparsenessClass cls = SparsenessClass::Logtime,
                                  std::size_t budget = 1'000'000);

}  // namespace mis

#endif
