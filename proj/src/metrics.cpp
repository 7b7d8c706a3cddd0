#include "mis/metrics.hpp"

#include <cmath>

namespace mis {

std::size_t out_degree(const Module& m, const Agent& owner, const Name& state) {
  std::size_t best = 0;
  for (const auto& [sa, alts] : m.out) {
    if (sa.first != state) continue;
    for (const TokenSet& t : alts) {
      std::size_t outward = 0;
      for (const DirectedToken& tok : t)
        if (tok.broadcast() || tok.recipient != owner.id) ++outward;
      best = std::max(best, outward);
    }
  }
  return best;
}

std::size_t in_degree(const Module& m, const Name& state) {
  std::set<Name> symbols;
  for (const DecisionEntry& e : m.in_list.entries) {
    if (!guard_state_consistent(e.guard, state)) continue;
    collect_condition_symbols(e.guard, symbols);
  }
  return symbols.size();
}

std::size_t module_interaction_complexity(const Module& m, const Agent& owner) {
  std::size_t total = 0;
  for (const Name& q : m.states) total += out_degree(m, owner, q) + in_degree(m, q);
  return total;
}

std::size_t agent_interaction_complexity(const Agent& a) {
  std::size_t total = 0;
  for (const Module& m : a.modules) total += module_interaction_complexity(m, a);
  return total;
}

std::size_t interaction_complexity(const Mis& m) {
  std::size_t total = 0;
  for (const Agent& a : m.agents) total += agent_interaction_complexity(a);
  return total;
}

std::size_t global_complexity(const Mis& m, std::size_t budget) {
  UnfoldOptions opts;
  opts.budget = budget;
  Ncegs n = unfold(m, opts);
  return n.transition_count();
}

namespace {

double bound_base(SparsenessClass cls, std::size_t gc) {
  switch (cls) {
    case SparsenessClass::Constant:
      return 1.0;
    case SparsenessClass::Logtime:
      return std::log2(static_cast<double>(std::max<std::size_t>(gc, 2)));
    case SparsenessClass::Linear:
      return static_cast<double>(std::max<std::size_t>(gc, 1));
  }
  return 1.0;
}

}  // namespace

SparsenessReport sparseness_check(const FamilyFn& family, int from, int to,
                                  SparsenessClass cls, std::size_t budget) {
  SparsenessReport rep;
  rep.cls = cls;
  std::size_t argmax = 0;
  for (int n = from; n <= to; ++n) {
    Mis model = family(n);
    SparsenessRow row;
    row.n = n;
    row.cardinality = model.cardinality();
    row.ic = interaction_complexity(model);
    row.gc = global_complexity(model, budget);
    row.ratio = static_cast<double>(row.ic) / bound_base(cls, row.gc);
    if (!rep.rows.empty() && row.ratio <= rep.rows[argmax].ratio) {
      // keep earlier argmax
    } else if (!rep.rows.empty() && row.ratio > rep.rows[argmax].ratio) {
      argmax = rep.rows.size();
    }
    rep.rows.push_back(row);
  }
  if (rep.rows.empty()) return rep;
  rep.fitted_c = rep.rows[argmax].ratio;
  for (SparsenessRow& row : rep.rows) row.bound = rep.fitted_c * bound_base(cls, row.gc);
  // the fit stabilizes when the tightest instance is not the last one, or
  // when the ratio growth is slowing over the top half of the range
  // (convergence towards a constant bound)
  bool argmax_early = rep.rows.size() >= 2 && argmax + 1 < rep.rows.size();
  bool converging = rep.rows.size() >= 3;
  std::size_t start = std::max<std::size_t>(2, rep.rows.size() / 2 + 1);
  for (std::size_t k = start; converging && k < rep.rows.size(); ++k) {
    double d1 = rep.rows[k].ratio - rep.rows[k - 1].ratio;
    double d0 = rep.rows[k - 1].ratio - rep.rows[k - 2].ratio;
    if (d1 > d0) converging = false;
  }
  rep.stable = argmax_early || converging;
  bool card_ok = true;
  for (const SparsenessRow& row : rep.rows) card_ok = card_ok && row.cardinality >= 2;
  rep.multi_agent = cls == SparsenessClass::Logtime && rep.stable && card_ok;
  return rep;
}

}  // namespace mis
