#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mis/analysis.hpp"
#include "mis/benchmarks.hpp"
#include "mis/dsl.hpp"
#include "mis/metrics.hpp"
#include "mis/openness.hpp"
#include "mis/unfold.hpp"

namespace py = pybind11;
using namespace mis;

namespace {

Mis parse_or_throw(const std::string& text) {
  ParseResult r = parse_mis(text);
  if (!r.ok()) {
    std::string msg;
    for (const Diagnostic& d : r.diagnostics) {
      if (!msg.empty()) msg += "\n";
      msg += format_diagnostic(d, "<string>");
    }
    throw std::invalid_argument(msg.empty() ? "parse failed" : msg);
  }
  return *r.model;
}

}  // namespace

PYBIND11_MODULE(pymis, m) {
  m.doc() = "Modular interpreted systems: parsing, unfolding and analysis";

  py::class_<Mis>(m, "Model")
      .def_static("parse", &parse_or_throw, py::arg("text"))
      .def("__str__", [](const Mis& self) { return print_mis(self); })
      .def_property_readonly("cardinality", &Mis::cardinality)
      .def_property_readonly("agent_ids", [](const Mis& self) {
        std::vector<Name> ids;
        for (const Agent& a : self.agents) ids.push_back(a.id);
        return ids;
      });

  py::class_<Ncegs>(m, "Unfolding")
      .def_property_readonly("state_count", &Ncegs::state_count)
      .def_property_readonly("transition_count", &Ncegs::transition_count)
      .def_property_readonly("states", [](const Ncegs& self) { return self.states; });

  m.def("validate", [](const Mis& model) {
    ValidationReport r = validate(model);
    std::vector<std::string> msgs;
    for (const Violation& v : r.violations) msgs.push_back(v.rule + ": " + v.message);
    return py::make_tuple(r.clean(), msgs);
  });

  m.def(
      "unfold",
      [](const Mis& model, std::size_t budget) {
        UnfoldOptions opts;
        opts.budget = budget;
        return unfold(model, opts);
      },
      py::arg("model"), py::arg("budget") = std::size_t{1'000'000});

  m.def(
      "check_invariant",
      [](const Mis& model, const std::string& invariant) {
        Ncegs g = unfold(model);
        CheckResult r = check_invariant(g, parse_predicate(invariant, g));
        py::object trace = py::none();
        if (r.counterexample) trace = py::str(format_trace(g, *r.counterexample));
        return py::make_tuple(r.holds, trace);
      },
      py::arg("model"), py::arg("invariant"));

  m.def(
      "epistemic_check",
      [](const Mis& model, const std::string& agent, const std::string& scope,
         const std::string& secret) {
        Ncegs g = unfold(model);
        EpistemicResult r = epistemic_check(g, agent, parse_predicate(scope, g),
                                            parse_predicate(secret, g));
        return r.holds;
      },
      py::arg("model"), py::arg("agent"), py::arg("scope"), py::arg("secret"));

  m.def("interaction_complexity", &interaction_complexity, py::arg("model"));
  m.def("global_complexity", &global_complexity, py::arg("model"),
        py::arg("budget") = std::size_t{1'000'000});

  m.def(
      "family",
      [](const std::string& name, int n) { return bench::family(name, n); },
      py::arg("name"), py::arg("n"));
  m.def("family_names", [] { return bench::family_names(); });

  m.def(
      "expansion_cost",
      [](const std::string& name, int n) {
        ExpansionPlan plan = bench::family_plan(name, n);
        Mis expected = bench::family(name, n + 1);
        OpennessReport r = openness_report(bench::family(name, n), plan.fresh,
                                           plan.script, &expected);
        return py::make_tuple(r.cost, r.sound);
      },
      py::arg("name"), py::arg("n"));
}
