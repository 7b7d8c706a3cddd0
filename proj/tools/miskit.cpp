#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "mis/analysis.hpp"
#include "mis/benchmarks.hpp"
#include "mis/dsl.hpp"
#include "mis/json_io.hpp"
#include "mis/metrics.hpp"
#include "mis/model.hpp"
#include "mis/openness.hpp"
#include "mis/unfold.hpp"

using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;   // property violated / verdict negative
constexpr int kUsage = 2;      // usage or parse error
constexpr int kExhausted = 3;  // budget exceeded or stuck model

std::size_t default_budget() {
  if (const char* env = std::getenv("MISKIT_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 1'000'000;
}

struct LoadError {
  int exit_code;
};

mis::Mis load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << path << ": cannot open\n";
    throw LoadError{kUsage};
  }
  std::stringstream buf;
  buf << in.rdbuf();
  mis::ParseResult r = mis::parse_mis(buf.str());
  for (const mis::Diagnostic& d : r.diagnostics)
    std::cerr << mis::format_diagnostic(d, path) << "\n";
  if (!r.model) throw LoadError{kUsage};
  return std::move(*r.model);
}

mis::Ncegs unfold_or_die(const mis::Mis& m, const mis::UnfoldOptions& opts) {
  try {
    return mis::unfold(m, opts);
  } catch (const mis::UnfoldError& e) {
    std::cerr << "unfold: " << e.what() << "\n";
    throw LoadError{kExhausted};
  }
}

bool parse_range(const std::string& text, int& from, int& to) {
  auto dots = text.find("..");
  if (dots == std::string::npos) return false;
  try {
    from = std::stoi(text.substr(0, dots));
    to = std::stoi(text.substr(dots + 2));
  } catch (...) {
    return false;
  }
  return from <= to;
}

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
  if (!out) {
    std::cerr << path << ": cannot write\n";
    return false;
  }
  return true;
}

int cmd_validate(const std::string& file, bool data) {
  std::ifstream in(file);
  if (!in) {
    std::cerr << file << ": cannot open\n";
    return kUsage;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  mis::ParseResult r = mis::parse_mis(buf.str());
  if (data) {
    json out;
    out["ok"] = r.ok();
    json diags = json::array();
    for (const mis::Diagnostic& d : r.diagnostics)
      diags.push_back(json{{"severity", d.severity == mis::Severity::Error
                                            ? "error"
                                            : "warning"},
                           {"message", d.message},
                           {"line", d.line},
                           {"column", d.column}});
    out["diagnostics"] = diags;
    std::cout << out.dump(2) << "\n";
  } else {
    for (const mis::Diagnostic& d : r.diagnostics)
      std::cout << mis::format_diagnostic(d, file) << "\n";
    if (r.ok() && r.diagnostics.empty()) std::cout << file << ": ok\n";
  }
  return r.ok() ? kOk : kUsage;
}

int cmd_unfold(const std::string& file, bool full, std::size_t budget,
               const std::string& out_path, bool data) {
  mis::Mis m = load_model(file);
  mis::UnfoldOptions opts;
  opts.reachable_only = !full;
  opts.budget = budget;
  mis::Ncegs n = unfold_or_die(m, opts);
  json j = mis::ncegs_to_json(n);
  if (!out_path.empty() && !write_file(out_path, j.dump(2) + "\n")) return kUsage;
  if (data) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "states " << n.state_count() << "\n"
              << "transitions " << n.transition_count() << "\n"
              << "initial " << n.init.size() << "\n";
  }
  return kOk;
}

int cmd_check(const std::string& file, const std::string& invariant,
              std::size_t budget, bool data) {
  mis::Mis m = load_model(file);
  mis::Ncegs n = unfold_or_die(m, {true, budget});
  mis::Predicate p;
  try {
    p = mis::parse_predicate(invariant, n);
  } catch (const mis::PredicateError& e) {
    std::cerr << "invariant: " << e.what() << "\n";
    return kUsage;
  }
  mis::CheckResult r = mis::check_invariant(n, p);
  if (data) {
    json j{{"holds", r.holds}};
    if (r.counterexample) j["counterexample"] = mis::trace_to_json(n, *r.counterexample);
    std::cout << j.dump(2) << "\n";
  } else if (r.holds) {
    std::cout << "invariant holds\n";
  } else {
    std::cout << "invariant violated\n" << mis::format_trace(n, *r.counterexample);
  }
  return r.holds ? kOk : kNegative;
}

int cmd_epistemic(const std::string& file, const std::string& agent,
                  const std::string& scope, const std::string& secret,
                  std::size_t budget, bool data) {
  mis::Mis m = load_model(file);
  mis::Ncegs n = unfold_or_die(m, {true, budget});
  mis::Predicate scope_p, secret_p;
  try {
    scope_p = mis::parse_predicate(scope, n);
    secret_p = mis::parse_predicate(secret, n);
  } catch (const mis::PredicateError& e) {
    std::cerr << "predicate: " << e.what() << "\n";
    return kUsage;
  }
  try {
    n.agent_index_of(agent);
  } catch (const std::exception& e) {
    std::cerr << "agent: " << e.what() << "\n";
    return kUsage;
  }
  mis::EpistemicResult r = mis::epistemic_check(n, agent, scope_p, secret_p);
  if (data) {
    json j{{"holds", r.holds}};
    if (r.witness) j["witness"] = n.states[*r.witness];
    std::cout << j.dump(2) << "\n";
  } else if (r.holds) {
    std::cout << "secret stays hidden from " << agent << "\n";
  } else {
    std::cout << "secret revealed to " << agent << " in state";
    for (const mis::Name& q : n.states[*r.witness]) std::cout << " " << q;
    std::cout << "\n";
  }
  return r.holds ? kOk : kNegative;
}

int cmd_metrics(const std::string& family, const std::string& range,
                const std::string& cls_name, std::size_t budget, bool data) {
  int from = 0, to = 0;
  if (!mis::bench::has_family(family) && family != "ttc_sabotaged") {
    std::cerr << "unknown family " << family << "\n";
    return kUsage;
  }
  if (!parse_range(range, from, to)) {
    std::cerr << "bad range " << range << " (expected A..B)\n";
    return kUsage;
  }
  mis::SparsenessClass cls = mis::SparsenessClass::Logtime;
  if (cls_name == "constant") cls = mis::SparsenessClass::Constant;
  else if (cls_name == "linear") cls = mis::SparsenessClass::Linear;
  else if (cls_name != "logtime") {
    std::cerr << "unknown class " << cls_name << "\n";
    return kUsage;
  }
  mis::SparsenessReport rep;
  try {
    rep = mis::sparseness_check(
        [&](int n) { return mis::bench::family(family, n); }, from, to, cls, budget);
  } catch (const mis::UnfoldError& e) {
    std::cerr << "unfold: " << e.what() << "\n";
    return kExhausted;
  }
  if (data) {
    json rows = json::array();
    for (const mis::SparsenessRow& r : rep.rows)
      rows.push_back(json{{"n", r.n},
                          {"card", r.cardinality},
                          {"ic", r.ic},
                          {"gc", r.gc},
                          {"log2_gc", std::log2(static_cast<double>(std::max<std::size_t>(r.gc, 2)))},
                          {"ratio", r.ratio}});
    json j{{"family", family},
           {"class", cls_name},
           {"rows", rows},
           {"fitted_c", rep.fitted_c},
           {"stable", rep.stable},
           {"multi_agent", rep.multi_agent}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << std::left << std::setw(5) << "n" << std::setw(6) << "card"
              << std::setw(8) << "IC" << std::setw(10) << "GC" << std::setw(12)
              << "log2(GC)" << std::setw(14) << "IC/log2(GC)" << "\n";
    for (const mis::SparsenessRow& r : rep.rows) {
      double lg = std::log2(static_cast<double>(std::max<std::size_t>(r.gc, 2)));
      std::cout << std::left << std::setw(5) << r.n << std::setw(6)
                << r.cardinality << std::setw(8) << r.ic << std::setw(10) << r.gc
                << std::setw(12) << std::fixed << std::setprecision(3) << lg
                << std::setw(14) << r.ratio << "\n";
      std::cout.unsetf(std::ios::fixed);
    }
    std::cout << "fitted c " << rep.fitted_c << ", stable "
              << (rep.stable ? "yes" : "no") << ", multi-agent "
              << (rep.multi_agent ? "yes" : "no") << "\n";
  }
  return rep.multi_agent ? kOk : kNegative;
}

int cmd_openness(const std::string& family, const std::string& range, bool data) {
  int from = 0, to = 0;
  if (!parse_range(range, from, to)) {
    std::cerr << "bad range " << range << " (expected A..B)\n";
    return kUsage;
  }
  if (!mis::bench::has_family(family)) {
    std::cerr << "unknown family " << family << "\n";
    return kUsage;
  }
  mis::OpennessFit fit = mis::openness_family_fit(
      [&](int n) { return mis::bench::family(family, n); },
      [&](int n) { return mis::bench::family_plan(family, n); }, from, to);
  if (data) {
    json rows = json::array();
    for (const auto& [n, cost] : fit.costs)
      rows.push_back(json{{"n", n}, {"cost", cost}});
    std::cout << json{{"family", family},
                      {"rows", rows},
                      {"sound", fit.sound},
                      {"verdict", fit.verdict}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << std::left << std::setw(5) << "n" << std::setw(8) << "cost" << "\n";
    for (const auto& [n, cost] : fit.costs)
      std::cout << std::left << std::setw(5) << n << std::setw(8) << cost << "\n";
    std::cout << "sound " << (fit.sound ? "yes" : "no") << ", verdict "
              << fit.verdict << "\n";
  }
  bool positive = fit.sound && fit.verdict != "unclassified";
  return positive ? kOk : kNegative;
}

int cmd_gen(const std::string& family, int n, const std::string& out_path) {
  mis::Mis m;
  try {
    m = mis::bench::family(family, n);
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  }
  std::string text = mis::print_mis(m);
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return kOk;
  }
  return write_file(out_path, text) ? kOk : kUsage;
}

int cmd_export(const std::string& file, const std::string& graph_path,
               const std::string& model_path, std::size_t budget) {
  mis::Mis m = load_model(file);
  if (!model_path.empty() &&
      !write_file(model_path, mis::mis_to_json(m).dump(2) + "\n"))
    return kUsage;
  if (!graph_path.empty()) {
    mis::Ncegs n = unfold_or_die(m, {true, budget});
    if (!write_file(graph_path, mis::ncegs_to_dot(n))) return kUsage;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"miskit: modular interpreted systems toolkit"};
  app.require_subcommand(1);
  bool data = false;
  app.add_flag("--format-data", data)->group("");  // hidden alias
  std::string format = "table";
  app.add_option("--format", format, "output format: table or data")
      ->check(CLI::IsMember({"table", "data"}));

  std::size_t budget = default_budget();

  std::string file, invariant, agent, scope, secret, family, range = "2..4";
  std::string out_path, graph_path, model_path, cls_name = "logtime";
  int gen_n = 2;
  bool full = false;

  CLI::App* validate = app.add_subcommand("validate", "parse and validate a model");
  validate->add_option("file", file)->required();

  CLI::App* unfold = app.add_subcommand("unfold", "unfold a model");
  unfold->add_option("file", file)->required();
  unfold->add_flag("--full", full, "enumerate the full product space");
  unfold->add_option("--budget", budget, "state budget");
  unfold->add_option("--out", out_path, "write structured unfolding here");

  CLI::App* check = app.add_subcommand("check", "check a state invariant");
  check->add_option("file", file)->required();
  check->add_option("--invariant", invariant, "state predicate")->required();
  check->add_option("--budget", budget, "state budget");

  CLI::App* epistemic = app.add_subcommand("epistemic", "check secrecy of a predicate");
  epistemic->add_option("file", file)->required();
  epistemic->add_option("--agent", agent)->required();
  epistemic->add_option("--scope", scope)->required();
  epistemic->add_option("--secret", secret)->required();
  epistemic->add_option("--budget", budget, "state budget");

  CLI::App* metrics = app.add_subcommand("metrics", "interaction/global complexity table");
  metrics->add_option("--family", family)->required();
  metrics->add_option("--range", range, "instance range A..B");
  metrics->add_option("--class", cls_name, "sparseness class: constant|logtime|linear");
  metrics->add_option("--budget", budget, "state budget");

  CLI::App* openness = app.add_subcommand("openness", "expansion cost table");
  openness->add_option("--family", family)->required();
  openness->add_option("--range", range, "instance range A..B");

  CLI::App* gen = app.add_subcommand("gen", "generate a benchmark instance");
  gen->add_option("--family", family)->required();
  gen->add_option("--n", gen_n)->required();
  gen->add_option("--out", out_path, "output path ('-' = stdout)");

  CLI::App* exp = app.add_subcommand("export", "export model data / unfolding graph");
  exp->add_option("file", file)->required();
  exp->add_option("--graph", graph_path, "write unfolding graph here");
  exp->add_option("--model", model_path, "write structured model here");
  exp->add_option("--budget", budget, "state budget");

  // allow global options like --format after a subcommand name
  for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  data = data || format == "data";

  try {
    if (*validate) return cmd_validate(file, data);
    if (*unfold) return cmd_unfold(file, full, budget, out_path, data);
    if (*check) return cmd_check(file, invariant, budget, data);
    if (*epistemic) return cmd_epistemic(file, agent, scope, secret, budget, data);
    if (*metrics) return cmd_metrics(family, range, cls_name, budget, data);
    if (*openness) return cmd_openness(family, range, data);
    if (*gen) return cmd_gen(family, gen_n, out_path);
    if (*exp) return cmd_export(file, graph_path, model_path, budget);
  } catch (const LoadError& e) {
    return e.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
