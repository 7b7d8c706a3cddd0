#ifndef MIS_DSL_HPP
#define MIS_DSL_HPP

#include <optional>
#include <string>
#include <vector>

#include "mis/model.hpp"

namespace mis {

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string message;
  int line = 0;    // 1-based
  int column = 0;  // 1-based
  int length = 1;
};

struct ParseResult {
  std::optional<Mis> model;  // present iff no errors
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return model.has_value(); }
};

ParseResult parse_mis(const std::string& text);

// Canonical text form; parse_mis(print_mis(m)).model == m for valid models,
// and printing is byte-stable.
std::string print_mis(const Mis& m);

std::string print_condition(const Condition& c);

std::string format_diagnostic(const Diagnostic& d, const std::string& source_name);

}  // namespace mis

#endif
