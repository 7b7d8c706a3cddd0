#include "mis/dsl.hpp"

#include <cctype>
#include <sstream>

namespace mis {

namespace {

struct Token {
  enum class Kind { Ident, Number, Punct, End } kind = Kind::End;
  std::string text;
  int line = 1, column = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    skip_ws();
    tok_.line = line_;
    tok_.column = col_;
    if (pos_ >= src_.size()) {
      tok_.kind = Token::Kind::End;
      tok_.text.clear();
      return;
    }
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        bump();
      tok_.kind = Token::Kind::Ident;
      tok_.text = src_.substr(start, pos_ - start);
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) bump();
      tok_.kind = Token::Kind::Number;
      tok_.text = src_.substr(start, pos_ - start);
      return;
    }
    tok_.kind = Token::Kind::Punct;
    // multi-char operators
    static const char* two[] = {"->", "!=", "<=", ">="};
    for (const char* op : two) {
      if (src_.compare(pos_, 2, op) == 0) {
        tok_.text = op;
        bump();
        bump();
        return;
      }
    }
    tok_.text = std::string(1, c);
    bump();
  }

  void skip_ws() {
    for (;;) {
      while (pos_ < src_.size() &&
             std::isspace(static_cast<unsigned char>(src_[pos_])))
        bump();
      if (pos_ + 1 < src_.size() && src_[pos_] == '/' && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') bump();
        continue;
      }
      break;
    }
  }

  void bump() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& src_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

struct ParseError {};

class Parser {
 public:
  Parser(const std::string& src, std::vector<Diagnostic>& diags)
      : lex_(src), diags_(diags) {}

  Mis file() {
    Mis m;
    expect_ident("mis");
    expect("{");
    expect_ident("agtnames");
    m.agent_names = idset();
    expect_ident("act");
    m.actions = idset();
    expect_ident("in");
    m.interaction_alphabet = idset();
    expect("}");
    while (lex_.peek().kind != Token::Kind::End) {
      Token at = lex_.peek();
      Agent a = agent();
      if (m.find_agent(a.id)) error(at, "duplicate agent " + a.id);
      m.insert_agent(std::move(a));
    }
    return m;
  }

 private:
  Agent agent() {
    expect_ident("agent");
    Agent a;
    a.id = ident("agent id");
    expect("{");
    while (!at_punct("}")) a.modules.push_back(module());
    expect("}");
    if (a.modules.empty()) {
      diags_.push_back({Severity::Error, "agent " + a.id + " has no modules", lex_.peek().line,
                        lex_.peek().column, 1});
      throw ParseError{};
    }
    return a;
  }

  Module module() {
    expect_ident("module");
    Module mod;
    mod.name = ident("module name");
    expect("{");
    expect_ident("states");
    mod.states = idset();
    if (at_ident("init")) {
      lex_.take();
      mod.init = idset();
    }
    expect_ident("d");
    expect("{");
    while (!at_punct("}")) {
      Name q = ident("state");
      expect("->");
      mod.avail[q] = idset();
      expect(";");
    }
    expect("}");
    expect_ident("out");
    expect("{");
    while (!at_punct("}")) {
      SituatedAction sa = situated_action();
      expect("->");
      expect("{");
      std::set<TokenSet> alts;
      alts.insert(token_set());
      while (at_punct("|")) {
        lex_.take();
        alts.insert(token_set());
      }
      expect("}");
      expect(";");
      mod.out[sa] = std::move(alts);
    }
    expect("}");
    expect_ident("in_list");
    Token in_tok = lex_.peek();
    expect("{");
    while (!at_punct("}")) {
      DecisionEntry e;
      e.guard = condition();
      expect("->");
      e.value = idset();
      expect(";");
      mod.in_list.entries.push_back(std::move(e));
    }
    expect("}");
    if (mod.in_list.entries.empty() ||
        mod.in_list.entries.back().guard.kind != Condition::Kind::True) {
      diags_.push_back({Severity::Error,
                        "decision list of module " + mod.name +
                            " is not total: last entry must have guard true",
                        in_tok.line, in_tok.column, 1});
      throw ParseError{};
    }
    expect_ident("o");
    expect("{");
    while (!at_punct("}")) {
      SituatedAction sa = situated_action();
      expect(",");
      Name sym = ident("symbol");
      expect("->");
      mod.trans[{sa.first, sa.second, sym}] = idset();
      expect(";");
    }
    expect("}");
    if (at_ident("props")) {
      lex_.take();
      mod.props = idset();
    }
    if (at_ident("pi")) {
      lex_.take();
      expect("{");
      while (!at_punct("}")) {
        Name p = ident("proposition");
        expect("->");
        mod.valuation[p] = idset();
        expect(";");
      }
      expect("}");
    }
    expect("}");
    return mod;
  }

  SituatedAction situated_action() {
    expect("(");
    Name q = ident("state");
    expect(",");
    Name act = ident("action");
    expect(")");
    return {q, act};
  }

  TokenSet token_set() {
    expect("{");
    TokenSet t;
    while (!at_punct("}")) {
      DirectedToken tok;
      tok.symbol = ident("symbol");
      expect("->");
      if (at_punct("*")) {
        lex_.take();
      } else {
        tok.recipient = ident("recipient");
      }
      t.insert(std::move(tok));
      if (at_punct(",")) lex_.take();
    }
    expect("}");
    return t;
  }

  Condition condition() { return disjunction(); }

  Condition disjunction() {
    std::vector<Condition> parts;
    parts.push_back(conjunction());
    while (at_ident("or")) {
      lex_.take();
      parts.push_back(conjunction());
    }
    if (parts.size() == 1) return std::move(parts.front());
    return Condition::disj(std::move(parts));
  }

  Condition conjunction() {
    std::vector<Condition> parts;
    parts.push_back(unary());
    while (at_ident("and")) {
      lex_.take();
      parts.push_back(unary());
    }
    if (parts.size() == 1) return std::move(parts.front());
    return Condition::conj(std::move(parts));
  }

  Condition unary() {
    if (at_ident("not")) {
      lex_.take();
      return Condition::negate(unary());
    }
    return atom();
  }

  Condition atom() {
    if (at_punct("(")) {
      lex_.take();
      Condition c = condition();
      expect(")");
      return c;
    }
    Token t = lex_.take();
    if (t.kind != Token::Kind::Ident) error(t, "expected condition");
    if (t.text == "true") return Condition::truth();
    if (t.text == "s" && at_punct("=")) {
      lex_.take();
      return Condition::state_is(ident("state"));
    }
    if (t.text == "count" && at_punct("(")) {
      lex_.take();
      Name sym = ident("symbol");
      expect(")");
      Cmp op = cmp_op();
      Token n = lex_.take();
      if (n.kind != Token::Kind::Number) error(n, "expected number");
      return Condition::count(sym, op, std::stol(n.text));
    }
    expect_ident("in");
    expect_ident("H");
    return Condition::has(t.text);
  }

  Cmp cmp_op() {
    Token t = lex_.take();
    if (t.kind == Token::Kind::Punct) {
      if (t.text == "=") return Cmp::Eq;
      if (t.text == "!=") return Cmp::Ne;
      if (t.text == "<") return Cmp::Lt;
      if (t.text == "<=") return Cmp::Le;
      if (t.text == ">") return Cmp::Gt;
      if (t.text == ">=") return Cmp::Ge;
    }
    error(t, "expected comparison operator");
    return Cmp::Eq;
  }

  std::set<Name> idset() {
    expect("{");
    std::set<Name> r;
    while (!at_punct("}")) {
      r.insert(ident("identifier"));
      if (at_punct(",")) lex_.take();
    }
    expect("}");
    return r;
  }

  Name ident(const std::string& what) {
    Token t = lex_.take();
    if (t.kind != Token::Kind::Ident) error(t, "expected " + what);
    return t.text;
  }

  bool at_punct(const std::string& p) const {
    return lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == p;
  }

  bool at_ident(const std::string& id) const {
    return lex_.peek().kind == Token::Kind::Ident && lex_.peek().text == id;
  }

  void expect(const std::string& p) {
    Token t = lex_.take();
    if (t.kind != Token::Kind::Punct || t.text != p) error(t, "expected '" + p + "'");
  }

  void expect_ident(const std::string& id) {
    Token t = lex_.take();
    if (t.kind != Token::Kind::Ident || t.text != id) error(t, "expected '" + id + "'");
  }

  [[noreturn]] void error(const Token& t, const std::string& msg) {
    std::string shown = msg;
    if (!t.text.empty()) shown += ", got '" + t.text + "'";
    else if (t.kind == Token::Kind::End) shown += ", got end of input";
    diags_.push_back({Severity::Error, shown, t.line, t.column,
                      std::max<int>(1, static_cast<int>(t.text.size()))});
    throw ParseError{};
  }

  Lexer lex_;
  std::vector<Diagnostic>& diags_;
};

// Post-parse reference checks reported as parser diagnostics (without spans
// we point at line 1; structural location is in the message).
void reference_checks(const Mis& m, std::vector<Diagnostic>& diags) {
  ValidationReport rep = validate(m);
  for (const Violation& v : rep.violations) {
    diags.push_back({v.severity, v.location + ": " + v.message, 1, 1, 1});
  }
}

std::string token_text(const DirectedToken& t) {
  return t.symbol + " -> " + (t.broadcast() ? "*" : t.recipient);
}

std::string idset_text(const std::set<Name>& s) {
  std::string r = "{ ";
  bool first = true;
  for (const Name& n : s) {
    if (!first) r += ", ";
    first = false;
    r += n;
  }
  if (first) return "{}";
  return r + " }";
}

void print_cond(const Condition& c, std::ostringstream& os, int parent_level);

// levels: 0 = or, 1 = and, 2 = unary/atom
int cond_level(const Condition& c) {
  switch (c.kind) {
    case Condition::Kind::Or: return 0;
    case Condition::Kind::And: return 1;
    default: return 2;
  }
}

void print_child(const Condition& c, std::ostringstream& os, int parent_level) {
  bool parens = cond_level(c) <= parent_level &&
                (c.kind == Condition::Kind::Or || c.kind == Condition::Kind::And);
  if (parens) os << "(";
  print_cond(c, os, parent_level);
  if (parens) os << ")";
}

void print_cond(const Condition& c, std::ostringstream& os, int) {
  switch (c.kind) {
    case Condition::Kind::True:
      os << "true";
      return;
    case Condition::Kind::StateIs:
      os << "s = " << c.symbol;
      return;
    case Condition::Kind::Has:
      os << c.symbol << " in H";
      return;
    case Condition::Kind::Count:
      os << "count(" << c.symbol << ") " << cmp_text(c.cmp) << " " << c.bound;
      return;
    case Condition::Kind::Not:
      os << "not ";
      if (cond_level(c.children.front()) < 2) {
        os << "(";
        print_cond(c.children.front(), os, 2);
        os << ")";
      } else {
        print_cond(c.children.front(), os, 2);
      }
      return;
    case Condition::Kind::And: {
      bool first = true;
      for (const Condition& k : c.children) {
        if (!first) os << " and ";
        first = false;
        print_child(k, os, 1);
      }
      return;
    }
    case Condition::Kind::Or: {
      bool first = true;
      for (const Condition& k : c.children) {
        if (!first) os << " or ";
        first = false;
        print_child(k, os, 0);
      }
      return;
    }
  }
}

}  // namespace

std::string print_condition(const Condition& c) {
  std::ostringstream os;
  print_cond(c, os, -1);
  return os.str();
}

ParseResult parse_mis(const std::string& text) {
  ParseResult r;
  try {
    Parser p(text, r.diagnostics);
    Mis m = p.file();
    reference_checks(m, r.diagnostics);
    bool errors = false;
    for (const Diagnostic& d : r.diagnostics)
      if (d.severity == Severity::Error) errors = true;
    if (!errors) r.model = std::move(m);
  } catch (const ParseError&) {
    // diagnostics already recorded
  }
  return r;
}

std::string print_mis(const Mis& m) {
  std::ostringstream os;
  os << "mis {\n";
  os << "  agtnames " << idset_text(m.agent_names) << "\n";
  os << "  act " << idset_text(m.actions) << "\n";
  os << "  in " << idset_text(m.interaction_alphabet) << "\n";
  os << "}\n";
  for (const Agent& a : m.agents) {
    os << "\nagent " << a.id << " {\n";
    for (const Module& mod : a.modules) {
      os << "  module " << mod.name << " {\n";
      os << "    states " << idset_text(mod.states) << "\n";
      if (!mod.init.empty()) os << "    init " << idset_text(mod.init) << "\n";
      os << "    d {\n";
      for (const auto& [q, acts] : mod.avail)
        os << "      " << q << " -> " << idset_text(acts) << ";\n";
      os << "    }\n";
      os << "    out {\n";
      for (const auto& [sa, alts] : mod.out) {
        os << "      (" << sa.first << ", " << sa.second << ") -> { ";
        bool first_alt = true;
        for (const TokenSet& t : alts) {
          if (!first_alt) os << " | ";
          first_alt = false;
          if (t.empty()) {
            os << "{}";
          } else {
            os << "{ ";
            bool first = true;
            for (const DirectedToken& tok : t) {
              if (!first) os << ", ";
              first = false;
              os << token_text(tok);
            }
            os << " }";
          }
        }
        os << " };\n";
      }
      os << "    }\n";
      os << "    in_list {\n";
      for (const DecisionEntry& e : mod.in_list.entries)
        os << "      " << print_condition(e.guard) << " -> " << idset_text(e.value) << ";\n";
      os << "    }\n";
      os << "    o {\n";
      for (const auto& [key, targets] : mod.trans) {
        const auto& [q, act, sym] = key;
        os << "      (" << q << ", " << act << "), " << sym << " -> "
           << idset_text(targets) << ";\n";
      }
      os << "    }\n";
      if (!mod.props.empty()) os << "    props " << idset_text(mod.props) << "\n";
      if (!mod.valuation.empty()) {
        os << "    pi {\n";
        for (const auto& [p, qs] : mod.valuation)
          os << "      " << p << " -> " << idset_text(qs) << ";\n";
        os << "    }\n";
      }
      os << "  }\n";
    }
    os << "}\n";
  }
  return os.str();
}

std::string format_diagnostic(const Diagnostic& d, const std::string& source_name) {
  std::ostringstream os;
  os << source_name << ":" << d.line << ":" << d.column << ": "
     << (d.severity == Severity::Error ? "error" : "warning") << ": " << d.message;
  return os.str();
}

}  // namespace mis
