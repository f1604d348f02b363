#include "geo/dsl.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <set>

namespace geo::dsl {

using cons::Figure;
using cons::Kind;
using cons::Step;

std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::Syntax: return "SyntaxError";
    case ErrorKind::UnknownToolset: return "UnknownToolset";
    case ErrorKind::UnknownTool: return "UnknownTool";
    case ErrorKind::Arity: return "ArityError";
    case ErrorKind::UndefinedIdentifier: return "UndefinedIdentifier";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::DuplicateId: return "DuplicateId";
    case ErrorKind::BadParam: return "BadParam";
    case ErrorKind::Macro: return "MacroError";
  }
  return "?";
}

std::string format(const ParseError& e) {
  return std::to_string(e.line) + ":" + std::to_string(e.column) + ": " + e.message;
}

namespace {

constexpr int kMaxDepth = 32;

enum class Tok { Ident, Number, Punct, End, Bad };

struct Token {
  Tok type;
  std::string text;
  size_t col;  // 1-based
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (c == '#') break;
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    const size_t start = i;
    if (ident_start(c)) {
      while (i < line.size() && ident_char(line[i])) ++i;
      out.push_back({Tok::Ident, std::string(line.substr(start, i - start)), start + 1});
    } else if (digit(c) || (c == '.' && i + 1 < line.size() && digit(line[i + 1]))) {
      while (i < line.size() && digit(line[i])) ++i;
      if (i < line.size() && line[i] == '.') {
        ++i;
        while (i < line.size() && digit(line[i])) ++i;
      }
      if (i < line.size() && (line[i] == 'e' || line[i] == 'E')) {
        size_t j = i + 1;
        if (j < line.size() && (line[j] == '+' || line[j] == '-')) ++j;
        if (j < line.size() && digit(line[j])) {
          i = j;
          while (i < line.size() && digit(line[i])) ++i;
        }
      }
      out.push_back({Tok::Number, std::string(line.substr(start, i - start)), start + 1});
    } else if (std::string_view("(),={}*/-+").find(c) != std::string_view::npos) {
      ++i;
      out.push_back({Tok::Punct, std::string(1, c), start + 1});
    } else {
      ++i;
      std::string shown = std::isprint(static_cast<unsigned char>(c)) ? std::string(1, c) : "byte 0x" + [&] {
        char buf[4];
        std::snprintf(buf, sizeof buf, "%02x", static_cast<unsigned char>(c));
        return std::string(buf);
      }();
      out.push_back({Tok::Bad, shown, start + 1});
    }
  }
  out.push_back({Tok::End, "", line.size() + 1});
  return out;
}

std::string describe(const Token& t) {
  switch (t.type) {
    case Tok::End: return "end of line";
    case Tok::Bad: return "unexpected character '" + t.text + "'";
    default: return "'" + t.text + "'";
  }
}

bool reserved(std::string_view s) {
  static const std::set<std::string_view> words = {"pi", "phi", "sqrt", "branch", "macro", "return", "toolset"};
  return words.count(s) || cons::kind_from_keyword(s).has_value();
}

struct SyntaxFailure {
  ParseError error;
};

class Cursor {
 public:
  Cursor(const std::vector<Token>& toks, size_t line) : toks_(toks), line_(line) {}

  const Token& peek(size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool at_punct(char c) const { return peek().type == Tok::Punct && peek().text[0] == c; }
  bool at_end() const { return peek().type == Tok::End; }

  [[noreturn]] void fail(const std::string& expected, const std::string& what = "",
                         ErrorKind kind = ErrorKind::Syntax) const {
    const Token& t = peek();
    ParseError e;
    e.line = line_;
    e.column = t.col;
    e.expected = expected;
    e.found = describe(t);
    e.message = what.empty() ? "expected " + expected + ", found " + e.found : what;
    e.kind = kind;
    throw SyntaxFailure{e};
  }

  const Token& expect_punct(char c) {
    if (!at_punct(c)) fail(std::string("'") + c + "'");
    return next();
  }
  const Token& expect_ident(const std::string& what) {
    if (peek().type != Tok::Ident) fail(what);
    return next();
  }
  void expect_end() {
    if (!at_end()) fail("end of line");
  }

  // number := ['-'|'+'] term ; term := atom (('*'|'/') atom)*
  double number(int depth = 0) {
    if (depth > kMaxDepth) fail("shallower expression", "numeric literal nested too deeply");
    double sign = 1.0;
    if (at_punct('-') || at_punct('+')) sign = next().text[0] == '-' ? -1.0 : 1.0;
    double v = atom(depth);
    while (at_punct('*') || at_punct('/')) {
      const char op = next().text[0];
      const double r = atom(depth);
      v = op == '*' ? v * r : v / r;
    }
    v *= sign;
    if (!std::isfinite(v)) fail("finite number", "numeric literal is not finite");
    return v;
  }

  bool at_number_start() const {
    const Token& t = peek();
    if (t.type == Tok::Number) return true;
    if (at_punct('-') || at_punct('+')) return true;
    return t.type == Tok::Ident && (t.text == "pi" || t.text == "phi" || t.text == "sqrt");
  }

 private:
  double atom(int depth) {
    const Token& t = peek();
    if (t.type == Tok::Number) {
      next();
      return std::strtod(t.text.c_str(), nullptr);
    }
    if (t.type == Tok::Ident && t.text == "pi") {
      next();
      return std::numbers::pi;
    }
    if (t.type == Tok::Ident && t.text == "phi") {
      next();
      return std::numbers::phi;
    }
    if (t.type == Tok::Ident && t.text == "sqrt") {
      next();
      expect_punct('(');
      const Token& arg_start = peek();
      const double v = number(depth + 1);
      if (v < 0) {
        ParseError e{line_, arg_start.col, "non-negative number", describe(arg_start), "sqrt of a negative number",
                     ErrorKind::Syntax};
        throw SyntaxFailure{e};
      }
      expect_punct(')');
      return std::sqrt(v);
    }
    fail("number");
  }

  const std::vector<Token>& toks_;
  size_t line_;
  size_t pos_ = 0;
};

struct Arg {
  bool is_object = false;
  std::string id;
  double value = 0;
  bool branch = false;
  size_t col = 0;
};

struct Statement {
  std::optional<Kind> declared;
  size_t type_col = 0;
  std::vector<std::string> outputs;
  std::vector<size_t> output_cols;
  std::string tool;
  size_t tool_col = 0;
  std::vector<Arg> args;
};

void parse_args(Cursor& c, Statement& st) {
  c.expect_punct('(');
  if (c.at_punct(')')) {
    c.next();
    return;
  }
  while (true) {
    Arg a;
    a.col = c.peek().col;
    if (c.peek().type == Tok::Ident && c.peek().text == "branch" && c.peek(1).type == Tok::Punct &&
        c.peek(1).text == "=") {
      c.next();
      c.next();
      const Token& v = c.peek();
      if (v.type != Tok::Number || (v.text != "0" && v.text != "1")) c.fail("branch selector 0 or 1", "", ErrorKind::BadParam);
      a.value = v.text == "1" ? 1.0 : 0.0;
      a.branch = true;
      c.next();
    } else if (c.at_number_start()) {
      a.value = c.number();
    } else if (c.peek().type == Tok::Ident) {
      a.is_object = true;
      a.id = c.next().text;
    } else {
      c.fail("identifier or number");
    }
    st.args.push_back(std::move(a));
    if (c.at_punct(',')) {
      c.next();
      continue;
    }
    c.expect_punct(')');
    return;
  }
}

void parse_output_name(Cursor& c, Statement& st) {
  const Token& t = c.expect_ident("identifier");
  if (reserved(t.text)) {
    ParseError e{0, t.col, "identifier", describe(t), "'" + t.text + "' is a reserved word", ErrorKind::Syntax};
    throw SyntaxFailure{e};
  }
  st.outputs.push_back(t.text);
  st.output_cols.push_back(t.col);
}

// decl := TYPE IDENT "=" TOOL "(" args ")"   |   idlist "=" MACRO "(" args ")"
Statement parse_statement(Cursor& c) {
  Statement st;
  if (c.peek().type == Tok::Ident) {
    if (auto k = cons::kind_from_keyword(c.peek().text)) {
      st.declared = *k;
      st.type_col = c.next().col;
    }
  }
  parse_output_name(c, st);
  if (!st.declared) {
    while (c.at_punct(',')) {
      c.next();
      parse_output_name(c, st);
    }
  }
  c.expect_punct('=');
  const Token& tool = c.expect_ident("tool name");
  st.tool = tool.text;
  st.tool_col = tool.col;
  parse_args(c, st);
  c.expect_end();
  return st;
}

ErrorKind kind_of_issue(cons::StepIssue::Code code) {
  using Code = cons::StepIssue::Code;
  switch (code) {
    case Code::UnknownTool: return ErrorKind::UnknownTool;
    case Code::Arity: return ErrorKind::Arity;
    case Code::UndefinedIdentifier: return ErrorKind::UndefinedIdentifier;
    case Code::TypeMismatch: return ErrorKind::TypeMismatch;
    case Code::DuplicateId: return ErrorKind::DuplicateId;
    case Code::BadParam: return ErrorKind::BadParam;
  }
  return ErrorKind::Syntax;
}

// Ids on the left of '=' in a statement line, for cascade suppression after
// a syntax error.
std::vector<std::string> declared_ids(const std::vector<Token>& toks) {
  std::vector<std::string> ids;
  size_t i = 0;
  if (toks.size() > 1 && toks[0].type == Tok::Ident && toks[1].type == Tok::Ident) i = 1;
  for (; i < toks.size() && toks[i].type == Tok::Ident; i += 2) {
    ids.push_back(toks[i].text);
    if (i + 1 >= toks.size() || toks[i + 1].type != Tok::Punct) return {};
    if (toks[i + 1].text == "=") return ids;
    if (toks[i + 1].text != ",") return {};
  }
  return {};
}

class Parser {
 public:
  explicit Parser(std::string_view src) {
    size_t start = 0;
    while (start <= src.size()) {
      const size_t nl = src.find('\n', start);
      const size_t end = nl == std::string_view::npos ? src.size() : nl;
      lines_.push_back(src.substr(start, end - start));
      if (nl == std::string_view::npos) break;
      start = nl + 1;
    }
  }

  ParseResult run() {
    bool seen_statement = false;
    for (size_t i = 0; i < lines_.size(); ++i) {
      const size_t line_no = i + 1;
      const auto toks = tokenize(lines_[i]);
      if (toks.front().type == Tok::End) continue;
      Cursor c(toks, line_no);
      try {
        const Token& first = c.peek();
        if (first.type == Tok::Ident && first.text == "toolset") {
          if (seen_statement) c.fail("statement", "toolset header must be the first statement");
          seen_statement = true;
          c.next();
          const Token& name = c.expect_ident("toolset name");
          c.expect_end();
          if (auto ts = cons::toolset_by_name(name.text)) {
            fig_.set_toolset(*ts);
          } else {
            error(line_no, name.col, "POSTULATES_ONLY, EUCLID_BOOK1 or FULL", "'" + name.text + "'",
                  "unknown toolset '" + name.text + "'", ErrorKind::UnknownToolset);
          }
          continue;
        }
        if (!seen_statement)
          error(line_no, first.col, "toolset header", describe(first), "missing 'toolset' header", ErrorKind::Syntax);
        seen_statement = true;
        if (first.type == Tok::Ident && first.text == "macro") {
          i = parse_macro(i, c);
          continue;
        }
        Statement st = parse_statement(c);
        add_statement(st, line_no, nullptr);
      } catch (const SyntaxFailure& f) {
        ParseError e = f.error;
        e.line = line_no;
        errors_.push_back(std::move(e));
        for (auto& id : declared_ids(toks)) poisoned_.insert(std::move(id));
      }
    }
    if (!seen_statement) error(1, 1, "toolset header", "end of file", "missing 'toolset' header", ErrorKind::Syntax);
    ParseResult r;
    if (errors_.empty()) r.figure = std::move(fig_);
    r.errors = std::move(errors_);
    return r;
  }

 private:
  struct MacroScope {
    std::map<cons::ObjectId, Kind> kinds;
    std::vector<Step> body;
    std::set<std::string> poisoned;
  };

  void error(size_t line, size_t col, std::string expected, std::string found, std::string message, ErrorKind kind) {
    errors_.push_back(ParseError{line, col, std::move(expected), std::move(found), std::move(message), kind});
  }

  // Returns true when the step was accepted.
  bool add_statement(const Statement& st, size_t line_no, MacroScope* scope) {
    std::set<std::string>& poisoned = scope ? scope->poisoned : poisoned_;
    auto poison = [&] {
      for (const auto& o : st.outputs) poisoned.insert(o);
      return false;
    };

    Step step;
    step.outputs = st.outputs;
    std::vector<size_t> input_cols;
    if (auto id = cons::find_tool(st.tool)) {
      step.tool = *id;
    } else if (fig_.find_macro(st.tool)) {
      step.tool = st.tool;
    } else {
      if (!poisoned_macros_.count(st.tool))
        error(line_no, st.tool_col, "tool or macro name", "'" + st.tool + "'", "unknown tool '" + st.tool + "'",
              ErrorKind::UnknownTool);
      return poison();
    }
    const bool branching = !step.is_macro_call() && cons::tool_spec(std::get<cons::ToolId>(step.tool)).branching;
    for (const Arg& a : st.args) {
      if (a.is_object) {
        step.inputs.push_back(a.id);
        input_cols.push_back(a.col);
      } else {
        if (a.branch && !branching) {
          error(line_no, a.col, "argument", "branch selector", "'" + st.tool + "' takes no branch selector",
                ErrorKind::BadParam);
          return poison();
        }
        step.params.push_back(a.value);
      }
    }

    const auto& kinds = scope ? scope->kinds : fig_kinds_;
    std::vector<Kind> out_kinds;
    if (auto issue = cons::check_step_against(step, kinds, fig_.macros(), &out_kinds)) {
      size_t col = st.tool_col;
      if (issue->input) col = input_cols[*issue->input];
      if (issue->code == cons::StepIssue::Code::DuplicateId) {
        for (size_t k = 0; k < st.outputs.size(); ++k)
          if (kinds.count(st.outputs[k])) col = st.output_cols[k];
      }
      const bool cascade = issue->code == cons::StepIssue::Code::UndefinedIdentifier && issue->input &&
                           poisoned.count(step.inputs[*issue->input]);
      if (!cascade) {
        std::string found = issue->input ? "'" + step.inputs[*issue->input] + "'" : "'" + st.tool + "'";
        error(line_no, col, "", found, issue->message, kind_of_issue(issue->code));
      }
      if (issue->code == cons::StepIssue::Code::DuplicateId) return false;
      return poison();
    }
    if (st.declared && out_kinds.size() == 1 && cons::type_keyword(out_kinds[0]) != cons::type_keyword(*st.declared)) {
      error(line_no, st.type_col, std::string(cons::type_keyword(out_kinds[0])),
            std::string(cons::type_keyword(*st.declared)),
            "'" + st.tool + "' yields a " + std::string(cons::type_keyword(out_kinds[0])) + ", declared as " +
                std::string(cons::type_keyword(*st.declared)),
            ErrorKind::TypeMismatch);
      return poison();
    }
    if (st.declared && out_kinds.size() != 1) {
      error(line_no, st.type_col, "output list", "type keyword",
            "macro '" + st.tool + "' returns " + std::to_string(out_kinds.size()) + " objects", ErrorKind::Arity);
      return poison();
    }
    if (scope) {
      for (size_t k = 0; k < step.outputs.size(); ++k) scope->kinds[step.outputs[k]] = out_kinds[k];
      scope->body.push_back(std::move(step));
    } else {
      for (size_t k = 0; k < step.outputs.size(); ++k) fig_kinds_[step.outputs[k]] = out_kinds[k];
      fig_.add_step(std::move(step));
    }
    return true;
  }

  // macro NAME ( TYPE IDENT, ... ) {  ... return idlist  }
  size_t parse_macro(size_t i, Cursor& c) {
    const size_t header_line = i + 1;
    c.next();
    const Token& name_tok = c.expect_ident("macro name");
    const std::string name = name_tok.text;
    const size_t name_col = name_tok.col;
    std::vector<cons::Formal> formals;
    MacroScope scope;
    bool ok = true;
    c.expect_punct('(');
    if (!c.at_punct(')')) {
      while (true) {
        const Token& type = c.expect_ident("type keyword");
        auto k = cons::kind_from_keyword(type.text);
        if (!k) c.fail("type keyword");
        const Token& id = c.expect_ident("formal name");
        if (reserved(id.text)) c.fail("identifier", "'" + id.text + "' is a reserved word");
        if (scope.kinds.count(id.text)) {
          error(header_line, id.col, "", "'" + id.text + "'", "duplicate formal '" + id.text + "'",
                ErrorKind::DuplicateId);
          ok = false;
        }
        formals.push_back({id.text, *k});
        scope.kinds[id.text] = *k;
        if (c.at_punct(',')) {
          c.next();
          continue;
        }
        break;
      }
    }
    c.expect_punct(')');
    c.expect_punct('{');
    c.expect_end();

    std::vector<std::string> outputs;
    size_t return_col = 0;
    size_t return_line = 0;
    size_t j = i + 1;
    bool closed = false;
    for (; j < lines_.size(); ++j) {
      const size_t line_no = j + 1;
      const auto toks = tokenize(lines_[j]);
      if (toks.front().type == Tok::End) continue;
      Cursor bc(toks, line_no);
      try {
        if (bc.at_punct('}')) {
          bc.next();
          bc.expect_end();
          closed = true;
          break;
        }
        if (return_line) bc.fail("'}'");
        const Token& first = bc.peek();
        if (first.type == Tok::Ident && first.text == "return") {
          bc.next();
          return_line = line_no;
          return_col = first.col;
          outputs.push_back(bc.expect_ident("identifier").text);
          while (bc.at_punct(',')) {
            bc.next();
            outputs.push_back(bc.expect_ident("identifier").text);
          }
          bc.expect_end();
          continue;
        }
        if (first.type == Tok::Ident && (first.text == "macro" || first.text == "toolset"))
          bc.fail("statement", "'" + first.text + "' is not allowed inside a macro body");
        Statement st = parse_statement(bc);
        if (!add_statement(st, line_no, &scope)) ok = false;
      } catch (const SyntaxFailure& f) {
        ParseError e = f.error;
        e.line = line_no;
        errors_.push_back(std::move(e));
        for (auto& id : declared_ids(toks)) scope.poisoned.insert(std::move(id));
        ok = false;
      }
    }
    if (!closed) {
      error(lines_.size(), lines_.empty() ? 1 : lines_.back().size() + 1, "'}'", "end of file",
            "macro '" + name + "' is not closed", ErrorKind::Syntax);
      ok = false;
    }
    if (closed && !return_line) {
      error(j + 1, 1, "'return'", "'}'", "macro '" + name + "' has no return statement", ErrorKind::Macro);
      ok = false;
    }
    if (ok) {
      try {
        fig_.add_macro(cons::Macro{name, std::move(formals), std::move(scope.body), std::move(outputs), {}});
      } catch (const GeoError& e) {
        const bool on_return = e.code() == ErrorCode::IllFormedBody && return_line && !scope.body.empty();
        error(on_return ? return_line : header_line, on_return ? return_col : name_col, "", "'" + name + "'", e.what(),
              ErrorKind::Macro);
        ok = false;
      }
    }
    if (!ok) poisoned_macros_.insert(name);
    return j;
  }

  std::vector<std::string_view> lines_;
  Figure fig_;
  std::map<cons::ObjectId, Kind> fig_kinds_;
  std::set<std::string> poisoned_;
  std::set<std::string> poisoned_macros_;
  std::vector<ParseError> errors_;
};

std::string step_line(const Step& s, const std::vector<Kind>& kinds) {
  std::string out;
  if (s.outputs.size() == 1) {
    out = std::string(cons::type_keyword(kinds[0])) + " " + s.outputs[0];
  } else {
    for (const auto& o : s.outputs) out += (out.empty() ? "" : ", ") + o;
  }
  return out + " = " + cons::format_call(s);
}

std::vector<Kind> output_kinds(const Figure& fig, const Step& s) {
  if (const auto* name = std::get_if<std::string>(&s.tool)) return fig.find_macro(*name)->output_kinds;
  return {cons::tool_spec(std::get<cons::ToolId>(s.tool)).output};
}

}  // namespace

ParseResult parse(std::string_view src) { return Parser(src).run(); }

Figure parse_or_throw(std::string_view src) {
  ParseResult r = parse(src);
  if (!r.ok()) throw GeoError(ErrorCode::MalformedFigure, format(r.errors.front()));
  return std::move(*r.figure);
}

std::string serialize(const Figure& fig) {
  std::string out = "toolset " + fig.toolset().name + "\n";
  for (const auto& name : fig.macro_order()) {
    const cons::Macro& m = *fig.find_macro(name);
    out += "macro " + m.name + "(";
    for (size_t i = 0; i < m.inputs.size(); ++i)
      out += (i ? ", " : "") + std::string(cons::type_keyword(m.inputs[i].kind)) + " " + m.inputs[i].id;
    out += ") {\n";
    for (const auto& s : m.body) out += "  " + step_line(s, output_kinds(fig, s)) + "\n";
    out += "  return ";
    for (size_t i = 0; i < m.outputs.size(); ++i) out += (i ? ", " : "") + m.outputs[i];
    out += "\n}\n";
  }
  for (const auto& s : fig.steps()) out += step_line(s, output_kinds(fig, s)) + "\n";
  return out;
}

std::optional<double> parse_number(std::string_view text) {
  const auto toks = tokenize(text);
  Cursor c(toks, 1);
  try {
    const double v = c.number();
    c.expect_end();
    return v;
  } catch (const SyntaxFailure&) {
    return std::nullopt;
  }
}

}  // namespace geo::dsl
