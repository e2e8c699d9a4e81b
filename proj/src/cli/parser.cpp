#include "germlab/cli.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace germlab::cli {

namespace {

enum class Tok { Ident, Number, Punct, End };

struct Token {
  Tok kind;
  std::string text;
  SourceLocation where;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::Ident: return "identifier '" + t.text + "'";
    case Tok::Number: return "number " + t.text;
    case Tok::Punct: return "'" + t.text + "'";
    case Tok::End: return "end of input";
  }
  return "?";
}

[[noreturn]] void parse_error(const SourceLocation& at, const std::string& message) {
  fail(ErrorCode::Parse,
       "line " + std::to_string(at.line) + ", column " + std::to_string(at.column) + ": " + message);
}

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  SourceLocation loc;
  std::size_t i = 0;
  auto advance = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j) {
      if (text[i] == '\n') {
        ++loc.line;
        loc.column = 1;
      } else {
        ++loc.column;
      }
      ++i;
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const SourceLocation start = loc;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      out.push_back(Token{Tok::Ident, std::string(text.substr(i, j - i)), start});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j < text.size() && text[j] == '.') {
        SourceLocation dot = loc;
        dot.column += j - i;
        parse_error(dot, "decimal literals are not supported; write rationals as p/q");
      }
      out.push_back(Token{Tok::Number, std::string(text.substr(i, j - i)), start});
      advance(j - i);
      continue;
    }
    static constexpr std::string_view kPunct = ";,=[]()+-*/^";
    if (kPunct.find(c) != std::string_view::npos) {
      out.push_back(Token{Tok::Punct, std::string(1, c), start});
      advance(1);
      continue;
    }
    parse_error(start, std::string("unexpected character '") + c + "'");
  }
  out.push_back(Token{Tok::End, "", loc});
  return out;
}

const std::set<std::string> kIntegerNames = {"seed",   "bound",   "trials",    "max_steps", "dim",
                                             "D_infty", "lambda0", "e_Jg_I", "e_generic", "mu_slice"};
const std::set<std::string> kAssertions = {"icis", "cm", "transverse-morse"};

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool at_punct(char c) const { return peek().kind == Tok::Punct && peek().text[0] == c; }
  bool at_word(std::string_view w) const { return peek().kind == Tok::Ident && peek().text == w; }
  bool at_end() const { return peek().kind == Tok::End; }

  [[noreturn]] void expected(std::vector<std::string> what) const {
    std::string list;
    for (std::size_t i = 0; i < what.size(); ++i) {
      if (i) list += i + 1 == what.size() ? " or " : ", ";
      list += what[i];
    }
    parse_error(peek().where, "expected " + list + ", got " + describe(peek()));
  }

  void expect_punct(char c, std::vector<std::string> alternatives = {}) {
    if (at_punct(c)) {
      next();
      return;
    }
    alternatives.insert(alternatives.begin(), std::string("'") + c + "'");
    expected(alternatives);
  }

  // After an expression the operators are also acceptable continuations.
  void expect_after_expr(char c, std::vector<std::string> others = {}) {
    if (at_punct(c)) {
      next();
      return;
    }
    std::vector<std::string> all{std::string("'") + c + "'"};
    all.insert(all.end(), others.begin(), others.end());
    for (const char* op : {"'+'", "'-'", "'*'", "'/'", "'^'"}) all.emplace_back(op);
    expected(all);
  }

  std::string ident(const std::string& what) {
    if (peek().kind != Tok::Ident) expected({what});
    return next().text;
  }

  // word ('-' word)*, used for task, assertion and regime names.
  std::string hyphenated(const std::string& what) {
    std::string w = ident(what);
    while (at_punct('-') && peek(1).kind == Tok::Ident) {
      next();
      w += "-" + next().text;
    }
    return w;
  }

  Integer natural(const std::string& what) {
    if (peek().kind != Tok::Number) expected({what});
    return Integer(next().text);
  }

  // ---- expressions -------------------------------------------------------

  Polynomial expr(const VariableSet& vars) {
    Polynomial acc = term(vars);
    while (at_punct('+') || at_punct('-')) {
      const bool add = next().text == "+";
      Polynomial rhs = term(vars);
      if (add) {
        acc += rhs;
      } else {
        acc -= rhs;
      }
    }
    return acc;
  }

  Polynomial term(const VariableSet& vars) {
    Polynomial acc = unary(vars);
    while (at_punct('*') || at_punct('/')) {
      const Token op = next();
      const SourceLocation where = peek().where;
      Polynomial rhs = unary(vars);
      if (op.text == "*") {
        acc = acc * rhs;
      } else {
        if (!rhs.is_constant() || rhs.is_zero()) parse_error(where, "division is only by a nonzero constant");
        acc *= Rational(1) / rhs.constant_term();
      }
    }
    return acc;
  }

  Polynomial unary(const VariableSet& vars) {
    if (at_punct('-')) {
      next();
      return -unary(vars);
    }
    if (at_punct('+')) {
      next();
      return unary(vars);
    }
    return power(vars);
  }

  Polynomial power(const VariableSet& vars) {
    Polynomial base = atom(vars);
    if (at_punct('^')) {
      next();
      if (peek().kind != Tok::Number) expected({"a non-negative integer exponent"});
      const Token& t = next();
      if (t.text.size() > 5 || std::stoul(t.text) > 65535) parse_error(t.where, "exponent too large");
      base = base.pow(static_cast<unsigned>(std::stoul(t.text)));
    }
    return base;
  }

  Polynomial atom(const VariableSet& vars) {
    const Token& t = peek();
    if (t.kind == Tok::Number) {
      next();
      return Polynomial::constant(vars, Rational(Integer(t.text)));
    }
    if (t.kind == Tok::Ident) {
      auto idx = vars.index_of(t.text);
      if (!idx) parse_error(t.where, "unknown variable '" + t.text + "'");
      next();
      return Polynomial::variable(vars, *idx);
    }
    if (at_punct('(')) {
      next();
      Polynomial inner = expr(vars);
      expect_after_expr(')');
      return inner;
    }
    expected({"a number", "a variable", "'('", "'-'"});
  }

  std::vector<Polynomial> list(const VariableSet& vars) {
    expect_punct('[');
    std::vector<Polynomial> out;
    if (at_punct(']')) {
      next();
      return out;
    }
    while (true) {
      out.push_back(expr(vars));
      if (at_punct(',')) {
        next();
        continue;
      }
      expect_after_expr(']', {"','"});
      return out;
    }
  }

  Value value(const VariableSet& vars) {
    Value v;
    v.where = peek().where;
    if (at_punct('[') && peek(1).kind == Tok::Punct && peek(1).text == "[") {
      v.kind = Value::Kind::Matrix;
      next();
      while (true) {
        const SourceLocation row_at = peek().where;
        v.rows.push_back(list(vars));
        if (v.rows.back().size() != v.rows.front().size()) parse_error(row_at, "matrix rows differ in length");
        if (at_punct(',')) {
          next();
          continue;
        }
        expect_punct(']', {"','"});
        return v;
      }
    }
    if (at_punct('[')) {
      v.kind = Value::Kind::List;
      v.rows.push_back(list(vars));
      return v;
    }
    v.kind = Value::Kind::Scalar;
    v.rows.push_back({expr(vars)});
    return v;
  }

  std::vector<std::string> name_list(const std::string& what) {
    std::vector<std::string> out{ident(what)};
    while (at_punct(',')) {
      next();
      out.push_back(ident(what));
    }
    return out;
  }

  std::vector<Rational> constant_row(const VariableSet& vars) {
    const SourceLocation at = peek().where;
    std::vector<Rational> out;
    for (const auto& p : list(vars)) {
      if (!p.is_constant()) parse_error(at, "center coordinates must be constants");
      out.push_back(p.constant_term());
    }
    return out;
  }

  // ---- statements --------------------------------------------------------

  TaskFile file(std::string_view text) {
    TaskFile tf;
    tf.source = std::string(text);
    bool have_ring = false;
    bool have_task = false;
    bool have_bindings = false;
    auto need_ring = [&](const Token& t) {
      if (!have_ring) parse_error(t.where, "the ring must be declared before '" + t.text + "'");
    };
    while (!at_end()) {
      const Token head = peek();
      if (head.kind != Tok::Ident) expected({"a statement"});
      if (head.text == "ring" && peek(1).kind == Tok::Ident) {
        next();
        if (have_ring) parse_error(head.where, "duplicate ring declaration");
        tf.ring_names = name_list("a variable name");
        expect_punct(';', {"','"});
        tf.vars = make_vars(tf.ring_names, head.where);
        have_ring = true;
      } else if (head.text == "params" && peek(1).kind == Tok::Ident) {
        next();
        need_ring(head);
        if (have_bindings || !tf.params.empty()) {
          parse_error(head.where, "params must be declared once, before any binding");
        }
        tf.params = name_list("a parameter name");
        expect_punct(';', {"','"});
        auto all = tf.ring_names;
        all.insert(all.end(), tf.params.begin(), tf.params.end());
        tf.vars = make_vars(all, head.where);
      } else if (head.text == "task" && peek(1).kind == Tok::Ident) {
        next();
        if (have_task) parse_error(head.where, "duplicate task statement");
        tf.task_where = peek().where;
        tf.task = hyphenated("a task name");
        const auto& names = task_names();
        if (std::find(names.begin(), names.end(), tf.task) == names.end()) {
          std::string all;
          for (const auto& n : names) all += (all.empty() ? "" : ", ") + n;
          parse_error(tf.task_where, "unknown task '" + tf.task + "'; known tasks: " + all);
        }
        expect_punct(';');
        have_task = true;
      } else if (head.text == "assert" && peek(1).kind == Tok::Ident) {
        next();
        const SourceLocation at = peek().where;
        std::string a = hyphenated("an assertion");
        if (!kAssertions.count(a)) parse_error(at, "unknown assertion '" + a + "'; expected icis, cm or transverse-morse");
        expect_punct(';');
        if (std::find(tf.assertions.begin(), tf.assertions.end(), a) == tf.assertions.end()) tf.assertions.push_back(a);
      } else if (head.text == "regime" && peek(1).kind == Tok::Ident) {
        next();
        const SourceLocation at = peek().where;
        std::string r = hyphenated("a regime name");
        if (!invariants::parse_regime(r)) {
          parse_error(at, "unknown regime '" + r +
                              "'; expected n-free, both-finite-colength, icis-jacobian-pair or chart-fixture");
        }
        if (tf.regime) parse_error(head.where, "duplicate regime statement");
        tf.regime = r;
        expect_punct(';');
      } else if (head.text == "chart" && peek(1).kind == Tok::Ident) {
        next();
        chart(tf, head);
      } else if (head.text == "stratum" && peek(1).kind == Tok::Ident) {
        next();
        need_ring(head);
        stratum(tf, head);
      } else {
        next();
        expect_punct('=');
        if (tf.bindings.count(head.text) || tf.integers.count(head.text)) {
          parse_error(head.where, "duplicate binding '" + head.text + "'");
        }
        if (kIntegerNames.count(head.text)) {
          tf.integers[head.text] = natural("a non-negative integer");
          expect_punct(';');
        } else {
          need_ring(head);
          tf.bindings[head.text] = value(tf.vars);
          expect_after_expr(';');
          have_bindings = true;
        }
      }
    }
    if (!have_ring) parse_error(peek().where, "missing ring declaration");
    if (!have_task) parse_error(peek().where, "missing task statement");
    validate(tf);
    return tf;
  }

  VariableSet make_vars(const std::vector<std::string>& names, const SourceLocation& at) {
    try {
      return VariableSet(names);
    } catch (const Error& e) {
      parse_error(at, e.what());
    }
  }

  void chart(TaskFile& tf, const Token& head) {
    ChartDecl c;
    c.name = ident("a chart name");
    for (const auto& other : tf.charts) {
      if (other.name == c.name) parse_error(head.where, "duplicate chart '" + c.name + "'");
    }
    if (at_word("in")) {
      next();
      c.group = ident("a chart group");
      if (c.group != "main" && c.group != "jg" && c.group != "generic") {
        parse_error(head.where, "unknown chart group '" + c.group + "'; expected main, jg or generic");
      }
    }
    expect_punct('(', {"'in'"});
    const SourceLocation at = peek().where;
    auto names = name_list("a chart parameter");
    expect_punct(')', {"','"});
    c.fixture.name = c.name;
    c.fixture.params = make_vars(names, at);
    expect_punct('=');
    c.fixture.ideal = list(c.fixture.params);
    if (at_word("at")) {
      next();
      expect_punct('[');
      while (true) {
        c.fixture.centers.push_back(constant_row(c.fixture.params));
        if (c.fixture.centers.back().size() != names.size()) {
          parse_error(head.where, "chart '" + c.name + "': center needs " + std::to_string(names.size()) +
                                      " coordinates");
        }
        if (at_punct(',')) {
          next();
          continue;
        }
        expect_punct(']', {"','"});
        break;
      }
    } else {
      c.fixture.centers.push_back(std::vector<Rational>(names.size(), Rational(0)));
    }
    expect_punct(';', {"'at'"});
    tf.charts.push_back(std::move(c));
  }

  void stratum(TaskFile& tf, const Token& head) {
    StratumDecl s;
    s.name = ident("a stratum name");
    for (const auto& other : tf.strata) {
      if (other.name == s.name) parse_error(head.where, "duplicate stratum '" + s.name + "'");
    }
    if (!at_word("dim")) expected({"'dim'"});
    next();
    s.dimension = static_cast<unsigned>(natural("the stratum dimension").get_ui());
    if (!at_word("weight")) expected({"'weight'"});
    next();
    bool negative = false;
    if (at_punct('-')) {
      next();
      negative = true;
    }
    s.weight = natural("an integer weight");
    if (negative) s.weight = -s.weight;
    expect_punct('=');
    VariableSet ring(tf.ring_names);
    s.equations = list(ring);
    expect_punct(';');
    tf.strata.push_back(std::move(s));
  }

  void validate(const TaskFile& tf) {
    const SourceLocation at = tf.task_where;
    auto has = [&](const char* name) { return tf.binding(name) != nullptr; };
    auto require = [&](std::vector<std::string> names, const std::string& note = "") {
      std::vector<std::string> missing;
      for (const auto& n : names) {
        if (!tf.binding(n) && !tf.integer(n)) missing.push_back(n);
      }
      if (missing.empty()) return;
      std::string list;
      for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) list += i + 1 == names.size() ? " and " : ", ";
        list += names[i];
        if (names[i] == "F") list += " (may be empty list)";
      }
      parse_error(at, "task `" + tf.task + "` requires bindings " + list + note);
    };
    auto kind = [&](const char* name, std::initializer_list<Value::Kind> kinds, const char* what) {
      const Value* v = tf.binding(name);
      if (!v) return;
      if (std::find(kinds.begin(), kinds.end(), v->kind) == kinds.end()) {
        parse_error(v->where, std::string("binding ") + name + " must be " + what);
      }
    };
    kind("F", {Value::Kind::List}, "a list");
    kind("I", {Value::Kind::List}, "a list");
    kind("omega", {Value::Kind::List}, "a list");
    kind("f", {Value::Kind::Scalar}, "a polynomial");
    kind("g", {Value::Kind::Scalar}, "a polynomial");
    kind("h", {Value::Kind::Scalar}, "a linear form");
    kind("samples", {Value::Kind::Matrix, Value::Kind::List}, "a matrix of parameter values");

    const std::string& t = tf.task;
    if (!tf.params.empty() && t != "family-scan") {
      parse_error(at, "params are only meaningful for task `family-scan`");
    }
    if (t == "colength" || t == "br-mult") {
      require({"M"});
    } else if (t == "dimension") {
      require({"F"});
    } else if (t == "milnor") {
      if (!has("F") && !has("g")) parse_error(at, "task `milnor` requires binding F or g");
    } else if (t == "mu-on-X" || t == "defect" || t == "nonsingular" || t == "isolated") {
      require({"F", "f"});
    } else if (t == "index") {
      require({"F", "omega"});
    } else if (t == "limit-tangent") {
      require({"F", "h"});
    } else if (t == "integral-ideal") {
      require({"I"});
    } else if (t == "pullback") {
      if (tf.charts.empty()) parse_error(at, "task `pullback` requires at least one chart");
    } else if (t == "dmodule" || t == "milnor-fiber") {
      require({"f"});
      if (tf.strata.empty()) parse_error(at, "task `" + t + "` requires at least one stratum");
    } else if (t == "b-report") {
      require({"g", "I", "f", "D_infty"});
    } else if (t == "family-scan") {
      require({"F", "f", "samples"});
      if (tf.params.empty()) parse_error(at, "task `family-scan` requires a params declaration");
    } else if (t == "pair-mult") {
      if (!tf.regime) parse_error(at, "task `pair-mult` requires a regime statement");
      const auto r = *invariants::parse_regime(*tf.regime);
      if (r == invariants::Regime::ChartFixture) {
        if (tf.charts.empty()) parse_error(at, "regime chart-fixture requires at least one chart");
      } else if (r == invariants::Regime::IcisJacobianPair) {
        require({"F", "f"});
      } else if (r == invariants::Regime::NFree) {
        require({"M"});
      } else {
        require({"M", "N"});
      }
    }
    if (const Value* h = tf.binding("h")) {
      for (const auto& [m, c] : h->scalar().terms()) {
        if (m.degree() != 1) parse_error(h->where, "h must be a homogeneous linear form");
      }
      if (h->scalar().is_zero()) parse_error(h->where, "h must be nonzero");
    }
    if (const Value* w = tf.binding("omega")) {
      if (w->list().size() != tf.ring_names.size()) {
        parse_error(w->where, "omega needs one coefficient per ring variable");
      }
    }
    if (const Value* s = tf.binding("samples")) {
      for (const auto& row : s->rows) {
        if (s->kind == Value::Kind::Matrix && row.size() != tf.params.size()) {
          parse_error(s->where, "each sample needs one value per parameter");
        }
        for (const auto& p : row) {
          if (!p.is_constant()) parse_error(s->where, "samples must be constants");
        }
      }
      if (s->kind == Value::Kind::List && !s->list().empty()) {
        parse_error(s->where, "samples must be a matrix, e.g. [[0], [1]]");
      }
    }
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

bool TaskFile::has_assertion(std::string_view a) const {
  return std::find(assertions.begin(), assertions.end(), a) != assertions.end();
}

const Value* TaskFile::binding(std::string_view name) const {
  auto it = bindings.find(std::string(name));
  return it == bindings.end() ? nullptr : &it->second;
}

std::optional<Integer> TaskFile::integer(std::string_view name) const {
  auto it = integers.find(std::string(name));
  if (it == integers.end()) return std::nullopt;
  return it->second;
}

const std::vector<std::string>& task_names() {
  static const std::vector<std::string> kNames = {
      "colength", "dimension", "br-mult", "milnor",   "mu-on-X", "defect",      "index",    "limit-tangent",
      "nonsingular", "isolated", "pair-mult", "integral-ideal", "pullback", "dmodule", "milnor-fiber", "b-report",
      "family-scan"};
  return kNames;
}

TaskFile parse_task(std::string_view text) {
  Parser p(text);
  return p.file(text);
}

Polynomial parse_polynomial(std::string_view text, const VariableSet& vars) {
  Parser p(text);
  Polynomial out = p.expr(vars);
  if (!p.at_end()) p.expected({"end of input", "'+'", "'-'", "'*'", "'/'", "'^'"});
  return out;
}

}  // namespace germlab::cli
