/*
 * Copyright (c) 2026, The tgmc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
*/

#include "tgmc/dsl.hh"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>
#include <sstream>

namespace tgmc {

std::string Diagnostic::ToString() const {
  return std::to_string(line) + ":" + std::to_string(column) + ": " + message;
}

namespace {

struct Token {
  enum class Kind { kIdent, kInt, kPunct, kEnd };
  Kind kind = Kind::kEnd;
  std::string text;
  std::size_t line = 0;
  std::size_t column = 0;
};

std::vector<Token> Lex(std::string_view src, std::vector<Diagnostic>& diags) {
  static const char* kTwoChar[] = {"<=", ">=", "==", "!=", "&&", "||", "->"};
  static const std::string_view kOneChar = ";,:{}()+-*<>=!";
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token tok;
    tok.line = line;
    tok.column = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) ||
              src[j] == '_')) {
        ++j;
      }
      tok.kind = Token::Kind::kIdent;
      tok.text = std::string(src.substr(i, j - i));
      advance(j - i);
      out.push_back(std::move(tok));
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j])))
        ++j;
      tok.kind = Token::Kind::kInt;
      tok.text = std::string(src.substr(i, j - i));
      advance(j - i);
      out.push_back(std::move(tok));
      continue;
    }
    bool matched = false;
    for (const char* two : kTwoChar) {
      if (src.substr(i, 2) == two) {
        tok.kind = Token::Kind::kPunct;
        tok.text = two;
        advance(2);
        out.push_back(tok);
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (kOneChar.find(c) != std::string_view::npos) {
      tok.kind = Token::Kind::kPunct;
      tok.text = std::string(1, c);
      advance(1);
      out.push_back(std::move(tok));
      continue;
    }
    diags.push_back({line, col,
                     "unexpected character '" +
                         std::string(1, c) + "'"});
    advance(1);
  }
  Token end;
  end.kind = Token::Kind::kEnd;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

struct SyntaxError {
  Diagnostic diag;
};

bool IsOrGuard(const GuardExpr& g) {
  return g.kind == GuardExpr::Kind::kNot &&
         g.children[0].kind == GuardExpr::Kind::kAnd &&
         g.children[0].children[0].kind == GuardExpr::Kind::kNot &&
         g.children[0].children[1].kind == GuardExpr::Kind::kNot;
}

bool IsGuardAtom(const GuardExpr& g) {
  return g.kind == GuardExpr::Kind::kStatusIs ||
         g.kind == GuardExpr::Kind::kThreshold;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::vector<Diagnostic>& diags)
      : toks_(std::move(tokens)), diags_(diags) {}

  std::optional<ModelDef> Run();

 private:
  const Token& Peek(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  const Token& Next() {
    const Token& t = Peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool IsPunct(const char* p, std::size_t k = 0) const {
    return Peek(k).kind == Token::Kind::kPunct && Peek(k).text == p;
  }
  bool IsWord(const char* w, std::size_t k = 0) const {
    return Peek(k).kind == Token::Kind::kIdent && Peek(k).text == w;
  }
  bool Accept(const char* p) {
    if (!IsPunct(p)) return false;
    Next();
    return true;
  }
  [[noreturn]] void Fail(const Token& at, const std::string& msg) const {
    throw SyntaxError{{at.line, at.column, msg}};
  }
  std::string Describe(const Token& t) const {
    if (t.kind == Token::Kind::kEnd) return "end of input";
    return "'" + t.text + "'";
  }
  void Expect(const char* p) {
    if (!Accept(p)) {
      Fail(Peek(), std::string("expected '") + p + "' but found " +
                       Describe(Peek()));
    }
  }
  void ExpectWord(const char* w) {
    if (!IsWord(w)) {
      Fail(Peek(), std::string("expected '") + w + "' but found " +
                       Describe(Peek()));
    }
    Next();
  }
  const Token& ExpectIdent(const std::string& what) {
    if (Peek().kind != Token::Kind::kIdent) {
      Fail(Peek(), "expected " + what + " but found " + Describe(Peek()));
    }
    return Next();
  }
  void Report(const Token& at, const std::string& msg) {
    diags_.push_back({at.line, at.column, msg});
  }
  void SkipPastSemicolon() {
    while (Peek().kind != Token::Kind::kEnd && !IsPunct(";") &&
           !IsPunct("}")) {
      Next();
    }
    Accept(";");
  }

  void Statement();
  void DeclareName(const Token& tok);
  std::vector<Token> NameList(const std::string& what);

  LinearForm LinForm();
  LinearForm Term();
  LinearForm OffsetTerms();
  void ParseComparison(ResilienceCondition& rc);

  std::size_t Status(const Token& tok);
  VarRef Variable(const Token& tok);

  void Step();
  void EdgeStmt();
  Op ParseOp();
  GuardExpr GuardOr();
  GuardExpr GuardAnd();
  GuardExpr GuardUnary();
  PickAtom ParsePickAtom();

  ltl::Formula FormulaImpl();
  ltl::Formula FormulaOr();
  ltl::Formula FormulaAnd();
  ltl::Formula FormulaUntil();
  ltl::Formula FormulaUnary();
  ltl::Formula FormulaAtom();

  void Finish();

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<Diagnostic>& diags_;
  ModelDef m_;
  std::set<std::string> names_;
  std::map<std::string, Token> first_seen_;
  std::vector<Token> edge_tokens_;
  std::vector<std::pair<std::string, Token>> unless_refs_;
  bool have_model_ = false, have_size_ = false, have_status_ = false,
       have_init_ = false, have_step_ = false;
};

void Parser::DeclareName(const Token& tok) {
  if (tok.text == "sv" || tok.text == "eps") {
    Report(tok, "'" + tok.text + "' is reserved");
  } else if (!names_.insert(tok.text).second) {
    Report(tok, "duplicate name '" + tok.text + "'");
  }
}

std::vector<Token> Parser::NameList(const std::string& what) {
  std::vector<Token> out;
  out.push_back(ExpectIdent(what));
  while (Accept(",")) out.push_back(ExpectIdent(what));
  Expect(";");
  return out;
}

LinearForm Parser::Term() {
  const Token& t = Peek();
  if (t.kind == Token::Kind::kInt) {
    Next();
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc()) Fail(t, "integer literal out of range");
    if (Accept("*")) {
      const Token& name = ExpectIdent("parameter name");
      if (!m_.decls.IsParam(name.text)) {
        Fail(name, "unknown parameter '" + name.text + "'");
      }
      return LinearForm::Param(name.text, v);
    }
    return LinearForm(v);
  }
  if (t.kind == Token::Kind::kIdent) {
    if (!m_.decls.IsParam(t.text)) {
      Fail(t, "unknown identifier '" + t.text + "' (expected a parameter)");
    }
    Next();
    return LinearForm::Param(t.text);
  }
  Fail(t, "expected a parameter or integer but found " + Describe(t));
}

LinearForm Parser::LinForm() {
  LinearForm f;
  if (Accept("-")) {
    f = -Term();
  } else {
    f = Term();
  }
  f += OffsetTerms();
  return f;
}

LinearForm Parser::OffsetTerms() {
  LinearForm f;
  while (IsPunct("+") || IsPunct("-")) {
    bool minus = Next().text == "-";
    LinearForm t = Term();
    if (minus) {
      f -= t;
    } else {
      f += t;
    }
  }
  return f;
}

void Parser::ParseComparison(ResilienceCondition& rc) {
  Comparison c;
  c.lhs = LinForm();
  const Token& op = Peek();
  static const std::pair<const char*, CmpOp> kOps[] = {
      {"<", CmpOp::kLess},      {"<=", CmpOp::kLessEq},
      {"==", CmpOp::kEqual},    {">=", CmpOp::kGreaterEq},
      {">", CmpOp::kGreater}};
  bool found = false;
  for (const auto& [sym, cmp] : kOps) {
    if (IsPunct(sym)) {
      c.op = cmp;
      found = true;
      break;
    }
  }
  if (!found) Fail(op, "expected a comparison operator but found " + Describe(op));
  Next();
  c.rhs = LinForm();
  rc.conjuncts.push_back(std::move(c));
}

std::size_t Parser::Status(const Token& tok) {
  auto s = m_.decls.StatusIndex(tok.text);
  if (!s) Fail(tok, "unknown status value '" + tok.text + "'");
  return *s;
}

VarRef Parser::Variable(const Token& tok) {
  auto v = m_.decls.Variable(tok.text);
  if (!v) Fail(tok, "unknown variable '" + tok.text + "'");
  return *v;
}

void Parser::Statement() {
  const Token& kw = Peek();
  if (kw.kind != Token::Kind::kIdent) {
    Fail(kw, "expected a statement but found " + Describe(kw));
  }
  const std::string word = kw.text;
  if (word == "model") {
    Next();
    if (have_model_) Report(kw, "duplicate 'model' statement");
    m_.name = ExpectIdent("model name").text;
    Expect(";");
    have_model_ = true;
  } else if (word == "param") {
    Next();
    for (const Token& t : NameList("parameter name")) {
      DeclareName(t);
      m_.decls.params.push_back(t.text);
    }
  } else if (word == "resilience") {
    Next();
    if (IsWord("true")) {
      Next();
    } else {
      ParseComparison(m_.resilience);
      while (Accept("&&")) ParseComparison(m_.resilience);
    }
    Expect(";");
  } else if (word == "size") {
    Next();
    if (have_size_) Report(kw, "duplicate 'size' statement");
    m_.size = LinForm();
    Expect(";");
    have_size_ = true;
  } else if (word == "status") {
    Next();
    if (have_status_) Report(kw, "duplicate 'status' statement");
    for (const Token& t : NameList("status value")) {
      DeclareName(t);
      m_.decls.statuses.push_back(t.text);
    }
    have_status_ = true;
  } else if (word == "init") {
    Next();
    for (const Token& t : NameList("status value")) {
      std::size_t s = Status(t);
      if (std::find(m_.decls.initial_statuses.begin(),
                    m_.decls.initial_statuses.end(),
                    s) != m_.decls.initial_statuses.end()) {
        Report(t, "duplicate initial status '" + t.text + "'");
      }
      m_.decls.initial_statuses.push_back(s);
    }
    have_init_ = true;
  } else if (word == "local" || word == "shared") {
    Next();
    for (const Token& t : NameList("variable name")) {
      DeclareName(t);
      (word == "local" ? m_.decls.locals : m_.decls.shareds).push_back(t.text);
    }
  } else if (word == "step") {
    Next();
    if (have_step_) Report(kw, "duplicate 'step' block");
    Step();
    have_step_ = true;
  } else if (word == "unfair") {
    Next();
    const Token& name = ExpectIdent("unfairness name");
    if (m_.FindUnfairness(name.text)) {
      Report(name, "duplicate unfairness '" + name.text + "'");
    }
    Expect(":");
    ltl::Formula f = FormulaImpl();
    Expect(";");
    m_.unfairness.push_back({name.text, std::move(f)});
  } else if (word == "spec") {
    Next();
    const Token& name = ExpectIdent("specification name");
    if (m_.FindSpec(name.text)) {
      Report(name, "duplicate spec '" + name.text + "'");
    }
    std::optional<std::string> unless;
    if (IsWord("unless")) {
      Next();
      const Token& u = ExpectIdent("unfairness name");
      unless = u.text;
      unless_refs_.push_back({u.text, u});
    }
    Expect(":");
    ltl::Formula f = FormulaImpl();
    Expect(";");
    m_.specs.push_back({name.text, std::move(f), unless});
  } else {
    Fail(kw, "unknown statement '" + word + "'");
  }
}

void Parser::Step() {
  Expect("{");
  while (!IsPunct("}")) {
    if (Peek().kind == Token::Kind::kEnd) Fail(Peek(), "unterminated step block");
    try {
      EdgeStmt();
    } catch (const SyntaxError& e) {
      diags_.push_back(e.diag);
      SkipPastSemicolon();
    }
  }
  Expect("}");
  Accept(";");
}

void Parser::EdgeStmt() {
  const Token& start = Peek();
  ExpectWord("from");
  const Token& from = ExpectIdent("location name");
  ExpectWord("to");
  const Token& to = ExpectIdent("location name");
  Expect(":");
  Op op = ParseOp();
  Expect(";");

  auto loc = [&](const Token& t) {
    auto idx = m_.cfa.LocationIndex(t.text);
    if (idx) return *idx;
    m_.cfa.locations.push_back(t.text);
    return m_.cfa.locations.size() - 1;
  };
  Edge e{loc(from), loc(to), std::move(op)};
  if (std::find(m_.cfa.edges.begin(), m_.cfa.edges.end(), e) !=
      m_.cfa.edges.end()) {
    Report(start, "duplicate edge from '" + from.text + "' to '" + to.text +
                      "'");
    return;
  }
  m_.cfa.edges.push_back(std::move(e));
  edge_tokens_.push_back(start);
}

Op Parser::ParseOp() {
  const Token& kw = Peek();
  if (IsWord("when")) {
    Next();
    return GuardOp{GuardOr()};
  }
  if (IsWord("set")) {
    Next();
    ExpectWord("sv");
    Expect("=");
    return SetStatusOp{Status(ExpectIdent("status value"))};
  }
  if (IsWord("inc")) {
    Next();
    return IncOp{Variable(ExpectIdent("variable name"))};
  }
  if (IsWord("pick")) {
    Next();
    PickOp p;
    p.target = Variable(ExpectIdent("variable name"));
    ExpectWord("where");
    p.cond.atoms.push_back(ParsePickAtom());
    while (Accept("&&")) p.cond.atoms.push_back(ParsePickAtom());
    if (!p.cond.HasUpperBound()) {
      Report(kw, "unbounded nondeterministic choice: pick needs an atom "
                 "'eps <= var + ...'");
    }
    return p;
  }
  Fail(kw, "expected an operation (when, set, inc, pick) but found " +
               Describe(kw));
}

GuardExpr Parser::GuardOr() {
  GuardExpr g = GuardAnd();
  while (Accept("||")) {
    // a || b  ==  !(!a && !b); the grammar only has conjunction and negation.
    GuardExpr rhs = GuardAnd();
    g = GuardExpr::Not(
        GuardExpr::And(GuardExpr::Not(std::move(g)),
                       GuardExpr::Not(std::move(rhs))));
  }
  return g;
}

GuardExpr Parser::GuardAnd() {
  GuardExpr g = GuardUnary();
  while (Accept("&&")) g = GuardExpr::And(std::move(g), GuardUnary());
  return g;
}

GuardExpr Parser::GuardUnary() {
  if (Accept("!")) return GuardExpr::Not(GuardUnary());
  if (Accept("(")) {
    GuardExpr g = GuardOr();
    Expect(")");
    return g;
  }
  if (IsWord("sv")) {
    Next();
    bool negate = false;
    if (Accept("!=")) {
      negate = true;
    } else {
      Expect("==");
    }
    GuardExpr g = GuardExpr::StatusIs(Status(ExpectIdent("status value")));
    return negate ? GuardExpr::Not(std::move(g)) : g;
  }
  LinearForm threshold = LinForm();
  Expect("<=");
  VarRef v = Variable(ExpectIdent("variable name"));
  return GuardExpr::Threshold(std::move(threshold), v);
}

PickAtom Parser::ParsePickAtom() {
  auto side = [&](std::optional<VarRef>& cv, LinearForm& off) {
    const Token& t = ExpectIdent("variable or 'eps'");
    if (t.text != "eps") cv = Variable(t);
    off = OffsetTerms();
  };
  PickAtom a;
  LinearForm lhs_off, rhs_off;
  side(a.lhs, lhs_off);
  Expect("<=");
  side(a.rhs, rhs_off);
  a.offset = rhs_off - lhs_off;
  return a;
}

ltl::Formula Parser::FormulaImpl() {
  const Token& start = Peek();
  ltl::Formula lhs = FormulaOr();
  if (Accept("->")) {
    if (!lhs.IsLiteral()) {
      Fail(start, "the premise of '->' must be an atomic proposition or its "
                  "negation");
    }
    ltl::Formula rhs = FormulaImpl();
    return ltl::Formula::Or(ltl::NegateToNnf(lhs), std::move(rhs));
  }
  return lhs;
}

ltl::Formula Parser::FormulaOr() {
  ltl::Formula f = FormulaAnd();
  while (Accept("||")) f = ltl::Formula::Or(std::move(f), FormulaAnd());
  return f;
}

ltl::Formula Parser::FormulaAnd() {
  ltl::Formula f = FormulaUntil();
  while (Accept("&&")) f = ltl::Formula::And(std::move(f), FormulaUntil());
  return f;
}

ltl::Formula Parser::FormulaUntil() {
  ltl::Formula f = FormulaUnary();
  if (IsWord("U")) {
    Next();
    return ltl::Formula::Until(std::move(f), FormulaUntil());
  }
  return f;
}

ltl::Formula Parser::FormulaUnary() {
  if (IsWord("G")) {
    Next();
    return ltl::Formula::Globally(FormulaUnary());
  }
  if (IsWord("F")) {
    Next();
    return ltl::Formula::Finally(FormulaUnary());
  }
  if (IsPunct("!")) {
    const Token& bang = Next();
    ltl::Formula inner = FormulaUnary();
    if (!inner.IsLiteral()) {
      Fail(bang, "negation only applies to atomic propositions");
    }
    return ltl::NegateToNnf(inner);
  }
  if (Accept("(")) {
    ltl::Formula f = FormulaImpl();
    Expect(")");
    return f;
  }
  return FormulaAtom();
}

ltl::Formula Parser::FormulaAtom() {
  const Token& q = Peek();
  if (!IsWord("all") && !IsWord("some")) {
    Fail(q, "expected all(...) or some(...) but found " + Describe(q));
  }
  const bool forall = Next().text == "all";
  Expect("(");
  AtomicProp prop;
  if (IsWord("sv")) {
    Next();
    bool equal = true;
    if (Accept("!=")) {
      equal = false;
    } else {
      Expect("==");
    }
    std::size_t s = Status(ExpectIdent("status value"));
    prop = forall ? AtomicProp::ForallStatus(s, equal)
                  : AtomicProp::ExistsStatus(s, equal);
  } else {
    if (forall) {
      Fail(q, "data comparisons are only available as some(x + c < y)");
    }
    VarRef x = Variable(ExpectIdent("variable name"));
    LinearForm lhs_off = OffsetTerms();
    Expect("<");
    VarRef y = Variable(ExpectIdent("variable name"));
    LinearForm rhs_off = OffsetTerms();
    prop = AtomicProp::ExistsLess(x, lhs_off - rhs_off, y);
  }
  Expect(")");
  return ltl::Formula::Lit(m_.InternAtom(prop));
}

void RenumberAtoms(ltl::Formula& f, std::vector<std::size_t>& map,
                   std::vector<std::size_t>& order) {
  if (f.IsLiteral()) {
    if (map[f.atom] == static_cast<std::size_t>(-1)) {
      map[f.atom] = order.size();
      order.push_back(f.atom);
    }
    f.atom = map[f.atom];
    return;
  }
  for (auto& c : f.children) RenumberAtoms(c, map, order);
}

void Parser::Finish() {
  const Token& end = Peek();
  if (!have_model_) Report(end, "missing 'model' statement");
  if (!have_size_) Report(end, "missing 'size' statement");
  if (!have_status_) Report(end, "missing 'status' statement");
  if (!have_init_ || m_.decls.initial_statuses.empty()) {
    Report(end, "missing 'init' statement");
  }
  if (!have_step_) Report(end, "missing 'step' block");

  for (const auto& [name, tok] : unless_refs_) {
    if (!m_.FindUnfairness(name)) {
      Report(tok, "spec refers to undeclared unfairness '" + name + "'");
    }
  }

  if (have_step_) {
    auto qi = m_.cfa.LocationIndex("qI");
    auto qf = m_.cfa.LocationIndex("qF");
    if (!qi) Report(end, "step block has no initial location 'qI'");
    if (!qf) Report(end, "step block has no final location 'qF'");
    if (qi && qf) {
      m_.cfa.initial = *qi;
      m_.cfa.final = *qf;
      for (const auto& d : ValidateCfa(m_.cfa, m_.decls)) {
        if (d.edge) {
          const Token& t = edge_tokens_[*d.edge];
          Report(t, d.message);
        } else {
          Report(end, d.message);
        }
      }
    }
  }

  // Atoms are numbered by first use, unfairness formulas before specs, which
  // is also the order PrintModel emits them in.
  std::vector<std::size_t> map(m_.atoms.size(), static_cast<std::size_t>(-1));
  std::vector<std::size_t> order;
  for (auto& u : m_.unfairness) RenumberAtoms(u.formula, map, order);
  for (auto& s : m_.specs) RenumberAtoms(s.formula, map, order);
  std::vector<AtomicProp> atoms;
  for (std::size_t old : order) atoms.push_back(m_.atoms[old]);
  m_.atoms = std::move(atoms);
}

std::optional<ModelDef> Parser::Run() {
  while (Peek().kind != Token::Kind::kEnd) {
    try {
      Statement();
    } catch (const SyntaxError& e) {
      diags_.push_back(e.diag);
      SkipPastSemicolon();
      if (IsPunct("}")) Next();
    }
  }
  Finish();
  if (!diags_.empty()) return std::nullopt;
  return std::move(m_);
}

std::string OffsetSuffix(const LinearForm& off) {
  std::ostringstream os;
  for (const auto& [p, c] : off.coefficients()) {
    std::int64_t mag = c < 0 ? -c : c;
    os << (c < 0 ? " - " : " + ");
    if (mag != 1) os << mag << "*";
    os << p;
  }
  if (off.constant() != 0) {
    os << (off.constant() < 0 ? " - " : " + ")
       << (off.constant() < 0 ? -off.constant() : off.constant());
  }
  return os.str();
}

std::string PrintGuard(const GuardExpr& g, const Declarations& d) {
  auto paren = [&](const GuardExpr& c) {
    return IsGuardAtom(c) ? PrintGuard(c, d) : "(" + PrintGuard(c, d) + ")";
  };
  switch (g.kind) {
    case GuardExpr::Kind::kStatusIs:
      return "sv == " + d.statuses.at(g.status);
    case GuardExpr::Kind::kThreshold:
      return g.threshold.ToString() + " <= " + d.VarName(g.var);
    case GuardExpr::Kind::kAnd:
      return paren(g.children[0]) + " && " + paren(g.children[1]);
    case GuardExpr::Kind::kNot:
      if (IsOrGuard(g)) {
        const GuardExpr& a = g.children[0].children[0].children[0];
        const GuardExpr& b = g.children[0].children[1].children[0];
        return "(" + paren(a) + " || " + paren(b) + ")";
      }
      if (IsOrGuard(g.children[0])) return "!" + PrintGuard(g.children[0], d);
      return "!(" + PrintGuard(g.children[0], d) + ")";
  }
  return "?";
}

std::string PrintOp(const Op& op, const Declarations& d) {
  if (auto* g = std::get_if<GuardOp>(&op)) {
    return "when " + PrintGuard(g->expr, d);
  }
  if (auto* s = std::get_if<SetStatusOp>(&op)) {
    return "set sv = " + d.statuses.at(s->status);
  }
  if (auto* i = std::get_if<IncOp>(&op)) return "inc " + d.VarName(i->var);
  const auto& p = std::get<PickOp>(op);
  std::string s = "pick " + d.VarName(p.target) + " where ";
  for (std::size_t k = 0; k < p.cond.atoms.size(); ++k) {
    const PickAtom& a = p.cond.atoms[k];
    if (k) s += " && ";
    s += (a.lhs ? d.VarName(*a.lhs) : "eps");
    s += " <= ";
    s += (a.rhs ? d.VarName(*a.rhs) : "eps");
    s += OffsetSuffix(a.offset);
  }
  return s;
}

std::string Join(const std::vector<std::string>& names) {
  std::string s;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) s += ", ";
    s += names[i];
  }
  return s;
}

}  // namespace

ParseResult ParseModel(std::string_view text) {
  ParseResult result;
  auto tokens = Lex(text, result.diagnostics);
  Parser parser(std::move(tokens), result.diagnostics);
  result.model = parser.Run();
  std::stable_sort(result.diagnostics.begin(), result.diagnostics.end(),
                   [](const Diagnostic& a, const Diagnostic& b) {
                     return std::tie(a.line, a.column) <
                            std::tie(b.line, b.column);
                   });
  return result;
}

ParamEnv ParseParamsBinding(std::string_view text, const ModelDef& model) {
  ParamEnv env;
  std::size_t start = 0;
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
      s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
      s.remove_suffix(1);
    return s;
  };
  while (start <= text.size() && !trim(text).empty()) {
    std::size_t comma = text.find(',', start);
    std::string_view item = trim(text.substr(
        start, comma == std::string_view::npos ? std::string_view::npos
                                               : comma - start));
    std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw ModelError("malformed parameter binding '" + std::string(item) +
                       "' (expected name=value)");
    }
    std::string name(trim(item.substr(0, eq)));
    std::string_view value = trim(item.substr(eq + 1));
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (value.empty() || ec != std::errc() || p != value.data() + value.size()) {
      throw ModelError("non-numeric value for parameter '" + name + "': '" +
                       std::string(value) + "'");
    }
    if (!model.decls.IsParam(name)) {
      throw ModelError("unknown parameter '" + name + "'");
    }
    if (env.Has(name)) {
      throw ModelError("duplicate parameter '" + name + "'");
    }
    env.Bind(name, v);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  for (const auto& p : model.decls.params) {
    if (!env.Has(p)) throw ModelError("parameter '" + p + "' is unbound");
  }
  return env;
}

std::string PrintFormula(const ltl::Formula& f, const ModelDef& model) {
  using K = ltl::Formula::Kind;
  switch (f.kind) {
    case K::kLiteral:
      return (f.negated ? "!" : "") + model.AtomName(f.atom);
    case K::kAnd:
      return "(" + PrintFormula(f.children[0], model) + " && " +
             PrintFormula(f.children[1], model) + ")";
    case K::kOr:
      return "(" + PrintFormula(f.children[0], model) + " || " +
             PrintFormula(f.children[1], model) + ")";
    case K::kUntil:
      return "(" + PrintFormula(f.children[0], model) + " U " +
             PrintFormula(f.children[1], model) + ")";
    case K::kRelease:
      return "(" + PrintFormula(f.children[0], model) + " R " +
             PrintFormula(f.children[1], model) + ")";
    case K::kFinally:
      return "F " + PrintFormula(f.children[0], model);
    case K::kGlobally:
      return "G " + PrintFormula(f.children[0], model);
  }
  return "?";
}

std::string PrintModel(const ModelDef& m) {
  std::ostringstream os;
  const Declarations& d = m.decls;
  os << "model " << m.name << ";\n";
  if (!d.params.empty()) os << "param " << Join(d.params) << ";\n";
  os << "resilience " << m.resilience.ToString() << ";\n";
  os << "size " << m.size.ToString() << ";\n";
  os << "status " << Join(d.statuses) << ";\n";
  std::vector<std::string> init;
  for (std::size_t s : d.initial_statuses) init.push_back(d.statuses.at(s));
  os << "init " << Join(init) << ";\n";
  if (!d.locals.empty()) os << "local " << Join(d.locals) << ";\n";
  if (!d.shareds.empty()) os << "shared " << Join(d.shareds) << ";\n";
  os << "\nstep {\n";
  for (const Edge& e : m.cfa.edges) {
    os << "  from " << m.cfa.locations.at(e.from) << " to "
       << m.cfa.locations.at(e.to) << " : " << PrintOp(e.op, d) << ";\n";
  }
  os << "}\n\n";
  for (const auto& u : m.unfairness) {
    os << "unfair " << u.name << ": " << PrintFormula(u.formula, m) << ";\n";
  }
  for (const auto& s : m.specs) {
    os << "spec " << s.name;
    if (s.unless) os << " unless " << *s.unless;
    os << ": " << PrintFormula(s.formula, m) << ";\n";
  }
  return os.str();
}

}  // namespace tgmc
