#include "pind/parser.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace pind {

namespace {

std::string describe(std::size_t line, std::size_t column,
                     const std::vector<std::string>& expected,
                     const std::string& found) {
  std::ostringstream os;
  os << "line " << line << ", column " << column << ": expected ";
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i) os << (i + 1 == expected.size() ? " or " : ", ");
    os << expected[i];
  }
  os << " but found " << found;
  return os.str();
}

std::string at(std::size_t line, std::size_t column, const std::string& msg) {
  std::ostringstream os;
  os << "line " << line << ", column " << column << ": " << msg;
  return os.str();
}

}  // namespace

ParseError::ParseError(std::size_t line, std::size_t column,
                       std::vector<std::string> expected, const std::string& found)
    : std::runtime_error(describe(line, column, expected, found)),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error(at(line, column, message)), line_(line), column_(column) {}

std::string DefinitionClause::to_string() const {
  return head.to_string() + " := " + body.to_string() + ".";
}

std::string Program::to_string() const {
  std::ostringstream os;
  for (const auto& [pred, level] : declared_levels) {
    os << "%level " << pred << ' ' << level << '\n';
  }
  for (const auto& c : clauses) os << c.to_string() << '\n';
  return os.str();
}

namespace {

enum class Tok { Ident, Var, Num, LParen, RParen, Comma, Dot, Amp, Plus, Star,
                 Define, Arrow, Level, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::string token_name(Tok k) {
  switch (k) {
    case Tok::Ident: return "identifier";
    case Tok::Var: return "variable";
    case Tok::Num: return "number";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::Amp: return "'&'";
    case Tok::Plus: return "'+'";
    case Tok::Star: return "'*'";
    case Tok::Define: return "':='";
    case Tok::Arrow: return "'=>'";
    case Tok::Level: return "'%level'";
    case Tok::End: return "end of input";
  }
  return "?";
}

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto ident_char = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    std::size_t l = line, cl = col;
    if (c == '%') {
      if (src.substr(i, 6) == "%level" &&
          (i + 6 == src.size() || !ident_char(src[i + 6]))) {
        out.push_back({Tok::Level, "%level", l, cl});
        advance(6);
        continue;
      }
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Tok::Num, std::string(src.substr(i, j - i)), l, cl});
      advance(j - i);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      std::string word(src.substr(i, j - i));
      Tok k = (std::isupper(static_cast<unsigned char>(c)) || c == '_') ? Tok::Var
                                                                       : Tok::Ident;
      out.push_back({k, word, l, cl});
      advance(j - i);
      continue;
    }
    if (src.substr(i, 2) == ":=") {
      out.push_back({Tok::Define, ":=", l, cl});
      advance(2);
      continue;
    }
    if (src.substr(i, 2) == "=>") {
      out.push_back({Tok::Arrow, "=>", l, cl});
      advance(2);
      continue;
    }
    Tok k;
    switch (c) {
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case ',': k = Tok::Comma; break;
      case '.': k = Tok::Dot; break;
      case '&': k = Tok::Amp; break;
      case '+': k = Tok::Plus; break;
      case '*': k = Tok::Star; break;
      default:
        throw ParseError(l, cl, std::string("unexpected character '") + c + "'");
    }
    out.push_back({k, std::string(1, c), l, cl});
    advance(1);
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(tokenize(src)) {}

  Program program() {
    Program p;
    while (!at(Tok::End)) {
      if (at(Tok::Level)) {
        next();
        Token pred = expect(Tok::Ident);
        Token lvl = expect(Tok::Num);
        if (lvl.text != "0" && lvl.text != "1") {
          throw ParseError(lvl.line, lvl.column, "level must be 0 or 1");
        }
        p.declared_levels[pred.text] = lvl.text == "1" ? 1 : 0;
        continue;
      }
      p.clauses.push_back(clause());
    }
    return p;
  }

  Formula goal() {
    begin_scope(true);
    Formula f = formula();
    expect_one_of({Tok::End, Tok::Dot});
    if (at(Tok::Dot)) next();
    expect(Tok::End);
    return finish_scope(f);
  }

  Term lone_term() {
    Term t = term();
    expect(Tok::End);
    return t;
  }

 private:
  DefinitionClause clause() {
    begin_scope(false);
    const Token& start = peek();
    Term head = atom_term();
    if (head.name() == "nat" || head.name() == "true" || head.name() == "false") {
      throw ParseError(start.line, start.column,
                       "'" + head.name() + "' is built in and cannot be defined");
    }
    expect(Tok::Define);
    Formula body = formula();
    expect(Tok::Dot);
    // Head variables participate in renaming; wrap them as an atom.
    Formula both = finish_scope(Formula::conj(Formula::atom(head), body));
    return DefinitionClause{both.lhs().term(), both.rhs(), start.line};
  }

  // formula := conj ['=>' formula]
  Formula formula() {
    const Token& start = peek();
    Formula lhs = conj();
    if (!at(Tok::Arrow)) return lhs;
    next();
    Formula rhs = formula();
    if (lhs.kind() == FormulaKind::Nat) {
      if (!lhs.term().is_variable()) {
        throw GrammarViolation(start.line, start.column,
                               "nat antecedent must be a variable");
      }
      if (!is_g_formula(rhs)) {
        throw GrammarViolation(start.line, start.column,
                               "the consequent of nat(x) => ... must be a G-formula");
      }
      return Formula::nat_implies(lhs.term(), rhs);
    }
    if (!is_g_formula(lhs)) {
      throw GrammarViolation(start.line, start.column,
                             "antecedent of => must be a G-formula "
                             "(no forall or =>)");
    }
    return Formula::implies(lhs, rhs);
  }

  // conj := unary ('&' unary)*
  Formula conj() {
    Formula f = unary();
    while (at(Tok::Amp)) {
      next();
      f = Formula::conj(f, unary());
    }
    return f;
  }

  Formula unary() {
    const Token& t = peek();
    if (t.kind == Tok::Ident && (t.text == "exists" || t.text == "forall")) {
      bool ex = t.text == "exists";
      next();
      std::vector<Token> names;
      names.push_back(expect(Tok::Var));
      while (at(Tok::Var)) names.push_back(next());
      expect(Tok::Dot);
      std::vector<Binder> binders;
      for (const auto& n : names) binders.push_back(push_binder(n.text));
      Formula body = formula();
      for (std::size_t k = names.size(); k-- > 0;) {
        pop_binder(names[k].text);
        body = ex ? Formula::exists(binders[k], body)
                  : Formula::forall(binders[k], body);
      }
      return body;
    }
    if (t.kind == Tok::LParen) {
      next();
      Formula f = formula();
      expect(Tok::RParen);
      return f;
    }
    if (t.kind == Tok::Ident && t.text == "true") {
      next();
      return Formula::top();
    }
    if (t.kind == Tok::Ident && t.text == "false") {
      next();
      return Formula::bot();
    }
    if (t.kind != Tok::Ident) {
      throw ParseError(t.line, t.column,
                       {"atom", "'true'", "'false'", "'exists'", "'forall'", "'('"},
                       found(t));
    }
    Term a = atom_term();
    if (a.name() == "nat") {
      if (a.args().size() != 1) {
        throw ParseError(t.line, t.column, "nat takes exactly one argument");
      }
      return Formula::nat(a.arg(0));
    }
    return Formula::atom(a);
  }

  Term atom_term() {
    Token name = expect(Tok::Ident);
    std::vector<Term> args;
    if (at(Tok::LParen)) {
      next();
      args.push_back(term());
      while (at(Tok::Comma)) {
        next();
        args.push_back(term());
      }
      expect(Tok::RParen);
    }
    return Term::compound(name.text, std::move(args));
  }

  // term := product ('+' product)*
  Term term() {
    Term t = product();
    while (at(Tok::Plus)) {
      next();
      if (at(Tok::Num) && peek().text == "1" && toks_[pos_ + 1].kind != Tok::Star) {
        next();
        t = Term::succ(t);
      } else {
        t = Term::add(t, product());
      }
    }
    return t;
  }

  Term product() {
    Term t = primary();
    while (at(Tok::Star)) {
      next();
      t = Term::mul(t, primary());
    }
    return t;
  }

  Term primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Num:
        next();
        return Term::nat(Natural(t.text));
      case Tok::Var:
        next();
        return resolve_var(t.text);
      case Tok::Ident:
        return atom_term();
      case Tok::LParen: {
        next();
        Term inner = term();
        expect(Tok::RParen);
        return inner;
      }
      default:
        throw ParseError(t.line, t.column, {"number", "variable", "identifier", "'('"},
                         found(t));
    }
  }

  // --- scoping and alpha-renaming -----------------------------------------
  //
  // Binders first receive placeholder names "#n"; once the whole clause or
  // goal is read and its free variables are known, each placeholder becomes
  // the written name when that is unambiguous, or the name plus a numeric
  // suffix otherwise.

  void begin_scope(bool from_goal) {
    scope_.clear();
    placeholders_.clear();
    from_goal_ = from_goal;
  }

  Binder push_binder(const std::string& name) {
    std::string ph = "#" + std::to_string(placeholders_.size());
    placeholders_.push_back(name);
    scope_.emplace_back(name, ph);
    return Binder{Term::var(ph), name, from_goal_, std::nullopt, std::nullopt};
  }

  void pop_binder(const std::string& name) {
    auto it = std::find_if(scope_.rbegin(), scope_.rend(),
                           [&](const auto& e) { return e.first == name; });
    scope_.erase(std::next(it).base());
  }

  Term resolve_var(const std::string& name) {
    if (name == "_") return Term::var("_G" + std::to_string(anonymous_++));
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
      if (it->first == name) return Term::var(it->second);
    }
    return Term::var(name);
  }

  Formula finish_scope(const Formula& f) {
    std::vector<Term> vars;
    collect_variables(f, vars);
    std::set<std::string> taken;
    for (const auto& v : vars) {
      if (v.name()[0] != '#') taken.insert(v.name());
    }
    std::vector<std::string> final_names;
    for (const auto& want : placeholders_) {
      std::string name = want;
      for (std::size_t n = 1; taken.count(name); ++n) name = want + std::to_string(n);
      taken.insert(name);
      final_names.push_back(name);
    }
    auto rename = [&](const Term& v) -> std::optional<Term> {
      if (v.kind() == TermKind::Var && v.name()[0] == '#') {
        return Term::var(final_names[std::stoul(v.name().substr(1))]);
      }
      return std::nullopt;
    };
    Formula out = map_terms(f, [&](const Term& t) { return map_variables(t, rename); });
    return map_binders(out, [&](const Binder& b, const std::vector<std::size_t>&) {
      Binder nb = b;
      nb.var = *rename(b.var);
      return nb;
    });
  }

  // --- token plumbing ------------------------------------------------------

  const Token& peek() const { return toks_[pos_]; }
  bool at(Tok k) const { return peek().kind == k; }
  const Token& next() { return toks_[pos_++]; }

  static std::string found(const Token& t) {
    if (t.kind == Tok::End) return "end of input";
    return "'" + t.text + "'";
  }

  Token expect(Tok k) {
    if (!at(k)) throw ParseError(peek().line, peek().column, {token_name(k)}, found(peek()));
    return next();
  }

  void expect_one_of(std::initializer_list<Tok> kinds) {
    for (Tok k : kinds) {
      if (at(k)) return;
    }
    std::vector<std::string> names;
    for (Tok k : kinds) names.push_back(token_name(k));
    throw ParseError(peek().line, peek().column, names, found(peek()));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<std::pair<std::string, std::string>> scope_;
  std::vector<std::string> placeholders_;
  bool from_goal_ = false;
  std::size_t anonymous_ = 0;
};

}  // namespace

Program parse_program(std::string_view text) { return Parser(text).program(); }

Formula parse_goal(std::string_view text) { return Parser(text).goal(); }

Term parse_term(std::string_view text) { return Parser(text).lone_term(); }

}  // namespace pind
