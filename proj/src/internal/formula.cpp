#include "flasque/internal/formula.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "flasque/errors.hpp"

namespace flasque {

namespace {

FormulaPtr make(Formula f) { return std::make_shared<const Formula>(std::move(f)); }

}  // namespace

FormulaPtr Formula::truth() { return make(Formula{}); }
FormulaPtr Formula::falsity() {
  Formula f;
  f.kind = Kind::False;
  return make(std::move(f));
}
FormulaPtr Formula::eq(std::string a, std::string b) {
  Formula f;
  f.kind = Kind::Eq;
  f.terms = {std::move(a), std::move(b)};
  return make(std::move(f));
}
FormulaPtr Formula::in(std::string a, std::string b) {
  Formula f;
  f.kind = Kind::In;
  f.terms = {std::move(a), std::move(b)};
  return make(std::move(f));
}
FormulaPtr Formula::rel(std::string name, std::vector<std::string> args) {
  Formula f;
  f.kind = Kind::Rel;
  f.name = std::move(name);
  f.terms = std::move(args);
  return make(std::move(f));
}
FormulaPtr Formula::conj(std::vector<FormulaPtr> parts) {
  Formula f;
  f.kind = Kind::And;
  f.sub = std::move(parts);
  return make(std::move(f));
}
FormulaPtr Formula::disj(std::vector<FormulaPtr> parts) {
  Formula f;
  f.kind = Kind::Or;
  f.sub = std::move(parts);
  return make(std::move(f));
}
FormulaPtr Formula::imp(FormulaPtr a, FormulaPtr b) {
  Formula f;
  f.kind = Kind::Imp;
  f.sub = {std::move(a), std::move(b)};
  return make(std::move(f));
}
FormulaPtr Formula::neg(FormulaPtr a) {
  Formula f;
  f.kind = Kind::Not;
  f.sub = {std::move(a)};
  return make(std::move(f));
}
FormulaPtr Formula::forall(std::string var, TypeExpr type, FormulaPtr body) {
  Formula f;
  f.kind = Kind::Forall;
  f.name = std::move(var);
  f.type = std::move(type);
  f.sub = {std::move(body)};
  return make(std::move(f));
}
FormulaPtr Formula::exists(std::string var, TypeExpr type, FormulaPtr body) {
  Formula f;
  f.kind = Kind::Exists;
  f.name = std::move(var);
  f.type = std::move(type);
  f.sub = {std::move(body)};
  return make(std::move(f));
}

std::string to_sexpr(const Formula& f) {
  using K = Formula::Kind;
  auto list = [](const std::string& head, const std::vector<FormulaPtr>& parts) {
    std::string s = "(" + head;
    for (const auto& p : parts) s += " " + to_sexpr(*p);
    return s + ")";
  };
  switch (f.kind) {
    case K::True: return "true";
    case K::False: return "false";
    case K::Eq: return "(eq " + f.terms[0] + " " + f.terms[1] + ")";
    case K::In: return "(in " + f.terms[0] + " " + f.terms[1] + ")";
    case K::Rel: {
      if (f.terms.empty()) return f.name;
      std::string s = "(rel " + f.name;
      for (const auto& t : f.terms) s += " " + t;
      return s + ")";
    }
    case K::And: return list("and", f.sub);
    case K::Or: return list("or", f.sub);
    case K::Imp: return list("imp", f.sub);
    case K::Not: return list("not", f.sub);
    case K::Forall:
    case K::Exists:
      return std::string("(") + (f.kind == K::Forall ? "forall" : "exists") + " (" + f.name + " " +
             f.type.to_string() + ") " + to_sexpr(*f.sub[0]) + ")";
  }
  return "";
}

namespace {

struct Token {
  enum class Kind { Open, Close, Atom, End } kind;
  std::string text;
  int line;
  int column;
};

class Parser {
 public:
  explicit Parser(const std::string& text) { tokenize(text); }

  FormulaPtr parse_top() {
    FormulaPtr f = formula();
    if (peek().kind != Token::Kind::End) fail(peek(), "unexpected input after the formula");
    return f;
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;

  [[noreturn]] static void fail(const Token& t, const std::string& msg) {
    throw InputError("line " + std::to_string(t.line) + ", column " + std::to_string(t.column) + ": " + msg);
  }

  void tokenize(const std::string& s) {
    int line = 1, col = 1;
    std::size_t i = 0;
    while (i < s.size()) {
      const char c = s[i];
      if (c == '\n') {
        ++line;
        col = 1;
        ++i;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++col;
        ++i;
      } else if (c == ';') {
        while (i < s.size() && s[i] != '\n') ++i;
      } else if (c == '(' || c == ')') {
        tokens_.push_back({c == '(' ? Token::Kind::Open : Token::Kind::Close, std::string(1, c), line, col});
        ++col;
        ++i;
      } else {
        const int start = col;
        std::string atom;
        while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) && s[i] != '(' && s[i] != ')' &&
               s[i] != ';') {
          atom += s[i++];
          ++col;
        }
        tokens_.push_back({Token::Kind::Atom, atom, line, start});
      }
    }
    tokens_.push_back({Token::Kind::End, "", line, col});
  }

  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

  void expect_close() {
    const Token& t = next();
    if (t.kind != Token::Kind::Close) fail(t, "expected ')'");
  }

  std::string name() {
    const Token& t = next();
    if (t.kind != Token::Kind::Atom) fail(t, "expected a name");
    if (is_keyword(t.text)) fail(t, "'" + t.text + "' is reserved");
    return t.text;
  }

  static bool is_keyword(const std::string& s) {
    static const std::set<std::string> kw{"forall", "exists", "eq", "in", "rel", "and", "or",
                                          "imp", "not", "true", "false", "P1"};
    return kw.count(s) != 0;
  }

  TypeExpr type() {
    const Token& t = next();
    if (t.kind == Token::Kind::Atom) {
      if (is_keyword(t.text)) fail(t, "expected an object name");
      return {t.text, false};
    }
    if (t.kind != Token::Kind::Open) fail(t, "expected a sort");
    const Token& head = next();
    if (head.kind != Token::Kind::Atom || head.text != "P1") fail(head, "expected (P1 NAME)");
    TypeExpr out{name(), true};
    expect_close();
    return out;
  }

  FormulaPtr positioned(FormulaPtr f, const Token& t) {
    auto copy = std::make_shared<Formula>(*f);
    copy->line = t.line;
    copy->column = t.column;
    return copy;
  }

  FormulaPtr formula() {
    const Token& t = next();
    if (t.kind == Token::Kind::Atom) {
      if (t.text == "true") return positioned(Formula::truth(), t);
      if (t.text == "false") return positioned(Formula::falsity(), t);
      if (is_keyword(t.text)) fail(t, "'" + t.text + "' needs parentheses");
      return positioned(Formula::rel(t.text), t);
    }
    if (t.kind != Token::Kind::Open) fail(t, t.kind == Token::Kind::End ? "unexpected end of input" : "unexpected ')'");
    const Token& head = next();
    if (head.kind != Token::Kind::Atom) fail(head, "expected an operator");
    const std::string& op = head.text;
    FormulaPtr out;
    if (op == "forall" || op == "exists") {
      std::vector<std::pair<std::string, TypeExpr>> binders;
      // Every element except the last one is a binder (v T).
      while (peek().kind == Token::Kind::Open && tokens_[skip(pos_)].kind != Token::Kind::Close) {
        next();
        std::string v = name();
        TypeExpr ty = type();
        expect_close();
        binders.emplace_back(std::move(v), std::move(ty));
      }
      if (binders.empty()) fail(peek(), "expected a binder (v T)");
      FormulaPtr body = formula();
      expect_close();
      for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
        body = op == "forall" ? Formula::forall(it->first, it->second, body)
                              : Formula::exists(it->first, it->second, body);
      }
      return positioned(body, head);
    }
    if (op == "eq" || op == "in") {
      std::string a = term(), b = term();
      expect_close();
      out = op == "eq" ? Formula::eq(a, b) : Formula::in(a, b);
    } else if (op == "and" || op == "or") {
      std::vector<FormulaPtr> parts;
      while (peek().kind != Token::Kind::Close) {
        if (peek().kind == Token::Kind::End) fail(peek(), "unexpected end of input");
        parts.push_back(formula());
      }
      next();
      out = op == "and" ? Formula::conj(parts) : Formula::disj(parts);
    } else if (op == "imp") {
      FormulaPtr a = formula();
      FormulaPtr b = formula();
      expect_close();
      out = Formula::imp(a, b);
    } else if (op == "not") {
      FormulaPtr a = formula();
      expect_close();
      out = Formula::neg(a);
    } else if (op == "rel" || !is_keyword(op)) {
      std::string rname = op == "rel" ? name() : op;
      std::vector<std::string> args;
      while (peek().kind == Token::Kind::Atom) args.push_back(term());
      expect_close();
      out = Formula::rel(rname, args);
    } else {
      fail(head, "unknown operator '" + op + "'");
    }
    return positioned(out, head);
  }

  // Index just past the balanced element starting at i.
  std::size_t skip(std::size_t i) const {
    if (tokens_[i].kind != Token::Kind::Open) return std::min(i + 1, tokens_.size() - 1);
    std::size_t depth = 0;
    for (; i < tokens_.size() - 1; ++i) {
      if (tokens_[i].kind == Token::Kind::Open) ++depth;
      if (tokens_[i].kind == Token::Kind::Close && --depth == 0) return i + 1;
    }
    return i;
  }

  std::string term() {
    const Token& t = next();
    if (t.kind != Token::Kind::Atom || is_keyword(t.text)) fail(t, "expected a variable");
    return t.text;
  }
};

}  // namespace

FormulaPtr parse_formula(const std::string& text) { return Parser(text).parse_top(); }

FormulaPtr flabby_formula(const std::string& object) {
  return Formula::forall(
      "K", {object, true},
      Formula::exists("x", {object, false},
                      Formula::forall("y", {object, false}, Formula::imp(Formula::in("y", "K"), Formula::eq("y", "x")))));
}

}  // namespace flasque
