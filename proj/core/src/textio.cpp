#include "tropmod/textio.hpp"

#include <cctype>
#include <set>

namespace tropmod {

bool is_allowed_variable(const std::string& name) {
  static const std::set<std::string> allowed{"x", "y", "z", "v", "u", "s", "x1", "x2", "x3", "x4",
                                             "z1", "z2", "z3", "z4"};
  return allowed.count(name) > 0;
}

namespace {

struct Token {
  enum Kind { Number, Ident, Op, End } kind;
  std::string text;
  size_t pos;
};

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace((unsigned char)c)) {
      ++i;
    } else if (std::isdigit((unsigned char)c)) {
      size_t j = i;
      while (j < s.size() && std::isdigit((unsigned char)s[j])) ++j;
      out.push_back({Token::Number, s.substr(i, j - i), i});
      i = j;
    } else if (std::isalpha((unsigned char)c)) {
      size_t j = i;
      while (j < s.size() && (std::isalnum((unsigned char)s[j]) || s[j] == '_')) ++j;
      out.push_back({Token::Ident, s.substr(i, j - i), i});
      i = j;
    } else if (std::string("+-*/^()").find(c) != std::string::npos) {
      out.push_back({Token::Op, std::string(1, c), i});
      ++i;
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
  }
  out.push_back({Token::End, "", s.size()});
  return out;
}

class Parser {
 public:
  Parser(const std::string& text, std::vector<std::string> vars, ExtensionHandle ext)
      : toks_(tokenize(text)), vars_(std::move(vars)), ext_(std::move(ext)) {}

  PlanePoly parse() {
    PlanePoly p = expression();
    if (peek().kind != Token::End) throw ParseError("unexpected '" + peek().text + "'", peek().pos);
    return p;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  Token take() { return toks_[i_++]; }
  bool accept(const std::string& op) {
    if (peek().kind == Token::Op && peek().text == op) {
      ++i_;
      return true;
    }
    return false;
  }
  void expect(const std::string& op) {
    if (!accept(op)) throw ParseError("expected '" + op + "'", peek().pos);
  }

  PlanePoly constant(const Puiseux& c) const { return PlanePoly::constant(vars_, c); }

  PlanePoly expression() {
    PlanePoly acc(vars_);
    bool first = true;
    while (true) {
      bool neg = false;
      if (accept("+")) {
      } else if (accept("-")) {
        neg = true;
      } else if (!first) {
        break;
      }
      PlanePoly t = term();
      acc += neg ? -t : t;
      first = false;
      if (peek().kind != Token::Op || (peek().text != "+" && peek().text != "-")) break;
    }
    return acc;
  }

  PlanePoly term() {
    PlanePoly acc = power();
    while (true) {
      if (accept("*")) {
        acc *= power();
      } else if (peek().kind == Token::Op && peek().text == "/") {
        size_t pos = take().pos;
        PlanePoly d = power();
        if (d.size() != 1 || d.terms().begin()->first != Exponent(vars_.size(), 0) ||
            !d.terms().begin()->second.is_single_term())
          throw ParseError("division only by a nonzero constant monomial", pos);
        Puiseux dc = d.terms().begin()->second;
        PlanePoly q(vars_);
        for (auto& [e, c] : acc.terms()) q.add_term(e, c.divided_by(dc));
        acc = q;
      } else {
        break;
      }
    }
    return acc;
  }

  long small_int(bool allow_negative) {
    bool neg = false;
    if (allow_negative && accept("-")) neg = true;
    if (peek().kind != Token::Number) throw ParseError("expected an integer exponent", peek().pos);
    auto tok = take();
    if (tok.text.size() > 6) throw ParseError("exponent too large", tok.pos);
    long v = std::stol(tok.text);
    return neg ? -v : v;
  }

  Rational t_exponent() {
    if (accept("(")) {
      bool neg = accept("-");
      if (peek().kind != Token::Number) throw ParseError("expected a rational exponent", peek().pos);
      std::string num = take().text;
      std::string den = "1";
      if (accept("/")) {
        if (peek().kind != Token::Number) throw ParseError("expected a denominator", peek().pos);
        den = take().text;
      }
      expect(")");
      if (Integer(den) == 0) throw ParseError("zero denominator", peek().pos);
      Rational q{Integer(num), Integer(den)};
      q.canonicalize();
      return neg ? Rational(-q) : q;
    }
    if (peek().kind == Token::Op && peek().text == "-") {
      take();
      if (peek().kind != Token::Number) throw ParseError("expected an exponent", peek().pos);
      return -Rational(Integer(take().text));
    }
    if (peek().kind != Token::Number) {
      throw ParseError("non-rational exponent", peek().pos);
    }
    return Rational(Integer(take().text));
  }

  PlanePoly power() {
    const Token& tk = peek();
    if (tk.kind == Token::Ident && tk.text == "t") {
      take();
      Rational q = 1;
      if (accept("^")) q = t_exponent();
      return constant(Puiseux::t_power(q));
    }
    PlanePoly base = atom();
    if (accept("^")) {
      size_t pos = peek().pos;
      long k = small_int(false);
      if (k < 0) throw ParseError("negative exponent", pos);
      base = base.pow((int)k);
    }
    return base;
  }

  PlanePoly atom() {
    Token tk = take();
    if (tk.kind == Token::Number) {
      return constant(Puiseux(Rational(Integer(tk.text))));
    }
    if (tk.kind == Token::Ident) {
      if (ext_ && tk.text == ext_->name()) return constant(Puiseux(FieldElem::generator(ext_)));
      for (size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == tk.text) return PlanePoly::variable(vars_, i);
      throw ParseError("unknown variable '" + tk.text + "'", tk.pos);
    }
    if (tk.kind == Token::Op && tk.text == "(") {
      PlanePoly e = expression();
      expect(")");
      return e;
    }
    throw ParseError(tk.kind == Token::End ? "unexpected end of input" : "unexpected '" + tk.text + "'",
                     tk.pos);
  }

  std::vector<Token> toks_;
  size_t i_ = 0;
  std::vector<std::string> vars_;
  ExtensionHandle ext_;
};

}  // namespace

PlanePoly parse_poly(const std::string& text, const ParseOptions& opts) {
  std::vector<std::string> vars = opts.vars;
  if (vars.empty()) {
    for (auto& tk : tokenize(text)) {
      if (tk.kind != Token::Ident || tk.text == "t") continue;
      if (opts.ext && tk.text == opts.ext->name()) continue;
      if (!is_allowed_variable(tk.text)) throw ParseError("unknown variable '" + tk.text + "'", tk.pos);
      if (std::find(vars.begin(), vars.end(), tk.text) == vars.end()) vars.push_back(tk.text);
    }
    for (const char* d : {"x", "y"}) {
      if (vars.size() >= opts.min_vars) break;
      if (std::find(vars.begin(), vars.end(), d) == vars.end()) vars.push_back(d);
    }
  }
  return Parser(text, vars, opts.ext).parse();
}

Puiseux parse_series(const std::string& text, const ExtensionHandle& ext) {
  ParseOptions o;
  o.vars = {"x"};
  o.ext = ext;
  PlanePoly p = parse_poly(text, o);
  if (p.is_zero()) return Puiseux();
  if (p.size() != 1 || p.terms().begin()->first != Exponent{0})
    throw ParseError("expected a constant series", 0);
  return p.terms().begin()->second;
}

ExtensionHandle parse_adjoin(const std::string& text) {
  std::string name, body = text;
  auto colon = text.find(':');
  if (colon != std::string::npos) {
    name = text.substr(0, colon);
    body = text.substr(colon + 1);
    name.erase(0, name.find_first_not_of(" \t"));
    name.erase(name.find_last_not_of(" \t") + 1);
  } else {
    for (auto& tk : tokenize(text))
      if (tk.kind == Token::Ident && tk.text != "t") {
        name = tk.text;
        break;
      }
  }
  if (name.empty()) throw ParseError("adjoin: missing generator name", 0);
  ParseOptions o;
  o.vars = {name};
  o.min_vars = 1;
  PlanePoly p = parse_poly(body, o);
  if (p.degree_in(0) != 2) throw ParseError("adjoin: expected a quadratic", 0);
  auto coef = [&](int k) -> Rational {
    Puiseux c = p.coefficient(Exponent{k});
    if (c.is_zero()) return 0;
    if (!c.is_single_term() || sgn(c.valuation()) != 0 || !c.init().is_rational())
      throw ParseError("adjoin: coefficients must be rational", 0);
    return c.init().rational_part();
  };
  if (coef(2) != 1) throw ParseError("adjoin: polynomial must be monic", 0);
  return make_extension(coef(1), coef(0), name);
}

}  // namespace tropmod
