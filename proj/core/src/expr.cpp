#include "gengeo/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

namespace gengeo {

Expr Expr::make(Node n) { return Expr(std::make_shared<const Node>(std::move(n))); }

Expr Expr::constant(double c) {
  Node n;
  n.kind = Kind::Constant;
  n.value = c;
  return make(std::move(n));
}

Expr Expr::var(int slot) {
  if (slot < 0) throw DomainError("variable slot must be nonnegative");
  Node n;
  n.kind = Kind::Var;
  n.slot = slot;
  return make(std::move(n));
}

Expr operator+(const Expr& a, const Expr& b) {
  Expr::Node n;
  n.kind = Expr::Kind::Add;
  n.a = a.n_;
  n.b = b.n_;
  return Expr::make(std::move(n));
}

Expr operator*(const Expr& a, const Expr& b) {
  Expr::Node n;
  n.kind = Expr::Kind::Mul;
  n.a = a.n_;
  n.b = b.n_;
  return Expr::make(std::move(n));
}

Expr operator-(const Expr& a) {
  Expr::Node n;
  n.kind = Expr::Kind::Neg;
  n.a = a.n_;
  return Expr::make(std::move(n));
}

Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

Expr operator/(const Expr& a, const Expr& b) {
  Expr::Node n;
  n.kind = Expr::Kind::Div;
  n.a = a.n_;
  n.b = b.n_;
  return Expr::make(std::move(n));
}

Expr pow_int(const Expr& a, int exponent) {
  Expr::Node n;
  n.kind = Expr::Kind::PowInt;
  n.a = a.n_;
  n.exponent = exponent;
  return Expr::make(std::move(n));
}

Expr sin(const Expr& a) {
  Expr::Node n;
  n.kind = Expr::Kind::Sin;
  n.a = a.n_;
  return Expr::make(std::move(n));
}

Expr cos(const Expr& a) {
  Expr::Node n;
  n.kind = Expr::Kind::Cos;
  n.a = a.n_;
  return Expr::make(std::move(n));
}

int Expr::min_arity() const {
  if (!n_) return 0;
  const Node& n = *n_;
  int m = 0;
  if (n.kind == Kind::Var) m = n.slot + 1;
  if (n.a) m = std::max(m, Expr(n.a).min_arity());
  if (n.b) m = std::max(m, Expr(n.b).min_arity());
  return m;
}

bool Expr::same_structure(const Expr& other) const {
  if (!n_ || !other.n_) return n_ == other.n_;
  const Node& x = *n_;
  const Node& y = *other.n_;
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case Kind::Constant:
      if (x.value != y.value) return false;
      break;
    case Kind::Var:
      if (x.slot != y.slot) return false;
      break;
    case Kind::PowInt:
      if (x.exponent != y.exponent) return false;
      break;
    default:
      break;
  }
  if ((x.a == nullptr) != (y.a == nullptr)) return false;
  if ((x.b == nullptr) != (y.b == nullptr)) return false;
  if (x.a && !Expr(x.a).same_structure(Expr(y.a))) return false;
  if (x.b && !Expr(x.b).same_structure(Expr(y.b))) return false;
  return true;
}

D1 Expr::eval_dual(const Point& p) const {
  std::vector<D1> coords(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    coords[i].v = p[i];
    coords[i].d.assign(p.size(), 0.0);
    coords[i].d[i] = 1.0;
  }
  return eval_generic<D1>(std::span<const D1>(coords));
}

double finite_diff(const Expr& e, const Point& p, int slot, double h) {
  Point lo = p, hi = p;
  hi[static_cast<std::size_t>(slot)] += h;
  lo[static_cast<std::size_t>(slot)] -= h;
  return (e.eval(hi) - e.eval(lo)) / (2.0 * h);
}

// ---------------------------------------------------------------------------
// Recursive-descent parser.

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Lexer {
  const std::string& text;
  std::size_t pos = 0;

  Tok kind = Tok::End;
  std::size_t tok_pos = 0;
  double number = 0.0;
  std::string ident;

  explicit Lexer(const std::string& t) : text(t) { advance(); }

  void advance() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    tok_pos = pos;
    if (pos >= text.size()) {
      kind = Tok::End;
      return;
    }
    char c = text[pos];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* first = text.data() + pos;
      const char* last = text.data() + text.size();
      double val = 0.0;
      auto [ptr, ec] = std::from_chars(first, last, val);
      if (ec != std::errc() || ptr == first) throw ParseError("malformed number", pos);
      number = val;
      pos = static_cast<std::size_t>(ptr - text.data());
      kind = Tok::Number;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos;
      while (pos < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
        ++pos;
      ident = text.substr(start, pos - start);
      kind = Tok::Ident;
      return;
    }
    ++pos;
    switch (c) {
      case '+': kind = Tok::Plus; return;
      case '-': kind = Tok::Minus; return;
      case '*': kind = Tok::Star; return;
      case '/': kind = Tok::Slash; return;
      case '^': kind = Tok::Caret; return;
      case '(': kind = Tok::LParen; return;
      case ')': kind = Tok::RParen; return;
      default: throw ParseError(std::string("unexpected character '") + c + "'", tok_pos);
    }
  }
};

struct Parser {
  Lexer lex;
  const std::vector<std::string>& names;

  Parser(const std::string& text, const std::vector<std::string>& names_)
      : lex(text), names(names_) {}

  Expr expression() {
    Expr e = term();
    while (lex.kind == Tok::Plus || lex.kind == Tok::Minus) {
      bool plus = lex.kind == Tok::Plus;
      lex.advance();
      Expr rhs = term();
      e = plus ? e + rhs : e - rhs;
    }
    return e;
  }

  Expr term() {
    Expr e = factor();
    while (lex.kind == Tok::Star || lex.kind == Tok::Slash) {
      bool mul = lex.kind == Tok::Star;
      lex.advance();
      Expr rhs = factor();
      e = mul ? e * rhs : e / rhs;
    }
    return e;
  }

  Expr factor() {
    if (lex.kind == Tok::Minus) {
      lex.advance();
      return -factor();
    }
    return power();
  }

  Expr power() {
    Expr base = atom();
    if (lex.kind != Tok::Caret) return base;
    lex.advance();
    int sign = 1;
    if (lex.kind == Tok::Minus) {
      sign = -1;
      lex.advance();
    }
    if (lex.kind != Tok::Number) throw ParseError("expected integer exponent after '^'", lex.tok_pos);
    double v = lex.number;
    if (v != std::floor(v) || std::abs(v) > 1e9)
      throw ParseError("exponent must be a plain integer", lex.tok_pos);
    lex.advance();
    return pow_int(base, sign * static_cast<int>(v));
  }

  Expr atom() {
    switch (lex.kind) {
      case Tok::Number: {
        double v = lex.number;
        lex.advance();
        return Expr::constant(v);
      }
      case Tok::LParen: {
        std::size_t open = lex.tok_pos;
        lex.advance();
        Expr e = expression();
        if (lex.kind != Tok::RParen) throw ParseError("unbalanced '('", open);
        lex.advance();
        return e;
      }
      case Tok::Ident: {
        std::string name = lex.ident;
        std::size_t at = lex.tok_pos;
        lex.advance();
        if (name == "sin" || name == "cos") {
          if (lex.kind != Tok::LParen)
            throw ParseError("expected '(' after '" + name + "'", lex.tok_pos);
          std::size_t open = lex.tok_pos;
          lex.advance();
          Expr arg = expression();
          if (lex.kind != Tok::RParen) throw ParseError("unbalanced '('", open);
          lex.advance();
          return name == "sin" ? sin(arg) : cos(arg);
        }
        auto it = std::find(names.begin(), names.end(), name);
        if (it == names.end()) throw ParseError("unknown identifier '" + name + "'", at);
        return Expr::var(static_cast<int>(it - names.begin()));
      }
      default:
        throw ParseError("expected a number, name, or '('", lex.tok_pos);
    }
  }
};

}  // namespace

Expr parse(const std::string& text, const std::vector<std::string>& names) {
  Parser p(text, names);
  Expr e = p.expression();
  if (p.lex.kind != Tok::End) throw ParseError("trailing input after expression", p.lex.tok_pos);
  return e;
}

}  // namespace gengeo
