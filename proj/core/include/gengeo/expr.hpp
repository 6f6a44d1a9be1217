#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gengeo/dual.hpp"

namespace gengeo {

using Point = std::vector<double>;

// Evaluation failed for a point-dependent reason: division by zero, a point
// outside a chart domain, a singular solve.  Carries no position info.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Lexical or grammatical error in expression or config text.  `offset` is a
// byte offset into the parsed string.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " (at offset " + std::to_string(offset) + ")"),
        offset_(offset),
        raw_(what) {}
  std::size_t offset() const { return offset_; }
  const std::string& raw_message() const { return raw_; }

 private:
  std::size_t offset_;
  std::string raw_;
};

// Immutable expression tree over chart coordinates.  Variables are slot
// indices into the evaluation point; name binding happens only in parse().
// Subtrees are shared, never mutated.
class Expr {
 public:
  enum class Kind { Constant, Var, Add, Mul, Neg, Div, PowInt, Sin, Cos };

  struct Node {
    Kind kind;
    double value = 0.0;                 // Constant
    int slot = -1;                      // Var
    int exponent = 0;                   // PowInt
    std::shared_ptr<const Node> a, b;   // children
  };

  Expr() = default;

  static Expr constant(double c);
  static Expr var(int slot);

  bool valid() const { return n_ != nullptr; }
  const Node& node() const { return *n_; }

  // Largest variable slot used, plus one.  0 for constant expressions.
  int min_arity() const;

  bool same_structure(const Expr& other) const;

  // Evaluates with any scalar supporting +,-,*,/ ,sin,cos.  The value slot of
  // a jet evaluation is computed by the identical operation sequence as a
  // plain double evaluation.
  template <class S>
  S eval_generic(std::span<const S> x) const;

  double eval(const Point& p) const { return eval_generic<double>(std::span<const double>(p)); }

  // First-order jet at p, partials aligned with point slots.
  D1 eval_dual(const Point& p) const;

 private:
  explicit Expr(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  static Expr make(Node n);

  friend Expr operator+(const Expr&, const Expr&);
  friend Expr operator-(const Expr&, const Expr&);
  friend Expr operator*(const Expr&, const Expr&);
  friend Expr operator/(const Expr&, const Expr&);
  friend Expr operator-(const Expr&);
  friend Expr pow_int(const Expr&, int);
  friend Expr sin(const Expr&);
  friend Expr cos(const Expr&);

  std::shared_ptr<const Node> n_;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);  // sugar for a + (-b)
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr pow_int(const Expr& a, int exponent);
Expr sin(const Expr& a);
Expr cos(const Expr& a);

// Parses the expression grammar
//
//   expression := term { ('+' | '-') term }
//   term       := factor { ('*' | '/') factor }
//   factor     := '-' factor | power
//   power      := atom [ '^' [ '-' ] integer ]
//   atom       := number | name | ('sin' | 'cos') '(' expression ')'
//               | '(' expression ')'
//
// `names` binds identifiers to variable slots by position.  sin and cos are
// reserved.  Exponents are integer literals; chaining '^' needs parentheses,
// which only a full subexpression can carry, so x^2^3 is rejected.  Unknown
// identifiers and malformed syntax raise ParseError with a byte offset.
Expr parse(const std::string& text, const std::vector<std::string>& names);

// Central difference of eval with respect to one slot.
double finite_diff(const Expr& e, const Point& p, int slot, double h = 1e-6);

template <class S>
S Expr::eval_generic(std::span<const S> x) const {
  if (!n_) throw DomainError("empty expression");
  const Node& n = *n_;
  switch (n.kind) {
    case Kind::Constant:
      return S(n.value);
    case Kind::Var:
      if (n.slot < 0 || static_cast<std::size_t>(n.slot) >= x.size())
        throw DomainError("expression variable slot " + std::to_string(n.slot) +
                          " outside point of dimension " + std::to_string(x.size()));
      return x[static_cast<std::size_t>(n.slot)];
    case Kind::Add:
      return Expr(n.a).eval_generic<S>(x) + Expr(n.b).eval_generic<S>(x);
    case Kind::Mul:
      return Expr(n.a).eval_generic<S>(x) * Expr(n.b).eval_generic<S>(x);
    case Kind::Neg:
      return -Expr(n.a).eval_generic<S>(x);
    case Kind::Div: {
      S num = Expr(n.a).eval_generic<S>(x);
      S den = Expr(n.b).eval_generic<S>(x);
      if (value_of(den) == 0.0) throw DomainError("division by zero in expression");
      return num / den;
    }
    case Kind::PowInt: {
      S base = Expr(n.a).eval_generic<S>(x);
      if (n.exponent == 0) return S(1.0);
      if (n.exponent < 0) {
        if (value_of(base) == 0.0) throw DomainError("zero base with negative exponent");
        return S(1.0) / pow_int_positive(base, -n.exponent);
      }
      return pow_int_positive(base, n.exponent);
    }
    case Kind::Sin: {
      using std::sin;
      return sin(Expr(n.a).eval_generic<S>(x));
    }
    case Kind::Cos: {
      using std::cos;
      return cos(Expr(n.a).eval_generic<S>(x));
    }
  }
  throw DomainError("corrupt expression node");
}

}  // namespace gengeo
