#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cheby {

/// Closed interval [a,b] with a < b. Carrier of every integral in the library.
struct Interval {
  double a;
  double b;

  Interval(double a_, double b_) : a(a_), b(b_) {
    if (!(a_ < b_)) {
      throw std::invalid_argument("Interval: requires a < b");
    }
  }

  double length() const { return b - a; }
  double midpoint() const { return 0.5 * (a + b); }
  bool contains(double t) const { return t >= a && t <= b; }
  bool contains(const Interval& other) const {
    return other.a >= a && other.b <= b;
  }
};

/// Raised when an expression is evaluated outside its domain
/// (log of a non-positive value, division by zero, gap in a piecewise
/// definition).
class DomainError : public std::runtime_error {
 public:
  DomainError(const std::string& what, double at)
      : std::runtime_error(what), point(at) {}
  double point;
};

/// Raised when differentiation hits a node with no pointwise derivative
/// (a sign node used as anything but a step construction).
class NonDifferentiableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parse failure; `position` is the zero-based offset into the input text.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : std::runtime_error(what + " (at position " + std::to_string(pos) + ")"),
        position(pos) {}
  std::size_t position;
};

namespace detail {
class Node;
using NodePtr = std::shared_ptr<const Node>;
}  // namespace detail

/// Immutable real-valued function of one variable, built as an expression
/// tree.  Supports pointwise evaluation, symbolic differentiation and
/// breakpoint reporting (kinks/jumps), which the quadrature engine uses to
/// pre-split panels.  All operations are pure; instances can be shared
/// freely across threads.
class Expr {
 public:
  Expr() = default;

  double eval(double t) const;
  double operator()(double t) const { return eval(t); }

  /// Structural derivative.  abs(u) differentiates to sgn(u)*u'; a bare
  /// sign node refuses with NonDifferentiableError.
  Expr derivative() const;

  /// Almost-everywhere derivative: identical to derivative() except sign
  /// nodes differentiate to zero.  Jump contributions are accounted for
  /// separately by the variation machinery.
  Expr derivative_ae() const;

  /// Sorted points interior to `iv` where the function or its first
  /// derivative may be discontinuous.  May over-report, never under-reports
  /// for the supported node set.
  std::vector<double> breakpoints(const Interval& iv) const;

  /// True if the tree references the variable anywhere.
  bool has_variable() const;

  std::string str() const;

  bool valid() const { return root_ != nullptr; }

  // -- construction ---------------------------------------------------------

  static Expr constant(double v);
  static Expr variable();
  static Expr piecewise(std::vector<std::pair<Interval, Expr>> pieces);

  friend Expr operator+(const Expr& l, const Expr& r);
  friend Expr operator-(const Expr& l, const Expr& r);
  friend Expr operator*(const Expr& l, const Expr& r);
  friend Expr operator/(const Expr& l, const Expr& r);
  friend Expr operator-(const Expr& e);

  friend Expr pow(const Expr& base, double exponent);
  friend Expr abs(const Expr& e);
  friend Expr exp(const Expr& e);
  friend Expr log(const Expr& e);
  friend Expr sin(const Expr& e);
  friend Expr cos(const Expr& e);
  friend Expr sqrt(const Expr& e);
  friend Expr sgn(const Expr& e);

  explicit Expr(detail::NodePtr root) : root_(std::move(root)) {}
  const detail::NodePtr& node() const { return root_; }

 private:
  detail::NodePtr root_;
};

Expr operator+(const Expr& l, const Expr& r);
Expr operator-(const Expr& l, const Expr& r);
Expr operator*(const Expr& l, const Expr& r);
Expr operator/(const Expr& l, const Expr& r);
Expr operator-(const Expr& e);
Expr pow(const Expr& base, double exponent);
Expr abs(const Expr& e);
Expr exp(const Expr& e);
Expr log(const Expr& e);
Expr sin(const Expr& e);
Expr cos(const Expr& e);
Expr sqrt(const Expr& e);
Expr sgn(const Expr& e);

inline Expr operator+(const Expr& l, double r) { return l + Expr::constant(r); }
inline Expr operator+(double l, const Expr& r) { return Expr::constant(l) + r; }
inline Expr operator-(const Expr& l, double r) { return l - Expr::constant(r); }
inline Expr operator-(double l, const Expr& r) { return Expr::constant(l) - r; }
inline Expr operator*(const Expr& l, double r) { return l * Expr::constant(r); }
inline Expr operator*(double l, const Expr& r) { return Expr::constant(l) * r; }
inline Expr operator/(const Expr& l, double r) { return l / Expr::constant(r); }
inline Expr operator/(double l, const Expr& r) { return Expr::constant(l) / r; }

/// Parse a function of x from text.
///
/// Grammar (whitespace-insensitive):
///   expr      := term (('+'|'-') term)*
///   term      := factor (('*'|'/') factor)*
///   factor    := unary ('^' unary)?            -- exponent must be constant
///   unary     := ('+'|'-')* primary
///   primary   := number | 'x' | 'pi' | 'e' | name '(' expr ')'
///              | '(' expr ')' | piecewise
///   piecewise := 'piecewise' '{' piece (';' piece)* '}'
///   piece     := '[' const ',' const ']' ':' expr
///
/// Functions: abs, exp, ln, sin, cos, sqrt, sgn.  Rational literals such as
/// 1/3 parse as division.  Errors carry the offending position.
Expr parse(const std::string& text);

/// Free-function forms of the Expr members.
double eval(const Expr& e, double t);
Expr differentiate(const Expr& e);
std::vector<double> breakpoints(const Expr& e, const Interval& iv);

}  // namespace cheby
