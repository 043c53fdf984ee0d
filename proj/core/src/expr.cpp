#include "cheby/expr.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>

namespace cheby {
namespace detail {

class Node {
 public:
  virtual ~Node() = default;
  virtual double eval(double t) const = 0;
  virtual NodePtr derivative(bool ae) const = 0;
  virtual void collect_breakpoints(const Interval& iv,
                                   std::vector<double>& out) const = 0;
  virtual bool has_variable() const = 0;
  virtual void print(std::string& out) const = 0;
  virtual std::optional<double> const_value() const { return std::nullopt; }
};

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// Sample `u` across `iv` and push approximate zeros (sign changes refined by
// bisection, plus isolated exact hits).  Used to split quadrature panels at
// the kinks of abs/sgn arguments, denominator roots and domain edges.
void scan_zeros(const Node& u, const Interval& iv, std::vector<double>& out) {
  constexpr int kSamples = 512;
  const double h = iv.length() / kSamples;
  bool have_prev = false;
  double tp = 0.0, vp = 0.0;
  for (int i = 0; i <= kSamples; ++i) {
    const double t = (i == kSamples) ? iv.b : iv.a + i * h;
    double v;
    try {
      v = u.eval(t);
    } catch (const DomainError&) {
      have_prev = false;
      continue;
    }
    if (!std::isfinite(v)) {
      have_prev = false;
      continue;
    }
    if (v == 0.0) {
      out.push_back(t);
      have_prev = false;
      tp = t;
      vp = v;
      continue;
    }
    if (have_prev && vp * v < 0.0) {
      double lo = tp, hi = t, flo = vp;
      for (int k = 0; k < 100 && hi - lo > 0.0; ++k) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        double fm;
        try {
          fm = u.eval(mid);
        } catch (const DomainError&) {
          break;
        }
        if (fm == 0.0) {
          lo = hi = mid;
          break;
        }
        if (flo * fm < 0.0) {
          hi = mid;
        } else {
          lo = mid;
          flo = fm;
        }
      }
      out.push_back(0.5 * (lo + hi));
    }
    have_prev = true;
    tp = t;
    vp = v;
  }
}

}  // namespace

class ConstNode final : public Node {
 public:
  explicit ConstNode(double v) : value_(v) {}
  double eval(double) const override { return value_; }
  NodePtr derivative(bool) const override;
  void collect_breakpoints(const Interval&, std::vector<double>&) const override {}
  bool has_variable() const override { return false; }
  void print(std::string& out) const override { out += fmt(value_); }
  std::optional<double> const_value() const override { return value_; }

 private:
  double value_;
};

class VarNode final : public Node {
 public:
  double eval(double t) const override { return t; }
  NodePtr derivative(bool) const override;
  void collect_breakpoints(const Interval&, std::vector<double>&) const override {}
  bool has_variable() const override { return true; }
  void print(std::string& out) const override { out += 'x'; }
};

enum class UnOp { Neg, Abs, Exp, Log, Sin, Cos, Sqrt, Sgn };

class UnaryNode final : public Node {
 public:
  UnaryNode(UnOp op, NodePtr child) : op_(op), child_(std::move(child)) {}

  double eval(double t) const override {
    const double u = child_->eval(t);
    switch (op_) {
      case UnOp::Neg:
        return -u;
      case UnOp::Abs:
        return std::fabs(u);
      case UnOp::Exp:
        return std::exp(u);
      case UnOp::Log:
        if (u <= 0.0) throw DomainError("ln of non-positive value", t);
        return std::log(u);
      case UnOp::Sin:
        return std::sin(u);
      case UnOp::Cos:
        return std::cos(u);
      case UnOp::Sqrt:
        if (u < 0.0) throw DomainError("sqrt of negative value", t);
        return std::sqrt(u);
      case UnOp::Sgn:
        return u > 0.0 ? 1.0 : (u < 0.0 ? -1.0 : 0.0);
    }
    return 0.0;
  }

  NodePtr derivative(bool ae) const override;

  void collect_breakpoints(const Interval& iv,
                           std::vector<double>& out) const override {
    child_->collect_breakpoints(iv, out);
    if (op_ == UnOp::Abs || op_ == UnOp::Sgn || op_ == UnOp::Log ||
        op_ == UnOp::Sqrt) {
      scan_zeros(*child_, iv, out);
    }
  }

  bool has_variable() const override { return child_->has_variable(); }

  void print(std::string& out) const override {
    static const char* names[] = {"-",   "abs", "exp", "ln",
                                  "sin", "cos", "sqrt", "sgn"};
    out += names[static_cast<int>(op_)];
    out += '(';
    child_->print(out);
    out += ')';
  }

  UnOp op() const { return op_; }
  const NodePtr& child() const { return child_; }

 private:
  UnOp op_;
  NodePtr child_;
};

enum class BinOp { Add, Sub, Mul, Div };

class BinaryNode final : public Node {
 public:
  BinaryNode(BinOp op, NodePtr l, NodePtr r)
      : op_(op), l_(std::move(l)), r_(std::move(r)) {}

  double eval(double t) const override {
    const double a = l_->eval(t);
    const double b = r_->eval(t);
    switch (op_) {
      case BinOp::Add:
        return a + b;
      case BinOp::Sub:
        return a - b;
      case BinOp::Mul:
        return a * b;
      case BinOp::Div:
        if (b == 0.0) throw DomainError("division by zero", t);
        return a / b;
    }
    return 0.0;
  }

  NodePtr derivative(bool ae) const override;

  void collect_breakpoints(const Interval& iv,
                           std::vector<double>& out) const override {
    l_->collect_breakpoints(iv, out);
    r_->collect_breakpoints(iv, out);
    if (op_ == BinOp::Div) scan_zeros(*r_, iv, out);
  }

  bool has_variable() const override {
    return l_->has_variable() || r_->has_variable();
  }

  void print(std::string& out) const override {
    static const char ops[] = {'+', '-', '*', '/'};
    out += '(';
    l_->print(out);
    out += ops[static_cast<int>(op_)];
    r_->print(out);
    out += ')';
  }

 private:
  BinOp op_;
  NodePtr l_, r_;
};

class PowNode final : public Node {
 public:
  PowNode(NodePtr base, double exponent)
      : base_(std::move(base)), exponent_(exponent) {}

  double eval(double t) const override {
    const double u = base_->eval(t);
    if (u < 0.0 && exponent_ != std::floor(exponent_)) {
      throw DomainError("negative base with non-integer exponent", t);
    }
    if (u == 0.0 && exponent_ < 0.0) {
      throw DomainError("zero base with negative exponent", t);
    }
    return std::pow(u, exponent_);
  }

  NodePtr derivative(bool ae) const override;

  void collect_breakpoints(const Interval& iv,
                           std::vector<double>& out) const override {
    base_->collect_breakpoints(iv, out);
    const bool smooth_at_zero =
        exponent_ >= 1.0 && exponent_ == std::floor(exponent_);
    if (!smooth_at_zero) scan_zeros(*base_, iv, out);
  }

  bool has_variable() const override { return base_->has_variable(); }

  void print(std::string& out) const override {
    out += '(';
    base_->print(out);
    out += ')';
    out += '^';
    out += fmt(exponent_);
  }

 private:
  NodePtr base_;
  double exponent_;
};

class PiecewiseNode final : public Node {
 public:
  struct Piece {
    double lo;
    double hi;
    NodePtr fn;
  };

  explicit PiecewiseNode(std::vector<Piece> pieces)
      : pieces_(std::move(pieces)) {}

  // Left-piece convention at shared endpoints: pieces are sorted by lower
  // bound, and the first piece containing t wins.
  double eval(double t) const override {
    for (const Piece& p : pieces_) {
      if (t >= p.lo && t <= p.hi) return p.fn->eval(t);
    }
    throw DomainError("point outside piecewise domain", t);
  }

  NodePtr derivative(bool ae) const override;

  void collect_breakpoints(const Interval& iv,
                           std::vector<double>& out) const override {
    for (const Piece& p : pieces_) {
      if (p.lo > iv.a && p.lo < iv.b) out.push_back(p.lo);
      if (p.hi > iv.a && p.hi < iv.b) out.push_back(p.hi);
      const double lo = std::max(p.lo, iv.a);
      const double hi = std::min(p.hi, iv.b);
      if (lo < hi) p.fn->collect_breakpoints(Interval(lo, hi), out);
    }
  }

  bool has_variable() const override {
    return std::any_of(pieces_.begin(), pieces_.end(),
                       [](const Piece& p) { return p.fn->has_variable(); });
  }

  void print(std::string& out) const override {
    out += "piecewise{";
    bool first = true;
    for (const Piece& p : pieces_) {
      if (!first) out += "; ";
      first = false;
      out += '[' + fmt(p.lo) + ',' + fmt(p.hi) + "]: ";
      p.fn->print(out);
    }
    out += '}';
  }

  const std::vector<Piece>& pieces() const { return pieces_; }

 private:
  std::vector<Piece> pieces_;
};

// ---------------------------------------------------------------------------
// Folding builders.  Used by the algebra operators and by differentiation so
// derivative trees stay small; the parser builds nodes verbatim instead, so
// parsed expressions evaluate exactly as written.
// ---------------------------------------------------------------------------

namespace {

NodePtr n_const(double v) { return std::make_shared<ConstNode>(v); }

std::optional<double> cv(const NodePtr& n) { return n->const_value(); }

NodePtr n_add(NodePtr l, NodePtr r) {
  auto a = cv(l), b = cv(r);
  if (a && b) return n_const(*a + *b);
  if (a && *a == 0.0) return r;
  if (b && *b == 0.0) return l;
  return std::make_shared<BinaryNode>(BinOp::Add, std::move(l), std::move(r));
}

NodePtr n_neg(NodePtr u) {
  if (auto a = cv(u)) return n_const(-*a);
  return std::make_shared<UnaryNode>(UnOp::Neg, std::move(u));
}

NodePtr n_sub(NodePtr l, NodePtr r) {
  auto a = cv(l), b = cv(r);
  if (a && b) return n_const(*a - *b);
  if (b && *b == 0.0) return l;
  if (a && *a == 0.0) return n_neg(std::move(r));
  return std::make_shared<BinaryNode>(BinOp::Sub, std::move(l), std::move(r));
}

NodePtr n_mul(NodePtr l, NodePtr r) {
  auto a = cv(l), b = cv(r);
  if (a && b) return n_const(*a * *b);
  if ((a && *a == 0.0) || (b && *b == 0.0)) return n_const(0.0);
  if (a && *a == 1.0) return r;
  if (b && *b == 1.0) return l;
  return std::make_shared<BinaryNode>(BinOp::Mul, std::move(l), std::move(r));
}

NodePtr n_div(NodePtr l, NodePtr r) {
  auto a = cv(l), b = cv(r);
  if (b && *b != 0.0) {
    if (a) return n_const(*a / *b);
    if (*b == 1.0) return l;
  }
  if (a && *a == 0.0 && !b) return n_const(0.0);
  return std::make_shared<BinaryNode>(BinOp::Div, std::move(l), std::move(r));
}

NodePtr n_pow(NodePtr base, double e) {
  if (e == 1.0) return base;
  if (e == 0.0) return n_const(1.0);
  if (auto a = cv(base)) {
    if (*a > 0.0 || e == std::floor(e)) return n_const(std::pow(*a, e));
  }
  return std::make_shared<PowNode>(std::move(base), e);
}

NodePtr n_unary(UnOp op, NodePtr u) {
  return std::make_shared<UnaryNode>(op, std::move(u));
}

}  // namespace

NodePtr ConstNode::derivative(bool) const { return n_const(0.0); }
NodePtr VarNode::derivative(bool) const { return n_const(1.0); }

NodePtr UnaryNode::derivative(bool ae) const {
  NodePtr du = child_->derivative(ae);
  switch (op_) {
    case UnOp::Neg:
      return n_neg(std::move(du));
    case UnOp::Abs:
      return n_mul(n_unary(UnOp::Sgn, child_), std::move(du));
    case UnOp::Exp:
      return n_mul(n_unary(UnOp::Exp, child_), std::move(du));
    case UnOp::Log:
      return n_div(std::move(du), child_);
    case UnOp::Sin:
      return n_mul(n_unary(UnOp::Cos, child_), std::move(du));
    case UnOp::Cos:
      return n_neg(n_mul(n_unary(UnOp::Sin, child_), std::move(du)));
    case UnOp::Sqrt:
      return n_div(std::move(du), n_mul(n_const(2.0), n_unary(UnOp::Sqrt, child_)));
    case UnOp::Sgn:
      if (ae) return n_const(0.0);
      throw NonDifferentiableError("sgn is not differentiable");
  }
  return n_const(0.0);
}

NodePtr BinaryNode::derivative(bool ae) const {
  NodePtr dl = l_->derivative(ae);
  NodePtr dr = r_->derivative(ae);
  switch (op_) {
    case BinOp::Add:
      return n_add(std::move(dl), std::move(dr));
    case BinOp::Sub:
      return n_sub(std::move(dl), std::move(dr));
    case BinOp::Mul:
      return n_add(n_mul(std::move(dl), r_), n_mul(l_, std::move(dr)));
    case BinOp::Div:
      return n_div(n_sub(n_mul(std::move(dl), r_), n_mul(l_, std::move(dr))),
                   n_mul(r_, r_));
  }
  return n_const(0.0);
}

NodePtr PowNode::derivative(bool ae) const {
  NodePtr du = base_->derivative(ae);
  return n_mul(n_mul(n_const(exponent_), n_pow(base_, exponent_ - 1.0)),
               std::move(du));
}

NodePtr PiecewiseNode::derivative(bool ae) const {
  std::vector<Piece> out;
  out.reserve(pieces_.size());
  for (const Piece& p : pieces_) {
    out.push_back({p.lo, p.hi, p.fn->derivative(ae)});
  }
  return std::make_shared<PiecewiseNode>(std::move(out));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Expr surface
// ---------------------------------------------------------------------------

using detail::NodePtr;

double Expr::eval(double t) const { return root_->eval(t); }

Expr Expr::derivative() const { return Expr(root_->derivative(false)); }
Expr Expr::derivative_ae() const { return Expr(root_->derivative(true)); }

bool Expr::has_variable() const { return root_->has_variable(); }

std::string Expr::str() const {
  std::string out;
  root_->print(out);
  return out;
}

std::vector<double> Expr::breakpoints(const Interval& iv) const {
  std::vector<double> pts;
  root_->collect_breakpoints(iv, pts);
  std::sort(pts.begin(), pts.end());
  const double eps = 1e-12 * iv.length();
  std::vector<double> cleaned;
  for (double t : pts) {
    if (t <= iv.a + eps || t >= iv.b - eps) continue;
    if (!cleaned.empty() && t - cleaned.back() <= eps) continue;
    cleaned.push_back(t);
  }
  return cleaned;
}

Expr Expr::constant(double v) { return Expr(detail::n_const(v)); }
Expr Expr::variable() { return Expr(std::make_shared<detail::VarNode>()); }

Expr Expr::piecewise(std::vector<std::pair<Interval, Expr>> pieces) {
  if (pieces.empty()) {
    throw std::invalid_argument("piecewise: at least one piece required");
  }
  std::sort(pieces.begin(), pieces.end(),
            [](const auto& a, const auto& b) { return a.first.a < b.first.a; });
  std::vector<detail::PiecewiseNode::Piece> ps;
  ps.reserve(pieces.size());
  for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
    if (pieces[i + 1].first.a < pieces[i].first.b - 1e-12) {
      throw std::invalid_argument("piecewise: overlapping guard intervals");
    }
  }
  for (auto& [iv, fn] : pieces) {
    ps.push_back({iv.a, iv.b, fn.node()});
  }
  return Expr(std::make_shared<detail::PiecewiseNode>(std::move(ps)));
}

Expr operator+(const Expr& l, const Expr& r) {
  return Expr(detail::n_add(l.root_, r.root_));
}
Expr operator-(const Expr& l, const Expr& r) {
  return Expr(detail::n_sub(l.root_, r.root_));
}
Expr operator*(const Expr& l, const Expr& r) {
  return Expr(detail::n_mul(l.root_, r.root_));
}
Expr operator/(const Expr& l, const Expr& r) {
  return Expr(detail::n_div(l.root_, r.root_));
}
Expr operator-(const Expr& e) { return Expr(detail::n_neg(e.root_)); }

Expr pow(const Expr& base, double exponent) {
  return Expr(detail::n_pow(base.root_, exponent));
}
Expr abs(const Expr& e) {
  return Expr(detail::n_unary(detail::UnOp::Abs, e.root_));
}
Expr exp(const Expr& e) {
  return Expr(detail::n_unary(detail::UnOp::Exp, e.root_));
}
Expr log(const Expr& e) {
  return Expr(detail::n_unary(detail::UnOp::Log, e.root_));
}
Expr sin(const Expr& e) {
  return Expr(detail::n_unary(detail::UnOp::Sin, e.root_));
}
Expr cos(const Expr& e) {
  return Expr(detail::n_unary(detail::UnOp::Cos, e.root_));
}
Expr sqrt(const Expr& e) {
  return Expr(detail::n_unary(detail::UnOp::Sqrt, e.root_));
}
Expr sgn(const Expr& e) {
  return Expr(detail::n_unary(detail::UnOp::Sgn, e.root_));
}

double eval(const Expr& e, double t) { return e.eval(t); }
Expr differentiate(const Expr& e) { return e.derivative(); }
std::vector<double> breakpoints(const Expr& e, const Interval& iv) {
  return e.breakpoints(iv);
}

}  // namespace cheby
