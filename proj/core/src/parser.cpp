#include <cctype>
#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "cheby/expr.hpp"

namespace cheby {
namespace {

enum class Tok {
  Number,
  Ident,
  Plus,
  Minus,
  Star,
  Slash,
  Caret,
  LParen,
  RParen,
  LBrace,
  RBrace,
  LBracket,
  RBracket,
  Comma,
  Semicolon,
  Colon,
  End,
};

struct Token {
  Tok kind;
  std::size_t pos;
  double number = 0.0;
  std::string text;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_ws();
      if (i_ >= src_.size()) {
        out.push_back({Tok::End, i_});
        return out;
      }
      const std::size_t start = i_;
      const char c = src_[i_];
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        out.push_back(lex_number());
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t j = i_;
        while (j < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[j])) ||
                src_[j] == '_')) {
          ++j;
        }
        Token t{Tok::Ident, start};
        t.text = src_.substr(i_, j - i_);
        i_ = j;
        out.push_back(t);
        continue;
      }
      ++i_;
      switch (c) {
        case '+': out.push_back({Tok::Plus, start}); break;
        case '-': out.push_back({Tok::Minus, start}); break;
        case '*': out.push_back({Tok::Star, start}); break;
        case '/': out.push_back({Tok::Slash, start}); break;
        case '^': out.push_back({Tok::Caret, start}); break;
        case '(': out.push_back({Tok::LParen, start}); break;
        case ')': out.push_back({Tok::RParen, start}); break;
        case '{': out.push_back({Tok::LBrace, start}); break;
        case '}': out.push_back({Tok::RBrace, start}); break;
        case '[': out.push_back({Tok::LBracket, start}); break;
        case ']': out.push_back({Tok::RBracket, start}); break;
        case ',': out.push_back({Tok::Comma, start}); break;
        case ';': out.push_back({Tok::Semicolon, start}); break;
        case ':': out.push_back({Tok::Colon, start}); break;
        default:
          throw ParseError(std::string("unexpected character '") + c + "'",
                           start);
      }
    }
  }

 private:
  void skip_ws() {
    while (i_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[i_]))) {
      ++i_;
    }
  }

  Token lex_number() {
    const std::size_t start = i_;
    std::size_t j = i_;
    while (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j])))
      ++j;
    if (j < src_.size() && src_[j] == '.') {
      ++j;
      while (j < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[j])))
        ++j;
    }
    // scientific suffix only when digits follow, so "2e" stays "2 * e"
    if (j < src_.size() && (src_[j] == 'e' || src_[j] == 'E')) {
      std::size_t k = j + 1;
      if (k < src_.size() && (src_[k] == '+' || src_[k] == '-')) ++k;
      if (k < src_.size() && std::isdigit(static_cast<unsigned char>(src_[k]))) {
        ++k;
        while (k < src_.size() &&
               std::isdigit(static_cast<unsigned char>(src_[k])))
          ++k;
        j = k;
      }
    }
    const std::string body = src_.substr(start, j - start);
    if (body == ".") throw ParseError("malformed number", start);
    Token t{Tok::Number, start};
    t.number = std::strtod(body.c_str(), nullptr);
    i_ = j;
    return t;
  }

  const std::string& src_;
  std::size_t i_ = 0;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Expr run() {
    Expr e = parse_expr();
    expect(Tok::End, "unexpected trailing input");
    return e;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  const Token& advance() { return toks_[i_++]; }
  bool match(Tok k) {
    if (peek().kind == k) {
      ++i_;
      return true;
    }
    return false;
  }
  void expect(Tok k, const char* msg) {
    if (!match(k)) throw ParseError(msg, peek().pos);
  }

  Expr parse_expr() {
    Expr e = parse_term();
    while (true) {
      if (match(Tok::Plus)) {
        e = e + parse_term();
      } else if (match(Tok::Minus)) {
        e = e - parse_term();
      } else {
        return e;
      }
    }
  }

  Expr parse_term() {
    Expr e = parse_unary();
    while (true) {
      if (match(Tok::Star)) {
        e = e * parse_unary();
      } else if (match(Tok::Slash)) {
        e = e / parse_unary();
      } else {
        return e;
      }
    }
  }

  Expr parse_unary() {
    if (match(Tok::Plus)) return parse_unary();
    if (peek().kind == Tok::Minus) {
      advance();
      return -parse_unary();
    }
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_primary();
    if (peek().kind == Tok::Caret) {
      const std::size_t caret_pos = advance().pos;
      Expr expo = parse_unary();
      if (expo.has_variable()) {
        throw ParseError("exponent must be a constant expression", caret_pos);
      }
      double e;
      try {
        e = expo.eval(0.0);
      } catch (const DomainError&) {
        throw ParseError("exponent does not evaluate", caret_pos);
      }
      return pow(base, e);
    }
    return base;
  }

  Expr parse_primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Number:
        advance();
        return Expr::constant(t.number);
      case Tok::LParen: {
        advance();
        Expr e = parse_expr();
        expect(Tok::RParen, "expected ')'");
        return e;
      }
      case Tok::Ident:
        return parse_ident();
      default:
        throw ParseError("expected expression", t.pos);
    }
  }

  Expr parse_ident() {
    const Token t = advance();
    if (t.text == "x") return Expr::variable();
    if (t.text == "pi") return Expr::constant(M_PI);
    if (t.text == "e") return Expr::constant(M_E);
    if (t.text == "piecewise") return parse_piecewise(t.pos);

    Expr (*fn)(const Expr&) = nullptr;
    if (t.text == "abs") fn = static_cast<Expr (*)(const Expr&)>(&cheby::abs);
    else if (t.text == "exp") fn = &cheby::exp;
    else if (t.text == "ln") fn = &cheby::log;
    else if (t.text == "sin") fn = &cheby::sin;
    else if (t.text == "cos") fn = &cheby::cos;
    else if (t.text == "sqrt") fn = &cheby::sqrt;
    else if (t.text == "sgn") fn = &cheby::sgn;

    if (fn == nullptr) {
      throw ParseError("unknown identifier '" + t.text + "'", t.pos);
    }
    expect(Tok::LParen, "expected '(' after function name");
    Expr arg = parse_expr();
    expect(Tok::RParen, "expected ')'");
    return fn(arg);
  }

  double parse_guard_bound() {
    const std::size_t pos = peek().pos;
    Expr e = parse_expr();
    if (e.has_variable()) {
      throw ParseError("piecewise guard bound must be constant", pos);
    }
    try {
      return e.eval(0.0);
    } catch (const DomainError&) {
      throw ParseError("piecewise guard bound does not evaluate", pos);
    }
  }

  Expr parse_piecewise(std::size_t kw_pos) {
    expect(Tok::LBrace, "expected '{' after piecewise");
    std::vector<std::pair<Interval, Expr>> pieces;
    while (true) {
      const std::size_t piece_pos = peek().pos;
      expect(Tok::LBracket, "expected '[' to open piecewise guard");
      const double lo = parse_guard_bound();
      expect(Tok::Comma, "expected ',' in piecewise guard");
      const double hi = parse_guard_bound();
      expect(Tok::RBracket, "expected ']' to close piecewise guard");
      expect(Tok::Colon, "expected ':' after piecewise guard");
      if (!(lo < hi)) throw ParseError("empty piecewise guard interval", piece_pos);
      pieces.emplace_back(Interval(lo, hi), parse_expr());
      if (match(Tok::Semicolon)) continue;
      expect(Tok::RBrace, "expected '}' or ';' in piecewise");
      break;
    }
    try {
      return Expr::piecewise(std::move(pieces));
    } catch (const std::invalid_argument&) {
      throw ParseError("overlapping piecewise guards", kw_pos);
    }
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

}  // namespace

Expr parse(const std::string& text) {
  return Parser(Lexer(text).run()).run();
}

}  // namespace cheby
