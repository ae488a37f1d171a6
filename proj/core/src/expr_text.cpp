#include "ultradist/calculus.hpp"
#include "ultradist/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace ultradist {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse() {
    Expr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing characters");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("expression parse error at offset " + std::to_string(pos_) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string identifier() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  double number() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '+')
        ++pos_;
      else
        break;
    }
    std::string token(text_.substr(start, pos_ - start));
    if (token.empty()) fail("expected a number");
    char* end = nullptr;
    double v = std::strtod(token.c_str(), &end);
    if (end != token.c_str() + token.size() || std::isnan(v)) {
      pos_ = start;
      fail("bad number '" + token + "'");
    }
    return v;
  }

  bool starts_number() {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.';
  }

  Expr expr() {
    if (starts_number()) return Expr::constant(number());
    const std::size_t at = pos_;
    const std::string name = identifier();
    if (name.empty()) fail("expected an expression");
    if (name == "x") return Expr::variable();
    expect('(');
    Expr out;
    if (name == "const") {
      out = Expr::constant(number());
    } else if (name == "add" || name == "sub" || name == "mul") {
      Expr a = expr();
      expect(',');
      Expr b = expr();
      out = name == "add" ? a + b : name == "sub" ? a - b : a * b;
    } else if (name == "neg") {
      out = -expr();
    } else if (name == "pow") {
      Expr a = expr();
      expect(',');
      double n = number();
      if (n < 0 || n != std::floor(n) || n > 1e6) fail("pow exponent must be a nonnegative integer");
      out = Expr::pow(a, static_cast<unsigned>(n));
    } else if (name == "exp") {
      out = Expr::exp(expr());
    } else if (name == "sin") {
      out = Expr::sin(expr());
    } else if (name == "cos") {
      out = Expr::cos(expr());
    } else if (name == "flat") {
      out = Expr::flat(expr());
    } else if (name == "recip") {
      Expr a = expr();
      Interval dom = Interval::whole_line();
      if (peek(',')) {
        expect(',');
        dom.lo = number();
        expect(',');
        dom.hi = number();
      }
      out = Expr::recip(a, dom);
    } else if (name == "affine") {
      Expr a = expr();
      expect(',');
      double shift = number();
      expect(',');
      double scale = number();
      out = Expr::affine(a, shift, scale);
    } else if (name == "piecewise") {
      expect('[');
      std::vector<double> knots;
      if (!peek(']')) {
        knots.push_back(number());
        while (peek(',')) {
          expect(',');
          knots.push_back(number());
        }
      }
      expect(']');
      std::vector<Expr> pieces;
      while (peek(',')) {
        expect(',');
        pieces.push_back(expr());
      }
      out = Expr::piecewise(std::move(knots), std::move(pieces));
    } else if (name == "cutoff") {
      double a = number();
      expect(',');
      double b = number();
      out = cutoff(a, b);
    } else if (name == "bump") {
      double c = number();
      expect(',');
      double a = number();
      expect(',');
      double b = number();
      out = translate(cutoff(a, b), c);
    } else {
      pos_ = at;
      fail("unknown function '" + name + "'");
    }
    expect(')');
    return out;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expr(std::string_view text) { return Parser(text).parse(); }

}  // namespace ultradist
