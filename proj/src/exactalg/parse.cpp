#include "covlab/exactalg/parse.hpp"

#include <cctype>

namespace covlab {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const RingPtr& ring) : text_(text), ring_(ring) {}

  Fraction parse() {
    Fraction f = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Fraction expr() {
    Fraction acc = term();
    while (true) {
      if (accept('+')) {
        acc = acc + term();
      } else if (accept('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  Fraction term() {
    Fraction acc = unary();
    while (true) {
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        std::size_t at = pos_;
        Fraction d = unary();
        if (d.is_zero()) throw ParseError("division by zero", at);
        acc = acc / d;
      } else {
        return acc;
      }
    }
  }

  Fraction unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Fraction power() {
    Fraction base = atom();
    if (accept('^')) {
      skip_space();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a non-negative integer exponent");
      unsigned long e = std::stoul(std::string(text_.substr(start, pos_ - start)));
      return Fraction(base.num.pow(static_cast<unsigned>(e)), base.den.pow(static_cast<unsigned>(e)));
    }
    return base;
  }

  Fraction atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Fraction f = expr();
      if (!accept(')')) fail("expected ')'");
      return f;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      mpz_class v(std::string(text_.substr(start, pos_ - start)));
      return Fraction(Poly::constant(ring_, Rational(v)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      std::string name(text_.substr(start, pos_ - start));
      auto idx = ring_->find(name);
      if (!idx) {
        throw VariableError("undeclared variable '" + name + "' (column " + std::to_string(start + 1) + ")");
      }
      return Fraction(Poly::variable(ring_, *idx));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  const RingPtr& ring_;
  std::size_t pos_ = 0;
};

}  // namespace

RatFn parse_ratfn(std::string_view text, const RingPtr& ring) {
  Fraction f = Parser(text, ring).parse();
  return f.reduced();
}

Poly parse_poly(std::string_view text, const RingPtr& ring) {
  Fraction f = Parser(text, ring).parse();
  if (!f.den.is_constant()) {
    RatFn r = f.reduced();
    if (!r.is_polynomial()) throw ParseError("expected a polynomial, got " + r.to_string(), 0);
    return r.num();
  }
  return f.num * ring->inverse(f.den.constant_value());
}

}  // namespace covlab
