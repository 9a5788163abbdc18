#include "covlab/exactalg/ratfn.hpp"

#include <ostream>

namespace covlab {

RatFn::RatFn(Poly num, Poly den, bool) : num_(std::move(num)), den_(std::move(den)) {}

RatFn::RatFn(Poly num) : num_(std::move(num)), den_(Poly::constant(num_.ring(), 1)) {}

RatFn::RatFn(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (!num_.ring()->same_as(*den_.ring())) throw DimensionError("RatFn: numerator and denominator rings differ");
  if (den_.is_zero()) throw std::domain_error("RatFn: zero denominator");
  if (num_.is_zero()) {
    den_ = Poly::constant(num_.ring(), 1);
    return;
  }
  Poly g = gcd(num_, den_);
  if (!g.is_constant()) {
    num_ = divide_or_throw(num_, g);
    den_ = divide_or_throw(den_, g);
  }
  Rational lc_inv = den_.ring()->inverse(den_.leading_coeff());
  num_ *= lc_inv;
  den_ *= lc_inv;
}

RatFn RatFn::from_coprime(Poly num, Poly den) {
  if (den.is_zero()) throw std::domain_error("RatFn: zero denominator");
  if (num.is_zero()) return RatFn(std::move(num));
  Rational lc_inv = den.ring()->inverse(den.leading_coeff());
  num *= lc_inv;
  den *= lc_inv;
  return RatFn(std::move(num), std::move(den), true);
}

RatFn RatFn::constant(RingPtr ring, const Rational& c) { return RatFn(Poly::constant(std::move(ring), c)); }

Poly RatFn::as_poly() const {
  if (!is_polynomial()) throw std::logic_error("not a polynomial: " + to_string());
  return num_;
}

RatFn RatFn::operator-() const { return RatFn(-num_, den_, true); }

RatFn operator+(const RatFn& a, const RatFn& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) return RatFn(a.num_ + b.num_, a.den_);
  return RatFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFn operator-(const RatFn& a, const RatFn& b) { return a + (-b); }

RatFn operator*(const RatFn& a, const RatFn& b) {
  if (a.is_zero() || b.is_zero()) return RatFn(Poly(a.ring()));
  if (a.is_polynomial() && b.is_polynomial()) return RatFn(a.num_ * b.num_);
  return RatFn(a.num_ * b.num_, a.den_ * b.den_);
}

RatFn operator/(const RatFn& a, const RatFn& b) {
  if (b.is_zero()) throw std::domain_error("RatFn division by zero");
  return RatFn(a.num_ * b.den_, a.den_ * b.num_);
}

bool operator==(const RatFn& a, const RatFn& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

bool RatFn::equals_by_cross_multiplication(const RatFn& o) const { return num_ * o.den_ == o.num_ * den_; }

RatFn RatFn::pow(unsigned e) const { return RatFn(num_.pow(e), den_.pow(e), true); }

RatFn RatFn::lift(const RingPtr& target) const { return RatFn(num_.lift(target), den_.lift(target), true); }

Rational RatFn::eval(std::span<const Rational> point) const {
  Rational d = den_.eval(point);
  if (d == 0) throw std::domain_error("denominator vanishes at evaluation point");
  return ring()->normalize(num_.eval(point) * ring()->inverse(d));
}

std::string RatFn::to_string() const {
  if (is_polynomial()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

std::ostream& operator<<(std::ostream& os, const RatFn& r) { return os << r.to_string(); }

Fraction::Fraction(Poly n, Poly d) : num(std::move(n)), den(std::move(d)) {
  if (den.is_zero()) throw std::domain_error("Fraction: zero denominator");
}

Fraction operator+(const Fraction& a, const Fraction& b) {
  if (a.den == b.den) return Fraction(a.num + b.num, a.den);
  return Fraction(a.num * b.den + b.num * a.den, a.den * b.den);
}

Fraction operator*(const Fraction& a, const Fraction& b) { return Fraction(a.num * b.num, a.den * b.den); }

Fraction operator/(const Fraction& a, const Fraction& b) {
  if (b.num.is_zero()) throw std::domain_error("Fraction division by zero");
  return Fraction(a.num * b.den, a.den * b.num);
}

}  // namespace covlab
