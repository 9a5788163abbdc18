#ifndef COVLAB_EXACTALG_RATFN_HPP
#define COVLAB_EXACTALG_RATFN_HPP

#include <string>

#include "covlab/exactalg/poly.hpp"

namespace covlab {

/// Element of the fraction field, kept in canonical form: gcd(num, den) = 1
/// and den monic under the monomial order.
class RatFn {
 public:
  explicit RatFn(Poly num);
  RatFn(Poly num, Poly den);
  /// Caller guarantees gcd(num, den) = 1; only the denominator is made monic.
  static RatFn from_coprime(Poly num, Poly den);
  static RatFn constant(RingPtr ring, const Rational& c);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  const RingPtr& ring() const { return num_.ring(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_one(); }
  /// The numerator of a polynomial-valued element; throws otherwise.
  Poly as_poly() const;

  RatFn operator-() const;
  friend RatFn operator+(const RatFn& a, const RatFn& b);
  friend RatFn operator-(const RatFn& a, const RatFn& b);
  friend RatFn operator*(const RatFn& a, const RatFn& b);
  friend RatFn operator/(const RatFn& a, const RatFn& b);
  RatFn& operator+=(const RatFn& o) { return *this = *this + o; }
  RatFn& operator-=(const RatFn& o) { return *this = *this - o; }
  RatFn& operator*=(const RatFn& o) { return *this = *this * o; }

  /// Canonical-form equality.
  friend bool operator==(const RatFn& a, const RatFn& b);
  friend bool operator!=(const RatFn& a, const RatFn& b) { return !(a == b); }
  /// Equality decided by cross-multiplication.
  bool equals_by_cross_multiplication(const RatFn& o) const;

  RatFn pow(unsigned e) const;
  RatFn lift(const RingPtr& target) const;
  /// Throws std::domain_error where the denominator vanishes.
  Rational eval(std::span<const Rational> point) const;

  /// "num" for polynomials, "(num)/(den)" otherwise.
  std::string to_string() const;

 private:
  RatFn(Poly num, Poly den, bool);
  Poly num_;
  Poly den_;
};

/// Unreduced quotient for identity checks: arithmetic never takes a gcd and
/// equality is decided by cross-multiplication.
struct Fraction {
  Poly num;
  Poly den;

  explicit Fraction(Poly n) : num(std::move(n)), den(Poly::constant(num.ring(), 1)) {}
  Fraction(Poly n, Poly d);
  static Fraction of(const RatFn& r) { return Fraction(r.num(), r.den()); }

  Fraction operator-() const { return Fraction(-num, den); }
  friend Fraction operator+(const Fraction& a, const Fraction& b);
  friend Fraction operator-(const Fraction& a, const Fraction& b) { return a + (-b); }
  friend Fraction operator*(const Fraction& a, const Fraction& b);
  friend Fraction operator/(const Fraction& a, const Fraction& b);
  bool equals(const Fraction& o) const { return num * o.den == o.num * den; }
  bool is_zero() const { return num.is_zero(); }
  RatFn reduced() const { return RatFn(num, den); }
};

std::ostream& operator<<(std::ostream& os, const RatFn& r);

}  // namespace covlab

#endif  // COVLAB_EXACTALG_RATFN_HPP
