#ifndef COVLAB_EXACTALG_POLY_HPP
#define COVLAB_EXACTALG_POLY_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "covlab/exactalg/ring.hpp"

namespace covlab {

using Exponents = std::vector<std::uint32_t>;

std::uint32_t total_degree(const Exponents& e);

/// Graded lexicographic order. Ties in total degree are broken
/// lexicographically with the last declared variable most significant, so
/// with variables (x1, x2) the terms of x1*x2^2 - x1^2*x2 print in that order.
bool monomial_less(const Exponents& a, const Exponents& b);

struct Term {
  Exponents exp;
  Rational coeff;
};

/// Sparse multivariate polynomial. Terms are kept strictly decreasing in
/// the monomial order with no zero coefficients, so structural equality is
/// mathematical equality.
class Poly {
 public:
  explicit Poly(RingPtr ring);

  static Poly constant(RingPtr ring, const Rational& c);
  static Poly variable(RingPtr ring, std::size_t index);
  static Poly variable(RingPtr ring, std::string_view name);
  static Poly monomial(RingPtr ring, Exponents exp, const Rational& c = 1);
  /// Sorts, merges duplicates and drops zeros.
  static Poly from_terms(RingPtr ring, std::vector<Term> terms);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  /// Value of a constant polynomial (0 for the zero polynomial).
  Rational constant_value() const;
  /// Coefficient of the exponent-zero term.
  Rational constant_term() const;

  /// -1 for the zero polynomial.
  int total_degree() const;
  int degree(std::size_t var) const;
  bool depends_on(std::size_t var) const;
  std::vector<std::size_t> support() const;
  bool is_homogeneous() const;

  const Term& leading_term() const;
  const Rational& leading_coeff() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly pow(unsigned e) const;
  Poly monic() const;
  /// Sign-normalized: leading coefficient positive.
  Poly with_positive_lead() const;

  Rational eval(std::span<const Rational> point) const;
  /// Replaces the selected variables by constants; the ring is unchanged.
  Poly partial_eval(std::span<const std::size_t> vars, std::span<const Rational> values) const;

  /// Substitutes images[i] for variable i (nullopt keeps the variable,
  /// re-expressed in `target`). All images must live in `target`.
  Poly compose(const std::vector<std::optional<Poly>>& images, const RingPtr& target) const;

  /// Re-expresses this polynomial in a ring whose variables include every
  /// variable this polynomial actually uses.
  Poly lift(const RingPtr& target) const;

  /// Coefficients c_k (k = 0..deg) with this = sum c_k * var^k.
  std::vector<Poly> coefficients_in(std::size_t var) const;
  static Poly from_coefficients(const RingPtr& ring, std::size_t var, const std::vector<Poly>& coeffs);

  /// Sum of the terms whose degree in `vars` equals `degree`.
  Poly component_of_degree(std::span<const std::size_t> vars, unsigned degree) const;

  std::string to_string() const;

 private:
  void check_ring(const Poly& o) const;
  void normalize_terms();

  RingPtr ring_;
  std::vector<Term> terms_;
};

/// q with a = q*b, or nullopt when b does not divide a exactly.
std::optional<Poly> divide_exact(const Poly& a, const Poly& b);
/// divide_exact that throws std::logic_error on a remainder.
Poly divide_or_throw(const Poly& a, const Poly& b);
/// Monic greatest common divisor (0 when both are zero).
Poly gcd(const Poly& a, const Poly& b);
Poly lcm(const Poly& a, const Poly& b);
/// Pseudo-remainder of a by b as polynomials in `var`.
Poly pseudo_remainder(const Poly& a, const Poly& b, std::size_t var);
/// Gcd of the coefficients with respect to `var` (monic).
Poly content_in(const Poly& p, std::size_t var);

std::ostream& operator<<(std::ostream& os, const Poly& p);

/// Canonical text of a rational coefficient: "p" or "p/q".
std::string rational_to_string(const Rational& c);

}  // namespace covlab

#endif  // COVLAB_EXACTALG_POLY_HPP
