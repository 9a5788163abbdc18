#ifndef COVLAB_ACTION_ACT_HPP
#define COVLAB_ACTION_ACT_HPP

#include <optional>
#include <string>
#include <vector>

#include "covlab/action/group.hpp"

namespace covlab {

/// Ring with the variables of `x` followed by the element's parameters.
/// Throws VariableError when a coordinate name is also a group variable.
RingPtr acting_ring(const RingPtr& x, const ActingElement& e);

/// p(M v), where v is the first rows(M) variables of p's ring (the others
/// are left alone) and M = m.numer / scale^m.power. The result lives in `target`, which must
/// contain p's variables and the entries of M. Lower-degree parts are padded
/// with powers of `scale` so the denominator is scale^(power * deg_v p).
Fraction substitute_linear(const Poly& p, const ScaledMatrix& m, const Poly& scale, const RingPtr& target);
Fraction substitute_linear(const Fraction& f, const ScaledMatrix& m, const Poly& scale, const RingPtr& target);

/// Direct sum of two scaled matrices over a common power of `scale`.
ScaledMatrix direct_sum(const ScaledMatrix& a, const ScaledMatrix& b, const Poly& scale);

/// Canonical RatFn of num / den where den is a power of an irreducible (or
/// constant) `scale`: strips common factors of scale by exact division.
RatFn reduce_by_scale(Fraction f, const Poly& scale);

/// The function action (g . p)(x) = p(g^-1 x) on polynomials in the
/// X-coordinates. For the generic element the result carries powers of
/// det(g) in its denominator and lives in acting_ring.
RatFn act_on_poly(const ActingElement& g, const Poly& p);
RatFn act_on_ratfn(const ActingElement& g, const RatFn& r);

/// A one-dimensional character of the acting group: a table of values for a
/// finite group, a rational function of the g-variables for the generic
/// element.
class Character {
 public:
  static Character table(std::vector<Rational> values);
  static Character generic(RatFn value);

  bool is_table() const { return !generic_.has_value(); }
  const std::vector<Rational>& values() const { return values_; }
  const RatFn& value() const { return *generic_; }
  bool is_trivial() const;
  std::string to_string() const;

  friend bool operator==(const Character& a, const Character& b);
  friend bool operator!=(const Character& a, const Character& b) { return !(a == b); }
  friend Character operator*(const Character& a, const Character& b);

 private:
  std::vector<Rational> values_;
  std::optional<RatFn> generic_;
};

struct WeightResult {
  std::optional<Character> weight;
  std::string failure;  // why f is not a relative invariant
};

/// The weight theta with g . f = theta(g) f for every element (finite) or
/// the generic element, decided exactly; theta must not involve x.
WeightResult relative_weight(const Poly& f, const GroupAction& a);

/// g -> det(g_W)^-1.
Character det_w_inverse(const GroupAction& a);

/// theta(1) = 1 and theta(gh) = theta(g) theta(h): all pairs for finite
/// groups, a polynomial identity in two generic elements otherwise.
bool is_multiplicative(const Character& c, const GroupAction& a);

}  // namespace covlab

#endif  // COVLAB_ACTION_ACT_HPP
