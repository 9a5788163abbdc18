#ifndef COVLAB_REFLECT_REFLECT_HPP
#define COVLAB_REFLECT_REFLECT_HPP

#include <optional>
#include <string>
#include <vector>

#include "covlab/covariant/covariant.hpp"

namespace covlab {

/// sum_i coeffs[i] * covariants[i] = 0.
struct Relation {
  std::vector<RatFn> coeffs;
  std::vector<Covariant> covariants;
  bool verified = false;

  bool is_zero() const;
  bool is_polynomial() const;
  std::vector<Poly> polys() const;
  /// Largest total degree of a coefficient (polynomial relations; -1 for zero).
  int degree() const;
  /// Coefficients cleared of denominators and common factors, with the first
  /// nonzero one having a positive leading coefficient.
  Relation integral() const;
  std::string to_string() const;
};

/// True when sum_i h_i F_i is exactly the zero vector.
bool relation_holds(const std::vector<RatFn>& coeffs, const std::vector<Covariant>& fs);

/// Builds a relation and checks it exactly.
Relation make_relation(std::vector<RatFn> coeffs, std::vector<Covariant> fs);

struct FunctionFieldResult {
  std::optional<Relation> relation;  // dependent families
  std::optional<Poly> minor;         // independent families: a nonzero maximal minor
  std::vector<std::size_t> minor_rows;
  std::size_t rank = 0;
  Report report;
};

/// A kernel vector of the coordinate matrix over k(X), scaled so its last
/// nonzero entry is 1, or a nonvanishing maximal minor certifying
/// independence.
FunctionFieldResult relation_over_function_field(const std::vector<Covariant>& fs);

struct SpaceFlags {
  bool factorial = false;     // k[X] is a unique factorization domain
  bool scalar_units = false;  // k[X]^x = k^x
};

class NoDependenceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A caller-asserted hypothesis turned out to be false for the data.
class HypothesisError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RelativeRelation {
  Relation relation;
  std::vector<std::optional<Character>> weights;  // nullopt for zero coefficients
  Character weight;
  Report report;
};

/// A relation whose coefficients are relative invariants of one common
/// weight: the invariant relation over k(X)^G times the product of its
/// denominators, divided by the gcd of the coefficients.
RelativeRelation relative_invariant_relation(const std::vector<Covariant>& fs, const SpaceFlags& flags);

/// An element acting on X = V as a reflection: it fixes ker(l) pointwise.
struct Reflection {
  ActingElement element;
  RationalMatrix matrix;  // action on X
  Poly l;                 // first nonzero coefficient 1
};

/// The reflections of a finite group acting on X: rank(x(g) - I) = 1.
std::vector<Reflection> find_reflections(const GroupAction& a, const RingPtr& x_ring);

/// The element of `a` acting on X by the matrix g (finite: a group element;
/// symbolic: the specialization at g), checked to be a reflection.
Reflection reflection_from(const GroupAction& a, const RingPtr& x_ring, const RationalMatrix& g);

class DescentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// b_j = (h_j - s.h_j) / l, a relation of strictly smaller degree or zero.
/// Throws DescentError when l does not divide h_j - s.h_j.
Relation lower_relation(const Relation& r, const Reflection& s);

struct Descent {
  Relation relation;  // coefficients fixed by every given reflection
  std::size_t steps = 0;
  Report report;
};

/// Lowers at the first reflection giving a nonzero result until none does.
Descent descend_to_invariant_coefficients(const Relation& r, const std::vector<Reflection>& reflections);

struct Bridges {
  bool fraction_field = false;  // k(X)^G = Frac(k[X]^G)
  bool reflection = false;      // G generated by reflections of X = V
  std::string note;
};

/// Module independence over k[X]^G: "independent", "dependent" or "abstain"
/// in data["verdict"]. Passes only when the family is independent. Both
/// bridges at once raise std::invalid_argument.
Report module_independence_verdict(const std::vector<Covariant>& fs, const Bridges& bridges,
                                   const IndependenceOptions& opts = {});

}  // namespace covlab

#endif  // COVLAB_REFLECT_REFLECT_HPP
