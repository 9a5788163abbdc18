#ifndef COVLAB_COVARIANT_COVARIANT_HPP
#define COVLAB_COVARIANT_COVARIANT_HPP

#include <optional>
#include <string>
#include <vector>

#include "covlab/action/act.hpp"
#include "covlab/exactalg/points.hpp"
#include "covlab/report.hpp"

namespace covlab {

enum class Equivariance { unchecked, equivariant, refuted };

std::string to_string(Equivariance e);

/// A W-valued polynomial or rational map on X, given by its coordinates in
/// the W-basis. Coordinates live in `x_ring`, whose variables are the
/// X-coordinates in the order the group acts on them.
class Covariant {
 public:
  /// Throws DimensionError when the ring or coordinate count does not match
  /// the action, VariableError when a coordinate name is a group variable.
  Covariant(ActionPtr action, RingPtr x_ring, std::vector<RatFn> coords);
  static Covariant polynomial(ActionPtr action, RingPtr x_ring, const std::vector<Poly>& coords);

  const ActionPtr& action() const { return action_; }
  const RingPtr& x_ring() const { return x_ring_; }
  const std::vector<RatFn>& coords() const { return coords_; }
  std::size_t size() const { return coords_.size(); }
  bool is_integral() const;
  /// Polynomial coordinates; throws std::invalid_argument for rational maps.
  std::vector<Poly> polys() const;
  Equivariance status() const { return status_; }
  Covariant with_status(Equivariance s) const;
  /// "(c1, c2, ...)" in canonical text.
  std::string to_string() const;

  friend bool operator==(const Covariant& a, const Covariant& b) { return a.coords_ == b.coords_; }

 private:
  ActionPtr action_;
  RingPtr x_ring_;
  std::vector<RatFn> coords_;
  Equivariance status_ = Equivariance::unchecked;
};

/// Exact check of F(g^-1 x) = g^-1 . F(x), i.e. g . F = F for the function
/// action, on every element (finite) or the generic element (symbolic). On
/// failure the report's data holds a concrete witness element and, when one
/// is found, a rational point separating the two sides.
Report verify_equivariance(const Covariant& f, const PointSearch& search = {});

/// The covariant with its status set from verify_equivariance.
Covariant verified(const Covariant& f, Report* report = nullptr, const PointSearch& search = {});

/// The d x d matrix whose column j holds the coordinates of F_j. Requires
/// d = dim W covariants with one shared action and polynomial coordinates.
PolyMatrix covariant_matrix(const std::vector<Covariant>& fs);

/// The dim W x e matrix of coordinates over the fraction field (any e).
RatMatrix coordinate_matrix(const std::vector<Covariant>& fs);

/// Evaluated coordinate matrix at a point of X; throws std::domain_error
/// where a denominator vanishes.
Matrix<Rational> evaluate_coordinates(const std::vector<Covariant>& fs, std::span<const Rational> point);

struct RelativeInvariant {
  Poly f;
  std::optional<Character> weight;  // absent when f = 0
  bool dependent() const { return f.is_zero(); }
};

/// f = det of the covariant matrix with its weight, checked to equal
/// g -> det(g_W)^-1. The covariants must be verified equivariant and
/// polynomial. f = 0 is returned as a dependent result.
RelativeInvariant det_relative_invariant(const std::vector<Covariant>& fs);

struct IndependenceOptions {
  PointSearch search;
  /// Point tried before the search (for instance a known witness).
  std::optional<Point> hint;
};

/// Rank of the coordinate matrix over k(X). When the rank equals the number
/// of covariants, also an exactly confirmed point where the values are
/// linearly independent. The report passes iff the family is independent.
Report generic_independence(const std::vector<Covariant>& fs, const IndependenceOptions& opts = {});

/// Point serialized as {"x1": "3", ...}.
nlohmann::ordered_json point_to_json(const RingPtr& ring, std::span<const Rational> point);

/// Shared checks for a family of covariants.
void require_same_action(const std::vector<Covariant>& fs);

}  // namespace covlab

#endif  // COVLAB_COVARIANT_COVARIANT_HPP
