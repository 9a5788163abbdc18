#ifndef COVLAB_NONAME_NONAME_HPP
#define COVLAB_NONAME_NONAME_HPP

#include <string>
#include <vector>

#include "covlab/covariant/covariant.hpp"

namespace covlab {

/// A precondition on group invariance failed; `witness` names a group
/// element for which it fails.
class NotInvariantError : public std::invalid_argument {
 public:
  NotInvariantError(const std::string& what, std::string witness)
      : std::invalid_argument(what + " (witness: " + witness + ")"), witness_(std::move(witness)) {}
  const std::string& witness() const { return witness_; }

 private:
  std::string witness_;
};

/// The mutually inverse maps X_f x W -> X_f x k^d, (x, w) -> (x, Phi(x, w)),
/// and (x, a) -> (x, sum_i a_i F_i(x)). Phi_i = sum_j phi_num(i, j) w_j / f,
/// so phi = phi_num / f = F^-1 with F = phi_inv the covariant matrix.
struct NoNameMap {
  ActionPtr action;
  RingPtr x_ring;
  std::vector<std::string> w_names;    // coordinates of W
  std::vector<std::string> out_names;  // coordinates of k^d
  Poly f;
  Character weight;
  PolyMatrix phi_num;  // adj(F)
  PolyMatrix phi_inv;  // F

  std::size_t d() const { return phi_inv.rows(); }
  /// Ring of x-coordinates followed by w-coordinates.
  RingPtr xw_ring() const;
  /// Ring of x-coordinates followed by the k^d coordinates.
  RingPtr xa_ring() const;
  /// Canonical entries phi_num(i, j) / f.
  RatMatrix phi() const;
  /// Phi_i(x, w) in xw_ring, unreduced (denominator f).
  std::vector<Fraction> generators() const;
  /// Phi(x, w) with w replaced by the given values (polynomials in x), as
  /// canonical rational functions of x.
  std::vector<RatFn> generators_at(const std::vector<Poly>& w_values) const;
  /// Columns of phi_inv as covariants.
  std::vector<Covariant> covariants() const;
};

/// Names not clashing with `taken`: prefix1..prefixN for the first prefix
/// among `prefixes` that is free.
std::vector<std::string> fresh_names(const std::vector<std::string>& prefixes, std::size_t count,
                                     const std::vector<std::string>& taken);

/// Builds Phi = adj(F) / det(F) from d verified covariants with f = det(F)
/// nonzero; every invariant is checked before returning (std::logic_error
/// if one fails). Throws std::invalid_argument for dependent or unverified
/// covariants.
NoNameMap build_isomorphism(const std::vector<Covariant>& fs, std::vector<std::string> w_names = {},
                            std::vector<std::string> out_names = {});

/// Independent re-derivation of every NoNameMap invariant, one named check
/// each. A broken phi entry is reported as phi[i][j].
Report verify_isomorphism(const NoNameMap& m);

/// Columns of phi^-1 as verified, generically independent covariants.
/// Rows of phi must satisfy g.phi = phi * g_W (NotInvariantError with a
/// witness element otherwise); singular phi raises std::domain_error.
std::vector<Covariant> covariants_from_generators(const RatMatrix& phi, const ActionPtr& action,
                                                  const RingPtr& x_ring);

/// Thrown when the linear part of Phi is not a unit on the declared open set.
class NonUnitError : public std::invalid_argument {
 public:
  NonUnitError(const std::string& what, std::string det) : std::invalid_argument(what), det_(std::move(det)) {}
  const std::string& determinant() const { return det_; }

 private:
  std::string det_;
};

struct Linearization {
  RatMatrix linear;  // coefficient of w_j in Phi_i
  RatFn det;
  std::vector<Covariant> covariants;
};

/// From invariant coordinates Phi_1..Phi_d in k(X)[W] (denominators free of
/// w), extracts the part of degree one in w, checks its determinant is c * f^k
/// for a nonzero constant c (a unit after inverting the declared relative
/// invariant f; f = 1 means a constant), and inverts it. The columns of the
/// inverse are returned as verified covariants.
Linearization linearize_isomorphism(const std::vector<RatFn>& phi, const ActionPtr& action, const RingPtr& x_ring,
                                    const std::vector<std::string>& w_names, const Poly& f);

}  // namespace covlab

#endif  // COVLAB_NONAME_NONAME_HPP
