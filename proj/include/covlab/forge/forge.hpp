#ifndef COVLAB_FORGE_FORGE_HPP
#define COVLAB_FORGE_FORGE_HPP

#include <optional>
#include <string>
#include <vector>

#include "covlab/covariant/covariant.hpp"

namespace covlab {

/// |G| is zero in the coefficient field, so averaging over G is undefined.
class ModularObstruction : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// (1/|G|) sum_g g.H with (g.H)(x) = rho_W(g) H(g^-1 x), verified equivariant.
/// Finite groups only.
Covariant reynolds_project(const std::vector<Poly>& h, const ActionPtr& action, const RingPtr& x_ring);

/// The rank reached when generation stops short of dim W.
class GenerationError : public std::runtime_error {
 public:
  GenerationError(const std::string& what, std::size_t rank, std::vector<Covariant> found)
      : std::runtime_error(what), rank_(rank), found_(std::move(found)) {}
  std::size_t rank() const { return rank_; }
  const std::vector<Covariant>& found() const { return found_; }

 private:
  std::size_t rank_;
  std::vector<Covariant> found_;
};

/// Scales a nonzero polynomial vector to integer coefficients without common
/// factor and a positive leading coefficient in its first nonzero entry
/// (leading coefficient 1 in prime characteristic).
std::vector<Poly> normalize_content(std::vector<Poly> v);

/// Projects the seeds x^a e_i (by degree, then monomial order, then W index)
/// and keeps every projection that raises the rank of the family, until
/// dim W covariants are found. Kept covariants are content-normalized.
/// Throws GenerationError when degree_bound is exhausted first.
std::vector<Covariant> generate_covariants(const ActionPtr& action, const RingPtr& x_ring, unsigned degree_bound);

struct ClearedFamily {
  Poly h;         // least common denominator of all coordinates
  Poly f;         // product of g.h over G, an absolute invariant
  unsigned n = 0;  // smallest n with f^n F_i integral for every i
  std::vector<Covariant> covariants;
};

/// Multiplies rational covariants of a finite group by the smallest power of
/// f = prod_g g.h that makes them polynomial.
ClearedFamily clear_denominators(const std::vector<Covariant>& fs);

/// The covariants composed with the projection X x Y -> X, over an action on
/// X x Y whose first x_dim coordinates form a summand carrying the original
/// action. `y_vars` name the coordinates of Y.
std::vector<Covariant> lift_through_projection(const std::vector<Covariant>& fs,
                                               const std::vector<std::string>& y_vars, const ActionPtr& product);

struct FamilyParams {
  std::size_t n = 2;
  std::size_t m = 0;                 // projections: number of factors (default n)
  std::vector<std::string> words;    // matrix_words (default A^i B^j, 0 <= i, j < n)
  std::vector<unsigned> powers;      // power_maps (default 1..n)
};

struct Family {
  ActionPtr action;
  RingPtr ring;
  std::vector<Covariant> covariants;
  std::optional<Point> witness;  // a point where the family is independent, when known
};

std::vector<std::string> family_names();

/// matrix_words: words in A, B on pairs of n x n matrices under conjugation.
/// projections: (v_1, ..., v_m) -> v_i for i <= n on V^m, V = k^n.
/// power_maps: x -> (x_i^p) for S_n permuting k^n.
/// Every covariant is verified before returning; unknown names and malformed
/// words raise std::invalid_argument.
Family example_family(const std::string& name, const FamilyParams& params = {});

/// Letters of a word such as "A^2B" with their exponents; "1" is the empty word.
std::vector<std::pair<char, unsigned>> parse_word(const std::string& word);

}  // namespace covlab

#endif  // COVLAB_FORGE_FORGE_HPP
