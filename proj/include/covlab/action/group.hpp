#ifndef COVLAB_ACTION_GROUP_HPP
#define COVLAB_ACTION_GROUP_HPP

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "covlab/exactalg/linalg.hpp"

namespace covlab {

/// Raised when a group description is inconsistent: singular generators,
/// runaway closure, a W-representation that is not a homomorphism, or an
/// unknown action template.
class GroupError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The matrix numer / scale^power, with `scale` owned by the surrounding
/// ActingElement.
struct ScaledMatrix {
  PolyMatrix numer;
  unsigned power = 0;
};

/// One group element, or the generic element of a symbolic group, as it acts
/// on X and W. Entries live in `params` (no variables for a concrete element;
/// the g_pq for the generic element) and `scale` is 1 or det(g).
struct ActingElement {
  std::string label;
  RingPtr params;
  Poly scale;
  ScaledMatrix x, x_inv, w, w_inv;
  /// The concrete matrix g for a specialized symbolic element (row-major).
  std::optional<Matrix<Rational>> g;
};

using RationalMatrix = Matrix<Rational>;

/// Finite matrix group generated by pairs (x-rep, w-rep), enumerated by
/// breadth-first closure. Element 0 is the identity; elements are listed in
/// discovery order, so indices are deterministic.
class FiniteGroupAction {
 public:
  struct Generator {
    RationalMatrix x;
    RationalMatrix w;
  };

  static constexpr std::size_t default_order_cap = 10000;

  /// Throws GroupError on singular or inconsistent generators, when the
  /// closure exceeds `order_cap`, or when x -> w is not a homomorphism.
  FiniteGroupAction(std::vector<Generator> generators, unsigned long characteristic = 0,
                    std::size_t order_cap = default_order_cap);

  std::size_t order() const { return x_.size(); }
  std::size_t x_dim() const { return x_dim_; }
  std::size_t w_dim() const { return w_dim_; }
  unsigned long characteristic() const { return field_->characteristic(); }
  const RingPtr& field() const { return field_; }
  const std::vector<Generator>& generators() const { return generators_; }

  const RationalMatrix& x(std::size_t i) const { return x_[i]; }
  const RationalMatrix& w(std::size_t i) const { return w_[i]; }
  std::size_t inverse(std::size_t i) const { return inverse_[i]; }
  /// Index of element(i) * element(j).
  std::size_t multiply(std::size_t i, std::size_t j) const;
  /// Index of the element with this x-matrix, if it belongs to the group.
  std::optional<std::size_t> find(const RationalMatrix& x) const;

  ActingElement element(std::size_t i) const;

 private:
  std::vector<Generator> generators_;
  RingPtr field_;
  std::size_t x_dim_ = 0, w_dim_ = 0;
  std::vector<RationalMatrix> x_, w_;
  std::vector<std::size_t> inverse_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// A direct summand of a module of the generic group GL_n.
struct ModuleSummand {
  /// "gl_natural" (column vectors), "gl_conjugation" (n x n matrices,
  /// coordinates row-major), "gl_dual" (row vectors, g acts by the inverse
  /// transpose), "trivial", "scalar" (GL_1 acting by multiplication on k^dim)
  /// or "det_power" (the one-dimensional module det(g)^exponent).
  std::string kind;
  std::size_t copies = 1;
  std::size_t dim = 1;  // trivial and scalar only
  int exponent = 1;     // det_power only

  std::size_t dimension(std::size_t n) const;
};

/// The generic element g = (g_pq) of GL_n with its actions on X and W, each a
/// direct sum of template modules. Inverses use adj(g) / det(g).
class SymbolicGroupAction {
 public:
  /// `avoid` lists names (x and w coordinates) the g-variables must not take.
  /// Throws GroupError for unknown templates or failed identity/inverse checks.
  SymbolicGroupAction(std::size_t n, std::vector<ModuleSummand> x_module, std::vector<ModuleSummand> w_module,
                      unsigned long characteristic = 0, const std::vector<std::string>& avoid = {});

  std::size_t n() const { return n_; }
  std::size_t x_dim() const { return generic_->x.numer.rows(); }
  std::size_t w_dim() const { return generic_->w.numer.rows(); }
  unsigned long characteristic() const { return params_->characteristic(); }
  const RingPtr& params() const { return params_; }
  const Poly& det_poly() const { return generic_->scale; }
  const std::vector<ModuleSummand>& x_module() const { return x_module_; }
  const std::vector<ModuleSummand>& w_module() const { return w_module_; }
  const ActingElement& generic() const { return *generic_; }

  /// The element acting as the concrete matrix g (det(g) != 0).
  ActingElement specialize(const RationalMatrix& g) const;

  /// Transvections I + t E_pq (p != q) and diag(t, 1, ..., 1), with t a
  /// free parameter. They generate GL_n, so an identity holding for each of
  /// them as an identity in t holds for the whole group.
  const std::vector<ActingElement>& one_parameter_elements() const { return one_parameter_; }

  /// Check identities on one_parameter_elements() instead of the generic
  /// element. Much cheaper for large n or high degree.
  SymbolicGroupAction& check_on_generators(bool on = true) {
    check_on_generators_ = on;
    return *this;
  }
  bool checks_on_generators() const { return check_on_generators_; }

  /// Actions of a generic module built from summands, in the variables of
  /// `params` (which must contain the n^2 g-variables named by `g_names`).
  static std::pair<ScaledMatrix, ScaledMatrix> module_action(const std::vector<ModuleSummand>& summands,
                                                             std::size_t n, const RingPtr& params,
                                                             const std::vector<std::string>& g_names);

 private:
  std::size_t n_;
  std::vector<ModuleSummand> x_module_, w_module_;
  RingPtr params_;
  std::optional<ActingElement> generic_;
  std::vector<ActingElement> one_parameter_;
  bool check_on_generators_ = false;
};

/// Either kind of group with its actions on X and W.
class GroupAction {
 public:
  explicit GroupAction(FiniteGroupAction g);
  explicit GroupAction(SymbolicGroupAction g);

  bool is_finite() const { return finite_.has_value(); }
  const FiniteGroupAction& finite() const;
  const SymbolicGroupAction& symbolic() const;

  std::size_t x_dim() const;
  std::size_t w_dim() const;
  unsigned long characteristic() const;
  /// Group parameter ring: no variables for finite groups, the g-variables otherwise.
  const RingPtr& params() const { return params_; }

  /// Elements on which identities are checked: every element of a finite
  /// group, the generic element alone, or the one-parameter generators when
  /// the symbolic group was set to check on generators.
  std::vector<ActingElement> check_elements() const;
  /// Concrete elements to try when looking for a counterexample: the group
  /// itself, or specializations of the generic element (transvections, then
  /// diagonal matrices, then random integer matrices).
  std::vector<ActingElement> witness_candidates(std::uint64_t seed = 1) const;

  std::string describe() const;

 private:
  std::optional<FiniteGroupAction> finite_;
  std::optional<SymbolicGroupAction> symbolic_;
  RingPtr params_;
};

using ActionPtr = std::shared_ptr<const GroupAction>;

ActionPtr make_action(FiniteGroupAction g);
ActionPtr make_action(SymbolicGroupAction g);

/// Exact rational matrix helpers in the field of `field` (Q or F_p).
RationalMatrix rational_product(const RationalMatrix& a, const RationalMatrix& b, const RingPtr& field);
std::optional<RationalMatrix> rational_inverse(const RationalMatrix& a, const RingPtr& field);
RationalMatrix rational_identity(std::size_t n);
std::string matrix_to_string(const RationalMatrix& m);

}  // namespace covlab

#endif  // COVLAB_ACTION_GROUP_HPP
