#ifndef COVLAB_EXACTALG_RING_HPP
#define COVLAB_EXACTALG_RING_HPP

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace covlab {

using Rational = mpq_class;

/// Raised when two objects that must share a shape (matrix sizes, rings,
/// vector lengths) do not.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised on a reference to a variable a ring does not declare.
class VariableError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

/// Polynomial ring over Q (characteristic 0) or F_p: an ordered list of
/// named indeterminates. The declaration order fixes the monomial order.
class Ring {
 public:
  static RingPtr make(std::vector<std::string> vars, unsigned long characteristic = 0);

  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t size() const { return vars_.size(); }
  unsigned long characteristic() const { return characteristic_; }

  std::optional<std::size_t> find(std::string_view name) const;
  /// Throws VariableError for unknown names.
  std::size_t index(std::string_view name) const;

  bool same_as(const Ring& other) const {
    return this == &other || (characteristic_ == other.characteristic_ && vars_ == other.vars_);
  }

  /// Canonical representative of a coefficient: unchanged over Q, reduced to
  /// an integer in [0, p) over F_p.
  Rational normalize(Rational c) const;
  Rational inverse(const Rational& c) const;

  /// Same variables followed by those of `extra` not already present.
  RingPtr extended(const std::vector<std::string>& extra) const;
  RingPtr with_characteristic(unsigned long p) const;

 private:
  Ring(std::vector<std::string> vars, unsigned long characteristic);

  std::vector<std::string> vars_;
  unsigned long characteristic_;
};

/// Union of two rings' variables (a's first). Characteristics must agree.
RingPtr join(const RingPtr& a, const RingPtr& b);

bool is_prime(unsigned long p);

}  // namespace covlab

#endif  // COVLAB_EXACTALG_RING_HPP
