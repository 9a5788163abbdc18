#ifndef COVLAB_EXACTALG_PARSE_HPP
#define COVLAB_EXACTALG_PARSE_HPP

#include <stdexcept>
#include <string>
#include <string_view>

#include "covlab/exactalg/ratfn.hpp"

namespace covlab {

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t column)
      : std::invalid_argument(what + " (column " + std::to_string(column + 1) + ")"), column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

/// Parses sums, products, quotients, integer powers and parentheses over
/// rational literals and the ring's variables. The canonical output of
/// Poly::to_string and RatFn::to_string is a subset of this grammar.
/// Unknown identifiers raise VariableError.
RatFn parse_ratfn(std::string_view text, const RingPtr& ring);

/// As parse_ratfn, rejecting non-constant denominators.
Poly parse_poly(std::string_view text, const RingPtr& ring);

}  // namespace covlab

#endif  // COVLAB_EXACTALG_PARSE_HPP
