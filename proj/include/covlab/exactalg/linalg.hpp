#ifndef COVLAB_EXACTALG_LINALG_HPP
#define COVLAB_EXACTALG_LINALG_HPP

#include <vector>

#include "covlab/exactalg/matrix.hpp"

namespace covlab {

/// Determinant by fraction-free (Bareiss) elimination. Each row's
/// polynomial content is factored out first and multiplied back at the end.
/// Throws DimensionError for non-square input.
Poly det(const PolyMatrix& m);

/// adj(M), so that M * adj(M) = adj(M) * M = det(M) * I.
PolyMatrix adjugate(const PolyMatrix& m);

/// Outcome of fraction-free row echelon reduction. The submatrix on
/// (pivot_rows, pivot_cols) is a nonvanishing maximal minor.
struct Echelon {
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_rows;  // indices into the input matrix
  std::vector<std::size_t> pivot_cols;
};

Echelon echelon(const PolyMatrix& m);

/// Rank over the fraction field of the coefficient ring.
std::size_t rank_ff(const PolyMatrix& m);

/// A polynomial kernel vector with entry `free_col` equal to the pivot minor
/// and zeros in every other non-pivot column (Cramer's rule on the pivot
/// minor). `free_col` must not be a pivot column.
std::vector<Poly> kernel_vector(const PolyMatrix& m, const Echelon& e, std::size_t free_col);

/// Matrix over the fraction field with each column multiplied by the lcm of
/// its denominators.
struct ClearedColumns {
  PolyMatrix matrix;
  std::vector<Poly> multipliers;  // column j of the input = matrix column j / multipliers[j]
};
ClearedColumns clear_column_denominators(const RatMatrix& m);

RatFn det(const RatMatrix& m);
std::size_t rank_ff(const RatMatrix& m);
/// Throws std::domain_error for singular matrices.
RatMatrix inverse(const RatMatrix& m);

/// Rank of a matrix of field constants (Q or F_p per `ring`).
std::size_t rank(const Matrix<Rational>& m, const RingPtr& ring);
Rational det(const Matrix<Rational>& m, const RingPtr& ring);

}  // namespace covlab

#endif  // COVLAB_EXACTALG_LINALG_HPP
