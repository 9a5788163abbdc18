// Independent reference computations used only by the tests. Nothing here
// calls the elimination or substitution code paths it is used to check.
#ifndef COVLAB_TESTS_ORACLES_HPP
#define COVLAB_TESTS_ORACLES_HPP

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "covlab/exactalg/matrix.hpp"

namespace oracle {

using covlab::Poly;
using covlab::PolyMatrix;
using covlab::Rational;

/// Determinant by Laplace expansion along the first row.
inline Poly cofactor_det(const PolyMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 1) return m(0, 0);
  Poly acc(m(0, 0).ring());
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j).is_zero()) continue;
    Poly term = m(0, j) * cofactor_det(m.minor(0, j));
    if (j % 2 == 0) {
      acc += term;
    } else {
      acc -= term;
    }
  }
  return acc;
}

/// Leibniz formula over the rationals (sum over all permutations).
inline Rational leibniz_det(const std::vector<std::vector<Rational>>& a) {
  const std::size_t n = a.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Rational total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (perm[i] > perm[j]) ++inversions;
      }
    }
    Rational prod = inversions % 2 == 0 ? 1 : -1;
    for (std::size_t i = 0; i < n && prod != 0; ++i) prod *= a[i][perm[i]];
    total += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

/// Largest k such that some k x k minor is a nonzero polynomial, checked by
/// exhaustive enumeration with cofactor determinants.
inline std::size_t max_minor_rank(const PolyMatrix& m) {
  for (std::size_t k = std::min(m.rows(), m.cols()); k > 0; --k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(m.rows(), k, 0, cur, rs);
    subsets(m.cols(), k, 0, cur, cs);
    for (const auto& r : rs) {
      for (const auto& c : cs) {
        if (!cofactor_det(m.select(r, c)).is_zero()) return k;
      }
    }
  }
  return 0;
}

/// Random polynomial with small integer coefficients and bounded degree.
inline Poly random_poly(const covlab::RingPtr& ring, std::mt19937_64& rng, int max_terms, int max_deg) {
  std::uniform_int_distribution<int> nterms(0, max_terms);
  std::uniform_int_distribution<int> coeff(-5, 5);
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::vector<covlab::Term> terms;
  int t = nterms(rng);
  for (int k = 0; k < t; ++k) {
    covlab::Exponents e(ring->size(), 0);
    int d = deg(rng);
    std::uniform_int_distribution<std::size_t> var(0, ring->size() - 1);
    for (int j = 0; j < d; ++j) e[var(rng)] += 1;
    terms.push_back({e, Rational(coeff(rng))});
  }
  return Poly::from_terms(ring, std::move(terms));
}

inline PolyMatrix random_matrix(const covlab::RingPtr& ring, std::mt19937_64& rng, std::size_t rows,
                                std::size_t cols, int max_terms = 3, int max_deg = 2) {
  PolyMatrix m(rows, cols, Poly(ring));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_poly(ring, rng, max_terms, max_deg);
  }
  return m;
}

}  // namespace oracle

#endif  // COVLAB_TESTS_ORACLES_HPP
