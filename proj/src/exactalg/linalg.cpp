#include "covlab/exactalg/linalg.hpp"

#include <algorithm>

namespace covlab {

namespace {

const RingPtr& ring_of(const PolyMatrix& m) {
  if (m.data().empty()) throw DimensionError("empty matrix has no ring");
  return m(0, 0).ring();
}

Poly row_content(const PolyMatrix& m, std::size_t i) {
  const RingPtr& ring = m(i, 0).ring();
  std::vector<const Poly*> entries;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    const Poly& p = m(i, j);
    if (p.is_zero()) continue;
    if (p.is_constant()) return Poly::constant(ring, 1);
    entries.push_back(&p);
  }
  if (entries.empty()) return Poly(ring);
  std::sort(entries.begin(), entries.end(), [](const Poly* a, const Poly* b) { return a->size() < b->size(); });
  Poly g = entries.front()->monic();
  for (std::size_t k = 1; k < entries.size() && !g.is_constant(); ++k) g = gcd(g, *entries[k]);
  return g;
}

// Index of the row at or below `from` with a nonzero entry in `col` and the
// fewest terms.
std::optional<std::size_t> choose_pivot(const PolyMatrix& a, std::size_t from, std::size_t col) {
  std::optional<std::size_t> best;
  for (std::size_t i = from; i < a.rows(); ++i) {
    if (a(i, col).is_zero()) continue;
    if (!best || a(i, col).size() < a(*best, col).size()) best = i;
  }
  return best;
}

}  // namespace

Poly det(const PolyMatrix& m) {
  if (!m.is_square()) throw DimensionError("det: matrix is " + std::to_string(m.rows()) + "x" +
                                           std::to_string(m.cols()) + ", not square");
  if (m.rows() == 0) throw DimensionError("det: empty matrix");
  const RingPtr& ring = ring_of(m);
  const std::size_t n = m.rows();
  PolyMatrix a = m;
  Poly factor = Poly::constant(ring, 1);
  for (std::size_t i = 0; i < n; ++i) {
    Poly c = row_content(a, i);
    if (c.is_zero()) return Poly(ring);
    if (!c.is_constant()) {
      for (std::size_t j = 0; j < n; ++j) a(i, j) = divide_or_throw(a(i, j), c);
      factor *= c;
    }
  }
  bool negate = false;
  Poly prev = Poly::constant(ring, 1);
  for (std::size_t k = 0; k < n; ++k) {
    auto p = choose_pivot(a, k, k);
    if (!p) return Poly(ring);
    if (*p != k) {
      a.swap_rows(*p, k);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = divide_or_throw(a(k, k) * a(i, j) - a(i, k) * a(k, j), prev);
      }
      a(i, k) = Poly(ring);
    }
    prev = a(k, k);
  }
  Poly d = a(n - 1, n - 1) * factor;
  return negate ? -d : d;
}

PolyMatrix adjugate(const PolyMatrix& m) {
  if (!m.is_square()) throw DimensionError("adjugate: matrix is not square");
  const RingPtr& ring = ring_of(m);
  const std::size_t n = m.rows();
  if (n == 1) return identity_matrix(ring, 1);
  PolyMatrix out = zero_matrix(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Poly c = det(m.minor(j, i));
      out(i, j) = ((i + j) % 2 == 0) ? c : -c;
    }
  }
  return out;
}

Echelon echelon(const PolyMatrix& m) {
  Echelon e;
  if (m.rows() == 0 || m.cols() == 0) return e;
  const RingPtr& ring = ring_of(m);
  PolyMatrix a = m;
  std::vector<std::size_t> row_index(m.rows());
  for (std::size_t i = 0; i < row_index.size(); ++i) row_index[i] = i;
  Poly prev = Poly::constant(ring, 1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    auto p = choose_pivot(a, r, c);
    if (!p) continue;
    a.swap_rows(*p, r);
    std::swap(row_index[*p], row_index[r]);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      for (std::size_t j = c + 1; j < m.cols(); ++j) {
        a(i, j) = divide_or_throw(a(r, c) * a(i, j) - a(i, c) * a(r, j), prev);
      }
      a(i, c) = Poly(ring);
    }
    prev = a(r, c);
    e.pivot_rows.push_back(row_index[r]);
    e.pivot_cols.push_back(c);
    ++r;
  }
  e.rank = r;
  // Report pivot rows in increasing order; the minor is the same up to sign.
  std::sort(e.pivot_rows.begin(), e.pivot_rows.end());
  return e;
}

std::size_t rank_ff(const PolyMatrix& m) { return echelon(m).rank; }

std::vector<Poly> kernel_vector(const PolyMatrix& m, const Echelon& e, std::size_t free_col) {
  if (std::find(e.pivot_cols.begin(), e.pivot_cols.end(), free_col) != e.pivot_cols.end()) {
    throw std::invalid_argument("kernel_vector: column is a pivot column");
  }
  const RingPtr& ring = ring_of(m);
  std::vector<Poly> v(m.cols(), Poly(ring));
  if (e.rank == 0) {
    v[free_col] = Poly::constant(ring, 1);
    return v;
  }
  PolyMatrix minor = m.select(e.pivot_rows, e.pivot_cols);
  PolyMatrix adj = adjugate(minor);
  v[free_col] = det(minor);
  for (std::size_t k = 0; k < e.rank; ++k) {
    Poly acc(ring);
    for (std::size_t l = 0; l < e.rank; ++l) acc += adj(k, l) * m(e.pivot_rows[l], free_col);
    v[e.pivot_cols[k]] = -acc;
  }
  return v;
}

ClearedColumns clear_column_denominators(const RatMatrix& m) {
  if (m.data().empty()) throw DimensionError("empty matrix");
  const RingPtr& ring = m(0, 0).ring();
  PolyMatrix out = zero_matrix(ring, m.rows(), m.cols());
  std::vector<Poly> multipliers;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Poly l = Poly::constant(ring, 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (!m(i, j).is_polynomial()) l = lcm(l, m(i, j).den());
    }
    for (std::size_t i = 0; i < m.rows(); ++i) {
      out(i, j) = divide_or_throw(m(i, j).num() * l, m(i, j).den());
    }
    multipliers.push_back(std::move(l));
  }
  return {std::move(out), std::move(multipliers)};
}

RatFn det(const RatMatrix& m) {
  auto cleared = clear_column_denominators(m);
  Poly d = det(cleared.matrix);
  Poly denom = Poly::constant(d.ring(), 1);
  for (const auto& c : cleared.multipliers) denom *= c;
  return RatFn(d, denom);
}

std::size_t rank_ff(const RatMatrix& m) {
  if (m.data().empty()) return 0;
  return rank_ff(clear_column_denominators(m).matrix);
}

RatMatrix inverse(const RatMatrix& m) {
  if (!m.is_square()) throw DimensionError("inverse: matrix is not square");
  const RingPtr& ring = m(0, 0).ring();
  Poly l = Poly::constant(ring, 1);
  for (const auto& x : m.data()) {
    if (!x.is_polynomial()) l = lcm(l, x.den());
  }
  PolyMatrix p = m.map([&](const RatFn& x) { return divide_or_throw(x.num() * l, x.den()); });
  Poly d = det(p);
  if (d.is_zero()) throw std::domain_error("inverse: matrix is singular");
  PolyMatrix adj = adjugate(p);
  return adj.map([&](const Poly& a) { return RatFn(a * l, d); });
}

std::size_t rank(const Matrix<Rational>& m, const RingPtr& ring) {
  Matrix<Rational> a = m;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && ring->normalize(a(p, c)) == 0) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(p, r);
    Rational inv = ring->inverse(ring->normalize(a(r, c)));
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      Rational f = ring->normalize(a(i, c) * inv);
      if (f == 0) continue;
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) = ring->normalize(a(i, j) - f * a(r, j));
    }
    ++r;
  }
  return r;
}

Rational det(const Matrix<Rational>& m, const RingPtr& ring) {
  if (!m.is_square()) throw DimensionError("det: matrix is not square");
  Matrix<Rational> a = m;
  const std::size_t n = a.rows();
  Rational d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && ring->normalize(a(p, c)) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      a.swap_rows(p, c);
      d = -d;
    }
    Rational piv = ring->normalize(a(c, c));
    d = ring->normalize(d * piv);
    Rational inv = ring->inverse(piv);
    for (std::size_t i = c + 1; i < n; ++i) {
      Rational f = ring->normalize(a(i, c) * inv);
      if (f == 0) continue;
      for (std::size_t j = c; j < n; ++j) a(i, j) = ring->normalize(a(i, j) - f * a(c, j));
    }
  }
  return ring->normalize(d);
}

}  // namespace covlab
