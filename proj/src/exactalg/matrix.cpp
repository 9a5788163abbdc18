#include "covlab/exactalg/matrix.hpp"

namespace covlab {

PolyMatrix zero_matrix(const RingPtr& ring, std::size_t rows, std::size_t cols) {
  return PolyMatrix(rows, cols, Poly(ring));
}

PolyMatrix identity_matrix(const RingPtr& ring, std::size_t n) {
  PolyMatrix m = zero_matrix(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Poly::constant(ring, 1);
  return m;
}

PolyMatrix scale(const PolyMatrix& m, const Poly& c) {
  return m.map([&](const Poly& p) { return p * c; });
}

PolyMatrix lift(const PolyMatrix& m, const RingPtr& target) {
  return m.map([&](const Poly& p) { return p.lift(target); });
}

RatMatrix to_ratfn(const PolyMatrix& m) {
  return m.map([](const Poly& p) { return RatFn(p); });
}

bool is_zero(const PolyMatrix& m) {
  for (const auto& p : m.data()) {
    if (!p.is_zero()) return false;
  }
  return true;
}

PolyMatrix constant_matrix(const RingPtr& ring, std::size_t rows, std::size_t cols,
                           const std::vector<Rational>& entries) {
  if (entries.size() != rows * cols) throw DimensionError("constant_matrix: wrong entry count");
  std::vector<Poly> data;
  data.reserve(entries.size());
  for (const auto& e : entries) data.push_back(Poly::constant(ring, e));
  return PolyMatrix(rows, cols, std::move(data));
}

Matrix<Rational> evaluate(const PolyMatrix& m, std::span<const Rational> point) {
  return m.map([&](const Poly& p) { return p.eval(point); });
}

PolyMatrix block_diagonal(const RingPtr& ring, const std::vector<PolyMatrix>& blocks) {
  std::size_t rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  PolyMatrix out = zero_matrix(ring, rows, cols);
  std::size_t r0 = 0, c0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i) {
      for (std::size_t j = 0; j < b.cols(); ++j) out(r0 + i, c0 + j) = b(i, j).lift(ring);
    }
    r0 += b.rows();
    c0 += b.cols();
  }
  return out;
}

}  // namespace covlab
