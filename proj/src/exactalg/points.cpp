#include "covlab/exactalg/points.hpp"

#include <random>

namespace covlab {

namespace {

void fill(std::size_t pos, unsigned remaining, Point& cur, std::vector<Point>& out) {
  if (pos + 1 == cur.size()) {
    if (remaining == 0) {
      cur[pos] = 0;
      out.push_back(cur);
    } else {
      cur[pos] = static_cast<long>(remaining);
      out.push_back(cur);
      cur[pos] = -static_cast<long>(remaining);
      out.push_back(cur);
    }
    return;
  }
  for (unsigned v = remaining + 1; v-- > 0;) {
    if (v == 0) {
      cur[pos] = 0;
      fill(pos + 1, remaining, cur, out);
    } else {
      cur[pos] = static_cast<long>(v);
      fill(pos + 1, remaining - v, cur, out);
      cur[pos] = -static_cast<long>(v);
      fill(pos + 1, remaining - v, cur, out);
    }
  }
}

}  // namespace

std::vector<Point> points_of_norm(std::size_t dim, unsigned norm) {
  std::vector<Point> out;
  if (dim == 0) {
    if (norm == 0) out.emplace_back();
    return out;
  }
  Point cur(dim, Rational(0));
  fill(0, norm, cur, out);
  return out;
}

std::optional<Point> find_point(std::size_t dim, const PointPredicate& accept, const PointSearch& opts) {
  std::size_t tried = 0;
  for (unsigned norm = 0; tried < opts.small_limit; ++norm) {
    auto layer = points_of_norm(dim, norm);
    if (layer.empty()) break;
    for (const auto& p : layer) {
      if (accept(p)) return p;
      if (++tried >= opts.small_limit) break;
    }
    if (dim == 0) break;
  }
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<long> coord(-1000000, 1000000);
  for (std::size_t k = 0; k < opts.random_tries; ++k) {
    Point p(dim);
    for (auto& c : p) c = coord(rng);
    if (accept(p)) return p;
  }
  return std::nullopt;
}

}  // namespace covlab
