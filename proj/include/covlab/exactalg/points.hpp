#ifndef COVLAB_EXACTALG_POINTS_HPP
#define COVLAB_EXACTALG_POINTS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "covlab/exactalg/ring.hpp"

namespace covlab {

using Point = std::vector<Rational>;
using PointPredicate = std::function<bool(std::span<const Rational>)>;

struct PointSearch {
  std::uint64_t seed = 1;
  std::size_t small_limit = 4096;  // small integer points tried first
  std::size_t random_tries = 256;  // then uniform draws from [-10^6, 10^6]
};

/// First point accepted by `accept`: small integer points in order of
/// increasing L1 norm, then random points. Deterministic for a fixed seed.
std::optional<Point> find_point(std::size_t dim, const PointPredicate& accept, const PointSearch& opts = {});

/// Points of Z^dim with L1 norm exactly `norm`, in a fixed order (earlier
/// coordinates vary first, positive before negative).
std::vector<Point> points_of_norm(std::size_t dim, unsigned norm);

}  // namespace covlab

#endif  // COVLAB_EXACTALG_POINTS_HPP
