#include "covlab/covariant/covariant.hpp"

#include <algorithm>
#include <sstream>

namespace covlab {

std::string to_string(Equivariance e) {
  switch (e) {
    case Equivariance::unchecked:
      return "unchecked";
    case Equivariance::equivariant:
      return "equivariant";
    case Equivariance::refuted:
      return "refuted";
  }
  return "unknown";
}

Covariant::Covariant(ActionPtr action, RingPtr x_ring, std::vector<RatFn> coords)
    : action_(std::move(action)), x_ring_(std::move(x_ring)), coords_(std::move(coords)) {
  if (!action_) throw std::invalid_argument("covariant without a group action");
  if (x_ring_->size() != action_->x_dim()) {
    throw DimensionError("X has " + std::to_string(action_->x_dim()) + " coordinates but " +
                         std::to_string(x_ring_->size()) + " variables were declared");
  }
  if (coords_.size() != action_->w_dim()) {
    throw DimensionError("covariant has " + std::to_string(coords_.size()) + " coordinates but W has dimension " +
                         std::to_string(action_->w_dim()));
  }
  if (x_ring_->characteristic() != action_->characteristic()) {
    throw DimensionError("coordinate ring and group have different characteristic");
  }
  for (auto& c : coords_) {
    if (!c.ring()->same_as(*x_ring_)) c = c.lift(x_ring_);
  }
  for (const auto& name : action_->params()->vars()) {
    if (x_ring_->find(name)) throw VariableError("coordinate '" + name + "' clashes with a group variable");
  }
}

Covariant Covariant::polynomial(ActionPtr action, RingPtr x_ring, const std::vector<Poly>& coords) {
  std::vector<RatFn> r;
  for (const auto& p : coords) r.emplace_back(p);
  return Covariant(std::move(action), std::move(x_ring), std::move(r));
}

bool Covariant::is_integral() const {
  for (const auto& c : coords_) {
    if (!c.is_polynomial()) return false;
  }
  return true;
}

std::vector<Poly> Covariant::polys() const {
  std::vector<Poly> out;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (!coords_[i].is_polynomial()) {
      throw std::invalid_argument("coordinate " + std::to_string(i) + " of " + to_string() +
                                  " is not a polynomial; clear denominators first");
    }
    out.push_back(coords_[i].num());
  }
  return out;
}

Covariant Covariant::with_status(Equivariance s) const {
  Covariant c = *this;
  c.status_ = s;
  return c;
}

std::string Covariant::to_string() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) os << (i ? ", " : "") << coords_[i].to_string();
  os << ")";
  return os.str();
}

nlohmann::ordered_json point_to_json(const RingPtr& ring, std::span<const Rational> point) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < point.size(); ++i) j[ring->vars()[i]] = rational_to_string(point[i]);
  return j;
}

namespace {

struct Sides {
  std::vector<Fraction> lhs, rhs;
};

// F(g^-1 x) and g^-1 F(x), coordinate by coordinate.
Sides both_sides(const Covariant& f, const ActingElement& e) {
  RingPtr target = acting_ring(f.x_ring(), e);
  Poly s = e.scale.lift(target);
  Poly den = s.pow(e.w_inv.power);
  Sides out;
  std::vector<Fraction> lifted;
  for (const auto& c : f.coords()) {
    out.lhs.push_back(substitute_linear(Fraction::of(c), e.x_inv, e.scale, target));
    lifted.push_back(Fraction::of(c.lift(target)));
  }
  const PolyMatrix& w = e.w_inv.numer;
  for (std::size_t i = 0; i < w.rows(); ++i) {
    if (f.is_integral()) {
      Poly acc(target);
      for (std::size_t j = 0; j < w.cols(); ++j) {
        if (!w(i, j).is_zero()) acc += w(i, j).lift(target) * lifted[j].num;
      }
      out.rhs.emplace_back(acc, den);
    } else {
      Fraction acc{Poly(target)};
      for (std::size_t j = 0; j < w.cols(); ++j) {
        if (!w(i, j).is_zero()) acc = acc + Fraction(w(i, j).lift(target)) * lifted[j];
      }
      out.rhs.push_back(acc / Fraction(den));
    }
  }
  return out;
}

std::optional<std::size_t> first_mismatch(const Sides& s) {
  for (std::size_t i = 0; i < s.lhs.size(); ++i) {
    if (!s.lhs[i].equals(s.rhs[i])) return i;
  }
  return std::nullopt;
}

std::optional<Rational> eval_fraction(const Fraction& f, std::span<const Rational> pt, const RingPtr& ring) {
  Rational d = ring->normalize(f.den.eval(pt));
  if (d == 0) return std::nullopt;
  return ring->normalize(f.num.eval(pt) / d);
}

}  // namespace

Report verify_equivariance(const Covariant& f, const PointSearch& search) {
  Report r;
  r.operation = "verify_equivariance";
  const GroupAction& a = *f.action();
  r.data["covariant"] = f.to_string();
  r.data["group"] = a.describe();
  std::optional<std::pair<ActingElement, std::size_t>> failure;
  std::size_t checked = 0;
  for (const auto& e : a.check_elements()) {
    ++checked;
    if (auto i = first_mismatch(both_sides(f, e))) {
      failure.emplace(e, *i);
      break;
    }
  }
  std::string scope = a.is_finite() ? "all " + std::to_string(a.finite().order()) + " group elements"
                                    : a.symbolic().checks_on_generators() ? "each one-parameter generator"
                                                                          : "the generic element";
  if (!failure) {
    r.add("F(g^-1 x) = g^-1 F(x)", true, "exact identity for " + scope);
    r.summary = "equivariant";
    r.data["status"] = "equivariant";
    return r;
  }
  r.add("F(g^-1 x) = g^-1 F(x)", false,
        "coordinate " + std::to_string(failure->second) + " differs for " + failure->first.label);
  r.summary = "not equivariant";
  r.data["status"] = "refuted";

  // A concrete element and point where the two sides differ.
  std::optional<ActingElement> concrete;
  std::optional<Sides> sides;
  if (a.is_finite()) {
    concrete = failure->first;
    sides = both_sides(f, *concrete);
  } else {
    for (const auto& e : a.witness_candidates(search.seed)) {
      Sides s = both_sides(f, e);
      if (first_mismatch(s)) {
        concrete = e;
        sides = std::move(s);
        break;
      }
    }
  }
  nlohmann::ordered_json w;
  if (concrete) {
    w["element"] = concrete->label;
    if (concrete->g) w["g"] = matrix_to_string(*concrete->g);
    std::size_t coord = *first_mismatch(*sides);
    w["coordinate"] = coord;
    const RingPtr& ring = f.x_ring();
    auto pt = find_point(ring->size(),
                         [&](std::span<const Rational> p) {
                           for (std::size_t i = 0; i < sides->lhs.size(); ++i) {
                             auto l = eval_fraction(sides->lhs[i], p, ring);
                             auto rr = eval_fraction(sides->rhs[i], p, ring);
                             if (l && rr && *l != *rr) {
                               coord = i;
                               return true;
                             }
                           }
                           return false;
                         },
                         search);
    if (pt) {
      w["coordinate"] = coord;
      w["point"] = point_to_json(ring, *pt);
      w["lhs"] = rational_to_string(*eval_fraction(sides->lhs[coord], *pt, ring));
      w["rhs"] = rational_to_string(*eval_fraction(sides->rhs[coord], *pt, ring));
    }
  }
  r.data["witness"] = w;
  return r;
}

Covariant verified(const Covariant& f, Report* report, const PointSearch& search) {
  Report r = verify_equivariance(f, search);
  Covariant out = f.with_status(r.passed ? Equivariance::equivariant : Equivariance::refuted);
  if (report) *report = std::move(r);
  return out;
}

void require_same_action(const std::vector<Covariant>& fs) {
  for (std::size_t j = 1; j < fs.size(); ++j) {
    if (fs[j].action() != fs[0].action()) {
      throw std::invalid_argument("covariant " + std::to_string(j) + " uses a different group action");
    }
    if (!fs[j].x_ring()->same_as(*fs[0].x_ring())) {
      throw DimensionError("covariant " + std::to_string(j) + " is defined on a different space");
    }
  }
}

RatMatrix coordinate_matrix(const std::vector<Covariant>& fs) {
  if (fs.empty()) throw DimensionError("empty covariant list");
  require_same_action(fs);
  const std::size_t d = fs[0].size();
  std::vector<RatFn> data;
  for (std::size_t i = 0; i < d; ++i) {
    for (const auto& f : fs) data.push_back(f.coords()[i]);
  }
  return RatMatrix(d, fs.size(), std::move(data));
}

PolyMatrix covariant_matrix(const std::vector<Covariant>& fs) {
  if (fs.empty()) throw DimensionError("empty covariant list");
  require_same_action(fs);
  const std::size_t d = fs[0].action()->w_dim();
  if (fs.size() != d) {
    throw DimensionError("covariant matrix needs dim W = " + std::to_string(d) + " covariants, got " +
                         std::to_string(fs.size()));
  }
  std::vector<std::vector<Poly>> cols;
  for (const auto& f : fs) cols.push_back(f.polys());
  PolyMatrix m = zero_matrix(fs[0].x_ring(), d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) m(i, j) = cols[j][i];
  }
  return m;
}

Matrix<Rational> evaluate_coordinates(const std::vector<Covariant>& fs, std::span<const Rational> point) {
  RatMatrix m = coordinate_matrix(fs);
  const RingPtr& ring = fs[0].x_ring();
  return m.map([&](const RatFn& r) { return ring->normalize(r.eval(point)); });
}

RelativeInvariant det_relative_invariant(const std::vector<Covariant>& fs) {
  for (std::size_t j = 0; j < fs.size(); ++j) {
    if (fs[j].status() != Equivariance::equivariant) {
      throw std::invalid_argument("covariant " + std::to_string(j) + " " + fs[j].to_string() +
                                  " is not verified equivariant");
    }
    if (!fs[j].is_integral()) {
      throw std::invalid_argument("covariant " + std::to_string(j) +
                                  " has rational coordinates; clear denominators first");
    }
  }
  Poly f = det(covariant_matrix(fs));
  if (f.is_zero()) return {f, std::nullopt};
  const GroupAction& a = *fs[0].action();
  WeightResult w = relative_weight(f, a);
  if (!w.weight) throw std::logic_error("det of equivariant covariants is not a relative invariant: " + w.failure);
  if (*w.weight != det_w_inverse(a)) {
    throw std::logic_error("weight of det(F) is " + w.weight->to_string() + ", expected det(g_W)^-1");
  }
  return {f, w.weight};
}

Report generic_independence(const std::vector<Covariant>& fs, const IndependenceOptions& opts) {
  Report r;
  r.operation = "generic_independence";
  const std::size_t e = fs.size();
  r.data["covariants"] = e;
  if (e == 0) {
    r.summary = "independent, rank 0 (empty family)";
    r.data["rank"] = 0;
    r.data["independent"] = true;
    return r;
  }
  require_same_action(fs);
  const std::size_t d = fs[0].action()->w_dim();
  const RingPtr& ring = fs[0].x_ring();
  r.data["dim_w"] = d;

  std::vector<Poly> dens;
  for (const auto& f : fs) {
    for (const auto& c : f.coords()) {
      if (!c.is_polynomial()) dens.push_back(c.den());
    }
  }
  auto defined = [&](std::span<const Rational> p) {
    for (const auto& dn : dens) {
      if (ring->normalize(dn.eval(p)) == 0) return false;
    }
    return true;
  };
  // Rows of the values at p forming a basis of the row space, first ones first.
  auto basis_rows = [&](const Matrix<Rational>& values) {
    std::vector<std::size_t> rows, cols(e);
    for (std::size_t j = 0; j < e; ++j) cols[j] = j;
    for (std::size_t i = 0; i < values.rows() && rows.size() < e; ++i) {
      rows.push_back(i);
      if (rank(values.select(rows, cols), ring) < rows.size()) rows.pop_back();
    }
    return rows;
  };
  auto full_rank_at = [&](std::span<const Rational> p) {
    return defined(p) && rank(evaluate_coordinates(fs, p), ring) == e;
  };

  // A point where the values have rank e certifies rank e over k(X).
  std::optional<Point> pt;
  if (e <= d) {
    if (opts.hint && opts.hint->size() == ring->size() && full_rank_at(*opts.hint)) pt = opts.hint;
    if (!pt) {
      PointSearch quick = opts.search;
      quick.small_limit = std::min<std::size_t>(quick.small_limit, 256);
      quick.random_tries = std::min<std::size_t>(quick.random_tries, 32);
      pt = find_point(ring->size(), full_rank_at, quick);
    }
  }
  if (!pt) {
    auto cleared = clear_column_denominators(coordinate_matrix(fs));
    Echelon ech = echelon(cleared.matrix);
    if (ech.rank < e) {
      r.data["rank"] = ech.rank;
      r.data["independent"] = false;
      r.add("rank over k(X) equals the number of covariants", false,
            "rank " + std::to_string(ech.rank) + " < " + std::to_string(e) +
                (e > d ? " (more covariants than dim W)" : ""));
      r.summary = "dependent, rank " + std::to_string(ech.rank);
      return r;
    }
    std::vector<std::size_t> all_cols(e);
    for (std::size_t j = 0; j < e; ++j) all_cols[j] = j;
    Poly minor = det(cleared.matrix.select(ech.pivot_rows, all_cols));
    pt = find_point(
        ring->size(), [&](std::span<const Rational> p) { return defined(p) && ring->normalize(minor.eval(p)) != 0; },
        opts.search);
  }
  r.data["rank"] = e;
  r.data["independent"] = true;
  r.add("rank over k(X) equals the number of covariants", true, "rank " + std::to_string(e));
  if (!pt) {
    r.add("witness point", false, "no point with nonvanishing minor found");
    r.summary = "independent over k(X), no witness point found";
    return r;
  }
  Matrix<Rational> values = evaluate_coordinates(fs, *pt);
  std::vector<std::size_t> rows = basis_rows(values), all_cols(e);
  for (std::size_t j = 0; j < e; ++j) all_cols[j] = j;
  std::size_t rk = rank(values, ring);
  Rational minor_value = det(values.select(rows, all_cols), ring);
  r.add("witness point", rk == e,
        "values at the point have rank " + std::to_string(rk) + ", minor " + rational_to_string(minor_value));
  nlohmann::ordered_json w;
  w["point"] = point_to_json(ring, *pt);
  w["rows"] = rows;
  w["determinant"] = rational_to_string(minor_value);
  r.data["witness"] = w;
  r.summary = "independent, rank " + std::to_string(e);
  return r;
}

}  // namespace covlab
