#include "covlab/action/act.hpp"

#include <sstream>

namespace covlab {

RingPtr acting_ring(const RingPtr& x, const ActingElement& e) {
  if (e.params->size() == 0) return x;
  for (const auto& name : e.params->vars()) {
    if (x->find(name)) throw VariableError("coordinate '" + name + "' clashes with a group variable");
  }
  return join(x, e.params);
}

Fraction substitute_linear(const Poly& p, const ScaledMatrix& m, const Poly& scale, const RingPtr& target) {
  const RingPtr& ring = p.ring();
  const std::size_t n = m.numer.rows();
  if (m.numer.cols() != n || ring->size() < n) {
    throw DimensionError("polynomial has " + std::to_string(ring->size()) + " coordinates but the action matrix is " +
                         std::to_string(m.numer.rows()) + "x" + std::to_string(m.numer.cols()));
  }
  Poly one = Poly::constant(target, 1);
  if (p.is_zero()) return Fraction(Poly(target), one);
  std::vector<Poly> vars;
  for (std::size_t j = 0; j < n; ++j) vars.push_back(Poly::variable(target, target->index(ring->vars()[j])));
  std::vector<std::optional<Poly>> images(ring->size());
  for (std::size_t i = 0; i < n; ++i) {
    Poly img(target);
    for (std::size_t j = 0; j < n; ++j) {
      if (!m.numer(i, j).is_zero()) img += m.numer(i, j).lift(target) * vars[j];
    }
    images[i] = std::move(img);
  }
  std::vector<std::size_t> acted(n);
  for (std::size_t j = 0; j < n; ++j) acted[j] = j;
  unsigned top = 0;
  for (const auto& t : p.terms()) {
    unsigned d = 0;
    for (std::size_t j = 0; j < n; ++j) d += t.exp[j];
    top = std::max(top, d);
  }
  Poly s = scale.lift(target);
  if (m.power == 0 || s.is_one()) {
    Poly den = m.power == 0 ? one : s.pow(m.power * top);
    return Fraction(p.compose(images, target), den);
  }
  Poly num(target);
  for (unsigned d = 0; d <= top; ++d) {
    Poly part = p.component_of_degree(acted, d);
    if (part.is_zero()) continue;
    num += part.compose(images, target) * s.pow(m.power * (top - d));
  }
  return Fraction(num, s.pow(m.power * top));
}

Fraction substitute_linear(const Fraction& f, const ScaledMatrix& m, const Poly& scale, const RingPtr& target) {
  Fraction a = substitute_linear(f.num, m, scale, target);
  Fraction b = substitute_linear(f.den, m, scale, target);
  return Fraction(a.num * b.den, a.den * b.num);
}

ScaledMatrix direct_sum(const ScaledMatrix& a, const ScaledMatrix& b, const Poly& scale) {
  unsigned power = std::max(a.power, b.power);
  const RingPtr& ring = scale.ring();
  return {block_diagonal(ring, {covlab::scale(a.numer, scale.pow(power - a.power)),
                                covlab::scale(b.numer, scale.pow(power - b.power))}),
          power};
}

RatFn reduce_by_scale(Fraction f, const Poly& scale) {
  if (!scale.is_constant()) {
    while (!f.den.is_constant()) {
      auto q = divide_exact(f.num, scale);
      if (!q) break;
      f.num = std::move(*q);
      f.den = divide_or_throw(f.den, scale);
    }
  }
  return RatFn::from_coprime(std::move(f.num), std::move(f.den));
}

RatFn act_on_poly(const ActingElement& g, const Poly& p) {
  RingPtr target = acting_ring(p.ring(), g);
  return reduce_by_scale(substitute_linear(p, g.x_inv, g.scale, target), g.scale.lift(target));
}

RatFn act_on_ratfn(const ActingElement& g, const RatFn& r) {
  if (r.is_polynomial()) return act_on_poly(g, r.num());
  RingPtr target = acting_ring(r.ring(), g);
  Fraction f = substitute_linear(Fraction::of(r), g.x_inv, g.scale, target);
  return RatFn(f.num, f.den);
}

Character Character::table(std::vector<Rational> values) {
  Character c;
  c.values_ = std::move(values);
  return c;
}

Character Character::generic(RatFn value) {
  Character c;
  c.generic_ = std::move(value);
  return c;
}

bool Character::is_trivial() const {
  if (generic_) return generic_->num().is_one() && generic_->den().is_one();
  for (const auto& v : values_) {
    if (v != 1) return false;
  }
  return true;
}

std::string Character::to_string() const {
  if (generic_) return generic_->to_string();
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < values_.size(); ++i) os << (i ? ", " : "") << rational_to_string(values_[i]);
  os << "]";
  return os.str();
}

bool operator==(const Character& a, const Character& b) {
  if (a.is_table() != b.is_table()) return false;
  if (a.is_table()) return a.values_ == b.values_;
  return a.generic_->ring()->same_as(*b.generic_->ring()) && *a.generic_ == *b.generic_;
}

Character operator*(const Character& a, const Character& b) {
  if (a.is_table() != b.is_table()) throw DimensionError("characters of different groups");
  if (!a.is_table()) return Character::generic(*a.generic_ * *b.generic_);
  if (a.values_.size() != b.values_.size()) throw DimensionError("characters of different groups");
  std::vector<Rational> v(a.values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.values_[i] * b.values_[i];
  return Character::table(std::move(v));
}

WeightResult relative_weight(const Poly& f, const GroupAction& a) {
  if (f.is_zero()) return {std::nullopt, "the zero polynomial has no weight"};
  const std::size_t nx = f.ring()->size();
  std::vector<Rational> values;
  std::vector<ActingElement> elements =
      a.is_finite() ? a.check_elements() : std::vector<ActingElement>{a.symbolic().generic()};
  for (const auto& e : elements) {
    RatFn moved = act_on_poly(e, f);
    const RingPtr& joint = moved.ring();
    auto q = divide_exact(moved.num(), f.lift(joint));
    if (!q) return {std::nullopt, "g . f is not a multiple of f for " + e.label};
    for (std::size_t v = 0; v < nx; ++v) {
      if (q->depends_on(v)) return {std::nullopt, "g . f / f depends on " + joint->vars()[v] + " for " + e.label};
    }
    if (a.is_finite()) {
      values.push_back(a.params()->normalize(q->constant_value() / moved.den().constant_value()));
    } else {
      return {Character::generic(RatFn(q->lift(a.params()), moved.den().lift(a.params()))), {}};
    }
  }
  return {Character::table(std::move(values)), {}};
}

Character det_w_inverse(const GroupAction& a) {
  if (a.is_finite()) {
    const auto& g = a.finite();
    std::vector<Rational> v;
    for (std::size_t i = 0; i < g.order(); ++i) v.push_back(g.field()->inverse(det(g.w(i), g.field())));
    return Character::table(std::move(v));
  }
  const ActingElement& e = a.symbolic().generic();
  Poly d = det(e.w.numer);
  return Character::generic(RatFn(e.scale.pow(e.w.power * static_cast<unsigned>(e.w.numer.rows())), d));
}

bool is_multiplicative(const Character& c, const GroupAction& a) {
  if (a.is_finite()) {
    if (!c.is_table()) return false;
    const auto& g = a.finite();
    const auto& v = c.values();
    if (v.size() != g.order() || v[0] != 1) return false;
    for (std::size_t i = 0; i < g.order(); ++i) {
      for (std::size_t j = 0; j < g.order(); ++j) {
        if (v[g.multiply(i, j)] != g.field()->normalize(v[i] * v[j])) return false;
      }
    }
    return true;
  }
  if (c.is_table()) return false;
  const auto& sym = a.symbolic();
  const RingPtr& params = sym.params();
  const std::size_t n = sym.n();
  std::vector<Rational> id(n * n, Rational(0));
  for (std::size_t p = 0; p < n; ++p) id[p * n + p] = 1;
  const RatFn& theta = c.value();
  if (!theta.ring()->same_as(*params) || theta.eval(id) != 1) return false;

  std::vector<std::string> h_names;
  for (const auto& name : params->vars()) h_names.push_back("h_" + name);
  RingPtr both = params->extended(h_names);
  std::vector<std::optional<Poly>> as_h(n * n), as_product(n * n);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      as_h[p * n + q] = Poly::variable(both, n * n + p * n + q);
      Poly s(both);
      for (std::size_t k = 0; k < n; ++k) {
        s += Poly::variable(both, p * n + k) * Poly::variable(both, n * n + k * n + q);
      }
      as_product[p * n + q] = std::move(s);
    }
  }
  Poly gn = theta.num().lift(both), gd = theta.den().lift(both);
  Poly hn = theta.num().compose(as_h, both), hd = theta.den().compose(as_h, both);
  Poly pn = theta.num().compose(as_product, both), pd = theta.den().compose(as_product, both);
  return pn * gd * hd == gn * hn * pd;
}

}  // namespace covlab
