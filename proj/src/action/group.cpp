#include "covlab/action/group.hpp"

#include <deque>
#include <random>
#include <sstream>

namespace covlab {

RationalMatrix rational_identity(std::size_t n) {
  RationalMatrix m(n, n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix rational_product(const RationalMatrix& a, const RationalMatrix& b, const RingPtr& field) {
  if (a.cols() != b.rows()) throw DimensionError("matrix product: inner dimensions differ");
  RationalMatrix out(a.rows(), b.cols(), Rational(0));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  }
  if (field->characteristic() != 0) {
    for (std::size_t i = 0; i < out.rows(); ++i) {
      for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) = field->normalize(out(i, j));
    }
  }
  return out;
}

std::optional<RationalMatrix> rational_inverse(const RationalMatrix& m, const RingPtr& field) {
  if (!m.is_square()) throw DimensionError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  RationalMatrix a = m;
  RationalMatrix inv = rational_identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && field->normalize(a(p, c)) == 0) ++p;
    if (p == n) return std::nullopt;
    a.swap_rows(p, c);
    inv.swap_rows(p, c);
    Rational s = field->inverse(field->normalize(a(c, c)));
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) = field->normalize(a(c, j) * s);
      inv(c, j) = field->normalize(inv(c, j) * s);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c) continue;
      Rational f = field->normalize(a(i, c));
      if (f == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) = field->normalize(a(i, j) - f * a(c, j));
        inv(i, j) = field->normalize(inv(i, j) - f * inv(c, j));
      }
    }
  }
  return inv;
}

std::string matrix_to_string(const RationalMatrix& m) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << rational_to_string(m(i, j));
    os << "]";
  }
  os << "]";
  return os.str();
}

namespace {

std::string key_of(const RationalMatrix& m) {
  std::string k;
  for (const auto& e : m.data()) {
    k += e.get_str();
    k += ',';
  }
  return k;
}

RationalMatrix normalized(const RationalMatrix& m, const RingPtr& field) {
  return m.map([&](const Rational& c) { return field->normalize(c); });
}

PolyMatrix as_constants(const RationalMatrix& m, const RingPtr& ring) {
  return m.map([&](const Rational& c) { return Poly::constant(ring, c); });
}

}  // namespace

FiniteGroupAction::FiniteGroupAction(std::vector<Generator> generators, unsigned long characteristic,
                                     std::size_t order_cap)
    : field_(Ring::make({}, characteristic)) {
  if (generators.empty()) throw GroupError("a finite group needs at least one generator");
  x_dim_ = generators[0].x.rows();
  w_dim_ = generators[0].w.rows();
  for (std::size_t k = 0; k < generators.size(); ++k) {
    auto& g = generators[k];
    std::string where = "generator " + std::to_string(k);
    if (!g.x.is_square() || g.x.rows() != x_dim_) {
      throw DimensionError(where + ": x-matrix must be " + std::to_string(x_dim_) + "x" + std::to_string(x_dim_));
    }
    if (!g.w.is_square() || g.w.rows() != w_dim_) {
      throw DimensionError(where + ": w-matrix must be " + std::to_string(w_dim_) + "x" + std::to_string(w_dim_));
    }
    g.x = normalized(g.x, field_);
    g.w = normalized(g.w, field_);
    if (!rational_inverse(g.x, field_)) throw GroupError(where + ": x-matrix is not invertible");
    if (!rational_inverse(g.w, field_)) throw GroupError(where + ": w-matrix is not invertible");
  }
  generators_ = std::move(generators);

  x_.push_back(rational_identity(x_dim_));
  w_.push_back(rational_identity(w_dim_));
  index_.emplace(key_of(x_[0]), 0);
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    std::size_t e = queue.front();
    queue.pop_front();
    for (std::size_t s = 0; s < generators_.size(); ++s) {
      RationalMatrix px = rational_product(x_[e], generators_[s].x, field_);
      RationalMatrix pw = rational_product(w_[e], generators_[s].w, field_);
      auto [it, inserted] = index_.emplace(key_of(px), x_.size());
      if (!inserted) {
        if (w_[it->second] != pw) {
          throw GroupError("w-representation is not a homomorphism: element " + std::to_string(e) +
                           " times generator " + std::to_string(s) + " gives x-matrix " + matrix_to_string(px) +
                           " with two different w-images");
        }
        continue;
      }
      if (x_.size() >= order_cap) {
        throw GroupError("group closure exceeds the order cap of " + std::to_string(order_cap) +
                         " elements (is a generator of infinite order?)");
      }
      x_.push_back(std::move(px));
      w_.push_back(std::move(pw));
      queue.push_back(x_.size() - 1);
    }
  }

  inverse_.resize(x_.size());
  for (std::size_t i = 0; i < x_.size(); ++i) {
    auto inv = rational_inverse(x_[i], field_);
    auto j = find(*inv);
    if (!j) throw GroupError("closure is missing an inverse");
    inverse_[i] = *j;
  }

  // Right multiplication by generators already forces w(g s) = w(g) w(s);
  // small groups are also checked on every pair.
  if (x_.size() <= 256) {
    for (std::size_t i = 0; i < x_.size(); ++i) {
      for (std::size_t j = 0; j < x_.size(); ++j) {
        std::size_t k = multiply(i, j);
        if (w_[k] != rational_product(w_[i], w_[j], field_)) {
          throw GroupError("w-representation is not a homomorphism on elements " + std::to_string(i) + " and " +
                           std::to_string(j));
        }
      }
    }
  }
}

std::size_t FiniteGroupAction::multiply(std::size_t i, std::size_t j) const {
  auto k = find(rational_product(x_[i], x_[j], field_));
  if (!k) throw GroupError("group is not closed under multiplication");
  return *k;
}

std::optional<std::size_t> FiniteGroupAction::find(const RationalMatrix& x) const {
  auto it = index_.find(key_of(normalized(x, field_)));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

ActingElement FiniteGroupAction::element(std::size_t i) const {
  std::size_t j = inverse_[i];
  ActingElement e{"element " + std::to_string(i) + " " + matrix_to_string(x_[i]),
                  field_,
                  Poly::constant(field_, 1),
                  {as_constants(x_[i], field_), 0},
                  {as_constants(x_[j], field_), 0},
                  {as_constants(w_[i], field_), 0},
                  {as_constants(w_[j], field_), 0},
                  std::nullopt};
  return e;
}

std::size_t ModuleSummand::dimension(std::size_t n) const {
  if (kind == "gl_natural" || kind == "gl_dual") return n;
  if (kind == "gl_conjugation") return n * n;
  if (kind == "trivial" || kind == "scalar") return dim;
  if (kind == "det_power") return 1;
  throw GroupError("unknown module template '" + kind + "'");
}

namespace {

// (action, inverse action) of a single template module.
std::pair<ScaledMatrix, ScaledMatrix> template_action(const ModuleSummand& s, std::size_t n, const PolyMatrix& g,
                                                      const PolyMatrix& adj, const Poly& det) {
  const RingPtr& ring = det.ring();
  if (s.kind == "gl_natural") return {{g, 0}, {adj, 1}};
  if (s.kind == "gl_dual") return {{adj.transposed(), 1}, {g.transposed(), 0}};
  if (s.kind == "gl_conjugation") {
    PolyMatrix a = zero_matrix(ring, n * n, n * n), b = zero_matrix(ring, n * n, n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
          for (std::size_t l = 0; l < n; ++l) {
            a(i * n + j, k * n + l) = g(i, k) * adj(l, j);
            b(i * n + j, k * n + l) = adj(i, k) * g(l, j);
          }
        }
      }
    }
    return {{a, 1}, {b, 1}};
  }
  if (s.kind == "trivial") return {{identity_matrix(ring, s.dim), 0}, {identity_matrix(ring, s.dim), 0}};
  if (s.kind == "scalar") {
    if (n != 1) throw GroupError("template 'scalar' requires n = 1");
    return {{scale(identity_matrix(ring, s.dim), g(0, 0)), 0}, {identity_matrix(ring, s.dim), 1}};
  }
  if (s.kind == "det_power") {
    unsigned e = static_cast<unsigned>(s.exponent < 0 ? -s.exponent : s.exponent);
    PolyMatrix one = identity_matrix(ring, 1);
    PolyMatrix d = scale(one, det.pow(e));
    if (s.exponent >= 0) return {{d, 0}, {one, e}};
    return {{one, e}, {d, 0}};
  }
  throw GroupError("unknown module template '" + s.kind +
                   "' (expected gl_natural, gl_dual, gl_conjugation, trivial, scalar or det_power)");
}

ScaledMatrix assemble(const std::vector<ScaledMatrix>& blocks, const RingPtr& ring, const Poly& det) {
  unsigned power = 0;
  for (const auto& b : blocks) power = std::max(power, b.power);
  std::vector<PolyMatrix> scaled;
  for (const auto& b : blocks) scaled.push_back(scale(b.numer, det.pow(power - b.power)));
  return {block_diagonal(ring, scaled), power};
}

std::string fresh_prefix(const std::vector<std::string>& avoid, std::size_t n) {
  for (std::string prefix : {"g", "g_", "gg", "gp", "gen"}) {
    bool clash = false;
    for (std::size_t p = 1; p <= n && !clash; ++p) {
      for (std::size_t q = 1; q <= n && !clash; ++q) {
        std::string name = prefix + std::to_string(p) + (n > 9 ? "_" : "") + std::to_string(q);
        clash = std::find(avoid.begin(), avoid.end(), name) != avoid.end();
      }
    }
    if (!clash) return prefix;
  }
  throw GroupError("cannot choose names for the group variables");
}

}  // namespace

std::pair<ScaledMatrix, ScaledMatrix> SymbolicGroupAction::module_action(const std::vector<ModuleSummand>& summands,
                                                                        std::size_t n, const RingPtr& params,
                                                                        const std::vector<std::string>& g_names) {
  if (summands.empty()) throw GroupError("a module needs at least one summand");
  PolyMatrix g = zero_matrix(params, n, n);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) g(p, q) = Poly::variable(params, g_names[p * n + q]);
  }
  Poly d = det(g);
  PolyMatrix adj = adjugate(g);
  std::vector<ScaledMatrix> fwd, inv;
  for (const auto& s : summands) {
    if (s.copies == 0) throw GroupError("module summand '" + s.kind + "' has zero copies");
    s.dimension(n);
    auto [a, b] = template_action(s, n, g, adj, d);
    for (std::size_t c = 0; c < s.copies; ++c) {
      fwd.push_back(a);
      inv.push_back(b);
    }
  }
  return {assemble(fwd, params, d), assemble(inv, params, d)};
}

SymbolicGroupAction::SymbolicGroupAction(std::size_t n, std::vector<ModuleSummand> x_module,
                                         std::vector<ModuleSummand> w_module, unsigned long characteristic,
                                         const std::vector<std::string>& avoid)
    : n_(n), x_module_(std::move(x_module)), w_module_(std::move(w_module)) {
  if (n == 0) throw GroupError("GL_n needs n >= 1");
  std::string prefix = fresh_prefix(avoid, n);
  std::vector<std::string> names;
  for (std::size_t p = 1; p <= n; ++p) {
    for (std::size_t q = 1; q <= n; ++q) names.push_back(prefix + std::to_string(p) + (n > 9 ? "_" : "") + std::to_string(q));
  }
  params_ = Ring::make(names, characteristic);
  auto [x, x_inv] = module_action(x_module_, n, params_, names);
  auto [w, w_inv] = module_action(w_module_, n, params_, names);
  PolyMatrix gm = zero_matrix(params_, n, n);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) gm(p, q) = Poly::variable(params_, p * n + q);
  }
  generic_ = ActingElement{"generic element g of GL_" + std::to_string(n), params_, det(gm), x, x_inv, w, w_inv,
                           std::nullopt};

  // Identity specialization and g * g^-1 = I after clearing det powers.
  std::vector<Rational> id(n * n, Rational(0));
  for (std::size_t p = 0; p < n; ++p) id[p * n + p] = 1;
  for (const auto* m : {&generic_->x, &generic_->x_inv, &generic_->w, &generic_->w_inv}) {
    auto at_id = evaluate(m->numer, id);
    for (std::size_t i = 0; i < at_id.rows(); ++i) {
      for (std::size_t j = 0; j < at_id.cols(); ++j) {
        if (at_id(i, j) != (i == j ? 1 : 0)) throw GroupError("module action is not the identity at g = I");
      }
    }
  }
  for (auto [a, b] : {std::pair{&generic_->x, &generic_->x_inv}, std::pair{&generic_->w, &generic_->w_inv}}) {
    PolyMatrix prod = a->numer * b->numer;
    Poly s = generic_->scale.pow(a->power + b->power);
    if (prod != scale(identity_matrix(params_, prod.rows()), s)) {
      throw GroupError("module action and its inverse do not multiply to the identity");
    }
  }

  std::vector<std::string> taken = avoid;
  taken.insert(taken.end(), names.begin(), names.end());
  std::string t_name;
  for (std::string c : {"t", "s", "t_", "tt", "param"}) {
    if (std::find(taken.begin(), taken.end(), c) == taken.end()) {
      t_name = c;
      break;
    }
  }
  if (t_name.empty()) throw GroupError("cannot choose a name for the group parameter");
  RingPtr line = Ring::make({t_name}, characteristic);
  Poly t = Poly::variable(line, 0);
  auto add = [&](std::size_t p, std::size_t q, const std::string& label) {
    std::vector<std::optional<Poly>> images(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) images[i * n + j] = Poly::constant(line, i == j ? 1 : 0);
    }
    images[p * n + q] = t;
    auto sub = [&](const ScaledMatrix& m) {
      return ScaledMatrix{m.numer.map([&](const Poly& e) { return e.compose(images, line); }), m.power};
    };
    one_parameter_.push_back(ActingElement{label, line, generic_->scale.compose(images, line), sub(generic_->x),
                                           sub(generic_->x_inv), sub(generic_->w), sub(generic_->w_inv),
                                           std::nullopt});
  };
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      if (p != q) {
        add(p, q, "transvection I + " + t_name + "*E" + std::to_string(p + 1) + (n > 9 ? "_" : "") +
                      std::to_string(q + 1));
      }
    }
  }
  add(0, 0, "diagonal diag(" + t_name + (n > 1 ? ", 1, ..., 1)" : ")"));
}

ActingElement SymbolicGroupAction::specialize(const RationalMatrix& g) const {
  if (g.rows() != n_ || g.cols() != n_) throw DimensionError("specialize: g must be " + std::to_string(n_) + "x" + std::to_string(n_));
  RingPtr field = Ring::make({}, characteristic());
  std::vector<Rational> point(g.data().begin(), g.data().end());
  for (auto& c : point) c = field->normalize(c);
  Rational d = generic_->scale.eval(point);
  if (field->normalize(d) == 0) throw GroupError("specialize: g is singular");
  auto constants = [&](const ScaledMatrix& m) {
    return ScaledMatrix{evaluate(m.numer, point).map([&](const Rational& c) { return Poly::constant(field, c); }),
                        m.power};
  };
  return ActingElement{"g = " + matrix_to_string(g),
                       field,
                       Poly::constant(field, d),
                       constants(generic_->x),
                       constants(generic_->x_inv),
                       constants(generic_->w),
                       constants(generic_->w_inv),
                       g};
}

GroupAction::GroupAction(FiniteGroupAction g) : finite_(std::move(g)), params_(finite_->field()) {}

GroupAction::GroupAction(SymbolicGroupAction g) : symbolic_(std::move(g)), params_(symbolic_->params()) {}

const FiniteGroupAction& GroupAction::finite() const {
  if (!finite_) throw std::logic_error("group action is not finite");
  return *finite_;
}

const SymbolicGroupAction& GroupAction::symbolic() const {
  if (!symbolic_) throw std::logic_error("group action is not symbolic");
  return *symbolic_;
}

std::size_t GroupAction::x_dim() const { return finite_ ? finite_->x_dim() : symbolic_->x_dim(); }
std::size_t GroupAction::w_dim() const { return finite_ ? finite_->w_dim() : symbolic_->w_dim(); }
unsigned long GroupAction::characteristic() const { return params_->characteristic(); }

std::vector<ActingElement> GroupAction::check_elements() const {
  std::vector<ActingElement> out;
  if (finite_) {
    for (std::size_t i = 0; i < finite_->order(); ++i) out.push_back(finite_->element(i));
  } else {
    if (symbolic_->checks_on_generators()) return symbolic_->one_parameter_elements();
    out.push_back(symbolic_->generic());
  }
  return out;
}

std::vector<ActingElement> GroupAction::witness_candidates(std::uint64_t seed) const {
  if (finite_) return check_elements();
  const std::size_t n = symbolic_->n();
  std::vector<ActingElement> out;
  RingPtr field = Ring::make({}, characteristic());
  auto add = [&](const RationalMatrix& g) {
    if (covlab::det(g, field) != 0) out.push_back(symbolic_->specialize(g));
  };
  for (int t : {1, -1, 2}) {
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = 0; q < n; ++q) {
        if (p == q) continue;
        RationalMatrix g = rational_identity(n);
        g(p, q) = t;
        add(g);
      }
    }
  }
  for (int shift : {0, 1, 2}) {
    RationalMatrix g = rational_identity(n);
    for (std::size_t p = 0; p < n; ++p) g(p, p) = static_cast<long>(p) + 2 + shift;
    add(g);
  }
  RationalMatrix neg = rational_identity(n);
  neg(0, 0) = -1;
  add(neg);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> entry(-3, 3);
  for (int k = 0; k < 6; ++k) {
    RationalMatrix g(n, n, Rational(0));
    for (auto i = 0u; i < n; ++i) {
      for (auto j = 0u; j < n; ++j) g(i, j) = entry(rng);
    }
    add(g);
  }
  return out;
}

std::string GroupAction::describe() const {
  if (finite_) return "finite group of order " + std::to_string(finite_->order());
  if (symbolic_->checks_on_generators()) return "one-parameter generators of GL_" + std::to_string(symbolic_->n());
  return "generic element of GL_" + std::to_string(symbolic_->n());
}

ActionPtr make_action(FiniteGroupAction g) { return std::make_shared<const GroupAction>(std::move(g)); }
ActionPtr make_action(SymbolicGroupAction g) { return std::make_shared<const GroupAction>(std::move(g)); }

}  // namespace covlab
