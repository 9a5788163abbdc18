#include "covlab/reflect/reflect.hpp"

#include <algorithm>

namespace covlab {

namespace {

RatFn zero_of(const RingPtr& r) { return RatFn::constant(r, 0); }

std::string poly_term(const RatFn& c, std::size_t i) {
  std::string f = "F" + std::to_string(i + 1);
  if (c.is_polynomial() && c.as_poly().is_one()) return f;
  return "(" + (c.is_polynomial() ? c.as_poly().to_string() : c.to_string()) + ")*" + f;
}

// Content-free, sign-normalized copy of a polynomial vector.
std::vector<Poly> primitive(std::vector<Poly> v) {
  const Poly* lead = nullptr;
  for (const auto& p : v) {
    if (!p.is_zero()) {
      lead = &p;
      break;
    }
  }
  if (!lead) return v;
  const RingPtr& ring = lead->ring();
  Poly g(ring);
  for (const auto& p : v) g = p.is_zero() ? g : (g.is_zero() ? p : gcd(g, p));
  if (!g.is_constant()) {
    for (auto& p : v) p = divide_or_throw(p, g);
  }
  Rational c;
  if (ring->characteristic() != 0) {
    c = ring->inverse(lead->leading_coeff());
  } else {
    mpz_class num = 0, den = 1;
    for (const auto& p : v) {
      for (const auto& t : p.terms()) {
        num = gcd(num, t.coeff.get_num());
        den = lcm(den, t.coeff.get_den());
      }
    }
    c = Rational(den, num);
    if (lead->leading_coeff() < 0) c = -c;
  }
  for (auto& p : v) p *= c;
  return v;
}

RationalMatrix x_matrix(const ActingElement& e, const RingPtr& field) {
  Rational s = e.scale.constant_value();
  Rational f = 1;
  for (unsigned k = 0; k < e.x.power; ++k) f *= s;
  f = field->inverse(f);
  const PolyMatrix& m = e.x.numer;
  RationalMatrix out(m.rows(), m.cols(), Rational(0));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = field->normalize(m(i, j).constant_value() * f);
  }
  return out;
}

// Hyperplane form of M when rank(M - I) = 1.
std::optional<Poly> hyperplane_form(const RationalMatrix& m, const RingPtr& x_ring, const RingPtr& field) {
  RationalMatrix d = m;
  for (std::size_t i = 0; i < d.rows(); ++i) d(i, i) = field->normalize(d(i, i) - 1);
  if (rank(d, field) != 1) return std::nullopt;
  for (std::size_t i = 0; i < d.rows(); ++i) {
    std::size_t j = 0;
    while (j < d.cols() && d(i, j) == 0) ++j;
    if (j == d.cols()) continue;
    Rational inv = field->inverse(d(i, j));
    Poly l(x_ring);
    for (std::size_t k = 0; k < d.cols(); ++k) {
      if (d(i, k) != 0) l += Poly::variable(x_ring, k) * field->normalize(d(i, k) * inv);
    }
    return l;
  }
  return std::nullopt;
}

bool is_invariant(const RatFn& a, const GroupAction& g) {
  for (const auto& e : g.check_elements()) {
    RatFn moved = act_on_ratfn(e, a);
    if (!(moved == a.lift(moved.ring()))) return false;
  }
  return true;
}

}  // namespace

bool Relation::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const RatFn& c) { return c.is_zero(); });
}

bool Relation::is_polynomial() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const RatFn& c) { return c.is_polynomial(); });
}

std::vector<Poly> Relation::polys() const {
  std::vector<Poly> out;
  for (const auto& c : coeffs) {
    if (!c.is_polynomial()) throw std::invalid_argument("relation has rational coefficients");
    out.push_back(c.as_poly());
  }
  return out;
}

int Relation::degree() const {
  int d = -1;
  for (const auto& p : polys()) {
    if (!p.is_zero()) d = std::max(d, static_cast<int>(p.total_degree()));
  }
  return d;
}

Relation Relation::integral() const {
  if (coeffs.empty()) return *this;
  const RingPtr& ring = coeffs[0].ring();
  Poly l = Poly::constant(ring, 1);
  for (const auto& c : coeffs) l = lcm(l, c.den());
  std::vector<Poly> ps;
  for (const auto& c : coeffs) ps.push_back(divide_or_throw(l, c.den()) * c.num());
  std::vector<RatFn> out;
  for (auto& p : primitive(std::move(ps))) out.emplace_back(std::move(p));
  return Relation{out, covariants, verified};
}

std::string Relation::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i].is_zero()) continue;
    s += (s.empty() ? "" : " + ") + poly_term(coeffs[i], i);
  }
  return (s.empty() ? "0" : s) + " = 0";
}

bool relation_holds(const std::vector<RatFn>& coeffs, const std::vector<Covariant>& fs) {
  if (coeffs.size() != fs.size()) throw DimensionError("one coefficient per covariant required");
  if (fs.empty()) return true;
  const RingPtr& ring = fs[0].x_ring();
  for (std::size_t k = 0; k < fs[0].size(); ++k) {
    RatFn acc = zero_of(ring);
    for (std::size_t i = 0; i < fs.size(); ++i) {
      if (!coeffs[i].is_zero()) acc = acc + coeffs[i] * fs[i].coords()[k];
    }
    if (!acc.is_zero()) return false;
  }
  return true;
}

Relation make_relation(std::vector<RatFn> coeffs, std::vector<Covariant> fs) {
  if (!fs.empty()) {
    require_same_action(fs);
    for (auto& c : coeffs) {
      if (!c.ring()->same_as(*fs[0].x_ring())) c = c.lift(fs[0].x_ring());
    }
  }
  bool ok = relation_holds(coeffs, fs);
  return Relation{std::move(coeffs), std::move(fs), ok};
}

FunctionFieldResult relation_over_function_field(const std::vector<Covariant>& fs) {
  if (fs.empty()) throw DimensionError("no covariants given");
  require_same_action(fs);
  FunctionFieldResult out;
  Report& r = out.report;
  r.operation = "relation_over_function_field";
  const std::size_t e = fs.size();
  auto cleared = clear_column_denominators(coordinate_matrix(fs));
  Echelon ech = echelon(cleared.matrix);
  out.rank = ech.rank;
  r.data["covariants"] = e;
  r.data["rank"] = ech.rank;
  if (ech.rank == e) {
    std::vector<std::size_t> cols(e);
    for (std::size_t j = 0; j < e; ++j) cols[j] = j;
    out.minor = det(cleared.matrix.select(ech.pivot_rows, cols));
    // undo the column scaling so the minor is one of the coordinate matrix
    RatFn m(*out.minor);
    for (const auto& c : cleared.multipliers) m = m / RatFn(c);
    out.minor_rows = ech.pivot_rows;
    r.data["independent"] = true;
    r.data["minor_rows"] = ech.pivot_rows;
    r.data["minor"] = m.is_polynomial() ? m.as_poly().to_string() : m.to_string();
    r.add("no relation over k(X)", true, "maximal minor on rows " + nlohmann::json(ech.pivot_rows).dump() + " is " +
                                             r.data["minor"].get<std::string>() + " != 0");
    r.summary = "independent over k(X)";
    return out;
  }
  std::size_t free = 0;
  while (std::find(ech.pivot_cols.begin(), ech.pivot_cols.end(), free) != ech.pivot_cols.end()) ++free;
  std::vector<Poly> v = kernel_vector(cleared.matrix, ech, free);
  std::vector<RatFn> coeffs;
  for (std::size_t j = 0; j < e; ++j) coeffs.emplace_back(v[j] * cleared.multipliers[j]);
  std::size_t last = e;
  while (last > 0 && coeffs[last - 1].is_zero()) --last;
  RatFn pivot = coeffs[last - 1];
  for (auto& c : coeffs) c = c / pivot;
  Relation rel = make_relation(coeffs, fs);
  if (!rel.verified) throw std::logic_error("kernel vector does not give a relation");
  r.data["independent"] = false;
  r.data["relation"] = rel.to_string();
  r.data["integral"] = rel.integral().to_string();
  r.add("no relation over k(X)", false, rel.to_string());
  r.summary = "dependent, rank " + std::to_string(ech.rank);
  out.relation = std::move(rel);
  return out;
}

RelativeRelation relative_invariant_relation(const std::vector<Covariant>& fs, const SpaceFlags& flags) {
  if (!flags.factorial || !flags.scalar_units) {
    throw HypothesisError("relative invariant relations need X factorial with only scalar units (assert both flags)");
  }
  FunctionFieldResult ff = relation_over_function_field(fs);
  if (!ff.relation) throw NoDependenceError("the covariants are independent over k(X): no relation exists");
  const GroupAction& g = *fs[0].action();
  const RingPtr& ring = fs[0].x_ring();
  const auto& a = ff.relation->coeffs;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!is_invariant(a[i], g)) {
      throw HypothesisError("coefficient " + std::to_string(i + 1) + " of the normalized relation is not invariant");
    }
  }
  Poly c = Poly::constant(ring, 1);
  for (const auto& x : a) c *= x.den();
  std::vector<Poly> h;
  for (const auto& x : a) h.push_back(divide_or_throw(x.num() * c, x.den()));
  h = primitive(std::move(h));
  std::vector<RatFn> coeffs;
  for (const auto& p : h) coeffs.emplace_back(p);

  RelativeRelation out{make_relation(coeffs, fs), {}, Character::table({}), {}};
  Report& r = out.report;
  r.operation = "relative_invariant_relation";
  r.data["factorial"] = flags.factorial;
  r.data["scalar_units"] = flags.scalar_units;
  r.add("relation holds", out.relation.verified, out.relation.to_string());
  std::optional<Character> common;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (h[i].is_zero()) {
      out.weights.push_back(std::nullopt);
      continue;
    }
    WeightResult w = relative_weight(h[i], g);
    if (!w.weight) throw HypothesisError("coefficient " + h[i].to_string() + " is not a relative invariant: " + w.failure);
    if (common && !(*common == *w.weight)) {
      throw HypothesisError("coefficients have different weights: " + common->to_string() + " and " +
                            w.weight->to_string());
    }
    common = w.weight;
    out.weights.push_back(w.weight);
  }
  out.weight = *common;
  r.add("common weight", true, common->to_string());
  r.data["relation"] = out.relation.to_string();
  r.data["weight"] = common->to_string();
  r.summary = out.relation.to_string();
  if (!out.relation.verified) throw std::logic_error("cleared relation does not hold");
  return out;
}

std::vector<Reflection> find_reflections(const GroupAction& a, const RingPtr& x_ring) {
  if (!a.is_finite()) throw std::invalid_argument("reflections are enumerated for finite groups only");
  const FiniteGroupAction& g = a.finite();
  std::vector<Reflection> out;
  for (std::size_t i = 1; i < g.order(); ++i) {
    if (auto l = hyperplane_form(g.x(i), x_ring, g.field())) out.push_back({g.element(i), g.x(i), *l});
  }
  return out;
}

Reflection reflection_from(const GroupAction& a, const RingPtr& x_ring, const RationalMatrix& m) {
  RingPtr field = Ring::make({}, a.characteristic());
  auto [e, x] = [&]() -> std::pair<ActingElement, RationalMatrix> {
    if (a.is_finite()) {
      auto i = a.finite().find(m);
      if (!i) throw std::invalid_argument("matrix " + matrix_to_string(m) + " is not an element of the group");
      return {a.finite().element(*i), a.finite().x(*i)};
    }
    ActingElement s = a.symbolic().specialize(m);
    RationalMatrix xm = x_matrix(s, field);
    return {std::move(s), std::move(xm)};
  }();
  auto l = hyperplane_form(x, x_ring, field);
  if (!l) throw std::invalid_argument(e.label + " does not act on X as a reflection");
  return {e, x, *l};
}

Relation lower_relation(const Relation& r, const Reflection& s) {
  if (!r.verified) throw std::invalid_argument("relation is not verified");
  std::vector<Poly> h = r.polys();
  std::vector<RatFn> b;
  for (const auto& p : h) {
    RatFn moved = act_on_poly(s.element, p);
    RatFn diff = RatFn(p.lift(moved.ring())) - moved;
    if (!diff.is_polynomial()) throw DescentError("h - s.h is not a polynomial");
    Poly d = diff.as_poly();
    if (!d.ring()->same_as(*s.l.ring())) d = d.lift(s.l.ring());
    auto q = divide_exact(d, s.l);
    if (!q) {
      throw DescentError(s.l.to_string() + " does not divide h - s.h for h = " + p.to_string() + " (" +
                         s.element.label + ")");
    }
    b.emplace_back(*q);
  }
  Relation out = make_relation(b, r.covariants);
  if (!out.verified) throw std::logic_error("lowered relation does not hold");
  if (!out.is_zero() && out.degree() >= r.degree()) throw std::logic_error("lowering did not decrease the degree");
  return out;
}

Descent descend_to_invariant_coefficients(const Relation& r, const std::vector<Reflection>& reflections) {
  Descent out{r, 0, {}};
  Report& rep = out.report;
  rep.operation = "descend";
  rep.data["start"] = r.to_string();
  nlohmann::ordered_json steps = nlohmann::ordered_json::array();
  bool moved = true;
  while (moved) {
    moved = false;
    for (const auto& s : reflections) {
      Relation low = lower_relation(out.relation, s);
      if (low.is_zero()) continue;
      steps.push_back({{"reflection", s.element.label}, {"l", s.l.to_string()}, {"relation", low.to_string()}});
      out.relation = std::move(low);
      ++out.steps;
      moved = true;
      break;
    }
  }
  rep.data["steps"] = steps;
  rep.data["result"] = out.relation.to_string();
  rep.add("coefficients fixed by every reflection", true, out.relation.to_string());
  rep.summary = out.relation.to_string();
  return out;
}

namespace {

// Whether the group is generated by elements acting on X as reflections.
std::pair<bool, std::string> reflection_generated(const GroupAction& a, const RingPtr& x_ring) {
  if (a.is_finite()) {
    auto refl = find_reflections(a, x_ring);
    if (refl.empty()) return {false, "the group contains no reflections of X"};
    std::vector<FiniteGroupAction::Generator> gens;
    for (const auto& s : refl) gens.push_back({s.matrix, s.matrix});
    FiniteGroupAction sub(gens, a.characteristic());
    std::size_t order = a.finite().order();
    if (sub.order() != order) {
      return {false, "reflections generate a subgroup of order " + std::to_string(sub.order()) + " < " +
                         std::to_string(order)};
    }
    return {true, std::to_string(refl.size()) + " reflections generate the group of order " + std::to_string(order)};
  }
  const auto& x = a.symbolic().x_module();
  bool linear = x.size() == 1 && x[0].copies == 1 &&
                (x[0].kind == "gl_natural" || x[0].kind == "gl_dual" || (x[0].kind == "scalar" && x[0].dim == 1));
  if (!linear) return {false, "X is not V with the defining action, so the reflection hypothesis does not apply as stated"};
  return {true, "GL(V) is generated by transvections and diagonal reflections"};
}

}  // namespace

Report module_independence_verdict(const std::vector<Covariant>& fs, const Bridges& bridges,
                                   const IndependenceOptions& opts) {
  if (bridges.fraction_field && bridges.reflection) {
    throw std::invalid_argument("contradictory hypotheses: flag exactly one bridge");
  }
  Report r;
  r.operation = "module_independence_verdict";
  Report gen = generic_independence(fs, opts);
  bool independent = gen.data.value("independent", false);
  r.data["generic"] = gen.summary;
  r.data["rank"] = gen.data.value("rank", 0);
  std::string bridge = bridges.fraction_field ? "fraction_field" : bridges.reflection ? "reflection" : "none";
  r.data["bridge"] = bridge;
  if (!bridges.note.empty()) r.data["hypothesis"] = bridges.note;

  std::optional<std::string> applies;  // detail when the flagged bridge applies
  std::string not_applicable;
  if (bridges.fraction_field) {
    applies = fs[0].action()->is_finite() ? "k(X)^G = Frac(k[X]^G) holds for a finite group on affine X"
                                          : "k(X)^G = Frac(k[X]^G) asserted by the caller";
  } else if (bridges.reflection) {
    auto [ok, why] = reflection_generated(*fs[0].action(), fs[0].x_ring());
    if (ok) {
      applies = why;
    } else {
      not_applicable = why;
    }
  }
  if (applies) r.data["bridge_detail"] = *applies;
  if (!not_applicable.empty()) r.data["bridge_detail"] = not_applicable;

  r.add("generically independent", independent, gen.summary);
  if (independent) {
    r.data["verdict"] = "independent";
    r.summary = "independent over k[X]^G (generic independence implies module independence)";
    return r;
  }
  if (applies) {
    r.data["verdict"] = "dependent";
    r.summary = "dependent over k[X]^G via the " + bridge + " bridge";
    return r;
  }
  r.data["verdict"] = "abstain";
  r.data["note"] =
      "without a bridge only generic => module independence is known; covariants can be independent over k[X]^G "
      "yet generically dependent, as x and y under the scalar action on k^2 with values in k";
  r.summary = "abstain: generically dependent, module independence undecided";
  return r;
}

}  // namespace covlab
