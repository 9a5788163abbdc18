#include "covlab/forge/forge.hpp"

#include <algorithm>
#include <cctype>

namespace covlab {

namespace {

const FiniteGroupAction& require_finite(const GroupAction& a, const std::string& op) {
  if (!a.is_finite()) throw std::invalid_argument(op + " needs a finite group");
  return a.finite();
}

void require_unit_order(const FiniteGroupAction& g) {
  unsigned long p = g.characteristic();
  if (p != 0 && g.order() % p == 0) {
    throw ModularObstruction("|G| = " + std::to_string(g.order()) + " is divisible by the characteristic " +
                             std::to_string(p));
  }
}

// Images of x_j under x -> m x, for composing with polynomials in `ring`.
std::vector<std::optional<Poly>> linear_images(const RationalMatrix& m, const RingPtr& ring) {
  std::vector<std::optional<Poly>> images(ring->size());
  for (std::size_t j = 0; j < m.rows(); ++j) {
    Poly s(ring);
    for (std::size_t k = 0; k < m.cols(); ++k) {
      if (m(j, k) != 0) s += Poly::variable(ring, k) * m(j, k);
    }
    images[j] = std::move(s);
  }
  return images;
}

// All exponent vectors of total degree d in n variables, increasing in the monomial order.
std::vector<Exponents> monomials_of_degree(std::size_t n, unsigned d) {
  std::vector<Exponents> out;
  Exponents e(n, 0);
  auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
    if (i + 1 == n) {
      e[i] = left;
      out.push_back(e);
      return;
    }
    for (unsigned k = 0; k <= left; ++k) {
      e[i] = k;
      self(self, i + 1, left - k);
    }
  };
  if (n == 0) {
    if (d == 0) out.push_back(e);
    return out;
  }
  rec(rec, 0, d);
  std::sort(out.begin(), out.end(), monomial_less);
  return out;
}

}  // namespace

Covariant reynolds_project(const std::vector<Poly>& h, const ActionPtr& action, const RingPtr& x_ring) {
  const FiniteGroupAction& g = require_finite(*action, "reynolds_project");
  require_unit_order(g);
  if (h.size() != g.w_dim()) throw DimensionError("H must have " + std::to_string(g.w_dim()) + " coordinates");
  if (x_ring->size() != g.x_dim()) throw DimensionError("ring does not match dim X");
  std::vector<Poly> hs;
  for (const auto& p : h) hs.push_back(p.ring()->same_as(*x_ring) ? p : p.lift(x_ring));

  std::vector<Poly> sum(h.size(), Poly(x_ring));
  for (std::size_t i = 0; i < g.order(); ++i) {
    auto images = linear_images(g.x(g.inverse(i)), x_ring);
    std::vector<Poly> moved;
    for (const auto& p : hs) moved.push_back(p.compose(images, x_ring));
    const RationalMatrix& w = g.w(i);
    for (std::size_t k = 0; k < sum.size(); ++k) {
      for (std::size_t l = 0; l < moved.size(); ++l) {
        if (w(k, l) != 0) sum[k] += moved[l] * w(k, l);
      }
    }
  }
  Poly inv = Poly::constant(x_ring, Rational(1, static_cast<unsigned long>(g.order())));
  for (auto& p : sum) p *= inv;
  Covariant f = verified(Covariant::polynomial(action, x_ring, sum));
  if (f.status() != Equivariance::equivariant) throw std::logic_error("group average is not equivariant");
  return f;
}

std::vector<Poly> normalize_content(std::vector<Poly> v) {
  const Poly* lead = nullptr;
  for (const auto& p : v) {
    if (!p.is_zero()) {
      lead = &p;
      break;
    }
  }
  if (!lead) return v;
  Rational c;
  if (lead->ring()->characteristic() != 0) {
    c = lead->ring()->inverse(lead->leading_coeff());
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

std::vector<Covariant> generate_covariants(const ActionPtr& action, const RingPtr& x_ring, unsigned degree_bound) {
  const FiniteGroupAction& g = require_finite(*action, "generate_covariants");
  require_unit_order(g);
  const std::size_t d = g.w_dim();
  std::vector<Covariant> kept;
  std::vector<std::vector<Poly>> rows;
  std::size_t rank = 0;
  for (unsigned deg = 0; deg <= degree_bound && rank < d; ++deg) {
    for (const auto& e : monomials_of_degree(x_ring->size(), deg)) {
      for (std::size_t i = 0; i < d && rank < d; ++i) {
        std::vector<Poly> seed(d, Poly(x_ring));
        seed[i] = Poly::monomial(x_ring, e, 1);
        Covariant proj = reynolds_project(seed, action, x_ring);
        std::vector<Poly> coords = proj.polys();
        if (std::all_of(coords.begin(), coords.end(), [](const Poly& p) { return p.is_zero(); })) continue;
        rows.push_back(normalize_content(std::move(coords)));
        std::vector<Poly> flat;
        for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
        std::size_t r = rank_ff(PolyMatrix(rows.size(), d, flat));
        if (r > rank) {
          rank = r;
          kept.push_back(Covariant::polynomial(action, x_ring, rows.back()).with_status(Equivariance::equivariant));
        } else {
          rows.pop_back();
        }
      }
      if (rank == d) break;
    }
  }
  if (rank < d) {
    throw GenerationError("degree bound " + std::to_string(degree_bound) + " reached with rank " +
                              std::to_string(rank) + " < dim W = " + std::to_string(d),
                          rank, kept);
  }
  return kept;
}

ClearedFamily clear_denominators(const std::vector<Covariant>& fs) {
  if (fs.empty()) throw DimensionError("no covariants given");
  require_same_action(fs);
  const FiniteGroupAction& g = require_finite(*fs[0].action(), "clear_denominators");
  RingPtr r = fs[0].x_ring();
  std::vector<Covariant> checked;
  for (const auto& c : fs) {
    Covariant v = c.status() == Equivariance::unchecked ? verified(c) : c;
    if (v.status() != Equivariance::equivariant) {
      throw std::invalid_argument("covariant " + c.to_string() + " is not equivariant");
    }
    checked.push_back(v);
  }

  ClearedFamily out{Poly::constant(r, 1), Poly::constant(r, 1), 0, {}};
  for (const auto& c : checked) {
    for (const auto& x : c.coords()) out.h = lcm(out.h, x.den());
  }
  for (std::size_t i = 0; i < g.order(); ++i) out.f *= out.h.compose(linear_images(g.x(g.inverse(i)), r), r);
  WeightResult w = relative_weight(out.f, *fs[0].action());
  if (!w.weight || !w.weight->is_trivial()) throw std::logic_error("orbit product of denominators is not invariant");

  auto clears = [&](const Poly& fn) {
    for (const auto& c : checked) {
      for (const auto& x : c.coords()) {
        if (!divide_exact(fn, x.den())) return false;
      }
    }
    return true;
  };
  Poly fn = Poly::constant(r, 1);
  while (!clears(fn)) {
    fn *= out.f;
    ++out.n;
  }
  for (const auto& c : checked) {
    std::vector<Poly> ps;
    for (const auto& x : c.coords()) ps.push_back(divide_or_throw(fn, x.den()) * x.num());
    Covariant v = verified(Covariant::polynomial(c.action(), r, ps));
    if (v.status() != Equivariance::equivariant) throw std::logic_error("cleared covariant is not equivariant");
    out.covariants.push_back(v);
  }
  return out;
}

std::vector<Covariant> lift_through_projection(const std::vector<Covariant>& fs,
                                               const std::vector<std::string>& y_vars, const ActionPtr& product) {
  if (fs.empty()) throw DimensionError("no covariants given");
  require_same_action(fs);
  const GroupAction& base = *fs[0].action();
  RingPtr xr = fs[0].x_ring();
  for (const auto& y : y_vars) {
    if (xr->find(y) || product->params()->find(y)) throw VariableError("variable '" + y + "' already names a coordinate");
  }
  RingPtr xy = xr->extended(y_vars);
  if (xy->size() != xr->size() + y_vars.size()) throw VariableError("repeated variable among the Y coordinates");
  if (product->x_dim() != xy->size()) throw DimensionError("product action does not act on X x Y");
  if (product->w_dim() != base.w_dim()) throw DimensionError("product action has a different W");
  if (product->characteristic() != base.characteristic()) throw DimensionError("characteristic mismatch");

  const std::size_t nx = xr->size();
  for (const auto& e : product->check_elements()) {
    const PolyMatrix& m = e.x.numer;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) {
        if ((i < nx) != (j < nx) && !m(i, j).is_zero()) {
          throw std::invalid_argument("action on X x Y does not preserve the X factor");
        }
      }
    }
  }
  std::vector<Covariant> out;
  for (const auto& c : fs) {
    std::vector<RatFn> coords;
    for (const auto& x : c.coords()) coords.push_back(x.lift(xy));
    Covariant v = verified(Covariant(product, xy, coords));
    if (v.status() != Equivariance::equivariant) {
      throw std::invalid_argument("lift of " + c.to_string() + " is not equivariant for the product action");
    }
    out.push_back(v);
  }
  return out;
}

std::vector<std::pair<char, unsigned>> parse_word(const std::string& word) {
  std::vector<std::pair<char, unsigned>> out;
  if (word == "1") return out;
  auto bad = [&](const std::string& why) { return std::invalid_argument("malformed word '" + word + "': " + why); };
  std::size_t i = 0;
  while (i < word.size()) {
    char c = word[i++];
    if (c != 'A' && c != 'B') throw bad(std::string("unexpected '") + c + "'");
    unsigned e = 1;
    if (i < word.size() && word[i] == '^') {
      ++i;
      std::size_t start = i;
      while (i < word.size() && std::isdigit(static_cast<unsigned char>(word[i]))) ++i;
      if (i == start) throw bad("exponent expected after '^'");
      if (i - start > 4) throw bad("exponent too large");
      e = static_cast<unsigned>(std::stoul(word.substr(start, i - start)));
      if (e == 0) throw bad("exponent must be positive");
    }
    out.emplace_back(c, e);
  }
  if (out.empty()) throw bad("empty word");
  return out;
}

std::vector<std::string> family_names() { return {"matrix_words", "projections", "power_maps"}; }

namespace {

std::string index_name(const std::string& prefix, std::size_t i, std::size_t j, std::size_t n) {
  return prefix + std::to_string(i) + (n > 9 ? "_" : "") + std::to_string(j);
}

void verify_all(Family& f) {
  for (auto& c : f.covariants) {
    Report r;
    c = verified(c, &r);
    if (!r.passed) throw std::logic_error("family member " + c.to_string() + " failed verification");
  }
}

Family matrix_words(const FamilyParams& p) {
  const std::size_t n = p.n;
  if (n == 0) throw std::invalid_argument("matrix_words needs n >= 1");
  std::vector<std::string> words = p.words;
  if (words.empty()) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        std::string w;
        if (i > 0) w += "A" + (i > 1 ? "^" + std::to_string(i) : std::string());
        if (j > 0) w += "B" + (j > 1 ? "^" + std::to_string(j) : std::string());
        words.push_back(w.empty() ? "1" : w);
      }
    }
  }
  std::vector<std::vector<std::pair<char, unsigned>>> parsed;
  for (const auto& w : words) parsed.push_back(parse_word(w));

  std::vector<std::string> vars;
  for (char c : {'a', 'b'}) {
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t j = 1; j <= n; ++j) vars.push_back(index_name(std::string(1, c), i, j, n));
    }
  }
  Family f;
  f.ring = Ring::make(vars);
  SymbolicGroupAction g(n, {{"gl_conjugation", 2}}, {{"gl_conjugation"}}, 0, vars);
  if (n > 2) g.check_on_generators();
  f.action = make_action(std::move(g));
  PolyMatrix a = zero_matrix(f.ring, n, n), b = zero_matrix(f.ring, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      a(i, j) = Poly::variable(f.ring, i * n + j);
      b(i, j) = Poly::variable(f.ring, n * n + i * n + j);
    }
  }
  for (const auto& w : parsed) {
    PolyMatrix m = identity_matrix(f.ring, n);
    for (const auto& [c, e] : w) {
      for (unsigned k = 0; k < e; ++k) m = m * (c == 'A' ? a : b);
    }
    f.covariants.push_back(Covariant::polynomial(f.action, f.ring, m.data()));
  }
  // A = diag(1..n) with distinct eigenvalues, B the cyclic permutation.
  Point pt(2 * n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    pt[i * n + i] = static_cast<long>(i + 1);
    pt[n * n + i * n + (i + 1) % n] += 1;
  }
  f.witness = pt;
  verify_all(f);
  return f;
}

Family projections(const FamilyParams& p) {
  const std::size_t n = p.n, m = p.m == 0 ? p.n : p.m;
  if (n == 0) throw std::invalid_argument("projections needs n >= 1");
  if (m < n) throw std::invalid_argument("projections needs m >= n");
  std::vector<std::string> vars;
  for (std::size_t j = 1; j <= m; ++j) {
    for (std::size_t i = 1; i <= n; ++i) vars.push_back(index_name("x", i, j, std::max(n, m)));
  }
  Family f;
  f.ring = Ring::make(vars);
  f.action = make_action(SymbolicGroupAction(n, {{"gl_natural", m}}, {{"gl_natural"}}, 0, vars));
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Poly> coords;
    for (std::size_t i = 0; i < n; ++i) coords.push_back(Poly::variable(f.ring, j * n + i));
    f.covariants.push_back(Covariant::polynomial(f.action, f.ring, coords));
  }
  Point pt(n * m, 0);
  for (std::size_t j = 0; j < n; ++j) pt[j * n + j] = 1;
  f.witness = pt;
  verify_all(f);
  return f;
}

Family power_maps(const FamilyParams& p) {
  const std::size_t n = p.n;
  if (n == 0) throw std::invalid_argument("power_maps needs n >= 1");
  if (n > 7) throw std::invalid_argument("power_maps enumerates S_n; n must be at most 7");
  std::vector<unsigned> powers = p.powers;
  if (powers.empty()) {
    for (unsigned k = 1; k <= n; ++k) powers.push_back(k);
  }
  std::vector<std::string> vars;
  for (std::size_t i = 1; i <= n; ++i) vars.push_back("x" + std::to_string(i));
  RationalMatrix cycle(n, n, std::vector<Rational>(n * n, 0)), swap = rational_identity(n);
  for (std::size_t i = 0; i < n; ++i) cycle((i + 1) % n, i) = 1;
  if (n > 1) {
    swap(0, 0) = swap(1, 1) = 0;
    swap(0, 1) = swap(1, 0) = 1;
  }
  Family f;
  f.ring = Ring::make(vars);
  f.action = make_action(FiniteGroupAction({{cycle, cycle}, {swap, swap}}));
  for (unsigned e : powers) {
    std::vector<Poly> coords;
    for (std::size_t i = 0; i < n; ++i) coords.push_back(Poly::variable(f.ring, i).pow(e));
    f.covariants.push_back(Covariant::polynomial(f.action, f.ring, coords));
  }
  Point pt;
  for (std::size_t i = 1; i <= n; ++i) pt.emplace_back(static_cast<long>(i));
  f.witness = pt;
  verify_all(f);
  return f;
}

}  // namespace

Family example_family(const std::string& name, const FamilyParams& params) {
  if (name == "matrix_words") return matrix_words(params);
  if (name == "projections") return projections(params);
  if (name == "power_maps") return power_maps(params);
  throw std::invalid_argument("unknown family '" + name + "' (known: matrix_words, projections, power_maps)");
}

}  // namespace covlab
