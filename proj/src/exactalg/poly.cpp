#include "covlab/exactalg/poly.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace covlab {

namespace {

struct ExponentsHash {
  std::size_t operator()(const Exponents& e) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (auto v : e) {
      h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

struct MonomialGreater {
  bool operator()(const Exponents& a, const Exponents& b) const { return monomial_less(b, a); }
};

inline void reduce(const Ring& r, Rational& c) {
  if (r.characteristic() != 0) c = r.normalize(c);
}

bool divides(const Exponents& d, const Exponents& e) {
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] > e[i]) return false;
  }
  return true;
}

Poly numeric_primitive(const Poly& p) {
  if (p.is_zero()) return p;
  if (p.ring()->characteristic() != 0) return p.monic();
  mpz_class den_lcm = 1;
  mpz_class num_gcd = 0;
  for (const auto& t : p.terms()) {
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coeff.get_den_mpz_t());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coeff.get_num_mpz_t());
  }
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  if (p.leading_coeff() < 0) scale = -scale;
  return p * scale;
}

Poly primitive_part(const Poly& p, std::size_t var) {
  return numeric_primitive(divide_or_throw(p, content_in(p, var)));
}

}  // namespace

std::uint32_t total_degree(const Exponents& e) {
  return std::accumulate(e.begin(), e.end(), std::uint32_t{0});
}

bool monomial_less(const Exponents& a, const Exponents& b) {
  auto da = total_degree(a);
  auto db = total_degree(b);
  if (da != db) return da < db;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

Poly::Poly(RingPtr ring) : ring_(std::move(ring)) {}

Poly Poly::constant(RingPtr ring, const Rational& c) {
  Poly p(ring);
  Rational v = ring->normalize(c);
  if (v != 0) p.terms_.push_back({Exponents(ring->size(), 0), v});
  return p;
}

Poly Poly::variable(RingPtr ring, std::size_t index) {
  if (index >= ring->size()) throw VariableError("variable index out of range");
  Exponents e(ring->size(), 0);
  e[index] = 1;
  return monomial(std::move(ring), std::move(e));
}

Poly Poly::variable(RingPtr ring, std::string_view name) {
  auto i = ring->index(name);
  return variable(std::move(ring), i);
}

Poly Poly::monomial(RingPtr ring, Exponents exp, const Rational& c) {
  if (exp.size() != ring->size()) throw DimensionError("exponent vector length mismatch");
  Poly p(ring);
  Rational v = ring->normalize(c);
  if (v != 0) p.terms_.push_back({std::move(exp), v});
  return p;
}

Poly Poly::from_terms(RingPtr ring, std::vector<Term> terms) {
  Poly p(std::move(ring));
  for (const auto& t : terms) {
    if (t.exp.size() != p.ring_->size()) throw DimensionError("exponent vector length mismatch");
  }
  p.terms_ = std::move(terms);
  p.normalize_terms();
  return p;
}

void Poly::normalize_terms() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return monomial_less(b.exp, a.exp); });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().exp == t.exp) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty()) {
        reduce(*ring_, out.back().coeff);
        if (out.back().coeff == 0) out.pop_back();
      }
      out.push_back(std::move(t));
    }
  }
  if (!out.empty()) {
    reduce(*ring_, out.back().coeff);
    if (out.back().coeff == 0) out.pop_back();
  }
  terms_ = std::move(out);
}

void Poly::check_ring(const Poly& o) const {
  if (!ring_->same_as(*o.ring_)) {
    throw DimensionError("polynomials live in different rings");
  }
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && covlab::total_degree(terms_[0].exp) == 0);
}

bool Poly::is_one() const { return is_constant() && !terms_.empty() && terms_[0].coeff == 1; }

Rational Poly::constant_value() const {
  if (!is_constant()) throw std::logic_error("polynomial is not constant: " + to_string());
  return terms_.empty() ? Rational(0) : terms_[0].coeff;
}

Rational Poly::constant_term() const {
  if (!terms_.empty() && covlab::total_degree(terms_.back().exp) == 0) return terms_.back().coeff;
  return 0;
}

int Poly::total_degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(covlab::total_degree(terms_.front().exp));
}

int Poly::degree(std::size_t var) const {
  if (terms_.empty()) return -1;
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.exp[var]);
  return static_cast<int>(d);
}

bool Poly::depends_on(std::size_t var) const {
  return std::any_of(terms_.begin(), terms_.end(), [&](const Term& t) { return t.exp[var] > 0; });
}

std::vector<std::size_t> Poly::support() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < ring_->size(); ++v) {
    if (depends_on(v)) out.push_back(v);
  }
  return out;
}

bool Poly::is_homogeneous() const {
  if (terms_.empty()) return true;
  auto d = covlab::total_degree(terms_.front().exp);
  return std::all_of(terms_.begin(), terms_.end(),
                     [&](const Term& t) { return covlab::total_degree(t.exp) == d; });
}

const Term& Poly::leading_term() const {
  if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
  return terms_.front();
}

const Rational& Poly::leading_coeff() const { return leading_term().coeff; }

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) {
    t.coeff = -t.coeff;
    reduce(*ring_, t.coeff);
  }
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  check_ring(o);
  if (o.terms_.empty()) return *this;
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && monomial_less(o.terms_[j].exp, terms_[i].exp))) {
      out.push_back(std::move(terms_[i++]));
    } else if (i == terms_.size() || monomial_less(terms_[i].exp, o.terms_[j].exp)) {
      out.push_back(o.terms_[j++]);
    } else {
      Rational c = terms_[i].coeff + o.terms_[j].coeff;
      reduce(*ring_, c);
      if (c != 0) out.push_back({std::move(terms_[i].exp), c});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) { return *this += -o; }

Poly operator*(const Poly& a, const Poly& b) {
  a.check_ring(b);
  Poly r(a.ring_);
  if (a.terms_.empty() || b.terms_.empty()) return r;
  if (b.is_constant()) return a * b.terms_[0].coeff;
  if (a.is_constant()) return b * a.terms_[0].coeff;
  std::unordered_map<Exponents, Rational, ExponentsHash> acc;
  acc.reserve(a.terms_.size() * b.terms_.size());
  Exponents e(a.ring_->size());
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = ta.exp[k] + tb.exp[k];
      auto [it, inserted] = acc.try_emplace(e, 0);
      it->second += ta.coeff * tb.coeff;
    }
  }
  r.terms_.reserve(acc.size());
  for (auto& [exp, c] : acc) {
    reduce(*r.ring_, c);
    if (c != 0) r.terms_.push_back({exp, std::move(c)});
  }
  std::sort(r.terms_.begin(), r.terms_.end(),
            [](const Term& x, const Term& y) { return monomial_less(y.exp, x.exp); });
  return r;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const Rational& c) {
  Rational v = ring_->normalize(c);
  if (v == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) {
    t.coeff *= v;
    reduce(*ring_, t.coeff);
  }
  return *this;
}

bool operator==(const Poly& a, const Poly& b) {
  a.check_ring(b);
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].exp != b.terms_[i].exp || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  }
  return true;
}

Poly Poly::pow(unsigned e) const {
  Poly result = constant(ring_, 1);
  Poly base = *this;
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base *= base;
  }
  return result;
}

Poly Poly::monic() const {
  if (terms_.empty()) return *this;
  return *this * ring_->inverse(leading_coeff());
}

Poly Poly::with_positive_lead() const {
  if (terms_.empty() || ring_->characteristic() != 0 || leading_coeff() > 0) return *this;
  return -*this;
}

Rational Poly::eval(std::span<const Rational> point) const {
  if (point.size() != ring_->size()) throw DimensionError("evaluation point has wrong length");
  Rational sum = 0;
  for (const auto& t : terms_) {
    Rational v = t.coeff;
    for (std::size_t i = 0; i < t.exp.size(); ++i) {
      for (std::uint32_t k = 0; k < t.exp[i]; ++k) v *= point[i];
    }
    sum += v;
  }
  return ring_->normalize(sum);
}

Poly Poly::partial_eval(std::span<const std::size_t> vars, std::span<const Rational> values) const {
  if (vars.size() != values.size()) throw DimensionError("partial_eval: size mismatch");
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Term nt = t;
    for (std::size_t k = 0; k < vars.size(); ++k) {
      for (std::uint32_t j = 0; j < t.exp[vars[k]]; ++j) nt.coeff *= values[k];
      nt.exp[vars[k]] = 0;
    }
    out.push_back(std::move(nt));
  }
  return from_terms(ring_, std::move(out));
}

Poly Poly::compose(const std::vector<std::optional<Poly>>& images, const RingPtr& target) const {
  if (images.size() != ring_->size()) throw DimensionError("compose: one image per variable required");
  if (target->characteristic() != ring_->characteristic()) {
    throw DimensionError("compose: characteristic mismatch");
  }
  std::vector<std::optional<std::size_t>> kept(ring_->size());
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (images[i]) {
      if (!images[i]->ring()->same_as(*target)) throw DimensionError("compose: image outside target ring");
    } else if (depends_on(i)) {
      kept[i] = target->index(ring_->vars()[i]);
    }
  }
  std::vector<std::vector<Poly>> powers(ring_->size());
  auto power_of = [&](std::size_t var, std::uint32_t e) -> const Poly& {
    auto& cache = powers[var];
    if (cache.empty()) cache.push_back(constant(target, 1));
    while (cache.size() <= e) cache.push_back(cache.back() * *images[var]);
    return cache[e];
  };
  std::vector<Term> out;
  for (const auto& t : terms_) {
    Exponents base(target->size(), 0);
    for (std::size_t i = 0; i < t.exp.size(); ++i) {
      if (kept[i]) base[*kept[i]] += t.exp[i];
    }
    Poly prod = monomial(target, std::move(base), t.coeff);
    for (std::size_t i = 0; i < t.exp.size() && !prod.is_zero(); ++i) {
      if (images[i] && t.exp[i] > 0) prod = prod * power_of(i, t.exp[i]);
    }
    for (auto& pt : prod.terms_) out.push_back(std::move(pt));
  }
  return from_terms(target, std::move(out));
}

Poly Poly::lift(const RingPtr& target) const {
  if (ring_->same_as(*target)) {
    Poly r = *this;
    r.ring_ = target;
    return r;
  }
  if (target->characteristic() != ring_->characteristic()) {
    throw DimensionError("lift: characteristic mismatch");
  }
  std::vector<std::optional<std::size_t>> map(ring_->size());
  for (std::size_t i = 0; i < ring_->size(); ++i) {
    if (depends_on(i)) map[i] = target->index(ring_->vars()[i]);
  }
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Exponents e(target->size(), 0);
    for (std::size_t i = 0; i < t.exp.size(); ++i) {
      if (map[i]) e[*map[i]] = t.exp[i];
    }
    out.push_back({std::move(e), t.coeff});
  }
  return from_terms(target, std::move(out));
}

std::vector<Poly> Poly::coefficients_in(std::size_t var) const {
  int d = degree(var);
  std::vector<std::vector<Term>> buckets(static_cast<std::size_t>(std::max(d, 0)) + 1);
  for (const auto& t : terms_) {
    Term nt = t;
    nt.exp[var] = 0;
    buckets[t.exp[var]].push_back(std::move(nt));
  }
  std::vector<Poly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(from_terms(ring_, std::move(b)));
  return out;
}

Poly Poly::from_coefficients(const RingPtr& ring, std::size_t var, const std::vector<Poly>& coeffs) {
  std::vector<Term> out;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    for (const auto& t : coeffs[k].terms()) {
      if (t.exp[var] != 0) throw std::logic_error("from_coefficients: coefficient involves the variable");
      Term nt = t;
      nt.exp[var] = static_cast<std::uint32_t>(k);
      out.push_back(std::move(nt));
    }
  }
  return from_terms(ring, std::move(out));
}

Poly Poly::component_of_degree(std::span<const std::size_t> vars, unsigned degree) const {
  Poly r(ring_);
  for (const auto& t : terms_) {
    unsigned d = 0;
    for (auto v : vars) d += t.exp[v];
    if (d == degree) r.terms_.push_back(t);
  }
  return r;
}

std::string rational_to_string(const Rational& c) {
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coeff;
    bool negative = c < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    bool has_monomial = covlab::total_degree(t.exp) > 0;
    if (!has_monomial || c != 1) {
      os << rational_to_string(c);
      if (has_monomial) os << "*";
    }
    bool first_factor = true;
    for (std::size_t i = 0; i < t.exp.size(); ++i) {
      if (t.exp[i] == 0) continue;
      if (!first_factor) os << "*";
      first_factor = false;
      os << ring_->vars()[i];
      if (t.exp[i] > 1) os << "^" << t.exp[i];
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
  if (!a.ring()->same_as(*b.ring())) throw DimensionError("divide_exact: different rings");
  if (b.is_zero()) throw std::domain_error("division by the zero polynomial");
  const RingPtr& ring = a.ring();
  if (a.is_zero()) return Poly(ring);
  if (b.is_constant()) return a * ring->inverse(b.constant_value());

  const Term& lb = b.leading_term();
  Rational lb_inv = ring->inverse(lb.coeff);
  std::map<Exponents, Rational, MonomialGreater> rem;
  for (const auto& t : a.terms()) rem.emplace(t.exp, t.coeff);
  std::vector<Term> quotient;
  Exponents qe(ring->size());
  while (!rem.empty()) {
    auto it = rem.begin();
    if (!divides(lb.exp, it->first)) return std::nullopt;
    for (std::size_t k = 0; k < qe.size(); ++k) qe[k] = it->first[k] - lb.exp[k];
    Rational qc = it->second * lb_inv;
    reduce(*ring, qc);
    for (const auto& t : b.terms()) {
      Exponents e(qe.size());
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = qe[k] + t.exp[k];
      auto [jt, inserted] = rem.try_emplace(std::move(e), 0);
      jt->second -= qc * t.coeff;
      reduce(*ring, jt->second);
      if (jt->second == 0) rem.erase(jt);
    }
    quotient.push_back({qe, qc});
  }
  return Poly::from_terms(ring, std::move(quotient));
}

Poly divide_or_throw(const Poly& a, const Poly& b) {
  auto q = divide_exact(a, b);
  if (!q) throw std::logic_error("inexact division of " + a.to_string() + " by " + b.to_string());
  return std::move(*q);
}

Poly pseudo_remainder(const Poly& a, const Poly& b, std::size_t var) {
  auto A = a.coefficients_in(var);
  auto B = b.coefficients_in(var);
  if (b.is_zero()) throw std::domain_error("pseudo-remainder by zero");
  const std::size_t n = B.size() - 1;
  const Poly& lb = B[n];
  auto trim = [](std::vector<Poly>& v) {
    while (!v.empty() && v.back().is_zero()) v.pop_back();
  };
  trim(A);
  if (A.size() < B.size()) return a;
  int e = static_cast<int>(A.size() - B.size()) + 1;
  while (!A.empty() && A.size() >= B.size()) {
    const std::size_t d = A.size() - 1;
    Poly lr = A[d];
    for (auto& c : A) c = c * lb;
    for (std::size_t k = 0; k <= n; ++k) A[k + d - n] -= lr * B[k];
    trim(A);
    --e;
  }
  Poly r = Poly::from_coefficients(a.ring(), var, A);
  if (e > 0) r *= lb.pow(static_cast<unsigned>(e));
  return r;
}

Poly content_in(const Poly& p, std::size_t var) {
  auto coeffs = p.coefficients_in(var);
  std::vector<const Poly*> nonzero;
  for (const auto& c : coeffs) {
    if (!c.is_zero()) nonzero.push_back(&c);
  }
  if (nonzero.empty()) return Poly(p.ring());
  std::sort(nonzero.begin(), nonzero.end(), [](const Poly* x, const Poly* y) { return x->size() < y->size(); });
  Poly g = nonzero.front()->monic();
  for (std::size_t i = 1; i < nonzero.size() && !g.is_constant(); ++i) g = gcd(g, *nonzero[i]);
  return g.is_constant() ? Poly::constant(p.ring(), 1) : g;
}

Poly gcd(const Poly& a, const Poly& b) {
  if (!a.ring()->same_as(*b.ring())) throw DimensionError("gcd: different rings");
  const RingPtr& ring = a.ring();
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Poly::constant(ring, 1);
  if (a.size() <= b.size()) {
    if (divide_exact(b, a)) return a.monic();
  } else if (divide_exact(a, b)) {
    return b.monic();
  }

  auto sa = a.support();
  auto sb = b.support();
  for (auto v : sa) {
    if (!b.depends_on(v)) return gcd(content_in(a, v), b);
  }
  for (auto v : sb) {
    if (!a.depends_on(v)) return gcd(a, content_in(b, v));
  }
  const std::size_t v = sa.back();
  Poly ca = content_in(a, v);
  Poly cb = content_in(b, v);
  Poly c = gcd(ca, cb);
  Poly pa = numeric_primitive(divide_or_throw(a, ca));
  Poly pb = numeric_primitive(divide_or_throw(b, cb));
  if (pa.degree(v) < pb.degree(v)) std::swap(pa, pb);
  while (true) {
    Poly r = pseudo_remainder(pa, pb, v);
    if (r.is_zero()) break;
    if (r.degree(v) == 0) {
      pb = Poly::constant(ring, 1);
      break;
    }
    pa = std::move(pb);
    pb = primitive_part(r, v);
  }
  if (pb.degree(v) > 0) pb = primitive_part(pb, v);
  return (c * pb).monic();
}

Poly lcm(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly(a.ring());
  return divide_or_throw(a * b, gcd(a, b)).monic();
}

}  // namespace covlab
