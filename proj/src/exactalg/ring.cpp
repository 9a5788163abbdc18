#include "covlab/exactalg/ring.hpp"

#include <algorithm>
#include <unordered_set>

namespace covlab {

bool is_prime(unsigned long p) {
  if (p < 2) return false;
  for (unsigned long d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

Ring::Ring(std::vector<std::string> vars, unsigned long characteristic)
    : vars_(std::move(vars)), characteristic_(characteristic) {}

RingPtr Ring::make(std::vector<std::string> vars, unsigned long characteristic) {
  std::unordered_set<std::string> seen;
  for (const auto& v : vars) {
    if (v.empty()) throw VariableError("empty variable name");
    if (!seen.insert(v).second) throw VariableError("duplicate variable '" + v + "'");
  }
  if (characteristic != 0 && !is_prime(characteristic)) {
    throw std::invalid_argument("characteristic " + std::to_string(characteristic) +
                                " is not prime");
  }
  return RingPtr(new Ring(std::move(vars), characteristic));
}

std::optional<std::size_t> Ring::find(std::string_view name) const {
  auto it = std::find(vars_.begin(), vars_.end(), name);
  if (it == vars_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - vars_.begin());
}

std::size_t Ring::index(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw VariableError("undeclared variable '" + std::string(name) + "'");
}

Rational Ring::normalize(Rational c) const {
  if (characteristic_ == 0) return c;
  mpz_class p(characteristic_);
  mpz_class num = c.get_num() % p;
  mpz_class den = c.get_den() % p;
  if (den == 0) throw std::domain_error("denominator divisible by the characteristic");
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
  mpz_class r = (num * inv) % p;
  if (r < 0) r += p;
  return Rational(r);
}

Rational Ring::inverse(const Rational& c) const {
  if (c == 0) throw std::domain_error("inverse of zero");
  if (characteristic_ == 0) return Rational(1) / c;
  return normalize(Rational(c.get_den(), c.get_num()));
}

RingPtr Ring::extended(const std::vector<std::string>& extra) const {
  std::vector<std::string> vars = vars_;
  for (const auto& v : extra) {
    if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
  }
  return make(std::move(vars), characteristic_);
}

RingPtr Ring::with_characteristic(unsigned long p) const { return make(vars_, p); }

RingPtr join(const RingPtr& a, const RingPtr& b) {
  if (a->characteristic() != b->characteristic()) {
    throw DimensionError("cannot join rings of different characteristic");
  }
  return a->extended(b->vars());
}

}  // namespace covlab
