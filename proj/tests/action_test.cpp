#include <doctest.h>

#include <random>

#include "covlab/action/act.hpp"
#include "covlab/exactalg/parse.hpp"
#include "oracles.hpp"

using namespace covlab;

namespace {

RationalMatrix rm(std::size_t n, std::vector<long> entries) {
  std::vector<Rational> d;
  for (long e : entries) d.emplace_back(e);
  return RationalMatrix(n, n, std::move(d));
}

RationalMatrix swap2() { return rm(2, {0, 1, 1, 0}); }
RationalMatrix cycle3() { return rm(3, {0, 0, 1, 1, 0, 0, 0, 1, 0}); }
RationalMatrix transposition3() { return rm(3, {0, 1, 0, 1, 0, 0, 0, 0, 1}); }

std::vector<Rational> identity_point(std::size_t n) {
  std::vector<Rational> id(n * n, Rational(0));
  for (std::size_t p = 0; p < n; ++p) id[p * n + p] = 1;
  return id;
}

// Substitutes g := A*B into a polynomial of the g-variables of `sym`, where A
// and B are the generic elements of `sym` and `other`.
Poly at_product(const Poly& p, const SymbolicGroupAction& sym, const SymbolicGroupAction& other,
                const RingPtr& target) {
  const std::size_t n = sym.n();
  std::vector<std::optional<Poly>> images(p.ring()->size());
  for (std::size_t i = 0; i < p.ring()->size(); ++i) {
    const std::string& name = p.ring()->vars()[i];
    auto gi = sym.params()->find(name);
    if (!gi) continue;
    std::size_t r = *gi / n, c = *gi % n;
    Poly s(target);
    for (std::size_t k = 0; k < n; ++k) {
      s += Poly::variable(target, sym.params()->vars()[r * n + k]) *
           Poly::variable(target, other.params()->vars()[k * n + c]);
    }
    images[i] = std::move(s);
  }
  return p.compose(images, target);
}

}  // namespace

TEST_CASE("finite group closure") {
  FiniteGroupAction s2({{swap2(), swap2()}});
  CHECK(s2.order() == 2);
  CHECK(s2.inverse(1) == 1);

  FiniteGroupAction s3({{cycle3(), cycle3()}, {transposition3(), transposition3()}});
  CHECK(s3.order() == 6);
  for (std::size_t i = 0; i < 6; ++i) CHECK(s3.multiply(i, s3.inverse(i)) == 0);

  CHECK_THROWS_AS(FiniteGroupAction({{rm(2, {1, 1, 0, 1}), rm(2, {1, 1, 0, 1})}}), GroupError);
  CHECK_THROWS_AS(FiniteGroupAction({{rm(2, {1, 1, 1, 1}), rm(2, {1, 1, 1, 1})}}), GroupError);
  // x-rep of order 3 with a w-rep of order 2
  CHECK_THROWS_AS(FiniteGroupAction({{cycle3(), rm(1, {-1})}}), GroupError);
  CHECK_THROWS_AS(FiniteGroupAction({{swap2(), rm(3, {1, 0, 0, 0, 1, 0, 0, 0, 1})}, {cycle3(), cycle3()}}),
                  DimensionError);
}

TEST_CASE("closure in prime characteristic") {
  // the unipotent matrix has order p over F_p
  FiniteGroupAction g({{rm(2, {1, 1, 0, 1}), rm(1, {1})}}, 5);
  CHECK(g.order() == 5);
  CHECK_THROWS_AS(FiniteGroupAction({{rm(2, {1, 1, 0, 1}), rm(1, {1})}}, 0, 50), GroupError);
}

TEST_CASE("symbolic templates") {
  SymbolicGroupAction conj(2, {{"gl_conjugation"}}, {{"gl_conjugation"}});
  CHECK(conj.params()->size() == 4);
  CHECK(conj.x_dim() == 4);
  CHECK(conj.generic().x.power == 1);
  for (const auto& p : conj.generic().x.numer.data()) CHECK(p.total_degree() <= 2);

  SymbolicGroupAction scalar(1, {{"scalar", 1, 1}}, {{"scalar", 1, 1}});
  CHECK(scalar.generic().x.numer(0, 0).to_string() == "g11");
  CHECK(scalar.generic().x.power == 0);

  SymbolicGroupAction nat(2, {{"gl_natural", 2}}, {{"gl_natural"}});
  PolyMatrix g = scale(identity_matrix(nat.params(), 2), Poly::constant(nat.params(), 0));
  for (std::size_t k = 0; k < 4; ++k) g(k / 2, k % 2) = Poly::variable(nat.params(), k);
  CHECK(nat.generic().w.numer == g);
  CHECK(nat.generic().w.power == 0);
  CHECK(nat.x_dim() == 4);

  CHECK_THROWS_AS(SymbolicGroupAction(2, {{"gl_adjoint"}}, {{"gl_natural"}}), GroupError);
  CHECK_THROWS_AS(SymbolicGroupAction(2, {{"scalar"}}, {{"gl_natural"}}), GroupError);

  SymbolicGroupAction avoid(1, {{"scalar"}}, {{"scalar"}}, 0, {"g11"});
  CHECK(avoid.params()->vars()[0] != "g11");
}

TEST_CASE("template modules are homomorphisms") {
  for (std::string kind : {"gl_natural", "gl_dual", "gl_conjugation", "det_power"}) {
    SymbolicGroupAction a(2, {{kind}}, {{"trivial"}});
    std::vector<std::string> avoid = a.params()->vars();
    SymbolicGroupAction b(2, {{kind}}, {{"trivial"}}, 0, avoid);
    RingPtr both = join(a.params(), b.params());
    const auto& ea = a.generic();
    const auto& eb = b.generic();
    // rho(A) rho(B) / detA^p detB^p == rho(AB) / det(AB)^p
    PolyMatrix lhs = lift(ea.x.numer, both) * lift(eb.x.numer, both);
    PolyMatrix rhs = ea.x.numer.map([&](const Poly& p) { return at_product(p, a, b, both); });
    CHECK(lhs == rhs);
  }
}

TEST_CASE("act_on_poly examples") {
  auto ring = Ring::make({"x1", "x2"});
  FiniteGroupAction s2({{swap2(), swap2()}});
  Poly p = parse_poly("x1*x2^2", ring);
  CHECK(act_on_poly(s2.element(1), p).as_poly() == parse_poly("x2*x1^2", ring));
  CHECK(act_on_poly(s2.element(0), p).as_poly() == p);

  SymbolicGroupAction scalar(1, {{"scalar", 1, 2}}, {{"scalar", 1, 1}});
  RatFn moved = act_on_poly(scalar.generic(), parse_poly("x1", ring));
  CHECK(moved.to_string() == "(x1)/(g11)");
}

TEST_CASE("function action composes: g.(h.p) = (gh).p") {
  auto ring = Ring::make({"x1", "x2", "x3"});
  FiniteGroupAction s3({{cycle3(), cycle3()}, {transposition3(), transposition3()}});
  std::mt19937_64 rng(9);
  for (int k = 0; k < 10; ++k) {
    Poly p = oracle::random_poly(ring, rng, 4, 3);
    for (std::size_t g = 0; g < 6; ++g) {
      for (std::size_t h = 0; h < 6; ++h) {
        Poly inner = act_on_poly(s3.element(h), p).as_poly();
        Poly outer = act_on_poly(s3.element(g), inner).as_poly();
        CHECK(outer == act_on_poly(s3.element(s3.multiply(g, h)), p).as_poly());
        CHECK(inner.total_degree() == p.total_degree());
      }
    }
  }
}

TEST_CASE("symbolic composition in two generic elements") {
  auto ring = Ring::make({"a11", "a12", "a21", "a22"});
  SymbolicGroupAction a(2, {{"gl_conjugation"}}, {{"trivial"}});
  SymbolicGroupAction b(2, {{"gl_conjugation"}}, {{"trivial"}}, 0, a.params()->vars());
  Poly p = parse_poly("a11^2 + 3*a12*a21 - a22", ring);
  RatFn inner = act_on_poly(b.generic(), p);
  ActingElement outer_el = a.generic();
  RatFn outer = act_on_ratfn(outer_el, inner);
  RatFn direct = act_on_poly(a.generic(), p);
  RingPtr both = outer.ring();
  Fraction expected(at_product(direct.num().lift(join(direct.ring(), b.params())), a, b, both),
                    at_product(direct.den().lift(join(direct.ring(), b.params())), a, b, both));
  CHECK(Fraction::of(outer).equals(expected));
}

TEST_CASE("classical invariants of conjugation are fixed") {
  auto ring = Ring::make({"a11", "a12", "a21", "a22"});
  SymbolicGroupAction conj(2, {{"gl_conjugation"}}, {{"gl_conjugation"}});
  Poly trace = parse_poly("a11 + a22", ring);
  Poly determinant = parse_poly("a11*a22 - a12*a21", ring);
  CHECK(act_on_poly(conj.generic(), trace) == RatFn(trace.lift(act_on_poly(conj.generic(), trace).ring())));
  RatFn d = act_on_poly(conj.generic(), determinant);
  CHECK(d.is_polynomial());
  CHECK(d.num().to_string() == "a11*a22 - a12*a21");
}

TEST_CASE("characters and weights") {
  auto ring = Ring::make({"x1", "x2"});
  GroupAction s2{FiniteGroupAction({{swap2(), swap2()}})};
  auto w = relative_weight(parse_poly("x1 - x2", ring), s2);
  REQUIRE(w.weight);
  CHECK(w.weight->values() == std::vector<Rational>{1, -1});
  CHECK(*w.weight == det_w_inverse(s2));
  CHECK(is_multiplicative(*w.weight, s2));
  CHECK_FALSE(relative_weight(parse_poly("x1", ring), s2).weight);
  CHECK(relative_weight(parse_poly("x1 + x2", ring), s2).weight->is_trivial());

  GroupAction nat{SymbolicGroupAction(2, {{"gl_natural", 2}}, {{"gl_natural"}})};
  auto dring = Ring::make({"x11", "x12", "x21", "x22"});
  // columns of D are the two copies: D = [[x11, x21], [x12, x22]]
  Poly d = parse_poly("x11*x22 - x21*x12", dring);
  auto dw = relative_weight(d, nat);
  REQUIRE(dw.weight);
  CHECK(dw.weight->value().to_string() == "(1)/(g11*g22 - g12*g21)");
  CHECK(*dw.weight == det_w_inverse(nat));
  CHECK(is_multiplicative(*dw.weight, nat));
  CHECK_FALSE(is_multiplicative(Character::generic(RatFn(Poly::variable(nat.params(), 0))), nat));

  GroupAction conj{SymbolicGroupAction(2, {{"gl_conjugation"}}, {{"gl_conjugation"}})};
  CHECK(det_w_inverse(conj).is_trivial());
}

TEST_CASE("witness candidates start with the elementary transvection") {
  GroupAction conj{SymbolicGroupAction(2, {{"gl_conjugation"}}, {{"gl_conjugation"}})};
  auto c = conj.witness_candidates();
  REQUIRE_FALSE(c.empty());
  CHECK(*c[0].g == rm(2, {1, 1, 0, 1}));
  for (const auto& e : c) CHECK(e.scale.constant_value() != 0);
  CHECK(identity_point(2).size() == 4);
}
