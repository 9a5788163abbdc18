#include <doctest.h>

#include "covlab/exactalg/parse.hpp"
#include "covlab/noname/noname.hpp"

using namespace covlab;

namespace {

RationalMatrix rm(std::size_t n, std::vector<long> entries) {
  std::vector<Rational> d;
  for (long e : entries) d.emplace_back(e);
  return RationalMatrix(n, n, std::move(d));
}

ActionPtr swap_action() {
  auto s = rm(2, {0, 1, 1, 0});
  return make_action(FiniteGroupAction({{s, s}}));
}

Covariant poly_cov(const ActionPtr& a, const RingPtr& r, const std::vector<std::string>& coords) {
  std::vector<Poly> ps;
  for (const auto& c : coords) ps.push_back(parse_poly(c, r));
  return verified(Covariant::polynomial(a, r, ps));
}

struct Vandermonde {
  RingPtr ring = Ring::make({"x1", "x2"});
  ActionPtr action = swap_action();
  std::vector<Covariant> fs{poly_cov(action, ring, {"x1", "x2"}), poly_cov(action, ring, {"x1^2", "x2^2"})};
};

const Check& check(const Report& r, const std::string& name) {
  const Check* c = r.find(name);
  REQUIRE(c != nullptr);
  return *c;
}

}  // namespace

TEST_CASE("Vandermonde pair under swap") {
  Vandermonde v;
  NoNameMap m = build_isomorphism(v.fs);
  CHECK(m.f.to_string() == "x1*x2^2 - x1^2*x2");
  CHECK(m.weight == Character::table({1, -1}));
  CHECK(m.w_names == std::vector<std::string>{"w1", "w2"});
  CHECK(m.out_names == std::vector<std::string>{"a1", "a2"});

  // hand-expanded adjugate of [[x1, x1^2], [x2, x2^2]]
  auto xw = m.xw_ring();
  auto gens = m.generators();
  REQUIRE(gens.size() == 2);
  CHECK(gens[0].num == parse_poly("x2^2*w1 - x1^2*w2", xw));
  CHECK(gens[1].num == parse_poly("-x2*w1 + x1*w2", xw));
  CHECK(gens[0].den == parse_poly("x1*x2^2 - x2*x1^2", xw));

  // swap applied by hand: x1 <-> x2, w1 <-> w2 leaves each generator fixed
  std::vector<std::optional<Poly>> sw{Poly::variable(xw, "x2"), Poly::variable(xw, "x1"), Poly::variable(xw, "w2"),
                                      Poly::variable(xw, "w1")};
  for (const auto& g : gens) {
    Fraction moved(g.num.compose(sw, xw), g.den.compose(sw, xw));
    CHECK(moved.equals(g));
  }

  Report r = verify_isomorphism(m);
  CHECK(r.passed);
  for (const char* name : {"denominator_is_det", "phi_times_phi_inv", "phi_inv_times_phi", "linear_in_w", "frame",
                           "round_trip_forward", "round_trip_backward", "generators_invariant", "weight",
                           "phi_inv_equivariant", "generators_independent", "over_x"}) {
    CHECK_MESSAGE(check(r, name).passed, name);
  }
}

TEST_CASE("perturbed entry is named") {
  Vandermonde v;
  NoNameMap m = build_isomorphism(v.fs);
  m.phi_num(0, 1) += Poly::constant(m.x_ring, 1);
  Report r = verify_isomorphism(m);
  CHECK_FALSE(r.passed);
  const Check& fwd = check(r, "round_trip_forward");
  CHECK_FALSE(fwd.passed);
  CHECK(fwd.detail.find("phi[0][1]") != std::string::npos);
  CHECK(fwd.detail.find("phi[0][0]") == std::string::npos);
  CHECK(fwd.detail.find("phi[1][") == std::string::npos);
  CHECK_FALSE(check(r, "phi_times_phi_inv").passed);
  CHECK_FALSE(check(r, "generators_invariant").passed);
  CHECK(check(r, "denominator_is_det").passed);

  m = build_isomorphism(v.fs);
  m.phi_num(1, 0) += Poly::constant(m.x_ring, 1);
  Report r2 = verify_isomorphism(m);
  CHECK(check(r2, "round_trip_forward").detail.find("phi[1][0]") != std::string::npos);
  CHECK(check(r2, "round_trip_backward").detail.find("phi[1][0]") != std::string::npos);
}

TEST_CASE("trivial one-dimensional map") {
  auto r = Ring::make({"x1"});
  auto a = make_action(FiniteGroupAction({{rm(1, {1}), rm(1, {1})}}));
  NoNameMap m = build_isomorphism({poly_cov(a, r, {"1"})});
  CHECK(m.f.is_one());
  CHECK(m.generators()[0].num.to_string() == "w1");
  CHECK(m.generators()[0].den.is_one());
  CHECK(verify_isomorphism(m).passed);
}

TEST_CASE("name choices avoid existing variables") {
  auto r = Ring::make({"w1", "w2"});
  auto a = swap_action();
  std::vector<Covariant> fs{poly_cov(a, r, {"w1", "w2"}), poly_cov(a, r, {"w1^2", "w2^2"})};
  NoNameMap m = build_isomorphism(fs);
  CHECK(m.w_names == std::vector<std::string>{"w_1", "w_2"});
  CHECK(verify_isomorphism(m).passed);
  CHECK_THROWS_AS(build_isomorphism(fs, {"w1", "z"}), VariableError);
  CHECK_THROWS_AS(build_isomorphism(fs, {"z"}), DimensionError);
}

TEST_CASE("dependent covariants are rejected") {
  Vandermonde v;
  std::vector<Covariant> fs{v.fs[0], v.fs[0]};
  CHECK_THROWS_AS(build_isomorphism(fs), std::invalid_argument);
}

TEST_CASE("projections give the entries of D^-1 x_i") {
  // V = k^2, X = V^4 with columns x_j = (x1j, x2j); F_j = x_j for j = 1, 2.
  std::vector<std::string> vars;
  for (int j = 1; j <= 4; ++j) {
    for (int i = 1; i <= 2; ++i) vars.push_back("x" + std::to_string(i) + std::to_string(j));
  }
  auto r = Ring::make(vars);
  auto a = make_action(SymbolicGroupAction(2, {{"gl_natural", 4}}, {{"gl_natural"}}, 0, vars));
  NoNameMap m = build_isomorphism({poly_cov(a, r, {"x11", "x21"}), poly_cov(a, r, {"x12", "x22"})});
  CHECK(m.f == parse_poly("x11*x22 - x12*x21", r));
  CHECK(verify_isomorphism(m).passed);
  for (int col = 3; col <= 4; ++col) {
    std::string c = std::to_string(col);
    auto gen = m.generators_at({parse_poly("x1" + c, r), parse_poly("x2" + c, r)});
    // Cramer: replace a column of D by x_col
    RatFn e1 = parse_ratfn("(x1" + c + "*x22 - x12*x2" + c + ")/(x11*x22 - x12*x21)", r);
    RatFn e2 = parse_ratfn("(x11*x2" + c + " - x1" + c + "*x21)/(x11*x22 - x12*x21)", r);
    CHECK(gen[0] == e1);
    CHECK(gen[1] == e2);
    const ActingElement& g = a->symbolic().generic();
    for (const auto& e : gen) CHECK(act_on_ratfn(g, e) == e.lift(acting_ring(r, g)));
  }
}

TEST_CASE("covariants from generators round trip") {
  Vandermonde v;
  NoNameMap m = build_isomorphism(v.fs);
  auto back = covariants_from_generators(m.phi(), v.action, v.ring);
  REQUIRE(back.size() == 2);
  for (std::size_t j = 0; j < 2; ++j) {
    CHECK(back[j] == v.fs[j]);
    CHECK(back[j].status() == Equivariance::equivariant);
  }

  auto r = Ring::make({"x1", "x2"});
  auto triv = make_action(FiniteGroupAction({{rm(2, {0, 1, 1, 0}), rm(2, {1, 0, 0, 1})}}));
  RatMatrix id = to_ratfn(identity_matrix(r, 2));
  auto coords = covariants_from_generators(id, triv, r);
  CHECK(coords[0].to_string() == "(1, 0)");
  CHECK(coords[1].to_string() == "(0, 1)");
}

TEST_CASE("non-invariant row has a witness") {
  Vandermonde v;
  RatMatrix phi = build_isomorphism(v.fs).phi();
  phi(1, 0) = parse_ratfn("x1", v.ring);
  try {
    covariants_from_generators(phi, v.action, v.ring);
    FAIL("expected NotInvariantError");
  } catch (const NotInvariantError& e) {
    CHECK(std::string(e.what()).find("row 1") != std::string::npos);
    CHECK(e.witness().find("[[0, 1], [1, 0]]") != std::string::npos);
  }
  RatMatrix singular(2, 2, RatFn::constant(v.ring, 0));
  CHECK_THROWS_AS(covariants_from_generators(singular, v.action, v.ring), std::domain_error);
}

TEST_CASE("symbolic non-invariant row uses a concrete witness") {
  std::vector<std::string> vars{"x11", "x21", "x12", "x22"};
  auto r = Ring::make(vars);
  auto a = make_action(SymbolicGroupAction(2, {{"gl_natural", 2}}, {{"gl_natural"}}, 0, vars));
  RatMatrix phi = to_ratfn(identity_matrix(r, 2));
  try {
    covariants_from_generators(phi, a, r);
    FAIL("expected NotInvariantError");
  } catch (const NotInvariantError& e) {
    CHECK(e.witness() == "g = [[1, 1], [0, 1]]");
  }
}

TEST_CASE("linearize drops higher order terms") {
  auto r = Ring::make({"x1"});
  auto a = make_action(FiniteGroupAction({{rm(1, {1}), rm(2, {1, 0, 0, 1})}}));
  auto xw = r->extended({"w1", "w2"});
  Linearization l = linearize_isomorphism({parse_ratfn("w1 + w2^2", xw), parse_ratfn("w2", xw)}, a, r, {"w1", "w2"},
                                          Poly::constant(r, 1));
  CHECK(l.linear == to_ratfn(identity_matrix(r, 2)));
  CHECK(l.det.to_string() == "1");
  CHECK(l.covariants[0].to_string() == "(1, 0)");
  CHECK(l.covariants[1].to_string() == "(0, 1)");

  try {
    linearize_isomorphism({parse_ratfn("w1^2", xw), parse_ratfn("w2^3 + x1", xw)}, a, r, {"w1", "w2"},
                          Poly::constant(r, 1));
    FAIL("expected NonUnitError");
  } catch (const NonUnitError& e) {
    CHECK(e.determinant() == "0");
  }
  CHECK_THROWS_AS(linearize_isomorphism({parse_ratfn("x1*w1", xw), parse_ratfn("w2", xw)}, a, r, {"w1", "w2"},
                                        Poly::constant(r, 1)),
                  NonUnitError);
}

TEST_CASE("linearize the cleared Vandermonde map") {
  Vandermonde v;
  NoNameMap m = build_isomorphism(v.fs);
  auto xw = m.xw_ring();
  // f has weight -1, so f^2 is the smallest power of f that is invariant
  Poly f2 = m.f.pow(2).lift(xw);
  std::vector<RatFn> cleared;
  for (const auto& g : m.generators()) cleared.emplace_back(divide_or_throw(g.num * f2, g.den), Poly::constant(xw, 1));
  Linearization l = linearize_isomorphism(cleared, v.action, v.ring, m.w_names, m.f);
  CHECK(l.det == RatFn(m.f.pow(3), Poly::constant(v.ring, 1)));
  for (std::size_t j = 0; j < 2; ++j) {
    std::vector<RatFn> expect;
    for (const auto& c : v.fs[j].coords()) expect.push_back(c / RatFn(m.f.pow(2), Poly::constant(v.ring, 1)));
    CHECK(l.covariants[j].coords() == expect);
  }

  // f * Phi is not invariant
  std::vector<RatFn> once;
  for (const auto& g : m.generators()) once.emplace_back(g.num, Poly::constant(xw, 1));
  CHECK_THROWS_AS(linearize_isomorphism(once, v.action, v.ring, m.w_names, m.f), NotInvariantError);
}
