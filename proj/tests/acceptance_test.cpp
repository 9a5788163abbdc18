// Acceptance run: one PASS/FAIL line per criterion with its wall time.
// Exit status is nonzero when any criterion fails.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "covlab/cli/cli.hpp"
#include "covlab/exactalg/parse.hpp"
#include "covlab/forge/forge.hpp"
#include "covlab/noname/noname.hpp"
#include "covlab/reflect/reflect.hpp"
#include "oracles.hpp"

using namespace covlab;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

RationalMatrix rm(std::size_t n, std::vector<long> entries) {
  std::vector<Rational> d;
  for (long e : entries) d.emplace_back(e);
  return RationalMatrix(n, n, std::move(d));
}

ActionPtr swap_action() {
  auto s = rm(2, {0, 1, 1, 0});
  return make_action(FiniteGroupAction({{s, s}}));
}

ActionPtr s3_action() {
  auto t = rm(3, {0, 1, 0, 1, 0, 0, 0, 0, 1});
  auto c = rm(3, {0, 0, 1, 1, 0, 0, 0, 1, 0});
  return make_action(FiniteGroupAction({{t, t}, {c, c}}));
}

Covariant cov(const ActionPtr& a, const RingPtr& r, const std::vector<std::string>& coords) {
  std::vector<RatFn> out;
  for (const auto& s : coords) out.push_back(parse_ratfn(s, r));
  return verified(Covariant(a, r, out));
}

int cli(std::vector<std::string> args, std::string* out = nullptr) {
  std::ostringstream o, e;
  int code = cli::run(args, o, e);
  if (out) *out = o.str();
  return code;
}

Rational leibniz_of(const Matrix<Rational>& m) {
  std::vector<std::vector<Rational>> rows(m.rows(), std::vector<Rational>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
  }
  return oracle::leibniz_det(rows);
}

// sum_i h_i F_i expanded coordinate by coordinate with plain polynomial arithmetic.
bool expands_to_zero(const std::vector<Poly>& h, const std::vector<Covariant>& fs) {
  for (std::size_t k = 0; k < fs[0].size(); ++k) {
    Poly acc(fs[0].x_ring());
    for (std::size_t i = 0; i < h.size(); ++i) acc += h[i] * fs[i].polys()[k];
    if (!acc.is_zero()) return false;
  }
  return true;
}

bool invariant_under_all(const RatFn& e, const FiniteGroupAction& g) {
  for (std::size_t i = 0; i < g.order(); ++i) {
    if (act_on_ratfn(g.element(i), e) != e) return false;
  }
  return true;
}

Outcome vandermonde_isomorphism() {
  Outcome o;
  fs::path cert = fs::temp_directory_path() / "covlab_acceptance_vandermonde.json";
  o.expect(cli({"noname-build", "vandermonde_s2", "--out", cert.string()}) == 0, "noname-build exit code");
  std::ifstream in(cert);
  auto j = nlohmann::json::parse(in);
  auto ring = Ring::make({"x1", "x2"});
  Poly f = parse_poly(j["f"].get<std::string>(), ring);
  Poly expected = parse_poly("x1*x2*(x2 - x1)", ring);
  o.expect(f == expected || f == -expected, "f = " + f.to_string());
  // element 1 is the swap; det(swap)^-1 = -1
  o.expect(j["weight"] == nlohmann::json::array({"1", "-1"}), "weight " + j["weight"].dump());
  std::string out;
  o.expect(cli({"noname-verify", cert.string()}, &out) == 0, "noname-verify failed");
  for (const char* c : {"round_trip_forward", "round_trip_backward", "generators_invariant", "weight"}) {
    o.expect(out.find(std::string("[ok] ") + c) != std::string::npos, std::string("missing check ") + c);
  }
  fs::remove(cert);
  if (o.ok) o.detail = "f = " + f.to_string() + ", weight(swap) = -1";
  return o;
}

Outcome words_isomorphism() {
  Outcome o;
  Family fam = example_family("matrix_words", {.n = 2, .words = {"1", "A", "B", "AB"}});
  const auto& sym = fam.action->symbolic();
  o.expect(!sym.checks_on_generators(), "expected checks on the generic element");
  o.expect(fam.ring->size() == 8 && sym.params()->size() == 4, "variable counts");
  for (const auto& c : fam.covariants) {
    Report r = verify_equivariance(c);
    o.expect(r.passed && r.find("F(g^-1 x) = g^-1 F(x)")->detail.find("generic element") != std::string::npos,
             "equivariance of " + c.to_string());
  }
  NoNameMap m = build_isomorphism(fam.covariants);
  WeightResult w = relative_weight(m.f, *fam.action);
  o.expect(w.weight && w.weight->is_trivial(), "f is not an absolute invariant");
  o.expect(m.weight.is_trivial(), "recorded weight " + m.weight.to_string());
  PolyMatrix prod = m.phi_num * m.phi_inv;
  PolyMatrix fI = scale(identity_matrix(fam.ring, 4), m.f);
  o.expect(prod == fI, "adj(F) F != f I");
  o.expect(m.phi_inv * m.phi_num == fI, "F adj(F) != f I");
  o.expect(oracle::cofactor_det(m.phi_inv) == m.f, "f differs from the cofactor determinant");
  Report v = verify_isomorphism(m);
  o.expect(v.passed, "verify_isomorphism failed");
  if (o.ok) o.detail = "f has " + std::to_string(m.f.size()) + " terms, weight 1";
  return o;
}

Outcome words_witness() {
  Outcome o;
  const Rational frozen[] = {-1, 8};
  std::string detail;
  for (std::size_t n : {2, 3}) {
    Family fam = example_family("matrix_words", {.n = n});
    o.expect(fam.covariants.size() == n * n, "word count");
    auto vals = evaluate_coordinates(fam.covariants, *fam.witness);
    Rational d = leibniz_of(vals);
    o.expect(d != 0 && d == frozen[n - 2], "determinant for n = " + std::to_string(n) + " is " + d.get_str());
    Report r = generic_independence(fam.covariants, {{}, fam.witness});
    o.expect(r.passed && r.data["witness"]["determinant"] == d.get_str(), "library witness for n = " + std::to_string(n));
    detail += (detail.empty() ? "" : ", ") + std::string("n = ") + std::to_string(n) + ": det " + d.get_str();
  }
  if (o.ok) o.detail = detail;
  return o;
}

Outcome generators_round_trip() {
  Outcome o;
  auto ring = Ring::make({"x1", "x2"});
  auto a = swap_action();
  std::vector<std::pair<std::string, std::vector<Covariant>>> cases;
  cases.push_back({"vandermonde", {cov(a, ring, {"x1", "x2"}), cov(a, ring, {"x1^2", "x2^2"})}});
  for (auto [n, m] : {std::pair<std::size_t, std::size_t>{2, 3}, {3, 4}}) {
    Family fam = example_family("projections", {.n = n, .m = m});
    cases.push_back({"projections n=" + std::to_string(n) + " m=" + std::to_string(m), fam.covariants});
  }
  for (const auto& [name, fs] : cases) {
    NoNameMap m = build_isomorphism(fs);
    auto back = covariants_from_generators(m.phi(), fs[0].action(), fs[0].x_ring());
    bool same = back.size() == fs.size();
    for (std::size_t j = 0; same && j < fs.size(); ++j) same = back[j] == fs[j];
    o.expect(same, name + " does not round trip");
  }
  if (o.ok) o.detail = std::to_string(cases.size()) + " families returned exactly";
  return o;
}

Outcome generation_and_averaging() {
  Outcome o;
  struct Case {
    ActionPtr action;
    RingPtr ring;
    unsigned bound;
  };
  std::vector<Case> cases{{swap_action(), Ring::make({"x1", "x2"}), 2}, {s3_action(), Ring::make({"x1", "x2", "x3"}), 3}};
  std::size_t averaged = 0;
  for (const auto& c : cases) {
    auto fs = generate_covariants(c.action, c.ring, c.bound);
    o.expect(fs.size() == c.action->w_dim(), "generate found too few covariants");
    o.expect(generic_independence(fs).passed, "generated covariants are dependent");
    std::mt19937_64 rng(2024);
    for (int seed = 0; seed < 20; ++seed) {
      std::vector<Poly> h;
      for (std::size_t k = 0; k < c.action->w_dim(); ++k) h.push_back(oracle::random_poly(c.ring, rng, 3, 3));
      Covariant r = reynolds_project(h, c.action, c.ring);
      o.expect(verify_equivariance(r).passed, "average not equivariant");
      Covariant again = reynolds_project(r.polys(), c.action, c.ring);
      o.expect(again == r, "average not idempotent");
      ++averaged;
    }
  }
  if (o.ok) o.detail = "S2 and S3 generated; " + std::to_string(averaged) + " averages idempotent and equivariant";
  return o;
}

Outcome denominator_clearing() {
  Outcome o;
  auto ring = Ring::make({"x1", "x2"});
  auto a = swap_action();
  ClearedFamily c = clear_denominators({cov(a, ring, {"x1/(x1 + x2)", "x2/(x1 + x2)"})});
  o.expect(c.covariants[0].is_integral(), "not integral");
  o.expect(verify_equivariance(c.covariants[0]).passed, "not equivariant");
  WeightResult w = relative_weight(c.f, *a);
  o.expect(w.weight && w.weight->is_trivial(), "f not an absolute invariant");

  std::vector<std::vector<std::vector<std::string>>> families = {
      {{"x1/(x1 + x2)", "x2/(x1 + x2)"}, {"1", "1"}},
      {{"x1/(x1 + x2)", "x2/(x1 + x2)"}, {"x1", "x2"}},
      {{"1/(x1*x2)", "1/(x1*x2)"}, {"x1^2/(x1 + x2)", "x2^2/(x1 + x2)"}},
  };
  std::string verdicts;
  for (const auto& fam : families) {
    std::vector<Covariant> fs;
    for (const auto& coords : fam) fs.push_back(cov(a, ring, coords));
    bool before = generic_independence(fs).passed;
    bool after = generic_independence(clear_denominators(fs).covariants).passed;
    o.expect(before == after, "verdicts differ");
    verdicts += (verdicts.empty() ? "" : "/") + std::string(before ? "indep" : "dep");
  }
  if (o.ok) o.detail = "f = " + c.f.to_string() + "; verdicts " + verdicts + " agree";
  return o;
}

Outcome cubic_relation() {
  Outcome o;
  auto ring = Ring::make({"x1", "x2"});
  auto a = swap_action();
  std::vector<Covariant> fs{cov(a, ring, {"x1", "x2"}), cov(a, ring, {"x1^2", "x2^2"}), cov(a, ring, {"x1^3", "x2^3"})};
  FunctionFieldResult ff = relation_over_function_field(fs);
  o.expect(ff.relation.has_value() && ff.rank == 2, "no relation found");
  RelativeRelation rr = relative_invariant_relation(fs, {true, true});
  std::vector<Poly> expected{parse_poly("x1*x2", ring), parse_poly("-(x1 + x2)", ring), parse_poly("1", ring)};
  o.expect(rr.relation.polys() == expected, "coefficients " + rr.relation.to_string());
  o.expect(expands_to_zero(expected, fs), "e2 F1 - e1 F2 + F3 does not expand to 0");
  o.expect(rr.weight.is_trivial(), "common weight " + rr.weight.to_string());
  for (const auto& wt : rr.weights) o.expect(wt && wt->is_trivial(), "coefficient weight");
  if (o.ok) o.detail = rr.relation.to_string();
  return o;
}

Outcome reflection_lowering() {
  Outcome o;
  auto ring = Ring::make({"x1", "x2"});
  auto a = swap_action();
  std::vector<Covariant> fs{cov(a, ring, {"x1", "x2"}), cov(a, ring, {"x1^2", "x2^2"}), cov(a, ring, {"x1^3", "x2^3"})};
  std::vector<RatFn> big;
  for (const char* s : {"x1*x1*x2", "-x1*(x1 + x2)", "x1"}) big.push_back(parse_ratfn(s, ring));
  Relation r = make_relation(big, fs);
  auto refl = find_reflections(*a, ring);
  o.expect(refl.size() == 1, "S2 reflections");
  Relation low = lower_relation(r, refl[0]);
  Relation seven = relative_invariant_relation(fs, {true, true}).relation;
  o.expect(low.coeffs == seven.coeffs, "lowered to " + low.to_string());
  std::size_t zeros = 0;
  o.expect(lower_relation(seven, refl[0]).is_zero(), "minimal S2 relation not lowered to zero");
  ++zeros;
  Family s3 = example_family("power_maps", {.n = 3, .powers = {1, 2, 3, 4}});
  Relation m3 = relation_over_function_field(s3.covariants).relation->integral();
  auto r3 = find_reflections(*s3.action, s3.ring);
  o.expect(r3.size() == 3, "S3 reflections");
  for (const auto& s : r3) {
    o.expect(lower_relation(m3, s).is_zero(), "minimal S3 relation not lowered to zero at " + s.l.to_string());
    ++zeros;
  }
  if (o.ok) o.detail = "lowered to " + low.to_string() + "; " + std::to_string(zeros) + " reflections give 0";
  return o;
}

Outcome scalar_abstention() {
  Outcome o;
  auto ring = Ring::make({"x", "y"});
  auto a = make_action(SymbolicGroupAction(1, {{"scalar", 1, 2}}, {{"scalar", 1, 1}}, 0, {"x", "y"}));
  std::vector<Covariant> fs{cov(a, ring, {"x"}), cov(a, ring, {"y"})};
  Report v = module_independence_verdict(fs, {});
  o.expect(v.data["verdict"] == "abstain", "verdict " + v.data["verdict"].dump());
  Report g = generic_independence(fs);
  o.expect(!g.passed && g.data["rank"] == 1, "generic rank");
  std::string out;
  o.expect(cli({"independence", "scalar_counterexample"}, &out) == 1, "independence exit code");
  o.expect(out.find("dependent, rank 1") != std::string::npos, "independence summary");
  o.expect(cli({"module-verdict", "scalar_counterexample"}) == 1, "module-verdict exit code");
  if (o.ok) o.detail = "abstain, rank 1, exit 1";
  return o;
}

Outcome projection_generators() {
  Outcome o;
  Family fam = example_family("projections", {.n = 3, .m = 4});
  const RingPtr& r = fam.ring;
  NoNameMap m = build_isomorphism(fam.covariants);
  auto var = [&](std::size_t i, std::size_t j) { return Poly::variable(r, "x" + std::to_string(i) + std::to_string(j)); };
  std::vector<Poly> x4{var(1, 4), var(2, 4), var(3, 4)};
  auto gens = m.generators_at(x4);
  // Cramer: entry i of D^-1 x4 is det(D with column i replaced by x4) / det D.
  PolyMatrix D(3, 3, Poly(r));
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) D(i, j) = var(i + 1, j + 1);
  }
  Poly detD = oracle::cofactor_det(D);
  for (std::size_t i = 0; i < 3; ++i) {
    PolyMatrix Di = D;
    for (std::size_t k = 0; k < 3; ++k) Di(k, i) = x4[k];
    o.expect(gens[i] == RatFn(oracle::cofactor_det(Di), detD), "generator " + std::to_string(i + 1));
  }
  // Signed 3-cycles: generated by a cyclic permutation and diag(-1, 1, 1), acting on V^4 diagonally.
  RationalMatrix c = rm(3, {0, 0, 1, 1, 0, 0, 0, 1, 0}), s = rm(3, {-1, 0, 0, 0, 1, 0, 0, 0, 1});
  auto on_x = [](const RationalMatrix& g) {
    RationalMatrix big(12, 12, Rational(0));
    for (std::size_t b = 0; b < 4; ++b) {
      for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) big(3 * b + i, 3 * b + j) = g(i, j);
      }
    }
    return big;
  };
  FiniteGroupAction test({{on_x(c), c}, {on_x(s), s}});
  o.expect(test.order() == 24, "test group order " + std::to_string(test.order()));
  for (const auto& e : gens) o.expect(invariant_under_all(e, test), "generator moved by the test group");
  o.expect(verify_isomorphism(m).find("generators_invariant")->passed, "generic invariance");
  if (o.ok) o.detail = "3 generators equal D^-1 x4, invariant under a group of order 24";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    const char* what;
    double limit;  // seconds; 0 for none
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"C1", "S2 Vandermonde no-name map built and certificate verified", 1, vandermonde_isomorphism},
      {"C2", "GL2 word covariants I, A, B, AB: symbolic no-name map", 60, words_isomorphism},
      {"C3", "word covariants independent at the diagonal/cyclic witness", 10, words_witness},
      {"C4", "covariants recovered exactly from phi", 0, generators_round_trip},
      {"C5", "generation for S2, S3 and group averaging", 30, generation_and_averaging},
      {"C6", "denominator clearing keeps independence verdicts", 0, denominator_clearing},
      {"C7", "cubic power relation e2 F1 - e1 F2 + F3 = 0 with trivial weights", 0, cubic_relation},
      {"C8", "lowering at reflections", 0, reflection_lowering},
      {"C9", "scalar action: abstention, rank 1, exit code 1", 0, scalar_abstention},
      {"C10", "projection generators are the entries of D^-1 x4", 0, projection_generators},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit > 0 && secs > c.limit) {
      o.ok = false;
      o.detail += " (over the " + std::to_string(static_cast<int>(c.limit)) + " s limit)";
    }
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.3f s", secs);
    std::cout << (o.ok ? "PASS " : "FAIL ") << c.id << " " << c.what << " [" << timing << "]: " << o.detail << "\n";
    if (!o.ok) ++failed;
  }
  std::cout << (failed ? "FAIL" : "PASS") << ": " << criteria.size() - failed << " of " << criteria.size()
            << " criteria\n";
  return failed ? 1 : 0;
}
