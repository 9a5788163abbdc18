#include "covlab/noname/noname.hpp"

#include <algorithm>
#include <sstream>

namespace covlab {

namespace {

bool taken_by(const std::vector<std::string>& taken, const std::string& name) {
  return std::find(taken.begin(), taken.end(), name) != taken.end();
}

std::vector<std::string> all_names(const RingPtr& x, const GroupAction& a) {
  std::vector<std::string> v = x->vars();
  for (const auto& p : a.params()->vars()) v.push_back(p);
  return v;
}

void check_names(const std::vector<std::string>& names, std::size_t d, const std::vector<std::string>& taken,
                 const std::string& what) {
  if (names.size() != d) {
    throw DimensionError(what + " needs " + std::to_string(d) + " names, got " + std::to_string(names.size()));
  }
  for (const auto& n : names) {
    if (taken_by(taken, n)) throw VariableError(what + " name '" + n + "' is already in use");
  }
}

// Acting on the first x_dim + w_dim variables of the fractions' ring, find an
// element moving one of them; prefer a concrete element for the message.
std::optional<std::string> invariance_witness(const std::vector<Fraction>& rs, const GroupAction& a) {
  auto moves = [&](const ActingElement& e) {
    ScaledMatrix both = direct_sum(e.x_inv, e.w_inv, e.scale);
    for (const auto& r : rs) {
      RingPtr target = acting_ring(r.num.ring(), e);
      Fraction moved = substitute_linear(r, both, e.scale, target);
      if (!moved.equals(Fraction(r.num.lift(target), r.den.lift(target)))) return true;
    }
    return false;
  };
  for (const auto& e : a.check_elements()) {
    if (!moves(e)) continue;
    if (a.is_finite()) return e.label;
    for (const auto& c : a.witness_candidates()) {
      if (moves(c)) return c.label;
    }
    return e.label;
  }
  return std::nullopt;
}

std::string entry_name(const std::string& m, std::size_t i, std::size_t j) {
  return m + "[" + std::to_string(i) + "][" + std::to_string(j) + "]";
}

std::string join_names(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + v[k];
  return s;
}

}  // namespace

std::vector<std::string> fresh_names(const std::vector<std::string>& prefixes, std::size_t count,
                                     const std::vector<std::string>& taken) {
  for (const auto& p : prefixes) {
    std::vector<std::string> out;
    bool ok = true;
    for (std::size_t i = 1; i <= count && ok; ++i) {
      out.push_back(p + std::to_string(i));
      ok = !taken_by(taken, out.back());
    }
    if (ok) return out;
  }
  throw VariableError("no free coordinate names");
}

RingPtr NoNameMap::xw_ring() const { return x_ring->extended(w_names); }
RingPtr NoNameMap::xa_ring() const { return x_ring->extended(out_names); }

RatMatrix NoNameMap::phi() const {
  return phi_num.map([&](const Poly& p) { return RatFn(p, f); });
}

std::vector<Fraction> NoNameMap::generators() const {
  RingPtr r = xw_ring();
  Poly den = f.lift(r);
  std::vector<Fraction> out;
  for (std::size_t i = 0; i < d(); ++i) {
    Poly num(r);
    for (std::size_t j = 0; j < d(); ++j) num += phi_num(i, j).lift(r) * Poly::variable(r, w_names[j]);
    out.emplace_back(num, den);
  }
  return out;
}

std::vector<RatFn> NoNameMap::generators_at(const std::vector<Poly>& w_values) const {
  if (w_values.size() != d()) throw DimensionError("generators_at: one value per W-coordinate required");
  std::vector<RatFn> out;
  for (std::size_t i = 0; i < d(); ++i) {
    Poly num(x_ring);
    for (std::size_t j = 0; j < d(); ++j) num += phi_num(i, j) * w_values[j].lift(x_ring);
    out.emplace_back(num, f);
  }
  return out;
}

std::vector<Covariant> NoNameMap::covariants() const {
  std::vector<Covariant> out;
  for (std::size_t j = 0; j < d(); ++j) {
    out.push_back(Covariant::polynomial(action, x_ring, phi_inv.col(j)).with_status(Equivariance::equivariant));
  }
  return out;
}

NoNameMap build_isomorphism(const std::vector<Covariant>& fs, std::vector<std::string> w_names,
                            std::vector<std::string> out_names) {
  if (fs.empty()) throw DimensionError("no covariants given");
  RelativeInvariant ri = det_relative_invariant(fs);
  if (ri.dependent()) throw std::invalid_argument("covariants are generically dependent: det F = 0");
  PolyMatrix F = covariant_matrix(fs);
  const std::size_t d = F.rows();
  const GroupAction& a = *fs[0].action();
  std::vector<std::string> taken = all_names(fs[0].x_ring(), a);
  if (w_names.empty()) w_names = fresh_names({"w", "w_", "ww"}, d, taken);
  check_names(w_names, d, taken, "W coordinate");
  for (const auto& w : w_names) taken.push_back(w);
  if (out_names.empty()) out_names = fresh_names({"a", "t", "u", "a_"}, d, taken);
  check_names(out_names, d, taken, "output coordinate");

  NoNameMap m{fs[0].action(), fs[0].x_ring(), w_names, out_names, ri.f, *ri.weight, adjugate(F), F};
  Report r = verify_isomorphism(m);
  if (!r.passed) {
    std::string msg = "constructed isomorphism failed its checks:";
    for (const auto* c : r.failures()) msg += " " + c->name;
    throw std::logic_error(msg);
  }
  return m;
}

Report verify_isomorphism(const NoNameMap& m) {
  Report r;
  r.operation = "verify_isomorphism";
  const std::size_t d = m.d();
  const RingPtr& xr = m.x_ring;
  r.data["f"] = m.f.to_string();
  r.data["weight"] = m.weight.to_string();
  if (m.phi_num.rows() != d || m.phi_num.cols() != d || m.phi_inv.cols() != d || m.w_names.size() != d ||
      m.out_names.size() != d) {
    r.add("shapes", false, "phi, phi_inv and the coordinate lists must all have size " + std::to_string(d));
    r.summary = "malformed map";
    return r;
  }
  if (m.f.is_zero()) {
    r.add("f is nonzero", false, "the localization denominator is 0");
    r.summary = "malformed map";
    return r;
  }
  Poly one = Poly::constant(xr, 1);
  PolyMatrix fI = scale(identity_matrix(xr, d), m.f);

  // Isomorphism over X: every map fixes the x-coordinates and only x enters.
  bool over_x = m.f.ring()->same_as(*xr);
  for (const auto& p : m.phi_num.data()) over_x = over_x && p.ring()->same_as(*xr);
  for (const auto& p : m.phi_inv.data()) over_x = over_x && p.ring()->same_as(*xr);
  r.add("over_x", over_x, "phi, phi_inv and f are functions of x alone; both maps keep x verbatim");
  if (!over_x) {
    r.summary = "maps involve variables other than x";
    return r;
  }

  Poly det_f = det(m.phi_inv);
  r.add("denominator_is_det", det_f == m.f,
        det_f == m.f ? "f = det(phi_inv)" : "det(phi_inv) = " + det_f.to_string());

  // Entries of phi that are off, from Delta = (phi_num F - f I) adj(F) / det(F).
  auto offenders = [&](const PolyMatrix& err) {
    std::vector<std::string> names;
    if (det_f.is_zero()) return names;
    PolyMatrix delta = err * adjugate(m.phi_inv);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        if (delta(i, j).is_zero()) continue;
        auto q = divide_exact(delta(i, j), det_f);
        names.push_back(entry_name("phi", i, j) + (q ? " off by (" + q->to_string() + ")/f" : ""));
      }
    }
    return names;
  };
  auto minus = [&](const PolyMatrix& a, const PolyMatrix& b) {
    return a + b.map([](const Poly& p) { return -p; });
  };

  PolyMatrix left = m.phi_num * m.phi_inv;
  bool left_ok = left == fI;
  r.add("phi_times_phi_inv", left_ok, left_ok ? "" : "wrong entries: " + join_names(offenders(minus(left, fI))));
  PolyMatrix right = m.phi_inv * m.phi_num;
  bool right_ok = right == fI;
  std::vector<std::string> right_bad;
  if (!right_ok) {
    // phi_inv phi_num - f I = F * Delta, so Delta = adj(F) (F phi_num - f I) / det F.
    PolyMatrix delta = adjugate(m.phi_inv) * minus(right, fI);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        if (!delta(i, j).is_zero()) right_bad.push_back(entry_name("phi", i, j));
      }
    }
  }
  r.add("phi_inv_times_phi", right_ok, right_ok ? "" : "wrong entries: " + join_names(right_bad));

  std::vector<Fraction> gens = m.generators();
  RingPtr xw = m.xw_ring();
  std::vector<std::size_t> w_idx;
  for (const auto& w : m.w_names) w_idx.push_back(xw->index(w));

  // Linearity in w: numerators homogeneous of degree one in w, f free of w.
  bool linear = true;
  for (const auto& g : gens) {
    if (g.num.component_of_degree(w_idx, 1) != g.num) linear = false;
    for (auto v : w_idx) linear = linear && !g.den.depends_on(v);
  }
  r.add("linear_in_w", linear);

  // Frame: Phi(x, F_j(x)) = e_j.
  std::vector<std::string> frame_bad;
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<std::optional<Poly>> images(xw->size());
    for (std::size_t l = 0; l < d; ++l) images[w_idx[l]] = m.phi_inv(l, j).lift(xw);
    for (std::size_t i = 0; i < d; ++i) {
      Poly num = gens[i].num.compose(images, xw);
      Poly expect = i == j ? gens[i].den : Poly(xw);
      if (num != expect) frame_bad.push_back("Phi_" + std::to_string(i) + "(x, F_" + std::to_string(j) + ")");
    }
  }
  r.add("frame", frame_bad.empty(), frame_bad.empty() ? "Phi(x, F_j(x)) = e_j" : join_names(frame_bad));

  // Round trip (x, a) -> (x, sum a_i F_i) -> Phi.
  RingPtr xa = m.xa_ring();
  {
    RingPtr both = xw->extended(m.out_names);
    std::vector<std::optional<Poly>> images(both->size());
    for (std::size_t l = 0; l < d; ++l) {
      Poly s(both);
      for (std::size_t i = 0; i < d; ++i) s += m.phi_inv(l, i).lift(both) * Poly::variable(both, m.out_names[i]);
      images[both->index(m.w_names[l])] = std::move(s);
    }
    std::vector<std::string> bad;
    for (std::size_t k = 0; k < d; ++k) {
      Poly num = gens[k].num.lift(both).compose(images, both);
      if (num != m.f.lift(both) * Poly::variable(both, m.out_names[k])) {
        // the coefficient of a_i in the error is the (k, i) entry of phi_num F - f I
        for (std::size_t i = 0; i < d; ++i) {
          if (left(k, i) != fI(k, i)) bad.push_back(entry_name("phi", k, i));
        }
        if (bad.empty()) bad.push_back("Phi_" + std::to_string(k));
      }
    }
    std::vector<std::string> named;
    if (!bad.empty()) named = offenders(minus(left, fI));
    r.add("round_trip_forward", bad.empty(),
          bad.empty() ? "Phi(x, sum a_i F_i(x)) = a" : "offending entries: " + join_names(named.empty() ? bad : named));
  }
  // Round trip (x, w) -> Phi -> sum Phi_i F_i = w.
  {
    std::vector<std::string> bad;
    for (std::size_t j = 0; j < d; ++j) {
      Poly num(xw);
      for (std::size_t i = 0; i < d; ++i) num += m.phi_inv(j, i).lift(xw) * gens[i].num;
      if (num != m.f.lift(xw) * Poly::variable(xw, m.w_names[j])) bad.push_back("coordinate " + m.w_names[j]);
    }
    r.add("round_trip_backward", bad.empty(),
          bad.empty() ? "sum_i Phi_i(x, w) F_i(x) = w"
                      : join_names(bad) + (right_bad.empty() ? "" : "; offending entries: " + join_names(right_bad)));
  }

  const GroupAction& a = *m.action;
  auto witness = invariance_witness(gens, a);
  r.add("generators_invariant", !witness, witness ? "moved by " + *witness : "g . Phi_i = Phi_i for " + a.describe());

  WeightResult w = relative_weight(m.f, a);
  Character expected = det_w_inverse(a);
  bool weight_ok = w.weight && *w.weight == m.weight && m.weight == expected;
  r.add("weight", weight_ok,
        weight_ok ? "weight(f) = det(g_W)^-1 = " + expected.to_string()
                  : (w.weight ? "weight(f) = " + w.weight->to_string() : w.failure) + ", recorded " +
                        m.weight.to_string() + ", det(g_W)^-1 = " + expected.to_string());

  std::vector<std::string> not_equivariant;
  for (std::size_t j = 0; j < d; ++j) {
    Covariant c = Covariant::polynomial(m.action, xr, m.phi_inv.col(j));
    if (!verify_equivariance(c).passed) not_equivariant.push_back("F_" + std::to_string(j));
  }
  r.add("phi_inv_equivariant", not_equivariant.empty(), join_names(not_equivariant));

  Poly det_phi = det(m.phi_num);
  r.add("generators_independent", !det_phi.is_zero(), "det(phi) != 0 certifies algebraic independence over k(X)");

  r.summary = r.passed ? "all checks pass" : std::to_string(r.failures().size()) + " check(s) failed";
  return r;
}

std::vector<Covariant> covariants_from_generators(const RatMatrix& phi, const ActionPtr& action,
                                                  const RingPtr& x_ring) {
  const std::size_t d = action->w_dim();
  if (phi.rows() != d || phi.cols() != d) {
    throw DimensionError("phi must be " + std::to_string(d) + "x" + std::to_string(d));
  }
  RatMatrix p = phi.map([&](const RatFn& r) { return r.ring()->same_as(*x_ring) ? r : r.lift(x_ring); });
  if (det(p).is_zero()) throw std::domain_error("phi is singular over k(X)");

  // Row invariance: phi(g^-1 x) * rho_W(g^-1) = phi(x).
  auto failing_row = [&](const ActingElement& e) -> std::optional<std::size_t> {
    RingPtr target = acting_ring(x_ring, e);
    Poly den = e.scale.lift(target).pow(e.w_inv.power);
    for (std::size_t i = 0; i < d; ++i) {
      std::vector<Fraction> moved;
      for (std::size_t j = 0; j < d; ++j) moved.push_back(substitute_linear(Fraction::of(p(i, j)), e.x_inv, e.scale, target));
      for (std::size_t k = 0; k < d; ++k) {
        Fraction acc{Poly(target)};
        for (std::size_t j = 0; j < d; ++j) {
          if (!e.w_inv.numer(j, k).is_zero()) acc = acc + moved[j] * Fraction(e.w_inv.numer(j, k).lift(target));
        }
        Fraction lhs = acc / Fraction(den);
        if (!lhs.equals(Fraction::of(p(i, k).lift(target)))) return i;
      }
    }
    return std::nullopt;
  };
  for (const auto& e : action->check_elements()) {
    auto row = failing_row(e);
    if (!row) continue;
    std::string label = e.label;
    if (!action->is_finite()) {
      for (const auto& c : action->witness_candidates()) {
        if (failing_row(c)) {
          label = c.label;
          break;
        }
      }
    }
    throw NotInvariantError("row " + std::to_string(*row) + " of phi does not define an invariant", label);
  }

  RatMatrix inv = inverse(p);
  std::vector<Covariant> out;
  for (std::size_t j = 0; j < d; ++j) {
    Report rep;
    Covariant c = verified(Covariant(action, x_ring, inv.col(j)), &rep);
    if (c.status() != Equivariance::equivariant) {
      throw std::logic_error("column " + std::to_string(j) + " of phi^-1 is not equivariant");
    }
    out.push_back(std::move(c));
  }
  return out;
}

namespace {

// True when r = c * f^k for a nonzero constant c and an integer k.
bool is_unit_at(const RatFn& r, const Poly& f) {
  if (r.is_zero()) return false;
  auto strip = [&](Poly p) {
    if (!f.is_constant()) {
      while (!p.is_constant()) {
        auto q = divide_exact(p, f);
        if (!q) break;
        p = std::move(*q);
      }
    }
    return p.is_constant();
  };
  return strip(r.num()) && strip(r.den());
}

}  // namespace

Linearization linearize_isomorphism(const std::vector<RatFn>& phi, const ActionPtr& action, const RingPtr& x_ring,
                                    const std::vector<std::string>& w_names, const Poly& f) {
  const std::size_t d = action->w_dim();
  if (phi.size() != d || w_names.size() != d) {
    throw DimensionError("need " + std::to_string(d) + " coordinates of Phi and of W");
  }
  RingPtr xw = x_ring->extended(w_names);
  if (xw->size() != x_ring->size() + d) throw VariableError("W coordinate names clash with x names");
  std::vector<std::size_t> w_idx;
  for (const auto& w : w_names) w_idx.push_back(xw->index(w));

  std::vector<Fraction> fr;
  for (const auto& p : phi) {
    RatFn q = p.ring()->same_as(*xw) ? p : p.lift(xw);
    for (auto v : w_idx) {
      if (q.den().depends_on(v)) throw std::invalid_argument("a denominator of Phi involves " + xw->vars()[v]);
    }
    fr.push_back(Fraction::of(q));
  }
  if (auto witness = invariance_witness(fr, *action)) {
    throw NotInvariantError("Phi is not invariant", *witness);
  }

  RatMatrix lin(d, d, RatFn::constant(x_ring, 0));
  for (std::size_t i = 0; i < d; ++i) {
    Poly part = fr[i].num.component_of_degree(w_idx, 1);
    Poly den = fr[i].den.lift(x_ring);
    for (std::size_t j = 0; j < d; ++j) {
      std::vector<Term> coeff;
      for (const auto& t : part.terms()) {
        if (t.exp[w_idx[j]] == 1) {
          Exponents e(t.exp.begin(), t.exp.begin() + static_cast<std::ptrdiff_t>(x_ring->size()));
          coeff.push_back({e, t.coeff});
        }
      }
      lin(i, j) = RatFn(Poly::from_terms(x_ring, std::move(coeff)), den);
    }
  }
  RatFn dt = det(lin);
  if (!is_unit_at(dt, f.lift(x_ring))) {
    throw NonUnitError("determinant of the linear part is not a unit on the open set f != 0 (f = " + f.to_string() +
                           "): det = " + dt.to_string(),
                       dt.to_string());
  }
  RatMatrix inv = inverse(lin);
  std::vector<Covariant> covs;
  for (std::size_t j = 0; j < d; ++j) {
    Covariant c = verified(Covariant(action, x_ring, inv.col(j)));
    if (c.status() != Equivariance::equivariant) {
      throw std::logic_error("column " + std::to_string(j) + " of the inverse linear part is not equivariant");
    }
    covs.push_back(std::move(c));
  }
  return {lin, dt, covs};
}

}  // namespace covlab
