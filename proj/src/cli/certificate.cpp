#include "covlab/cli/certificate.hpp"

#include "covlab/cli/problem.hpp"

namespace covlab::cli {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string entry(const std::string& name, std::size_t i, std::size_t j) {
  return name + "[" + std::to_string(i) + "][" + std::to_string(j) + "]";
}

std::string at_ij(const std::string& pointer, std::size_t i, std::size_t j) {
  return pointer + "/" + std::to_string(i) + "/" + std::to_string(j);
}

}  // namespace

ordered_json certificate_to_json(const NoNameMap& m, const Report& checks) {
  const std::size_t d = m.d();
  ordered_json j;
  j["format"] = kCertificateFormat;
  if (m.x_ring->characteristic() != 0) j["characteristic"] = m.x_ring->characteristic();
  j["group"] = group_to_json(describe_group(*m.action));
  j["space"] = {{"x", m.x_ring->vars()}, {"w", m.w_names}, {"out", m.out_names}};
  j["f"] = m.f.to_string();
  if (m.weight.is_table()) {
    ordered_json w = ordered_json::array();
    for (const auto& v : m.weight.values()) w.push_back(rational_text(v));
    j["weight"] = std::move(w);
  } else {
    j["weight"] = m.weight.to_string();
  }
  RatMatrix phi = m.phi();
  auto& p = j["phi"] = ordered_json::array();
  auto& pi = j["phi_inv"] = ordered_json::array();
  for (std::size_t r = 0; r < d; ++r) {
    ordered_json row = ordered_json::array(), row_inv = ordered_json::array();
    for (std::size_t c = 0; c < d; ++c) {
      row.push_back(phi(r, c).to_string());
      row_inv.push_back(m.phi_inv(r, c).to_string());
    }
    p.push_back(std::move(row));
    pi.push_back(std::move(row_inv));
  }
  auto& cs = j["covariants"] = ordered_json::array();
  for (std::size_t c = 0; c < d; ++c) {
    ordered_json col = ordered_json::array();
    for (std::size_t r = 0; r < d; ++r) col.push_back(m.phi_inv(r, c).to_string());
    cs.push_back(std::move(col));
  }
  auto& ch = j["checks"] = ordered_json::array();
  for (const auto& c : checks.checks) ch.push_back({{"name", c.name}, {"passed", c.passed}});
  return j;
}

Report verify_certificate(std::string_view text, const std::string& source) {
  FieldReader r(text, source);
  if (!r.root().is_object()) r.fail("schema", "", "a certificate is a JSON object");
  r.only_keys("", {"format", "characteristic", "group", "space", "f", "weight", "phi", "phi_inv", "covariants",
                   "checks"});
  if (r.string("/format") != kCertificateFormat) {
    r.fail("schema", "/format", "unsupported certificate format (expected " + std::string(kCertificateFormat) + ")");
  }
  unsigned long p = r.has("/characteristic") ? r.count("/characteristic") : 0;
  r.only_keys("/space", {"x", "w", "out"});
  std::vector<std::string> x = r.names("/space/x"), w = r.names("/space/w"), out = r.names("/space/out");
  std::vector<std::string> avoid = x;
  avoid.insert(avoid.end(), w.begin(), w.end());
  avoid.insert(avoid.end(), out.begin(), out.end());
  GroupDescription gd = r.group("/group", p);
  ActionPtr action;
  try {
    action = build_action(gd, p, avoid);
  } catch (const DimensionError& e) {
    r.fail("dimension", "/group", e.what());
  } catch (const GroupError& e) {
    r.fail("group", "/group", e.what());
  }
  const std::size_t d = action->w_dim();
  if (action->x_dim() != x.size()) {
    r.fail("dimension", "/space/x", "the group acts on dimension " + std::to_string(action->x_dim()));
  }
  if (w.size() != d) r.fail("dimension", "/space/w", "W has dimension " + std::to_string(d));
  if (out.size() != d) r.fail("dimension", "/space/out", "the target has dimension " + std::to_string(d));
  RingPtr ring = Ring::make(x, p);

  auto square = [&](const std::string& pointer) {
    const json& m = r.at(pointer);
    if (!m.is_array() || m.size() != d) r.fail("dimension", pointer, "expected " + std::to_string(d) + " rows");
    for (std::size_t i = 0; i < d; ++i) {
      const json& row = r.at(pointer + "/" + std::to_string(i));
      if (!row.is_array() || row.size() != d) {
        r.fail("dimension", pointer + "/" + std::to_string(i), "expected " + std::to_string(d) + " entries");
      }
    }
  };
  square("/phi");
  square("/phi_inv");

  Report rep;
  rep.operation = "noname-verify";

  RatFn f_text = r.ratfn("/f", ring);
  if (!f_text.is_polynomial()) {
    rep.add("f", false, "f is not a polynomial");
    rep.summary = "malformed certificate";
    return rep;
  }
  Poly f = f_text.as_poly();

  Character weight = Character::table({});
  if (action->is_finite()) {
    const json& wj = r.at("/weight");
    if (!wj.is_array() || wj.size() != action->finite().order()) {
      r.fail("dimension", "/weight", "expected one value per group element (" +
                                         std::to_string(action->finite().order()) + ")");
    }
    std::vector<Rational> vals;
    for (std::size_t i = 0; i < wj.size(); ++i) vals.push_back(r.rational("/weight/" + std::to_string(i), ring));
    weight = Character::table(std::move(vals));
  } else {
    weight = Character::generic(r.ratfn("/weight", action->params()));
  }

  PolyMatrix phi_num = zero_matrix(ring, d, d), phi_inv = zero_matrix(ring, d, d);
  std::vector<std::string> bad;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      RatFn e = r.ratfn(at_ij("/phi", i, j), ring) * RatFn(f);
      if (e.is_polynomial()) {
        phi_num(i, j) = e.as_poly();
      } else {
        bad.push_back(entry("phi", i, j));
      }
      RatFn q = r.ratfn(at_ij("/phi_inv", i, j), ring);
      if (q.is_polynomial()) {
        phi_inv(i, j) = q.as_poly();
      } else {
        bad.push_back(entry("phi_inv", i, j));
      }
    }
  }
  if (!bad.empty()) {
    std::string names;
    for (const auto& b : bad) names += (names.empty() ? "" : ", ") + b;
    rep.add("entries_polynomial", false, "f * phi and phi_inv must be polynomial; offending entries: " + names);
    rep.summary = "certificate rejected";
    return rep;
  }

  const json& cj = r.at("/covariants");
  if (!cj.is_array() || cj.size() != d) r.fail("dimension", "/covariants", "expected " + std::to_string(d) + " covariants");
  std::vector<std::string> mismatched;
  for (std::size_t c = 0; c < d; ++c) {
    const std::string cp = "/covariants/" + std::to_string(c);
    if (!r.at(cp).is_array() || r.at(cp).size() != d) {
      r.fail("dimension", cp, "expected " + std::to_string(d) + " coordinates");
    }
    for (std::size_t i = 0; i < d; ++i) {
      if (r.ratfn(cp + "/" + std::to_string(i), ring) != RatFn(phi_inv(i, c))) {
        mismatched.push_back("covariants[" + std::to_string(c) + "][" + std::to_string(i) + "]");
      }
    }
  }
  std::string mm;
  for (const auto& s : mismatched) mm += (mm.empty() ? "" : ", ") + s;
  rep.add("covariants_are_columns", mismatched.empty(),
          mismatched.empty() ? "covariant j is column j of phi_inv" : "differ from phi_inv: " + mm);

  NoNameMap m{action, ring, w, out, f, weight, phi_num, phi_inv};
  Report v;
  try {
    v = verify_isomorphism(m);
  } catch (const std::exception& e) {
    rep.add("verify_isomorphism", false, e.what());
    rep.summary = "certificate rejected";
    return rep;
  }
  for (const auto& c : v.checks) rep.add(c.name, c.passed, c.detail);
  for (const auto& [k, val] : v.data.items()) rep.data[k] = val;
  rep.summary = rep.passed ? "certificate verified: all checks pass"
                           : std::to_string(rep.failures().size()) + " check(s) failed";
  return rep;
}

}  // namespace covlab::cli
