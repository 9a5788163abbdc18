#include "covlab/cli/problem.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "covlab/exactalg/parse.hpp"

#ifndef COVLAB_PRESET_DIR
#define COVLAB_PRESET_DIR "presets"
#endif

namespace covlab::cli {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

const std::vector<std::string> kTemplates = {"gl_natural", "gl_dual", "gl_conjugation", "trivial", "scalar",
                                             "det_power"};

std::string join_list(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i];
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string idx(const std::string& pointer, std::size_t i) { return pointer + "/" + std::to_string(i); }

}  // namespace

ProblemError::ProblemError(std::string kind, std::string source, std::string pointer, Location loc,
                           std::string message)
    : std::runtime_error([&] {
        std::string s = source;
        if (loc.line) s += ":" + std::to_string(loc.line) + ":" + std::to_string(loc.column);
        s += ": " + kind + " error";
        if (!pointer.empty()) s += " at " + pointer;
        return s + ": " + message;
      }()),
      kind_(std::move(kind)),
      source_(std::move(source)),
      pointer_(std::move(pointer)),
      loc_(loc),
      message_(std::move(message)) {}

std::string rational_text(const Rational& c) { return rational_to_string(c); }

ordered_json matrix_to_json(const RationalMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rational_text(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

// ---------------------------------------------------------------------------
// FieldReader

FieldReader::FieldReader(std::string_view text, std::string source) : text_(text), source_(std::move(source)) {
  try {
    root_ = json::parse(text_);
  } catch (const json::parse_error& e) {
    std::string msg = e.what();
    auto colon = msg.find(": ", msg.find("column"));
    if (colon != std::string::npos) msg = msg.substr(colon + 2);
    std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
    throw ProblemError("syntax", source_, "", location_of_offset(text_, at), msg);
  }
  locations_ = index_locations(text_);
}

Location FieldReader::locate(const std::string& pointer) const {
  std::string p = pointer;
  while (true) {
    auto it = locations_.find(p);
    if (it != locations_.end()) return it->second;
    if (p.empty()) return {};
    p = p.substr(0, p.rfind('/'));
  }
}

void FieldReader::fail(const std::string& kind, const std::string& pointer, const std::string& message) const {
  throw ProblemError(kind, source_, pointer, locate(pointer), message);
}

bool FieldReader::has(const std::string& pointer) const { return root_.contains(json::json_pointer(pointer)); }

const json& FieldReader::at(const std::string& pointer) const {
  if (!has(pointer)) fail("schema", pointer, "missing field");
  return root_.at(json::json_pointer(pointer));
}

void FieldReader::only_keys(const std::string& pointer, const std::vector<std::string>& allowed) const {
  const json& j = at(pointer);
  if (!j.is_object()) fail("schema", pointer, "expected an object");
  for (const auto& [k, v] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) {
      fail("schema", pointer + "/" + k, "unknown field '" + k + "' (expected one of " + join_list(allowed) + ")");
    }
  }
}

std::string FieldReader::string(const std::string& pointer) const {
  const json& j = at(pointer);
  if (!j.is_string()) fail("schema", pointer, "expected a string");
  return j.get<std::string>();
}

bool FieldReader::boolean(const std::string& pointer) const {
  const json& j = at(pointer);
  if (!j.is_boolean()) fail("schema", pointer, "expected true or false");
  return j.get<bool>();
}

long FieldReader::integer(const std::string& pointer) const {
  const json& j = at(pointer);
  if (!j.is_number_integer()) fail("schema", pointer, "expected an integer");
  return j.get<long>();
}

std::size_t FieldReader::count(const std::string& pointer) const {
  long v = integer(pointer);
  if (v < 0) fail("schema", pointer, "expected a nonnegative integer");
  return static_cast<std::size_t>(v);
}

std::vector<std::string> FieldReader::strings(const std::string& pointer) const {
  const json& j = at(pointer);
  if (!j.is_array()) fail("schema", pointer, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(string(idx(pointer, i)));
  return out;
}

std::vector<std::string> FieldReader::names(const std::string& pointer) const {
  static const std::regex ident("[A-Za-z_][A-Za-z0-9_]*");
  std::vector<std::string> out = strings(pointer);
  std::set<std::string> seen;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!std::regex_match(out[i], ident)) fail("schema", idx(pointer, i), "'" + out[i] + "' is not a variable name");
    if (!seen.insert(out[i]).second) fail("schema", idx(pointer, i), "variable '" + out[i] + "' declared twice");
  }
  return out;
}

Rational FieldReader::rational(const std::string& pointer, const RingPtr& field) const {
  const json& j = at(pointer);
  std::string text;
  if (j.is_number_integer()) {
    text = j.dump();
  } else if (j.is_string()) {
    text = j.get<std::string>();
  } else {
    fail("schema", pointer, "expected a rational number as a string such as \"-3/4\"");
  }
  static const std::regex literal(R"(\s*-?\d+(/\d+)?\s*)");
  if (!std::regex_match(text, literal)) fail("syntax", pointer, "'" + text + "' is not a rational number");
  RatFn r = parse_ratfn(text, field);
  return field->normalize(r.num().constant_value() * field->inverse(r.den().constant_value()));
}

RationalMatrix FieldReader::matrix(const std::string& pointer, const RingPtr& field, std::size_t size) const {
  const json& j = at(pointer);
  if (!j.is_array() || j.empty()) fail("schema", pointer, "expected a matrix as a nonempty array of rows");
  const std::size_t rows = j.size();
  std::vector<Rational> data;
  std::size_t cols = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string rp = idx(pointer, i);
    const json& row = at(rp);
    if (!row.is_array()) fail("schema", rp, "expected a row as an array");
    if (i == 0) cols = row.size();
    if (row.size() != cols) {
      fail("dimension", rp, "row has " + std::to_string(row.size()) + " entries, row 0 has " + std::to_string(cols));
    }
    for (std::size_t k = 0; k < row.size(); ++k) data.push_back(rational(idx(rp, k), field));
  }
  const std::string shape = std::to_string(rows) + "x" + std::to_string(cols);
  if (rows != cols) fail("dimension", pointer, "matrix is " + shape + " but must be square");
  if (size != 0 && rows != size) {
    fail("dimension", pointer, "matrix is " + shape + " but must be " + std::to_string(size) + "x" + std::to_string(size));
  }
  return RationalMatrix(rows, cols, std::move(data));
}

RatFn FieldReader::ratfn(const std::string& pointer, const RingPtr& ring) const {
  std::string text = string(pointer);
  try {
    return parse_ratfn(text, ring);
  } catch (const VariableError& e) {
    fail("reference", pointer, std::string(e.what()) + " (declared: " + join_list(ring->vars()) + ")");
  } catch (const ParseError& e) {
    Location loc = locate(pointer);
    if (loc.line) loc.column += 1 + e.column();
    throw ProblemError("syntax", source_, pointer, loc, e.what());
  } catch (const std::invalid_argument& e) {
    fail("syntax", pointer, e.what());
  } catch (const std::domain_error& e) {
    fail("syntax", pointer, e.what());
  }
}

GroupDescription FieldReader::group(const std::string& pointer, unsigned long characteristic) const {
  GroupDescription g;
  if (!at(pointer).is_object()) fail("schema", pointer, "expected an object");
  g.kind = string(pointer + "/kind");
  RingPtr field = Ring::make({}, characteristic);
  if (g.kind == "finite") {
    only_keys(pointer, {"kind", "generators"});
    const std::string gp = pointer + "/generators";
    const json& gens = at(gp);
    if (!gens.is_array() || gens.empty()) fail("schema", gp, "expected a nonempty array of generators");
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const std::string p = idx(gp, i);
      only_keys(p, {"x", "w"});
      std::size_t xs = g.generators.empty() ? 0 : g.generators[0].x.rows();
      std::size_t ws = g.generators.empty() ? 0 : g.generators[0].w.rows();
      RationalMatrix x = matrix(p + "/x", field, xs);
      RationalMatrix w = matrix(p + "/w", field, ws);
      g.generators.push_back({std::move(x), std::move(w)});
    }
    return g;
  }
  if (g.kind == "symbolic") {
    only_keys(pointer, {"kind", "n", "x", "w", "check"});
    g.n = count(pointer + "/n");
    if (g.n == 0) fail("schema", pointer + "/n", "GL_n needs n >= 1");
    auto summands = [&](const std::string& mp) {
      const json& arr = at(mp);
      if (!arr.is_array() || arr.empty()) fail("schema", mp, "expected a nonempty array of module summands");
      std::vector<ModuleSummand> out;
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string p = idx(mp, i);
        only_keys(p, {"template", "copies", "dim", "exponent"});
        ModuleSummand s;
        s.kind = string(p + "/template");
        if (std::find(kTemplates.begin(), kTemplates.end(), s.kind) == kTemplates.end()) {
          fail("template", p + "/template", "unknown template '" + s.kind + "' (known: " + join_list(kTemplates) + ")");
        }
        if (has(p + "/copies")) s.copies = count(p + "/copies");
        if (s.copies == 0) fail("schema", p + "/copies", "copies must be at least 1");
        if (has(p + "/dim")) {
          if (s.kind != "trivial" && s.kind != "scalar") fail("schema", p + "/dim", "dim applies to trivial and scalar only");
          s.dim = count(p + "/dim");
        }
        if (has(p + "/exponent")) {
          if (s.kind != "det_power") fail("schema", p + "/exponent", "exponent applies to det_power only");
          s.exponent = static_cast<int>(integer(p + "/exponent"));
        }
        out.push_back(std::move(s));
      }
      return out;
    };
    g.x_module = summands(pointer + "/x");
    g.w_module = summands(pointer + "/w");
    if (has(pointer + "/check")) {
      std::string c = string(pointer + "/check");
      if (c != "generic" && c != "generators") fail("schema", pointer + "/check", "check must be \"generic\" or \"generators\"");
      g.check_on_generators = c == "generators";
    }
    return g;
  }
  fail("schema", pointer + "/kind", "unknown group kind '" + g.kind + "' (expected finite or symbolic)");
}

// ---------------------------------------------------------------------------
// Groups

ActionPtr build_action(const GroupDescription& g, unsigned long characteristic, const std::vector<std::string>& avoid) {
  if (g.kind == "finite") return make_action(FiniteGroupAction(g.generators, characteristic));
  SymbolicGroupAction s(g.n, g.x_module, g.w_module, characteristic, avoid);
  s.check_on_generators(g.check_on_generators);
  return make_action(std::move(s));
}

GroupDescription describe_group(const GroupAction& a) {
  GroupDescription g;
  if (a.is_finite()) {
    g.kind = "finite";
    g.generators = a.finite().generators();
  } else {
    const auto& s = a.symbolic();
    g.kind = "symbolic";
    g.n = s.n();
    g.x_module = s.x_module();
    g.w_module = s.w_module();
    g.check_on_generators = s.checks_on_generators();
  }
  return g;
}

ordered_json group_to_json(const GroupDescription& g) {
  ordered_json j;
  j["kind"] = g.kind;
  if (g.kind == "finite") {
    auto& gens = j["generators"] = ordered_json::array();
    for (const auto& gen : g.generators) {
      ordered_json e;
      e["x"] = matrix_to_json(gen.x);
      e["w"] = matrix_to_json(gen.w);
      gens.push_back(std::move(e));
    }
    return j;
  }
  j["n"] = g.n;
  auto summands = [](const std::vector<ModuleSummand>& v) {
    ordered_json arr = ordered_json::array();
    for (const auto& s : v) {
      ordered_json e;
      e["template"] = s.kind;
      if (s.copies != 1) e["copies"] = s.copies;
      if (s.dim != 1) e["dim"] = s.dim;
      if (s.exponent != 1) e["exponent"] = s.exponent;
      arr.push_back(std::move(e));
    }
    return arr;
  };
  j["x"] = summands(g.x_module);
  j["w"] = summands(g.w_module);
  if (g.check_on_generators) j["check"] = "generators";
  return j;
}

// ---------------------------------------------------------------------------
// Problems

namespace {

void read_params(const FieldReader& r, ProblemFile& p, const Instance& inst) {
  if (!r.has("/params")) return;
  r.only_keys("/params", {"hint", "degree_bound", "flags", "lower", "bridges"});
  RingPtr field = Ring::make({}, p.characteristic);
  const auto& vars = inst.ring->vars();
  if (r.has("/params/hint")) {
    const json& h = r.at("/params/hint");
    if (!h.is_object()) r.fail("schema", "/params/hint", "expected an object mapping x variables to values");
    for (const auto& [k, v] : h.items()) {
      if (!inst.ring->find(k)) r.fail("reference", "/params/hint/" + k, "undeclared variable '" + k + "'");
    }
    std::vector<Rational> pt;
    for (const auto& v : vars) {
      if (!h.contains(v)) r.fail("schema", "/params/hint", "hint has no value for '" + v + "'");
      pt.push_back(r.rational("/params/hint/" + v, field));
    }
    p.params.hint = pt;
  }
  if (r.has("/params/degree_bound")) p.params.degree_bound = static_cast<unsigned>(r.count("/params/degree_bound"));
  if (r.has("/params/flags")) {
    r.only_keys("/params/flags", {"factorial", "scalar_units"});
    SpaceFlags f;
    if (r.has("/params/flags/factorial")) f.factorial = r.boolean("/params/flags/factorial");
    if (r.has("/params/flags/scalar_units")) f.scalar_units = r.boolean("/params/flags/scalar_units");
    p.params.flags = f;
  }
  if (r.has("/params/lower")) {
    r.only_keys("/params/lower", {"relation", "reflection"});
    LowerParams l;
    if (r.has("/params/lower/relation")) {
      const std::string lp = "/params/lower/relation";
      auto coeffs = r.strings(lp);
      if (coeffs.size() != inst.covariants.size()) {
        r.fail("dimension", lp, "relation has " + std::to_string(coeffs.size()) + " coefficients for " +
                                    std::to_string(inst.covariants.size()) + " covariants");
      }
      for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] = r.ratfn(idx(lp, i), inst.ring).to_string();
      l.relation = coeffs;
    }
    if (r.has("/params/lower/reflection")) {
      l.reflection = r.matrix("/params/lower/reflection", field, inst.action->x_dim());
    }
    p.params.lower = l;
  }
  if (r.has("/params/bridges")) {
    r.only_keys("/params/bridges", {"fraction_field", "reflection", "note"});
    Bridges b;
    if (r.has("/params/bridges/fraction_field")) b.fraction_field = r.boolean("/params/bridges/fraction_field");
    if (r.has("/params/bridges/reflection")) b.reflection = r.boolean("/params/bridges/reflection");
    if (r.has("/params/bridges/note")) b.note = r.string("/params/bridges/note");
    p.params.bridges = b;
  }
}

std::shared_ptr<const Instance> family_instance(const FamilySpec& f) {
  Family fam = example_family(f.name, f.params);
  auto inst = std::make_shared<Instance>();
  inst->action = fam.action;
  inst->ring = fam.ring;
  inst->covariants = fam.covariants;
  inst->witness = fam.witness;
  return inst;
}

}  // namespace

ProblemFile parse_problem_text(std::string_view text, const std::string& source) {
  FieldReader r(text, source);
  if (!r.root().is_object()) r.fail("schema", "", "a problem file is a JSON object");
  r.only_keys("", {"name", "description", "characteristic", "family", "group", "space", "covariants", "params"});
  ProblemFile p;
  if (r.has("/name")) p.name = r.string("/name");
  if (r.has("/description")) p.description = r.string("/description");
  if (r.has("/characteristic")) {
    p.characteristic = r.count("/characteristic");
    if (p.characteristic != 0 && !is_prime(p.characteristic)) {
      r.fail("schema", "/characteristic", "characteristic must be 0 or a prime");
    }
  }

  if (r.has("/family")) {
    for (const char* k : {"/group", "/space", "/covariants"}) {
      if (r.has(k)) r.fail("schema", k, "a family problem takes its group, space and covariants from the family");
    }
    if (p.characteristic != 0) r.fail("schema", "/characteristic", "families are defined over the rationals");
    r.only_keys("/family", {"name", "n", "m", "words", "powers"});
    FamilySpec f;
    f.name = r.string("/family/name");
    auto names = family_names();
    if (std::find(names.begin(), names.end(), f.name) == names.end()) {
      r.fail("schema", "/family/name", "unknown family '" + f.name + "' (known: " + join_list(names) + ")");
    }
    if (r.has("/family/n")) f.params.n = r.count("/family/n");
    if (r.has("/family/m")) f.params.m = r.count("/family/m");
    if (r.has("/family/words")) f.params.words = r.strings("/family/words");
    if (r.has("/family/powers")) {
      const json& pw = r.at("/family/powers");
      if (!pw.is_array()) r.fail("schema", "/family/powers", "expected an array of exponents");
      for (std::size_t i = 0; i < pw.size(); ++i) {
        f.params.powers.push_back(static_cast<unsigned>(r.count(idx("/family/powers", i))));
      }
    }
    try {
      p.instance = family_instance(f);
    } catch (const std::invalid_argument& e) {
      r.fail("schema", "/family", e.what());
    }
    p.family = f;
    read_params(r, p, *p.instance);
    return p;
  }

  if (!r.has("/group")) r.fail("schema", "", "missing field 'group' (or 'family')");
  if (!r.has("/space")) r.fail("schema", "", "missing field 'space'");
  r.only_keys("/space", {"x", "w"});
  p.x_vars = r.names("/space/x");
  if (p.x_vars.empty()) r.fail("schema", "/space/x", "X needs at least one coordinate");
  if (r.has("/space/w")) {
    p.w_vars = r.names("/space/w");
    for (std::size_t i = 0; i < p.w_vars.size(); ++i) {
      if (std::find(p.x_vars.begin(), p.x_vars.end(), p.w_vars[i]) != p.x_vars.end()) {
        r.fail("schema", idx("/space/w", i), "'" + p.w_vars[i] + "' is already an x variable");
      }
    }
  }
  GroupDescription g = r.group("/group", p.characteristic);
  if (g.kind == "finite") {
    for (std::size_t i = 0; i < g.generators.size(); ++i) {
      if (g.generators[i].x.rows() != p.x_vars.size()) {
        r.fail("dimension", idx("/group/generators", i) + "/x",
               "matrix is " + std::to_string(g.generators[i].x.rows()) + "x" +
                   std::to_string(g.generators[i].x.rows()) + " but space.x declares " +
                   std::to_string(p.x_vars.size()) + " coordinates");
      }
    }
  }
  std::vector<std::string> avoid = p.x_vars;
  avoid.insert(avoid.end(), p.w_vars.begin(), p.w_vars.end());
  auto inst = std::make_shared<Instance>();
  try {
    inst->action = build_action(g, p.characteristic, avoid);
  } catch (const DimensionError& e) {
    r.fail("dimension", "/group", e.what());
  } catch (const GroupError& e) {
    r.fail("group", "/group", e.what());
  }
  if (inst->action->x_dim() != p.x_vars.size()) {
    r.fail("dimension", "/space/x", "space.x declares " + std::to_string(p.x_vars.size()) +
                                        " coordinates but the group acts on dimension " +
                                        std::to_string(inst->action->x_dim()));
  }
  const std::size_t d = inst->action->w_dim();
  if (!p.w_vars.empty() && p.w_vars.size() != d) {
    r.fail("dimension", "/space/w", "space.w declares " + std::to_string(p.w_vars.size()) +
                                        " coordinates but W has dimension " + std::to_string(d));
  }
  p.group = g;
  inst->ring = Ring::make(p.x_vars, p.characteristic);
  inst->w_names = p.w_vars;

  if (r.has("/covariants")) {
    const json& cs = r.at("/covariants");
    if (!cs.is_array()) r.fail("schema", "/covariants", "expected an array of covariants");
    std::vector<std::vector<std::string>> texts;
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const std::string cp = idx("/covariants", i);
      const json& c = r.at(cp);
      if (!c.is_array()) r.fail("schema", cp, "expected the coordinates of a covariant as an array of strings");
      if (c.size() != d) {
        r.fail("dimension", cp, "covariant has " + std::to_string(c.size()) + " coordinates but W has dimension " +
                                    std::to_string(d));
      }
      std::vector<RatFn> coords;
      std::vector<std::string> canon;
      for (std::size_t k = 0; k < c.size(); ++k) {
        coords.push_back(r.ratfn(idx(cp, k), inst->ring));
        canon.push_back(coords.back().to_string());
      }
      try {
        inst->covariants.emplace_back(inst->action, inst->ring, std::move(coords));
      } catch (const std::invalid_argument& e) {
        r.fail("reference", cp, e.what());
      }
      texts.push_back(std::move(canon));
    }
    p.covariants = texts;
  }
  p.instance = inst;
  read_params(r, p, *inst);
  return p;
}

ProblemFile parse_problem(const std::string& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const std::runtime_error& e) {
    throw ProblemError("file", path, "", {}, e.what());
  }
  return parse_problem_text(text, path);
}

ordered_json serialize_problem(const ProblemFile& p) {
  ordered_json j;
  if (!p.name.empty()) j["name"] = p.name;
  if (!p.description.empty()) j["description"] = p.description;
  if (p.characteristic != 0) j["characteristic"] = p.characteristic;
  if (p.family) {
    ordered_json f;
    f["name"] = p.family->name;
    f["n"] = p.family->params.n;
    if (p.family->params.m != 0) f["m"] = p.family->params.m;
    if (!p.family->params.words.empty()) f["words"] = p.family->params.words;
    if (!p.family->params.powers.empty()) f["powers"] = p.family->params.powers;
    j["family"] = std::move(f);
  }
  if (p.group) {
    j["group"] = group_to_json(*p.group);
    ordered_json s;
    s["x"] = p.x_vars;
    if (!p.w_vars.empty()) s["w"] = p.w_vars;
    j["space"] = std::move(s);
  }
  if (p.covariants) j["covariants"] = *p.covariants;
  ordered_json params = ordered_json::object();
  const auto& pp = p.params;
  if (pp.hint && p.instance) {
    ordered_json h;
    for (std::size_t i = 0; i < pp.hint->size(); ++i) h[p.instance->ring->vars()[i]] = rational_text((*pp.hint)[i]);
    params["hint"] = std::move(h);
  }
  if (pp.degree_bound) params["degree_bound"] = *pp.degree_bound;
  if (pp.flags) {
    params["flags"] = {{"factorial", pp.flags->factorial}, {"scalar_units", pp.flags->scalar_units}};
  }
  if (pp.lower) {
    ordered_json l = ordered_json::object();
    if (pp.lower->relation) l["relation"] = *pp.lower->relation;
    if (pp.lower->reflection) l["reflection"] = matrix_to_json(*pp.lower->reflection);
    params["lower"] = std::move(l);
  }
  if (pp.bridges) {
    ordered_json b;
    b["fraction_field"] = pp.bridges->fraction_field;
    b["reflection"] = pp.bridges->reflection;
    if (!pp.bridges->note.empty()) b["note"] = pp.bridges->note;
    params["bridges"] = std::move(b);
  }
  if (!params.empty()) j["params"] = std::move(params);
  return j;
}

std::string problem_to_text(const ProblemFile& p) { return serialize_problem(p).dump(2) + "\n"; }

ProblemFile family_problem(const std::string& name, const FamilyParams& params) {
  ProblemFile p;
  p.name = name;
  p.family = FamilySpec{name, params};
  p.instance = family_instance(*p.family);
  return p;
}

std::string preset_dir() { return COVLAB_PRESET_DIR; }

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  std::error_code ec;
  for (const auto& e : fs::directory_iterator(preset_dir(), ec)) {
    if (e.path().extension() == ".json") out.push_back(e.path().stem().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string resolve_problem_path(const std::string& path) {
  std::error_code ec;
  if (fs::is_regular_file(path, ec)) return path;
  std::string base = fs::path(path).filename().string();
  if (base.empty()) return path;
  fs::path candidate = fs::path(preset_dir()) / base;
  if (candidate.extension() != ".json") candidate += ".json";
  if (fs::is_regular_file(candidate, ec)) return candidate.string();
  return path;
}

}  // namespace covlab::cli
