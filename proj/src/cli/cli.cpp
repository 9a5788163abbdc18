#include "covlab/cli/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "covlab/cli/certificate.hpp"
#include "covlab/exactalg/parse.hpp"

namespace covlab::cli {

using nlohmann::ordered_json;

namespace {

const std::vector<std::pair<std::string, std::string>> kCommands = {
    {"verify", "check that every covariant is equivariant"},
    {"independence", "rank over k(X) with a witness point"},
    {"noname-build", "build and check the no-name isomorphism; --out writes the certificate"},
    {"noname-verify", "re-check a certificate written by noname-build"},
    {"generate", "find dim W independent covariants by Reynolds projection"},
    {"clear", "clear denominators of rational covariants"},
    {"relation", "relation among the covariants over k(X), or an independence minor"},
    {"lower", "lower a relation at reflections until its coefficients are invariant"},
    {"module-verdict", "independence over the invariant ring"},
    {"example", "list presets and families, or print one as a problem file"},
};

std::string label(std::size_t i) { return "F" + std::to_string(i + 1); }

PointSearch search_of(const RunOptions& o) {
  PointSearch s;
  s.seed = o.seed;
  return s;
}

const std::vector<Covariant>& require_covariants(const ProblemFile& p, const std::string& cmd) {
  if (p.instance->covariants.empty()) throw UsageError(cmd + " needs covariants in the problem file");
  return p.instance->covariants;
}

ordered_json string_list(const std::vector<Covariant>& fs) {
  ordered_json a = ordered_json::array();
  for (const auto& c : fs) a.push_back(c.to_string());
  return a;
}

// Verifies each covariant, one check per covariant.
std::vector<Covariant> verify_each(const std::vector<Covariant>& fs, const RunOptions& o, Report& r) {
  std::vector<Covariant> out;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    Report v;
    out.push_back(verified(fs[i], &v, search_of(o)));
    std::string detail = fs[i].to_string();
    if (!v.passed && v.data.contains("witness")) detail += "; witness " + v.data["witness"].dump();
    r.add(label(i) + " equivariant", v.passed, detail);
  }
  return out;
}

Report cmd_verify(const ProblemFile& p, const RunOptions& o) {
  const auto& fs = require_covariants(p, "verify");
  Report r;
  r.operation = "verify";
  r.data["group"] = p.instance->action->describe();
  verify_each(fs, o, r);
  std::size_t ok = std::count_if(r.checks.begin(), r.checks.end(), [](const Check& c) { return c.passed; });
  r.summary = std::to_string(ok) + " of " + std::to_string(fs.size()) + " covariants equivariant";
  return r;
}

Report cmd_independence(const ProblemFile& p, const RunOptions& o) {
  const auto& fs = require_covariants(p, "independence");
  IndependenceOptions io;
  io.search = search_of(o);
  if (p.params.hint) {
    io.hint = *p.params.hint;
  } else {
    io.hint = p.instance->witness;
  }
  Report r = generic_independence(fs, io);
  r.operation = "independence";
  return r;
}

Report cmd_noname_build(const ProblemFile& p, const RunOptions& o, ordered_json* certificate) {
  const auto& fs = require_covariants(p, "noname-build");
  Report r;
  r.operation = "noname-build";
  auto vs = verify_each(fs, o, r);
  if (!r.passed) {
    r.summary = "covariants are not all equivariant";
    return r;
  }
  std::optional<NoNameMap> m;
  try {
    m = build_isomorphism(vs, p.instance->w_names);
  } catch (const std::invalid_argument& e) {
    r.add("basis of W over k(X)", false, e.what());
    r.summary = "no isomorphism: the covariants are not a basis of W over k(X)";
    return r;
  }
  Report v = verify_isomorphism(*m);
  for (const auto& c : v.checks) r.add(c.name, c.passed, c.detail);
  r.data["f"] = m->f.to_string();
  r.data["weight"] = m->weight.to_string();
  r.data["w"] = m->w_names;
  r.data["out"] = m->out_names;
  RatMatrix phi = m->phi();
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < m->d(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t j = 0; j < m->d(); ++j) row.push_back(phi(i, j).to_string());
    rows.push_back(std::move(row));
  }
  r.data["phi"] = std::move(rows);
  ordered_json gens = ordered_json::array();
  for (const auto& g : m->generators()) gens.push_back(g.reduced().to_string());
  r.data["generators"] = std::move(gens);
  r.summary = "f = " + m->f.to_string() + ", weight " + m->weight.to_string();
  if (certificate) *certificate = certificate_to_json(*m, v);
  return r;
}

Report cmd_generate(const ProblemFile& p, const RunOptions& o) {
  const auto& inst = *p.instance;
  if (!inst.action->is_finite()) throw UsageError("generate needs a finite group");
  unsigned bound = o.degree_bound ? *o.degree_bound : p.params.degree_bound.value_or(3);
  Report r;
  r.operation = "generate";
  r.data["degree_bound"] = bound;
  std::vector<Covariant> fs;
  try {
    fs = generate_covariants(inst.action, inst.ring, bound);
  } catch (const GenerationError& e) {
    r.add("dim W independent covariants", false, e.what());
    r.data["rank"] = e.rank();
    r.data["covariants"] = string_list(e.found());
    r.summary = "rank " + std::to_string(e.rank()) + " of " + std::to_string(inst.action->w_dim()) +
                " within degree " + std::to_string(bound);
    return r;
  } catch (const ModularObstruction& e) {
    r.add("group order invertible", false, e.what());
    r.summary = "Reynolds projection undefined";
    return r;
  }
  r.add("dim W independent covariants", true, std::to_string(fs.size()) + " found");
  IndependenceOptions io;
  io.search = search_of(o);
  Report ind = generic_independence(fs, io);
  r.add("generically independent", ind.passed, ind.summary);
  r.data["covariants"] = string_list(fs);
  r.summary = std::to_string(fs.size()) + " covariants";
  return r;
}

std::size_t rank_over_function_field(const std::vector<Covariant>& fs) {
  return relation_over_function_field(fs).rank;
}

Report cmd_clear(const ProblemFile& p, const RunOptions& o) {
  const auto& fs = require_covariants(p, "clear");
  if (!p.instance->action->is_finite()) throw UsageError("clear needs a finite group");
  Report r;
  r.operation = "clear";
  auto vs = verify_each(fs, o, r);
  if (!r.passed) {
    r.summary = "covariants are not all equivariant";
    return r;
  }
  ClearedFamily c = clear_denominators(vs);
  r.data["h"] = c.h.to_string();
  r.data["f"] = c.f.to_string();
  r.data["n"] = c.n;
  r.data["covariants"] = string_list(c.covariants);
  bool integral = std::all_of(c.covariants.begin(), c.covariants.end(), [](const Covariant& x) { return x.is_integral(); });
  r.add("integral", integral);
  bool equivariant = std::all_of(c.covariants.begin(), c.covariants.end(),
                                 [](const Covariant& x) { return x.status() == Equivariance::equivariant; });
  r.add("cleared covariants equivariant", equivariant);
  WeightResult w = relative_weight(c.f, *p.instance->action);
  r.add("f absolute invariant", w.weight && w.weight->is_trivial(), w.weight ? w.weight->to_string() : w.failure);
  std::size_t before = rank_over_function_field(vs), after = rank_over_function_field(c.covariants);
  r.add("rank unchanged", before == after, std::to_string(before) + " before, " + std::to_string(after) + " after");
  r.summary = "f = " + c.f.to_string() + ", n = " + std::to_string(c.n);
  return r;
}

Report cmd_relation(const ProblemFile& p, const RunOptions&) {
  const auto& fs = require_covariants(p, "relation");
  Report r;
  r.operation = "relation";
  FunctionFieldResult ff = relation_over_function_field(fs);
  r.data["rank"] = ff.rank;
  if (!ff.relation) {
    r.add("maximal minor nonzero", true, ff.minor->to_string());
    r.data["minor"] = ff.report.data["minor"];
    r.data["minor_rows"] = ff.minor_rows;
    r.summary = "independent over k(X), rank " + std::to_string(ff.rank);
    return r;
  }
  r.add("relation over k(X)", ff.relation->verified, ff.relation->to_string());
  r.data["relation"] = ff.relation->to_string();
  r.data["integral"] = ff.relation->integral().to_string();
  r.summary = "dependent, rank " + std::to_string(ff.rank) + ": " + ff.relation->to_string();
  if (p.params.flags) {
    try {
      RelativeRelation rr = relative_invariant_relation(fs, *p.params.flags);
      r.add("relative invariant relation", rr.relation.verified, rr.relation.to_string());
      r.data["relative_relation"] = rr.relation.to_string();
      r.data["weight"] = rr.weight.to_string();
      r.data["trivial_weight"] = rr.weight.is_trivial();
      r.summary = "dependent, rank " + std::to_string(ff.rank) + ": " + rr.relation.to_string();
    } catch (const HypothesisError& e) {
      r.add("relative invariant relation", false, e.what());
    }
  }
  return r;
}

Report cmd_lower(const ProblemFile& p, const RunOptions&) {
  const auto& fs = require_covariants(p, "lower");
  const auto& inst = *p.instance;
  Report r;
  r.operation = "lower";
  std::optional<Relation> rel;
  if (p.params.lower && p.params.lower->relation) {
    std::vector<RatFn> coeffs;
    for (const auto& s : *p.params.lower->relation) coeffs.push_back(parse_ratfn(s, inst.ring));
    rel = make_relation(coeffs, fs);
  } else {
    FunctionFieldResult ff = relation_over_function_field(fs);
    if (ff.relation) rel = ff.relation->integral();
  }
  if (!rel) {
    r.add("relation available", false, "the covariants are independent over k(X)");
    r.summary = "nothing to lower";
    return r;
  }
  r.add("relation holds", rel->verified, rel->to_string());
  if (!rel->verified) {
    r.summary = "the given relation does not hold";
    return r;
  }
  if (!rel->is_polynomial()) throw UsageError("lower needs a relation with polynomial coefficients");
  r.data["relation"] = rel->to_string();

  std::vector<Reflection> refl;
  if (p.params.lower && p.params.lower->reflection) {
    refl.push_back(reflection_from(*inst.action, inst.ring, *p.params.lower->reflection));
  } else if (inst.action->is_finite()) {
    refl = find_reflections(*inst.action, inst.ring);
  } else {
    throw UsageError("lower on a symbolic group needs params.lower.reflection");
  }
  if (refl.empty()) {
    r.add("reflections", false, "the group contains no reflections of X");
    r.summary = "no reflections";
    return r;
  }
  ordered_json lowered = ordered_json::array();
  for (const auto& s : refl) {
    try {
      Relation low = lower_relation(*rel, s);
      r.add("lower at " + s.element.label, low.verified || low.is_zero(), low.to_string());
      lowered.push_back({{"reflection", s.element.label}, {"l", s.l.to_string()}, {"relation", low.to_string()}});
    } catch (const DescentError& e) {
      r.add("lower at " + s.element.label, false, e.what());
    }
  }
  r.data["lowered"] = std::move(lowered);
  if (!r.passed) {
    r.summary = "lowering failed";
    return r;
  }
  Descent d = descend_to_invariant_coefficients(*rel, refl);
  r.add("descent", true, std::to_string(d.steps) + " step(s)");
  r.data["descended"] = d.relation.to_string();
  r.summary = "descends in " + std::to_string(d.steps) + " step(s) to " + d.relation.to_string();
  return r;
}

Report cmd_module_verdict(const ProblemFile& p, const RunOptions& o) {
  const auto& fs = require_covariants(p, "module-verdict");
  Bridges b = p.params.bridges.value_or(Bridges{});
  if (b.fraction_field && b.reflection) throw UsageError("assert at most one bridge in params.bridges");
  IndependenceOptions io;
  io.search = search_of(o);
  io.hint = p.params.hint ? p.params.hint : p.instance->witness;
  Report r = module_independence_verdict(fs, b, io);
  r.operation = "module-verdict";
  return r;
}

void render_value(std::ostringstream& os, const ordered_json& v) {
  if (v.is_string()) {
    os << v.get<std::string>();
  } else {
    os << v.dump();
  }
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ProblemError("file", path, "", {}, "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [n, _] : kCommands) v.push_back(n);
    return v;
  }();
  return names;
}

Report run_command(const std::string& command, const ProblemFile& problem, const RunOptions& opts,
                   ordered_json* certificate) {
  if (command == "verify") return cmd_verify(problem, opts);
  if (command == "independence") return cmd_independence(problem, opts);
  if (command == "noname-build") return cmd_noname_build(problem, opts, certificate);
  if (command == "generate") return cmd_generate(problem, opts);
  if (command == "clear") return cmd_clear(problem, opts);
  if (command == "relation") return cmd_relation(problem, opts);
  if (command == "lower") return cmd_lower(problem, opts);
  if (command == "module-verdict") return cmd_module_verdict(problem, opts);
  throw UsageError("unknown command '" + command + "'");
}

std::string render_text(const Report& r) {
  std::ostringstream os;
  os << r.to_text();
  for (const auto& [k, v] : r.data.items()) {
    os << "  " << k << ":";
    if (v.is_array() && !v.empty()) {
      os << "\n";
      for (const auto& e : v) {
        os << "    - ";
        render_value(os, e);
        os << "\n";
      }
    } else {
      os << " ";
      render_value(os, v);
      os << "\n";
    }
  }
  return os.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact covariants of linear group actions and no-name isomorphisms", "covlab"};
  app.require_subcommand(1);
  RunOptions opts;
  std::string format = "text";
  unsigned degree_bound = 0;
  app.add_option("--seed", opts.seed, "seed for point searches and counterexample search");
  app.add_option("--degree-bound", degree_bound, "largest seed degree for generate");
  app.add_option("--out", opts.out_path, "write the certificate (noname-build) or the machine report here");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "machine"}));

  std::string path;
  FamilyParams fam;
  std::string words, powers;
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, help] : kCommands) {
    CLI::App* sc = app.add_subcommand(name, help);
    sc->fallthrough();
    if (name == "example") {
      sc->add_option("name", path, "preset, family or problem file to print");
      sc->add_option("--n", fam.n, "family size parameter");
      sc->add_option("--m", fam.m, "projections: number of factors");
      sc->add_option("--words", words, "matrix_words: comma-separated words such as 1,A,B,AB");
      sc->add_option("--powers", powers, "power_maps: comma-separated exponents");
    } else {
      sc->add_option(name == "noname-verify" ? "certificate" : "problem", path, "problem file or preset name")
          ->required();
    }
    subs[name] = sc;
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsageError;
  }
  if (degree_bound) opts.degree_bound = degree_bound;
  const bool machine = format == "machine";

  std::string command;
  for (const auto& [name, sc] : subs) {
    if (sc->parsed()) command = name;
  }

  auto emit = [&](const Report& r, const ordered_json* certificate) -> int {
    if (machine) {
      out << r.to_json().dump(2) << "\n";
    } else {
      out << render_text(r);
    }
    if (!opts.out_path.empty()) {
      std::ofstream f(opts.out_path, std::ios::binary);
      if (!f) {
        err << "covlab: cannot write '" << opts.out_path << "'\n";
        return kUsageError;
      }
      f << (certificate ? *certificate : r.to_json()).dump(2) << "\n";
    }
    return r.passed ? kPass : kMathFailure;
  };

  try {
    if (command == "example") {
      if (path.empty()) {
        out << "presets:\n";
        for (const auto& n : preset_names()) {
          ProblemFile p = parse_problem(resolve_problem_path(n));
          out << "  " << n << (p.description.empty() ? "" : " - " + p.description) << "\n";
        }
        out << "families:\n";
        out << "  matrix_words --n N [--words 1,A,B,AB]  words in A, B under GL_n conjugation\n";
        out << "  projections --n N [--m M]  the first N factors of (k^N)^M under GL_N\n";
        out << "  power_maps --n N [--powers 1,2,...]  x -> (x_i^p) under S_N\n";
        return kPass;
      }
      auto names = family_names();
      std::string resolved = resolve_problem_path(path);
      if (std::find(names.begin(), names.end(), path) != names.end() && resolved == path) {
        fam.words = split_list(words);
        for (const auto& s : split_list(powers)) fam.powers.push_back(static_cast<unsigned>(std::stoul(s)));
        try {
          out << problem_to_text(family_problem(path, fam));
        } catch (const std::invalid_argument& e) {
          throw UsageError(e.what());
        }
        return kPass;
      }
      out << problem_to_text(parse_problem(resolved));
      return kPass;
    }
    if (command == "noname-verify") {
      std::string resolved = resolve_problem_path(path);
      Report r = verify_certificate(read_text(resolved), resolved);
      return emit(r, nullptr);
    }
    ProblemFile p = parse_problem(resolve_problem_path(path));
    ordered_json certificate;
    Report r;
    try {
      r = run_command(command, p, opts, &certificate);
    } catch (const UsageError&) {
      throw;
    } catch (const std::exception& e) {
      r = Report{};
      r.operation = command;
      r.add("completed", false, e.what());
      r.summary = "failed";
    }
    bool has_cert = command == "noname-build" && certificate.is_object();
    return emit(r, has_cert ? &certificate : nullptr);
  } catch (const ProblemError& e) {
    err << e.what() << "\n";
    return kUsageError;
  } catch (const UsageError& e) {
    err << "covlab " << command << ": " << e.what() << "\n";
    return kUsageError;
  }
}

}  // namespace covlab::cli
