#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "covlab/cli/certificate.hpp"
#include "covlab/cli/cli.hpp"

using namespace covlab;
using namespace covlab::cli;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run covlab_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path temp_path(const std::string& name) { return fs::temp_directory_path() / ("covlab_cli_test_" + name); }

ProblemError parse_error_of(const std::string& text) {
  try {
    parse_problem_text(text, "t.json");
  } catch (const ProblemError& e) {
    return e;
  }
  FAIL("expected a ProblemError");
  throw std::logic_error("unreachable");
}

const std::string kSwap = R"("group": {"kind": "finite", "generators": [{"x": [["0","1"],["1","0"]], "w": [["0","1"],["1","0"]]}]})";

}  // namespace

TEST_CASE("location index maps pointers to line and column") {
  auto loc = index_locations("{\n  \"a\": [1, {\"b\": \"x\"}],\n  \"c~/d\": true\n}");
  CHECK(loc.at("").line == 1);
  CHECK(loc.at("/a").line == 2);
  CHECK(loc.at("/a").column == 8);
  CHECK(loc.at("/a/1/b").column == 18);
  CHECK(loc.at("/c~0~1d").line == 3);
  auto o = location_of_offset("ab\ncd", 4);
  CHECK(o.line == 2);
  CHECK(o.column == 2);
}

TEST_CASE("presets parse and serialize back to the same text") {
  auto names = preset_names();
  CHECK(names.size() >= 7);
  for (const auto& n : names) {
    CAPTURE(n);
    fs::path p = fs::path(preset_dir()) / (n + ".json");
    ProblemFile pf = parse_problem(p.string());
    CHECK(problem_to_text(pf) == slurp(p));
    CHECK(pf.name == n);
  }
}

TEST_CASE("non-canonical input is canonicalized and then stable") {
  std::string text = "{" + kSwap + R"(, "space": {"x": ["x1","x2"]}, "covariants": [["x2 + x1*1", "2/4*x1 + x1/2 + x2"]]})";
  ProblemFile p = parse_problem_text(text);
  std::string once = problem_to_text(p);
  CHECK(once.find("\"x2 + x1\"") != std::string::npos);
  CHECK(problem_to_text(parse_problem_text(once)) == once);
}

TEST_CASE("shipped preset resolves by basename") {
  std::string path = resolve_problem_path("examples/vandermonde_s2");
  CHECK(fs::path(path).filename() == "vandermonde_s2.json");
  ProblemFile p = parse_problem(path);
  REQUIRE(p.instance->action->is_finite());
  CHECK(p.instance->action->finite().order() == 2);
  CHECK(p.instance->covariants.size() == 2);
}

TEST_CASE("diagnostics name the field and its position") {
  SUBCASE("non-square matrix") {
    auto e = parse_error_of(
        "{\"group\": {\"kind\": \"finite\", \"generators\": [{\"x\": [[\"0\",\"1\",\"0\"],[\"1\",\"0\",\"0\"]], "
        "\"w\": [[\"1\"]]}]},\n \"space\": {\"x\": [\"x1\",\"x2\"]}}");
    CHECK(e.kind() == "dimension");
    CHECK(e.pointer() == "/group/generators/0/x");
    CHECK(e.location().line == 1);
    CHECK(std::string(e.what()).find("2x3") != std::string::npos);
  }
  SUBCASE("undeclared variable") {
    auto e = parse_error_of("{" + kSwap + ",\n \"space\": {\"x\": [\"x1\",\"x2\"]},\n \"covariants\": [[\"x1\", \"x9\"]]}");
    CHECK(e.kind() == "reference");
    CHECK(e.pointer() == "/covariants/0/1");
    CHECK(e.location().line == 3);
    CHECK(e.location().column == 24);
    CHECK(e.message().find("x9") != std::string::npos);
  }
  SUBCASE("unknown template") {
    auto e = parse_error_of(R"({"group": {"kind": "symbolic", "n": 2, "x": [{"template": "gl_natrual"}],
      "w": [{"template": "gl_natural"}]}, "space": {"x": ["x1","x2"]}})");
    CHECK(e.kind() == "template");
    CHECK(e.pointer() == "/group/x/0/template");
  }
  SUBCASE("syntax error") {
    auto e = parse_error_of("{\"group\": {\"kind\": \"finite\",\n  \"generators\": [}\n");
    CHECK(e.kind() == "syntax");
    CHECK(e.location().line == 2);
    CHECK(e.location().column == 18);
  }
  SUBCASE("polynomial syntax error points into the string") {
    auto e = parse_error_of("{" + kSwap + R"(, "space": {"x": ["x1","x2"]}, "covariants": [["x1 +* 2", "x2"]]})");
    CHECK(e.kind() == "syntax");
    CHECK(e.pointer() == "/covariants/0/0");
  }
  SUBCASE("wrong number of coordinates") {
    auto e = parse_error_of("{" + kSwap + R"(, "space": {"x": ["x1","x2"]}, "covariants": [["x1"]]})");
    CHECK(e.kind() == "dimension");
    CHECK(e.pointer() == "/covariants/0");
  }
  SUBCASE("x matrix size disagrees with space") {
    auto e = parse_error_of("{" + kSwap + R"(, "space": {"x": ["x1","x2","x3"]}})");
    CHECK(e.kind() == "dimension");
    CHECK(e.pointer() == "/group/generators/0/x");
  }
  SUBCASE("unknown field") {
    auto e = parse_error_of("{" + kSwap + R"(, "space": {"x": ["x1","x2"]}, "covariant": []})");
    CHECK(e.kind() == "schema");
    CHECK(e.pointer() == "/covariant");
  }
  SUBCASE("not a homomorphism") {
    auto e = parse_error_of(
        R"({"group": {"kind": "finite", "generators": [{"x": [["0","1"],["1","0"]], "w": [["2"]]}]},
            "space": {"x": ["x1","x2"]}})");
    CHECK(e.kind() == "group");
  }
}

TEST_CASE("exit codes") {
  CHECK(covlab_run({"verify", "vandermonde_s2"}).code == kPass);
  Run dep = covlab_run({"independence", "examples/scalar_counterexample"});
  CHECK(dep.code == kMathFailure);
  CHECK(dep.out.find("dependent, rank 1") != std::string::npos);
  CHECK(covlab_run({"module-verdict", "scalar_counterexample"}).code == kMathFailure);
  CHECK(covlab_run({}).code == kUsageError);
  CHECK(covlab_run({"verify"}).code == kUsageError);
  CHECK(covlab_run({"verify", "vandermonde_s2", "--format", "yaml"}).code == kUsageError);
  CHECK(covlab_run({"verify", "no_such_problem"}).code == kUsageError);
  CHECK(covlab_run({"generate", "gl2_words"}).code == kUsageError);
  CHECK(covlab_run({"--help"}).code == kPass);

  Run gen = covlab_run({"generate", "examples/s3_permutation", "--degree-bound", "3"});
  CHECK(gen.code == kPass);
  CHECK(gen.out.find("3 covariants") != std::string::npos);
  Run short_bound = covlab_run({"generate", "s3_permutation", "--degree-bound", "1"});
  CHECK(short_bound.code == kMathFailure);
  CHECK(short_bound.out.find("rank 2 of 3") != std::string::npos);
}

TEST_CASE("machine output is deterministic for a fixed seed") {
  auto a = covlab_run({"independence", "s3_permutation", "--seed", "7", "--format", "machine"});
  auto b = covlab_run({"independence", "s3_permutation", "--seed", "7", "--format", "machine"});
  CHECK(a.code == kPass);
  CHECK(a.out == b.out);
  auto j = nlohmann::json::parse(a.out);
  CHECK(j["operation"] == "independence");
  CHECK(j["passed"] == true);
  CHECK(j["data"]["rank"] == 3);
}

TEST_CASE("certificate round trip") {
  fs::path cert = temp_path("vandermonde.cert.json");
  Run build = covlab_run({"noname-build", "vandermonde_s2", "--out", cert.string()});
  REQUIRE(build.code == kPass);
  auto j = nlohmann::json::parse(slurp(cert));
  CHECK(j["format"] == kCertificateFormat);
  CHECK(j["f"] == "x1*x2^2 - x1^2*x2");
  CHECK(j["weight"] == nlohmann::json::array({"1", "-1"}));
  for (const char* k : {"phi", "phi_inv", "covariants", "checks"}) CHECK(j.contains(k));

  Run ok = covlab_run({"noname-verify", cert.string()});
  CHECK(ok.code == kPass);

  j["phi"][0][1] = "(-x1 + 1)/(x2^2 - x1*x2)";
  fs::path bad = temp_path("vandermonde.bad.json");
  std::ofstream(bad) << j.dump(2);
  Run rejected = covlab_run({"noname-verify", bad.string()});
  CHECK(rejected.code == kMathFailure);
  CHECK(rejected.out.find("phi[0][1]") != std::string::npos);

  j["phi"][0][1] = "(-x1)/(x2^2 - x1*x2)";
  j["f"] = "x1*x2";
  std::ofstream(bad) << j.dump(2);
  CHECK(covlab_run({"noname-verify", bad.string()}).code == kMathFailure);

  std::ofstream(bad) << "{\"format\": 3}";
  CHECK(covlab_run({"noname-verify", bad.string()}).code == kUsageError);
  fs::remove(cert);
  fs::remove(bad);
}

TEST_CASE("symbolic certificate round trip") {
  fs::path cert = temp_path("words.cert.json");
  REQUIRE(covlab_run({"noname-build", "gl2_words", "--out", cert.string()}).code == kPass);
  auto j = nlohmann::json::parse(slurp(cert));
  CHECK(j["group"]["kind"] == "symbolic");
  CHECK(j["weight"] == "1");
  CHECK(verify_certificate(slurp(cert)).passed);
  fs::remove(cert);
}

TEST_CASE("example command prints presets and families as problems") {
  Run list = covlab_run({"example"});
  CHECK(list.code == kPass);
  CHECK(list.out.find("vandermonde_s2") != std::string::npos);
  CHECK(list.out.find("matrix_words") != std::string::npos);

  Run fam = covlab_run({"example", "matrix_words", "--n", "2", "--words", "1,A,B,AB"});
  REQUIRE(fam.code == kPass);
  ProblemFile p = parse_problem_text(fam.out);
  CHECK(problem_to_text(p) == fam.out);
  CHECK(p.instance->covariants.size() == 4);

  Run preset = covlab_run({"example", "gl2_words"});
  CHECK(preset.code == kPass);
  CHECK(preset.out == slurp(fs::path(preset_dir()) / "gl2_words.json"));
  CHECK(covlab_run({"example", "matrix_words", "--words", "AC"}).code == kUsageError);
}

TEST_CASE("golden outputs of the presets") {
  fs::path dir = fs::path(preset_dir()) / "golden";
  std::size_t seen = 0;
  for (const auto& e : fs::directory_iterator(dir)) {
    std::string stem = e.path().stem().string();  // preset.command
    auto dot = stem.find('.');
    REQUIRE(dot != std::string::npos);
    std::string preset = stem.substr(0, dot), command = stem.substr(dot + 1);
    CAPTURE(stem);
    Run r = covlab_run({command, preset, "--seed", "1"});
    CHECK("exit " + std::to_string(r.code) + "\n" + r.out == slurp(e.path()));
    ++seen;
  }
  CHECK(seen >= 20);
}
