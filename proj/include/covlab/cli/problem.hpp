#ifndef COVLAB_CLI_PROBLEM_HPP
#define COVLAB_CLI_PROBLEM_HPP

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "covlab/forge/forge.hpp"
#include "covlab/reflect/reflect.hpp"

namespace covlab::cli {

struct Location {
  std::size_t line = 0;  // 1-based; 0 when unknown
  std::size_t column = 0;
};

/// Start of every value in a JSON text, keyed by JSON pointer ("" is the
/// root). The text must already be known to be well-formed.
std::map<std::string, Location> index_locations(std::string_view text);

/// Line and column of a byte offset.
Location location_of_offset(std::string_view text, std::size_t offset);

/// A problem or certificate file rejected with the offending field.
class ProblemError : public std::runtime_error {
 public:
  ProblemError(std::string kind, std::string source, std::string pointer, Location loc, std::string message);

  const std::string& kind() const { return kind_; }  // "syntax", "dimension", "reference", "schema", "group"
  const std::string& source() const { return source_; }
  const std::string& pointer() const { return pointer_; }
  const Location& location() const { return loc_; }
  const std::string& message() const { return message_; }

 private:
  std::string kind_, source_, pointer_;
  Location loc_;
  std::string message_;
};

struct GroupDescription {
  std::string kind;  // "finite" or "symbolic"
  std::vector<FiniteGroupAction::Generator> generators;
  std::size_t n = 0;
  std::vector<ModuleSummand> x_module, w_module;
  bool check_on_generators = false;
};

struct FamilySpec {
  std::string name;
  FamilyParams params;
};

struct LowerParams {
  std::optional<std::vector<std::string>> relation;  // coefficient per covariant
  std::optional<RationalMatrix> reflection;          // action on X; all reflections when absent
};

struct ProblemParams {
  std::optional<std::vector<Rational>> hint;  // one value per x variable
  std::optional<unsigned> degree_bound;
  std::optional<SpaceFlags> flags;
  std::optional<LowerParams> lower;
  std::optional<Bridges> bridges;
};

/// The problem resolved into library objects.
struct Instance {
  ActionPtr action;
  RingPtr ring;
  std::vector<std::string> w_names;
  std::vector<Covariant> covariants;
  std::optional<Point> witness;
};

/// A validated problem file. Either `family` or `group` with `x_vars` is
/// set. Strings (polynomials, rationals) are held in canonical form, so
/// serializing a canonical file reproduces it byte for byte.
struct ProblemFile {
  std::string name, description;
  unsigned long characteristic = 0;
  std::optional<FamilySpec> family;
  std::optional<GroupDescription> group;
  std::vector<std::string> x_vars, w_vars;
  std::optional<std::vector<std::vector<std::string>>> covariants;
  ProblemParams params;

  std::shared_ptr<const Instance> instance;
};

ProblemFile parse_problem_text(std::string_view text, const std::string& source = "<input>");
ProblemFile parse_problem(const std::string& path);

nlohmann::ordered_json serialize_problem(const ProblemFile& p);
/// serialize_problem as indented text with a trailing newline.
std::string problem_to_text(const ProblemFile& p);

/// The ProblemFile of a family with its parameters.
ProblemFile family_problem(const std::string& name, const FamilyParams& params);

/// An existing path, else a shipped preset with the same basename (with or
/// without ".json"). Returns the path unchanged when neither exists.
std::string resolve_problem_path(const std::string& path);
std::string preset_dir();
std::vector<std::string> preset_names();

/// Group descriptions of an action, and back.
GroupDescription describe_group(const GroupAction& a);
nlohmann::ordered_json group_to_json(const GroupDescription& g);
/// Builds the action; GroupError and DimensionError propagate.
ActionPtr build_action(const GroupDescription& g, unsigned long characteristic, const std::vector<std::string>& avoid);

std::string rational_text(const Rational& c);
nlohmann::ordered_json matrix_to_json(const RationalMatrix& m);

/// Reads JSON values with errors located in the source text. Shared by the
/// problem and certificate readers.
class FieldReader {
 public:
  FieldReader(std::string_view text, std::string source);

  const nlohmann::json& root() const { return root_; }
  const std::string& source() const { return source_; }

  [[noreturn]] void fail(const std::string& kind, const std::string& pointer, const std::string& message) const;
  Location locate(const std::string& pointer) const;

  const nlohmann::json& at(const std::string& pointer) const;
  bool has(const std::string& pointer) const;
  void only_keys(const std::string& pointer, const std::vector<std::string>& allowed) const;

  std::string string(const std::string& pointer) const;
  bool boolean(const std::string& pointer) const;
  std::size_t count(const std::string& pointer) const;  // nonnegative integer
  long integer(const std::string& pointer) const;
  std::vector<std::string> strings(const std::string& pointer) const;
  Rational rational(const std::string& pointer, const RingPtr& field) const;
  /// A square matrix as rows of rationals, of the given size when nonzero.
  RationalMatrix matrix(const std::string& pointer, const RingPtr& field, std::size_t size = 0) const;
  RatFn ratfn(const std::string& pointer, const RingPtr& ring) const;
  std::vector<std::string> names(const std::string& pointer) const;

  GroupDescription group(const std::string& pointer, unsigned long characteristic) const;

 private:
  std::string text_;
  std::string source_;
  nlohmann::json root_;
  std::map<std::string, Location> locations_;
};

}  // namespace covlab::cli

#endif  // COVLAB_CLI_PROBLEM_HPP
