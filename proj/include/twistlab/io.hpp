#ifndef TWISTLAB_IO_HPP
#define TWISTLAB_IO_HPP

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "twistlab/pipelines.hpp"

namespace twistlab {

/// One parsed definition file. `kind` is the declared object kind; `value`
/// holds the fully constructed typed object (construction invariants, e.g.
/// antipode invertibility, run at parse time).
struct ParsedObject {
  std::string kind;
  std::vector<std::string> basis_labels; // optional, only simple kinds
  std::variant<std::monostate, LinMap, Algebra, HopfAlgebra, FiniteGroup,
               ComoduleAlgebra, TwistingData, StarData, InvarianceData, NuTwist,
               SqtElement>
      value;

  template <typename T>
  const T* get() const {
    return std::get_if<T>(&value);
  }

  /// Total dimension of the space an exhaustive check of this object
  /// iterates over (used by the size guard).
  std::size_t guard_dim() const;
};

/// Parses definition text. `base_dir` resolves relative refs;
/// `default_field` parameterizes builtin refs.
ParsedObject parse_definition_text(const std::string& text,
                                   const FieldSpec& default_field,
                                   const std::string& base_dir);
ParsedObject parse_definition_file(const std::string& path,
                                   const FieldSpec& default_field);

/// Resolves "builtin:<name>" or a filesystem path.
ParsedObject resolve_uri(const std::string& uri, const FieldSpec& default_field);

/// Canonical text form; byte-stable (identical objects serialize to
/// identical bytes). Supported for linmap / algebra / hopf / group; the
/// composite kinds are parse-only inputs.
std::string serialize_definition(const ParsedObject& obj);
bool is_serializable_kind(const std::string& kind);

/// "fnv1a:<16 hex digits>" over the canonical byte form (components are
/// folded in for composite kinds).
std::string object_digest(const ParsedObject& obj);

/// (name, description) pairs for the builtin instances.
std::vector<std::pair<std::string, std::string>> builtin_catalog();

// ---------------------------------------------------------------------------
// Dispatch shared by the C interface and the command-line tool

/// Certification suite for the object's kind.
PipelineResult run_check(const ParsedObject& obj);

/// Builders: twisted-product, smash, double, star, derive-rprime,
/// group-algebra. `options` carries builder parameters ("field=GF:5").
ParsedObject run_build(const std::string& what,
                       const std::vector<const ParsedObject*>& inputs,
                       const std::string& options);

/// Pipelines: comodule-twist, homogenization, sqt-double. The instance is
/// either the pipeline's own input kind (nu-twist / comodule-algebra /
/// sqt-element) or a Hopf algebra plus options ("c=-1", "r=triangular",
/// "nu=trivial").
PipelineResult run_named_pipeline(const std::string& name,
                                  const ParsedObject& instance,
                                  const std::string& options);

// ---------------------------------------------------------------------------
// Run reports

struct RunReport {
  int format_version = 1;
  std::string command;
  std::vector<std::pair<std::string, std::string>> inputs; // (uri, digest)
  std::vector<StageResult> stages;
  bool ok = false;
  bool implication_violation = false;
  long long wall_ms = 0;
};

std::string render_report_text(const RunReport& report);
std::string render_report_json(const RunReport& report);

} // namespace twistlab

#endif
