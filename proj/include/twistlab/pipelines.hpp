#ifndef TWISTLAB_PIPELINES_HPP
#define TWISTLAB_PIPELINES_HPP

#include "twistlab/constructions.hpp"
#include "twistlab/invariance.hpp"

namespace twistlab {

/// Comodule algebra with a convolution-invertible twisting operator
/// nu : H -> End(A), kept as the single map H (x) A -> A with
/// nu(h)(a) = a.h. The convolution inverse is computed at construction by
/// the exact solver in Hom(H, End(A)) and stored in the same encoding.
struct NuTwist {
  ComoduleAlgebra CA;
  LinMap nu;      // H (x) A -> A
  LinMap nu_inv;  // computed

  NuTwist(ComoduleAlgebra ca, LinMap action);
};

/// a * a' = (a . a'_(1)) a'_(0) as one map A (x) A -> A.
LinMap nu_star_mult(const NuTwist& N);

/// nu-unit-H, nu-unit-A, nu-coaction, nu-product.
Report check_nu_conditions(const NuTwist& N);

/// nu-inv-coaction, nu-inv-product. Must pass whenever check_nu_conditions
/// does; the pipelines treat a failure here as an implication violation.
Report check_nu_inverse_relations(const NuTwist& N);

/// One unconditional element equality per pair of element vectors in a
/// tensor power of H:
///   sqt-split-left    comult on the first leg of r,
///   sqt-split-right   comult on the second leg of r,
///   sqt-exchange      the two leg orderings agree.
Report check_sqt(const SqtElement& E);

/// sqt-shuffle: the four-leg consequence of the three conditions above;
/// a failure after a passing check_sqt is an implication violation.
Report check_auxiliary_relation(const SqtElement& E);

// ---------------------------------------------------------------------------
// Staged pipelines

struct StageResult {
  std::string name;
  Report report;
  /// True when earlier passing stages guarantee this one; a failure then
  /// is an implication violation (a translation bug, not a bad instance).
  bool consequence = false;
  std::string note;

  bool ok() const { return report.ok(); }
};

struct PipelineResult {
  std::vector<StageResult> stages;
  std::optional<IsoCertificate> iso;
  std::optional<Algebra> star_algebra; // A_nu, or the deformed dual
  std::optional<LinMap> derived_R;

  bool ok() const {
    for (const StageResult& s : stages)
      if (!s.ok()) return false;
    return true;
  }
  bool implication_violation() const {
    for (const StageResult& s : stages)
      if (s.consequence && !s.ok()) return true;
    return false;
  }
  const StageResult* failed_stage() const {
    for (const StageResult& s : stages)
      if (!s.ok()) return &s;
    return nullptr;
  }
};

/// Comodule-algebra twisting: certifies the instance and nu, builds A_nu,
/// the smash twisting, the re-derived R' (asserting R' = R entrywise), and
/// the isomorphism A_nu # H* ~ A # H*.
PipelineResult comodule_twist_pipeline(const NuTwist& N);

/// External homogenization: builds A[H] from its closed multiplication
/// formula, re-derives R' from (flip, coaction, (id (x) S) . coaction),
/// asserts the closed form of R', that the twisted product equals A[H],
/// and certifies A[H] ~ A (x) H.
PipelineResult homogenization_pipeline(const ComoduleAlgebra& CA);

/// Drinfeld double of an element r satisfying the sqt conditions: checks
/// them, builds D(H) directly and as a twisted product, runs the star and
/// invariance engines, asserts the closed forms of the star product, of R'
/// and of the isomorphism, and verifies the two transport maps are mutual
/// inverses.
PipelineResult sqt_double_pipeline(const SqtElement& E);

// ---------------------------------------------------------------------------
// Stock instances

/// H coacting on itself through its comultiplication.
ComoduleAlgebra self_coaction(const HopfAlgebra& H);

/// a |-> a (x) 1.
ComoduleAlgebra trivial_coaction(const Algebra& A, const HopfAlgebra& H);

/// nu(h)(a) = counit(h) a on any comodule algebra.
NuTwist trivial_nu(const ComoduleAlgebra& CA);

/// The c-deformation on the group algebra of C2 coacting on itself:
/// nu(1) = id, nu(g) = diag(1, c). Needs c != 0.
NuTwist c_deformation_kc2(const FieldSpec& field, const Scalar& c);

} // namespace twistlab

#endif
