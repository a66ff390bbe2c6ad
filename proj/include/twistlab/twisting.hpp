#ifndef TWISTLAB_TWISTING_HPP
#define TWISTLAB_TWISTING_HPP

#include "twistlab/algebra.hpp"

namespace twistlab {

/// Candidate twisting map R : B (x) A -> A (x) B between two algebras.
/// check_twisting_axioms certifies the four unit/multiplicativity axioms;
/// the certificate is cached on the value and downstream constructions
/// refuse data without it.
class TwistingData {
public:
  TwistingData(Algebra a, Algebra b, LinMap r);

  const Algebra& A() const { return a_; }
  const Algebra& B() const { return b_; }
  const LinMap& R() const { return r_; }

  bool is_certified() const { return certified_.value_or(false); }
  void require_certified(const std::string& what) const;

private:
  Algebra a_;
  Algebra b_;
  LinMap r_;
  mutable std::optional<bool> certified_;

  friend Report check_twisting_axioms(const TwistingData& T);
};

struct TwistedProduct {
  TwistingData source;
  Algebra product; // multiplication (mult_A (x) mult_B) . (id (x) R (x) id)
};

/// The four axioms, each as one whole-map equality with basis witnesses:
///   R(1 (x) a) = a (x) 1                       twist-unit-B
///   R(b (x) 1) = 1 (x) b                       twist-unit-A
///   R . (id (x) mult_A) = hexagon over A       twist-mult-A
///   R . (mult_B (x) id) = hexagon over B       twist-mult-B
Report check_twisting_axioms(const TwistingData& T);

/// Multiplication map of A (x)_R B on the raw data (no certificate needed).
LinMap twisted_mult(const TwistingData& T);

/// Builds A (x)_R B. Requires a passing certificate, then re-verifies
/// associativity and unitality of the result exhaustively; a failure of
/// that cross-check is an internal-consistency error, never a report.
TwistedProduct build_twisted_product(const TwistingData& T);

} // namespace twistlab

#endif
