#ifndef TWISTLAB_INVARIANCE_HPP
#define TWISTLAB_INVARIANCE_HPP

#include "twistlab/twisting.hpp"

namespace twistlab {

/// Input bundle for the star-product construction: a twisting candidate
/// (A, B, R) plus mu : B (x) A -> A (written b.a) and rho : A -> A (x) B.
/// The derived product is a * a' = a_(0) (a_(1) . a').
class StarData {
public:
  StarData(TwistingData t, LinMap mu, LinMap rho);

  const TwistingData& T() const { return t_; }
  const Algebra& A() const { return t_.A(); }
  const Algebra& B() const { return t_.B(); }
  const LinMap& mu() const { return mu_; }
  const LinMap& rho() const { return rho_; }

  bool hypotheses_ok() const { return hypotheses_ok_.value_or(false); }
  void require_hypotheses(const std::string& what) const;

private:
  TwistingData t_;
  LinMap mu_;
  LinMap rho_;
  mutable std::optional<bool> hypotheses_ok_;

  friend Report check_star_hypotheses(const StarData& S);
};

/// The multiplication a * a' = a_(0) (a_(1) . a') as one map A (x) A -> A.
LinMap star_mult(const StarData& S);

/// The three hypothesis groups, each a whole-map equality:
///   star-rho-unit / star-unit-left / star-unit-right,
///   star-action-assoc  (b . (a * a') compatibility),
///   star-rho-mult      (rho is multiplicative for *).
Report check_star_hypotheses(const StarData& S);

/// (A, *, 1): refuses unchecked data; re-verifies associativity and
/// unitality exhaustively and treats a failure after passing hypotheses
/// as an internal-consistency error.
Algebra build_star_algebra(const StarData& S);

/// Input bundle for re-deriving a twisting map: a certified twisted tensor
/// product A (x)_R B, a second algebra structure A' on the same space with
/// the same unit, and comparison maps rho, lambda : A -> A (x) B.
class InvarianceData {
public:
  InvarianceData(TwistingData t, Algebra aprime, LinMap rho, LinMap lambda);

  const TwistingData& T() const { return t_; }
  const Algebra& A() const { return t_.A(); }
  const Algebra& Aprime() const { return aprime_; }
  const Algebra& B() const { return t_.B(); }
  const LinMap& rho() const { return rho_; }
  const LinMap& lambda() const { return lambda_; }

  bool hypotheses_ok() const { return hypotheses_ok_.value_or(false); }
  void require_hypotheses(const std::string& what) const;

private:
  TwistingData t_;
  Algebra aprime_;
  LinMap rho_;
  LinMap lambda_;
  mutable std::optional<bool> hypotheses_ok_;

  friend Report check_invariance_hypotheses(const InvarianceData& D);
};

/// Five hypothesis checks:
///   rho-unit, rho-multiplicative   (rho is an algebra map A' -> A (x)_R B),
///   lambda-unit,
///   lambda-multiplicative          (lambda of an A-product, via * and R),
///   rho-lambda-cancel, lambda-rho-cancel  (the two composites collapse
///                                          to a |-> a (x) 1).
Report check_invariance_hypotheses(const InvarianceData& D);

/// Assembles R'(b (x) a) = (a_(0)R)_[0] (x) (a_(0)R)_[1] b_R a_(1) as one
/// map B (x) A' -> A' (x) B and certifies it as a twisting map. Requires
/// passing hypotheses; a failed certification afterwards is an
/// internal-consistency error (the construction is guaranteed to work).
TwistingData derive_twisted_map(const InvarianceData& D);

/// phi(a (x) b) = a_(0) (x) a_(1) b from A' (x)_R' B to A (x)_R B, with its
/// exact inverse and the verification verdicts (bijective, unital,
/// multiplicative). Any failed verification is an internal-consistency error.
struct IsoCertificate {
  LinMap phi;
  LinMap phi_inv;
  Report checks;
};

IsoCertificate build_isomorphism(const InvarianceData& D,
                                 const TwistingData& derived);
IsoCertificate build_isomorphism(const InvarianceData& D);

} // namespace twistlab

#endif
