#include "twistlab/invariance.hpp"

namespace twistlab {

// ---------------------------------------------------------------------------
// StarData

StarData::StarData(TwistingData t, LinMap mu, LinMap rho)
    : t_(std::move(t)),
      mu_(mu.with_factors({t_.B().dim(), t_.A().dim()}, {t_.A().dim()})),
      rho_(rho.with_factors({t_.A().dim()}, {t_.A().dim(), t_.B().dim()})) {}

void StarData::require_hypotheses(const std::string& what) const {
  if (!hypotheses_ok_.has_value())
    fail(ErrorCode::uncertified, what + ": star hypotheses have not been checked");
  if (!*hypotheses_ok_)
    fail(ErrorCode::uncertified, what + ": star hypotheses failed");
}

LinMap star_mult(const StarData& S) {
  const std::size_t a = S.A().dim();
  Wiring w(S.A().field(), {a, a});
  w.then_at(0, S.rho(), 1);        // a0, a1, a'
  w.then_at(1, S.mu(), 2);         // a0, a1.a'
  w.then_at(0, S.A().mult(), 2);   // a0 (a1.a')
  return w.map();
}

Report check_star_hypotheses(const StarData& S) {
  S.T().require_certified("check_star_hypotheses");
  const std::size_t a = S.A().dim();
  const std::size_t b = S.B().dim();
  const FieldSpec& F = S.A().field();
  LinMap id_a = LinMap::identity(F, {a});
  LinMap star = star_mult(S);

  Report report;
  report.checks.push_back(check_map_equal(
      "star-rho-unit", compose(S.rho(), S.A().unit()),
      tensor(S.A().unit(), S.B().unit())));
  report.checks.push_back(check_map_equal(
      "star-unit-left", compose(S.mu(), tensor(S.B().unit(), id_a)), id_a));
  report.checks.push_back(check_map_equal(
      "star-unit-right", compose(star, tensor(id_a, S.A().unit())), id_a));

  // b . (a * a') = a_(0)R ((b_R a_(1)) . a')
  LinMap lhs_action = compose(S.mu(), tensor(LinMap::identity(F, {b}), star));
  Wiring rhs_action(F, {b, a, a});
  rhs_action.then_at(1, S.rho(), 1);        // b, a0, a1, a'
  rhs_action.then_at(0, S.T().R(), 2);      // a0R, bR, a1, a'
  rhs_action.then_at(1, S.B().mult(), 2);   // a0R, bR a1, a'
  rhs_action.then_at(1, S.mu(), 2);         // a0R, (bR a1).a'
  rhs_action.then_at(0, S.A().mult(), 2);
  report.checks.push_back(
      check_map_equal("star-action-assoc", lhs_action, rhs_action.map()));

  // rho(a * a') = a_(0) a'_(0)R (x) a_(1)R a'_(1)
  LinMap lhs_rho = compose(S.rho(), star);
  Wiring rhs_rho(F, {a, a});
  rhs_rho.then_at(0, S.rho(), 1);           // a0, a1, a'
  rhs_rho.then_at(2, S.rho(), 1);           // a0, a1, a'0, a'1
  rhs_rho.then_at(1, S.T().R(), 2);         // a0, a'0R, a1R, a'1
  rhs_rho.then_at(0, S.A().mult(), 2);      // a0 a'0R, a1R, a'1
  rhs_rho.then_at(1, S.B().mult(), 2);      // a0 a'0R, a1R a'1
  report.checks.push_back(check_map_equal("star-rho-mult", lhs_rho, rhs_rho.map()));

  S.hypotheses_ok_ = report.ok();
  return report;
}

Algebra build_star_algebra(const StarData& S) {
  S.require_hypotheses("build_star_algebra");
  Algebra out(S.A().dim(), star_mult(S), S.A().unit());
  Report cross = out.certify();
  if (!cross.ok())
    fail(ErrorCode::internal_consistency,
         "star product not associative although its hypotheses passed:\n" +
             cross.summary());
  return out;
}

// ---------------------------------------------------------------------------
// InvarianceData

InvarianceData::InvarianceData(TwistingData t, Algebra aprime, LinMap rho,
                               LinMap lambda)
    : t_(std::move(t)),
      aprime_(std::move(aprime)),
      rho_(rho.with_factors({t_.A().dim()}, {t_.A().dim(), t_.B().dim()})),
      lambda_(lambda.with_factors({t_.A().dim()}, {t_.A().dim(), t_.B().dim()})) {
  if (aprime_.dim() != t_.A().dim())
    fail(ErrorCode::invalid_argument,
         "A' must live on the same space as A");
  if (!(aprime_.field() == t_.A().field()))
    fail(ErrorCode::invalid_argument, "A' is over a different field");
  // same unit as A, as an exact equality of unit columns
  if (!aprime_.unit().entries_equal(t_.A().unit()))
    fail(ErrorCode::invalid_argument, "A' must share the unit vector of A");
}

void InvarianceData::require_hypotheses(const std::string& what) const {
  if (!hypotheses_ok_.has_value())
    fail(ErrorCode::uncertified, what + ": hypotheses have not been checked");
  if (!*hypotheses_ok_)
    fail(ErrorCode::uncertified, what + ": hypotheses failed");
}

Report check_invariance_hypotheses(const InvarianceData& D) {
  D.T().require_certified("check_invariance_hypotheses");
  D.Aprime().require_certified("check_invariance_hypotheses (A')");
  const std::size_t a = D.A().dim();
  const FieldSpec& F = D.A().field();
  LinMap unit_pair = tensor(D.A().unit(), D.B().unit());

  Report report;
  report.checks.push_back(check_map_equal(
      "rho-unit", compose(D.rho(), D.A().unit()), unit_pair));
  report.checks.push_back(check_map_equal(
      "rho-multiplicative", compose(D.rho(), D.Aprime().mult()),
      compose(twisted_mult(D.T()), tensor(D.rho(), D.rho()))));
  report.checks.push_back(check_map_equal(
      "lambda-unit", compose(D.lambda(), D.A().unit()), unit_pair));

  // lambda(a a') = a_[0] * (a'_R)_[0] (x) (a'_R)_[1] (a_[1])_R
  LinMap lhs_mult = compose(D.lambda(), D.A().mult());
  Wiring rhs_mult(F, {a, a});
  rhs_mult.then_at(0, D.lambda(), 1);         // a[0], a[1], a'
  rhs_mult.then_at(1, D.T().R(), 2);          // a[0], a'R, (a[1])R
  rhs_mult.then_at(1, D.lambda(), 1);         // a[0], a'R[0], a'R[1], (a[1])R
  rhs_mult.then_at(0, D.Aprime().mult(), 2);  // a[0] * a'R[0], a'R[1], (a[1])R
  rhs_mult.then_at(1, D.B().mult(), 2);
  report.checks.push_back(
      check_map_equal("lambda-multiplicative", lhs_mult, rhs_mult.map()));

  // a_(0)[0] (x) a_(0)[1] a_(1) = a (x) 1
  LinMap into_unit = tensor(LinMap::identity(F, {a}), D.B().unit());
  Wiring cancel_rl(F, {a});
  cancel_rl.then_at(0, D.rho(), 1);       // a0, a1
  cancel_rl.then_at(0, D.lambda(), 1);    // a0[0], a0[1], a1
  cancel_rl.then_at(1, D.B().mult(), 2);
  report.checks.push_back(
      check_map_equal("rho-lambda-cancel", cancel_rl.map(), into_unit));

  // a_[0](0) (x) a_[0](1) a_[1] = a (x) 1
  Wiring cancel_lr(F, {a});
  cancel_lr.then_at(0, D.lambda(), 1);
  cancel_lr.then_at(0, D.rho(), 1);
  cancel_lr.then_at(1, D.B().mult(), 2);
  report.checks.push_back(
      check_map_equal("lambda-rho-cancel", cancel_lr.map(), into_unit));

  D.hypotheses_ok_ = report.ok();
  return report;
}

TwistingData derive_twisted_map(const InvarianceData& D) {
  D.require_hypotheses("derive_twisted_map");
  const std::size_t a = D.A().dim();
  const std::size_t b = D.B().dim();

  // R'(b (x) a) = (a_(0)R)_[0] (x) (a_(0)R)_[1] b_R a_(1)
  Wiring w(D.A().field(), {b, a});
  w.then_at(1, D.rho(), 1);        // b, a0, a1
  w.then_at(0, D.T().R(), 2);      // a0R, bR, a1
  w.then_at(0, D.lambda(), 1);     // a0R[0], a0R[1], bR, a1
  w.then_at(1, D.B().mult(), 2);   // a0R[0], a0R[1] bR, a1
  w.then_at(1, D.B().mult(), 2);   // a0R[0], a0R[1] bR a1

  TwistingData derived(D.Aprime(), D.B(), w.map());
  Report axioms = check_twisting_axioms(derived);
  if (!axioms.ok())
    fail(ErrorCode::internal_consistency,
         "derived map failed the twisting axioms although the hypotheses "
         "passed:\n" +
             axioms.summary());
  return derived;
}

IsoCertificate build_isomorphism(const InvarianceData& D,
                                 const TwistingData& derived) {
  D.require_hypotheses("build_isomorphism");
  derived.require_certified("build_isomorphism");
  const std::size_t a = D.A().dim();
  const std::size_t b = D.B().dim();
  const FieldSpec& F = D.A().field();

  // phi(a (x) b) = a_(0) (x) a_(1) b
  Wiring w(F, {a, b});
  w.then_at(0, D.rho(), 1);        // a0, a1, b
  w.then_at(1, D.B().mult(), 2);   // a0, a1 b
  LinMap phi = w.map();

  Report checks;
  LinMap phi_inv = LinMap::zero(F, {a, b}, {a, b});
  bool invertible = true;
  try {
    phi_inv = phi.invert();
  } catch (const Error&) {
    invertible = false;
  }
  {
    AxiomCheck inv_check;
    inv_check.axiom = "iso-invertible";
    inv_check.pass = invertible &&
                     compose(phi, phi_inv)
                         .entries_equal(LinMap::identity(F, {a, b})) &&
                     compose(phi_inv, phi)
                         .entries_equal(LinMap::identity(F, {a, b}));
    checks.checks.push_back(inv_check);
  }

  LinMap unit_pair = tensor(D.A().unit(), D.B().unit());
  checks.checks.push_back(
      check_map_equal("iso-unit", compose(phi, unit_pair), unit_pair));
  checks.checks.push_back(check_map_equal(
      "iso-multiplicative", compose(phi, twisted_mult(derived)),
      compose(twisted_mult(D.T()), tensor(phi, phi))));

  if (!checks.ok())
    fail(ErrorCode::internal_consistency,
         "isomorphism verification failed although the hypotheses passed:\n" +
             checks.summary());
  return IsoCertificate{std::move(phi), std::move(phi_inv), std::move(checks)};
}

IsoCertificate build_isomorphism(const InvarianceData& D) {
  return build_isomorphism(D, derive_twisted_map(D));
}

} // namespace twistlab
