#include "twistlab/twisting.hpp"

namespace twistlab {

TwistingData::TwistingData(Algebra a, Algebra b, LinMap r)
    : a_(std::move(a)),
      b_(std::move(b)),
      r_(r.with_factors({b_.dim(), a_.dim()}, {a_.dim(), b_.dim()})) {
  if (!(a_.field() == b_.field()) || !(a_.field() == r_.field()))
    fail(ErrorCode::invalid_argument, "twisting data disagrees on the field");
}

void TwistingData::require_certified(const std::string& what) const {
  if (!certified_.has_value())
    fail(ErrorCode::uncertified,
         what + ": twisting map has not been checked; run the twisting axioms first");
  if (!*certified_)
    fail(ErrorCode::uncertified, what + ": twisting map failed its axioms");
}

Report check_twisting_axioms(const TwistingData& T) {
  const std::size_t a = T.A().dim();
  const std::size_t b = T.B().dim();
  const FieldSpec& F = T.R().field();
  LinMap id_a = LinMap::identity(F, {a});
  LinMap id_b = LinMap::identity(F, {b});
  const LinMap& R = T.R();

  Report report;

  // R(1_B (x) a) = a (x) 1_B
  report.checks.push_back(check_map_equal(
      "twist-unit-B", compose(R, tensor(T.B().unit(), id_a)),
      tensor(id_a, T.B().unit())));

  // R(b (x) 1_A) = 1_A (x) b
  report.checks.push_back(check_map_equal(
      "twist-unit-A", compose(R, tensor(id_b, T.A().unit())),
      tensor(T.A().unit(), id_b)));

  // R . (id_B (x) mult_A) = (mult_A (x) id_B) . (id_A (x) R) . (R (x) id_A)
  report.checks.push_back(check_map_equal(
      "twist-mult-A", compose(R, tensor(id_b, T.A().mult())),
      compose(tensor(T.A().mult(), id_b),
              compose(tensor(id_a, R), tensor(R, id_a)))));

  // R . (mult_B (x) id_A) = (id_A (x) mult_B) . (R (x) id_B) . (id_B (x) R)
  report.checks.push_back(check_map_equal(
      "twist-mult-B", compose(R, tensor(T.B().mult(), id_a)),
      compose(tensor(id_a, T.B().mult()),
              compose(tensor(R, id_b), tensor(id_b, R)))));

  T.certified_ = report.ok();
  return report;
}

LinMap twisted_mult(const TwistingData& T) {
  const std::size_t a = T.A().dim();
  const std::size_t b = T.B().dim();
  LinMap id_a = LinMap::identity(T.R().field(), {a});
  LinMap id_b = LinMap::identity(T.R().field(), {b});
  return compose(tensor(T.A().mult(), T.B().mult()),
                 tensor(tensor(id_a, T.R()), id_b));
}

TwistedProduct build_twisted_product(const TwistingData& T) {
  T.require_certified("build_twisted_product");
  Algebra product(T.A().dim() * T.B().dim(), twisted_mult(T),
                  tensor(T.A().unit(), T.B().unit()));
  Report cross = product.certify();
  if (!cross.ok())
    fail(ErrorCode::internal_consistency,
         "certified twisting map produced a non-associative product:\n" +
             cross.summary());
  return TwistedProduct{T, std::move(product)};
}

} // namespace twistlab
