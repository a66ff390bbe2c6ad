#include <doctest.h>

#include "helpers.hpp"
#include "twistlab/invariance.hpp"
#include "twistlab/pipelines.hpp"

using namespace twistlab;
using namespace twistlab::testing;

namespace {

const FieldSpec Q = FieldSpec::rationals();

// rho(a) = sum_i a.e_i (x) e^i built by plain loops from an action map
LinMap coefficient_map(const LinMap& action, std::size_t h, std::size_t a) {
  LinMap out(action.field(), {a}, {a, h});
  for (std::size_t col = 0; col < action.cols(); ++col) {
    std::size_t i = col / a, a_idx = col % a;
    for (const LinMap::Entry& e : action.column(col))
      out.add_to(e.row * h + i, a_idx, e.value);
  }
  return out;
}

// the exchange-type data of the double example, built entrywise by loops
struct DoubleExample {
  HopfAlgebra H;
  HopfAlgebra dual;
  TwistingData data;
  LinMap mu;
  LinMap rho;
};

DoubleExample make_double_example(const SqtElement& element) {
  const HopfAlgebra& H = element.H();
  const std::size_t n = H.dim();
  const FieldSpec& F = H.field();
  HopfAlgebra dual = dual_hopf(H);
  TwistingData data(dual.algebra(), H.algebra(), double_twisting_map(H));
  check_twisting_axioms(data);

  // mu(h (x) phi) = h1 -> phi <- S^-1(h2)
  LinMap mu(F, {n, n}, {n});
  for (std::size_t hi = 0; hi < n; ++hi)
    for (std::size_t pi = 0; pi < n; ++pi) {
      Vec acc = zeros(F, n);
      for (const SweedlerTerm& t :
           expand_pair(H.comult(), n, basis_vec(F, n, hi))) {
        Vec s_inv = H.antipode_inv().apply(basis_vec(F, n, t.right));
        Vec acted = oracle_harpoon_right(
            H, oracle_harpoon_left(H, basis_vec(F, n, t.left),
                                   basis_vec(F, n, pi)),
            s_inv);
        acc = add_scaled(std::move(acc), acted, t.coeff);
      }
      for (std::size_t row = 0; row < n; ++row)
        if (!acc[row].is_zero()) mu.set(row, hi * n + pi, acc[row]);
    }

  // rho(phi) = phi <- S^-1(r^1) (x) r^2
  LinMap rho(F, {n}, {n, n});
  Vec r = element.r().dense_column(0);
  for (std::size_t pi = 0; pi < n; ++pi) {
    Vec acc = zeros(F, n * n);
    for (std::size_t idx = 0; idx < r.size(); ++idx) {
      if (r[idx].is_zero()) continue;
      std::size_t r1 = idx / n, r2 = idx % n;
      Vec acted = oracle_harpoon_right(
          H, basis_vec(F, n, pi), H.antipode_inv().apply(basis_vec(F, n, r1)));
      acc = add_scaled(std::move(acc), tensor_vec(acted, basis_vec(F, n, r2)),
                       r[idx]);
    }
    for (std::size_t row = 0; row < n * n; ++row)
      if (!acc[row].is_zero()) rho.set(row, pi, acc[row]);
  }

  return DoubleExample{H, std::move(dual), std::move(data), std::move(mu),
                       std::move(rho)};
}

} // namespace

TEST_CASE("trivial star data reproduces the original product") {
  HopfAlgebra h4 = sweedler_h4(Q);
  HopfAlgebra kc2 = group_algebra(FiniteGroup::cyclic(2), Q);
  const Algebra& A = h4.algebra();
  const Algebra& B = kc2.algebra();

  TwistingData data(A, B, LinMap::flip(Q, 2, 4));
  check_twisting_axioms(data);
  // b.a = counit(b) a and rho(a) = a (x) 1
  LinMap mu = tensor(kc2.counit(), LinMap::identity(Q, {4}));
  LinMap rho = tensor(LinMap::identity(Q, {4}), B.unit());
  StarData star(data, mu, rho);
  CHECK(check_star_hypotheses(star).ok());
  Algebra built = build_star_algebra(star);
  CHECK(built.mult().entries_equal(A.mult()));
}

TEST_CASE("double-example star data passes and the deformed product is associative") {
  SqtElement element = triangular_kc2(Q);
  DoubleExample ex = make_double_example(element);
  StarData star(ex.data, ex.mu, ex.rho);
  CHECK(check_star_hypotheses(star).ok());
  Algebra deformed = build_star_algebra(star);
  CHECK(deformed.certify().ok());
}

TEST_CASE("an element violating the comultiplication split fails the rho condition") {
  HopfAlgebra kc2 = group_algebra(FiniteGroup::cyclic(2), Q);
  LinMap one_g(Q, {1}, {2, 2});
  one_g.set(1, 0, Scalar::one(Q));
  SqtElement element(kc2, one_g);
  DoubleExample ex = make_double_example(element);
  StarData star(ex.data, ex.mu, ex.rho);
  Report report = check_star_hypotheses(star);
  CHECK_FALSE(report.ok());
  const AxiomCheck* rho_mult = report.find("star-rho-mult");
  REQUIRE(rho_mult != nullptr);
  CHECK_FALSE(rho_mult->pass);
  REQUIRE(rho_mult->witness.has_value());
  CHECK_THROWS_AS(build_star_algebra(star), Error);
}

TEST_CASE("building the star algebra without a check is refused") {
  SqtElement element = triangular_kc2(Q);
  DoubleExample ex = make_double_example(element);
  StarData star(ex.data, ex.mu, ex.rho);
  CHECK_THROWS_AS(build_star_algebra(star), Error);
}

TEST_CASE("trivial comparison maps give back the same twisting") {
  auto run_trivial = [](const Algebra& A, const HopfAlgebra& B_hopf) {
    const Algebra& B = B_hopf.algebra();
    TwistingData data(A, B, LinMap::flip(A.field(), B.dim(), A.dim()));
    check_twisting_axioms(data);
    LinMap into_unit = tensor(LinMap::identity(A.field(), {A.dim()}), B.unit());
    InvarianceData inv(data, A, into_unit, into_unit);
    CHECK(check_invariance_hypotheses(inv).ok());
    TwistingData derived = derive_twisted_map(inv);
    CHECK(derived.R().entries_equal(data.R()));
    IsoCertificate iso = build_isomorphism(inv, derived);
    CHECK(iso.phi.entries_equal(
        LinMap::identity(A.field(), {A.dim() * B.dim()})));
    CHECK(iso.checks.ok());
  };
  run_trivial(group_algebra(FiniteGroup::direct_product(FiniteGroup::cyclic(2),
                                                        FiniteGroup::cyclic(2)),
                            Q)
                  .algebra(),
              group_algebra(FiniteGroup::cyclic(2), Q));
  run_trivial(sweedler_h4(Q).algebra(), group_algebra(FiniteGroup::cyclic(2), Q));
}

TEST_CASE("homogenization-style comparison maps satisfy the hypotheses") {
  HopfAlgebra h4 = sweedler_h4(Q);
  ComoduleAlgebra ca = self_coaction(h4);
  TwistingData data(ca.A, h4.algebra(), LinMap::flip(Q, 4, 4));
  check_twisting_axioms(data);
  LinMap lambda =
      compose(tensor(LinMap::identity(Q, {4}), h4.antipode()), ca.coaction);
  InvarianceData inv(data, ca.A, ca.coaction, lambda);
  CHECK(check_invariance_hypotheses(inv).ok());
}

TEST_CASE("lambda built from nu instead of its inverse fails the cancellations") {
  Scalar c = Scalar::from_int(Q, 2); // c != +-1 so nu != nu^-1
  NuTwist nu = c_deformation_kc2(Q, c);
  ComoduleAlgebra ca = nu.CA;
  HopfAlgebra dual = dual_hopf(ca.H);
  TwistingData data(ca.A, dual.algebra(), smash_twisting_map(ca));
  check_twisting_axioms(data);

  Algebra a_nu(2, nu_star_mult(nu), ca.A.unit());
  LinMap rho = coefficient_map(nu.nu, 2, 2);
  LinMap lambda_bad = rho; // should be built from nu^-1

  InvarianceData inv(data, a_nu, rho, lambda_bad);
  Report report = check_invariance_hypotheses(inv);
  CHECK_FALSE(report.ok());
  const AxiomCheck* cancel = report.find("rho-lambda-cancel");
  REQUIRE(cancel != nullptr);
  CHECK_FALSE(cancel->pass);
  CHECK_THROWS_AS(derive_twisted_map(inv), Error);

  // with the honest lambda everything passes
  LinMap lambda_good = coefficient_map(nu.nu_inv, 2, 2);
  InvarianceData honest(data, a_nu, rho, lambda_good);
  CHECK(check_invariance_hypotheses(honest).ok());
}

TEST_CASE("aprime must share the unit of A") {
  HopfAlgebra kc2 = group_algebra(FiniteGroup::cyclic(2), Q);
  TwistingData data(kc2.algebra(), kc2.algebra(), LinMap::flip(Q, 2, 2));
  LinMap shifted_unit(Q, {1}, {2});
  shifted_unit.set(1, 0, Scalar::one(Q));
  Algebra wrong_unit(2, kc2.mult(), shifted_unit);
  LinMap into_unit = tensor(LinMap::identity(Q, {2}), kc2.unit());
  CHECK_THROWS_AS(InvarianceData(data, wrong_unit, into_unit, into_unit), Error);
}
