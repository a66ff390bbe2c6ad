#include <doctest.h>

#include "helpers.hpp"
#include "twistlab/pipelines.hpp"

using namespace twistlab;
using namespace twistlab::testing;

namespace {
const FieldSpec Q = FieldSpec::rationals();
}

TEST_CASE("finite groups") {
  FiniteGroup c4 = FiniteGroup::cyclic(4);
  CHECK(c4.order() == 4);
  CHECK(c4.identity() == 0);
  CHECK(c4.mul(3, 2) == 1);
  CHECK(c4.inverse(3) == 1);

  FiniteGroup klein =
      FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
  CHECK(klein.order() == 4);
  for (std::size_t a = 0; a < 4; ++a) CHECK(klein.inverse(a) == a);

  // a non-associative table is rejected
  CHECK_THROWS_AS(FiniteGroup({{0, 1}, {1, 1}}), Error);
  // a table without identity is rejected (the constant semigroup)
  CHECK_THROWS_AS(FiniteGroup({{1, 1}, {1, 1}}), Error);
  // identity is found wherever it sits
  CHECK(FiniteGroup({{1, 0}, {0, 1}}).identity() == 1);
}

TEST_CASE("group algebra of C2") {
  HopfAlgebra kc2 = group_algebra(FiniteGroup::cyclic(2), Q);
  // g^2 = 1 and S = id
  CHECK(vec_equal(mult_vec(kc2.algebra(), basis_vec(Q, 2, 1), basis_vec(Q, 2, 1)),
                  basis_vec(Q, 2, 0)));
  CHECK(kc2.antipode().entries_equal(LinMap::identity(Q, {2})));
  CHECK(kc2.certify().ok());
}

TEST_CASE("group algebra of the Klein group is commutative and cocommutative") {
  HopfAlgebra k = group_algebra(
      FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)),
      Q);
  CHECK(k.dim() == 4);
  CHECK(k.certify().ok());
  LinMap tau = LinMap::flip(Q, 4, 4);
  CHECK(compose(k.mult(), tau).entries_equal(k.mult()));
  CHECK(compose(tau, k.comult()).entries_equal(k.comult()));
}

TEST_CASE("the 4-dimensional instance") {
  HopfAlgebra h4 = sweedler_h4(Q);
  CHECK(h4.certify().ok());

  // S^2 != id, S^4 = id
  LinMap s2 = compose(h4.antipode(), h4.antipode());
  CHECK_FALSE(s2.entries_equal(LinMap::identity(Q, {4})));
  CHECK(compose(s2, s2).entries_equal(LinMap::identity(Q, {4})));

  // it is neither commutative nor cocommutative
  LinMap tau = LinMap::flip(Q, 4, 4);
  CHECK_FALSE(compose(h4.mult(), tau).entries_equal(h4.mult()));
  CHECK_FALSE(compose(tau, h4.comult()).entries_equal(h4.comult()));

  CHECK_THROWS_AS(sweedler_h4(FieldSpec::prime_field(2)), Error);
}

TEST_CASE("smash product with the trivial coaction is the plain tensor product") {
  HopfAlgebra h4 = sweedler_h4(Q);
  ComoduleAlgebra trivial = trivial_coaction(h4.algebra(), h4);
  SmashProduct smash = smash_product(trivial);
  CHECK(smash.data.R().entries_equal(LinMap::flip(Q, 4, 4)));
  Algebra plain = tensor_algebra(h4.algebra(), dual_hopf(h4).algebra());
  CHECK(smash.product.mult().entries_equal(plain.mult()));
}

TEST_CASE("smash product of kC2 over itself matches the loop oracle") {
  HopfAlgebra kc2 = group_algebra(FiniteGroup::cyclic(2), Q);
  ComoduleAlgebra ca = self_coaction(kc2);
  SmashProduct smash = smash_product(ca);
  CHECK(smash.product.dim() == 4);
  CHECK(smash.product.certify().ok());

  // every basis product against the independent evaluation of
  // (a (x) phi)(a' (x) psi) = a a'_(0) (x) (phi <- a'_(1)) psi
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t p = 0; p < 2; ++p)
      for (std::size_t a2 = 0; a2 < 2; ++a2)
        for (std::size_t p2 = 0; p2 < 2; ++p2) {
          Vec expected = oracle_smash_product(
              ca, smash.dual, basis_vec(Q, 2, a), basis_vec(Q, 2, p),
              basis_vec(Q, 2, a2), basis_vec(Q, 2, p2));
          std::size_t col = (a * 2 + p) * 4 + (a2 * 2 + p2);
          CHECK(vec_equal(smash.product.mult().dense_column(col), expected));
        }
}

TEST_CASE("smash product of the 4-dimensional instance over itself") {
  HopfAlgebra h4 = sweedler_h4(Q);
  SmashProduct smash = smash_product(self_coaction(h4));
  CHECK(smash.product.dim() == 16);
  CHECK(smash.product.certify().ok()); // 16^3 basis triples
}

TEST_CASE("double of kC2 matches the loop oracle") {
  HopfAlgebra kc2 = group_algebra(FiniteGroup::cyclic(2), Q);
  HopfAlgebra dual = dual_hopf(kc2);
  Algebra d = drinfeld_double(kc2);
  CHECK(d.dim() == 4);
  CHECK(d.certify().ok());
  for (std::size_t col = 0; col < 16; ++col) {
    std::size_t left = col / 4, right = col % 4;
    Vec expected = oracle_double_product(
        kc2, dual, basis_vec(Q, 2, left / 2), basis_vec(Q, 2, left % 2),
        basis_vec(Q, 2, right / 2), basis_vec(Q, 2, right % 2));
    CHECK(vec_equal(d.mult().dense_column(col), expected));
  }
}

TEST_CASE("double of the 4-dimensional instance") {
  HopfAlgebra h4 = sweedler_h4(Q);
  HopfAlgebra dual = dual_hopf(h4);
  Algebra d = drinfeld_double(h4);
  CHECK(d.dim() == 16);
  CHECK(d.certify().ok());

  // spot-check one full product column against the oracle
  Vec expected = oracle_double_product(h4, dual, basis_vec(Q, 4, 1),
                                       basis_vec(Q, 4, 2), basis_vec(Q, 4, 3),
                                       basis_vec(Q, 4, 1));
  CHECK(vec_equal(d.mult().dense_column((1 * 4 + 2) * 16 + (3 * 4 + 1)), expected));

  // noncommutative: find a witness pair
  bool commutative = compose(d.mult(), LinMap::flip(Q, 16, 16))
                         .entries_equal(d.mult());
  CHECK_FALSE(commutative);
}

TEST_CASE("double restricted to its two slices reproduces H* and H") {
  HopfAlgebra h4 = sweedler_h4(Q);
  HopfAlgebra dual = dual_hopf(h4);
  Algebra d = drinfeld_double(h4);
  const std::size_t n = 4;
  Vec unit_h = h4.unit().dense_column(0);
  Vec unit_dual = dual.unit().dense_column(0);

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      // (eps (x) e_i)(eps (x) e_j) = eps (x) e_i e_j
      Vec x = tensor_vec(unit_dual, basis_vec(Q, n, i));
      Vec y = tensor_vec(unit_dual, basis_vec(Q, n, j));
      Vec expect = tensor_vec(
          unit_dual, mult_vec(h4.algebra(), basis_vec(Q, n, i), basis_vec(Q, n, j)));
      CHECK(vec_equal(mult_vec(d, x, y), expect));

      // (e^i (x) 1)(e^j (x) 1) = e^i e^j (x) 1
      Vec p = tensor_vec(basis_vec(Q, n, i), unit_h);
      Vec q = tensor_vec(basis_vec(Q, n, j), unit_h);
      Vec expect2 = tensor_vec(
          mult_vec(dual.algebra(), basis_vec(Q, n, i), basis_vec(Q, n, j)), unit_h);
      CHECK(vec_equal(mult_vec(d, p, q), expect2));
    }
}

TEST_CASE("invertible elements of H (x) H") {
  SqtElement triangular = triangular_kc2(Q);
  // this element squares to 1 (x) 1, so it is its own inverse
  CHECK(triangular.r_inv().entries_equal(triangular.r()));

  HopfAlgebra kc2 = group_algebra(FiniteGroup::cyclic(2), Q);
  LinMap one_g(Q, {1}, {2, 2});
  one_g.set(1, 0, Scalar::one(Q));
  SqtElement e(kc2, one_g);
  CHECK(e.r_inv().entries_equal(one_g)); // (1 (x) g)^2 = 1 (x) 1

  // a non-invertible element is rejected
  LinMap zero(Q, {1}, {2, 2});
  CHECK_THROWS_AS(SqtElement(kc2, zero), Error);

  // a wrong claimed inverse is rejected
  CHECK_THROWS_AS(SqtElement(kc2, one_g, triangular.r()), Error);

  CHECK(trivial_sqt(kc2).r_inv().entries_equal(tensor(kc2.unit(), kc2.unit())));
}
