#include <doctest.h>

#include "helpers.hpp"
#include "twistlab/constructions.hpp"
#include "twistlab/linmap.hpp"

using namespace twistlab;
using namespace twistlab::testing;

namespace {
const FieldSpec Q = FieldSpec::rationals();
}

TEST_CASE("identity and composition basics") {
  LinMap id2 = LinMap::identity(Q, {2});
  CHECK(compose(id2, id2).entries_equal(id2));

  TestRng rng(1);
  LinMap f = random_linmap(rng, Q, {3}, {2});
  CHECK(compose(LinMap::identity(Q, {2}), f).entries_equal(f));
  CHECK(compose(f, LinMap::identity(Q, {3})).entries_equal(f));

  // dimension mismatch is an input error
  CHECK_THROWS_AS(compose(f, f), Error);
}

TEST_CASE("flip conventions") {
  // tau(e_i (x) f_j) = f_j (x) e_i, lexicographic order with left factor major
  LinMap tau = LinMap::flip(Q, 2, 2);
  CHECK(tau.at(2, 1).is_one()); // index 1 = e0 (x) f1 -> f1 (x) e0 = index 2
  CHECK(compose(LinMap::flip(Q, 2, 3), LinMap::flip(Q, 3, 2))
            .entries_equal(LinMap::identity(Q, {6})));
  CHECK(LinMap::flip(Q, 1, 4).entries_equal(LinMap::identity(Q, {4})));
  CHECK(LinMap::flip(Q, 4, 1).entries_equal(LinMap::identity(Q, {4})));
}

TEST_CASE("tensor product") {
  CHECK(tensor(LinMap::identity(Q, {2}), LinMap::identity(Q, {3}))
            .entries_equal(LinMap::identity(Q, {6})));

  TestRng rng(2);
  LinMap f = random_linmap(rng, Q, {3}, {2});
  LinMap g = random_linmap(rng, Q, {4}, {5});
  LinMap fg = tensor(f, g);
  // on basis pairs the Kronecker product is f(e_i) (x) g(e_j)
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      CHECK(vec_equal(fg.dense_column(i * 4 + j),
                      tensor_vec(f.dense_column(i), g.dense_column(j))));

  // field mismatch is an input error
  CHECK_THROWS_AS(tensor(f, LinMap::identity(FieldSpec::prime_field(3), {2})),
                  Error);
}

TEST_CASE("tensor is compatible with composition") {
  TestRng rng(3);
  for (int iter = 0; iter < 20; ++iter) {
    LinMap f = random_linmap(rng, Q, {2}, {2});
    LinMap g = random_linmap(rng, Q, {2}, {2});
    LinMap f2 = random_linmap(rng, Q, {2}, {2});
    LinMap g2 = random_linmap(rng, Q, {2}, {2});
    // both sides computed along different routes
    CHECK(compose(tensor(f, g), tensor(f2, g2))
              .entries_equal(tensor(compose(f, f2), compose(g, g2))));
  }
}

TEST_CASE("tensor is associative up to factor-list flattening") {
  TestRng rng(4);
  LinMap f = random_linmap(rng, Q, {2}, {3});
  LinMap g = random_linmap(rng, Q, {3}, {2});
  LinMap h = random_linmap(rng, Q, {2}, {2});
  LinMap left = tensor(tensor(f, g), h);
  LinMap right = tensor(f, tensor(g, h));
  CHECK(left.entries_equal(right));
  CHECK(left.dom_factors() == std::vector<std::size_t>{2, 3, 2});
  CHECK(right.dom_factors() == std::vector<std::size_t>{2, 3, 2});
}

TEST_CASE("permutation of tensor slots") {
  // permute (a,b,c) -> (c,a,b) on dims 2,3,4
  LinMap p = LinMap::permute_factors(Q, {2, 3, 4}, {2, 0, 1});
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 3; ++b)
      for (std::size_t c = 0; c < 4; ++c) {
        std::size_t src = join_index({a, b, c}, {2, 3, 4});
        std::size_t dst = join_index({c, a, b}, {4, 2, 3});
        CHECK(p.at(dst, src).is_one());
      }
  CHECK_THROWS_AS(LinMap::permute_factors(Q, {2, 3}, {0, 0}), Error);
}

TEST_CASE("inversion") {
  CHECK(LinMap::identity(Q, {4}).invert().entries_equal(LinMap::identity(Q, {4})));

  CHECK_THROWS_WITH_AS(LinMap::zero(Q, {3}, {3}).invert(),
                       doctest::Contains("rank 0 of 3"), Error);

  TestRng rng(5);
  for (int iter = 0; iter < 10; ++iter) {
    LinMap f = random_invertible(rng, Q, 4);
    LinMap f_inv = f.invert();
    CHECK(compose(f, f_inv).entries_equal(LinMap::identity(Q, {4})));
    CHECK(compose(f_inv, f).entries_equal(LinMap::identity(Q, {4})));
  }

  // the antipode of the 4-dimensional instance has order 4
  HopfAlgebra h4 = sweedler_h4(Q);
  LinMap s = h4.antipode();
  LinMap s_inv = s.invert();
  CHECK(compose(s, s_inv).entries_equal(LinMap::identity(Q, {4})));
  LinMap s2 = compose(s, s);
  CHECK_FALSE(s2.entries_equal(LinMap::identity(Q, {4})));
  CHECK(compose(s2, s2).entries_equal(LinMap::identity(Q, {4})));
}

TEST_CASE("linear solving") {
  LinMap id = LinMap::identity(Q, {3});
  Vec b = {Scalar::from_int(Q, 1), Scalar::from_int(Q, -2),
           Scalar::parse(Q, "1/3")};
  CHECK(vec_equal(solve_linear(id, b), b));

  // zero map, nonzero rhs: inconsistent
  CHECK_FALSE(try_solve_linear(LinMap::zero(Q, {3}, {3}), b).has_value());
  CHECK_THROWS_AS(solve_linear(LinMap::zero(Q, {3}, {3}), b), Error);

  // diag(1, c) inverts to diag(1, 1/c)
  Scalar c = Scalar::parse(Q, "7/3");
  LinMap diag(Q, {2}, {2});
  diag.set(0, 0, Scalar::one(Q));
  diag.set(1, 1, c);
  LinMap diag_inv = diag.invert();
  CHECK(diag_inv.at(0, 0).is_one());
  CHECK(diag_inv.at(1, 1) == c.inverse());

  // underdetermined consistent system picks free variables = 0
  LinMap wide(Q, {3}, {1});
  wide.set(0, 0, Scalar::one(Q));
  wide.set(0, 1, Scalar::one(Q));
  Vec rhs = {Scalar::from_int(Q, 5)};
  Vec x = solve_linear(wide, rhs);
  CHECK(vec_equal(wide.apply(x), rhs));
}

TEST_CASE("apply matches dense columns") {
  TestRng rng(6);
  LinMap f = random_linmap(rng, Q, {4}, {3});
  for (std::size_t j = 0; j < 4; ++j)
    CHECK(vec_equal(f.apply(basis_vec(Q, 4, j)), f.dense_column(j)));
}

TEST_CASE("factor relabeling and entry equality") {
  LinMap id4 = LinMap::identity(Q, {4});
  LinMap relabeled = id4.with_factors({2, 2}, {2, 2});
  CHECK(relabeled.entries_equal(id4));
  CHECK(relabeled.dom_factors() == std::vector<std::size_t>{2, 2});
  CHECK_THROWS_AS(id4.with_factors({3}, {4}), Error);
}

TEST_CASE("wiring builder") {
  // the flip, built through a wiring permute
  Wiring w(Q, {2, 3});
  w.permute({1, 0});
  CHECK(w.map().entries_equal(LinMap::flip(Q, 2, 3)));

  // inserting a column then multiplying is right multiplication
  HopfAlgebra kc2 = group_algebra(FiniteGroup::cyclic(2), Q);
  LinMap g_col = LinMap::column_vector(Q, {2}, basis_vec(Q, 2, 1));
  Wiring v(Q, {2});
  v.then_at(1, g_col, 0);          // x, g
  v.then_at(0, kc2.mult(), 2);     // x g
  CHECK(vec_equal(v.map().apply(basis_vec(Q, 2, 1)), basis_vec(Q, 2, 0)));

  CHECK_THROWS_AS(Wiring(Q, {2}).then_at(0, kc2.mult(), 1), Error);
  CHECK_THROWS_AS(Wiring(Q, {2}).then_at(3, g_col, 0), Error);
}
