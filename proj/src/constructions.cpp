#include "twistlab/constructions.hpp"

namespace twistlab {

// ---------------------------------------------------------------------------
// FiniteGroup

FiniteGroup::FiniteGroup(std::vector<std::vector<std::size_t>> table)
    : table_(std::move(table)) {
  const std::size_t n = table_.size();
  if (n == 0) fail(ErrorCode::invalid_argument, "empty Cayley table");
  for (const auto& row : table_) {
    if (row.size() != n)
      fail(ErrorCode::invalid_argument, "Cayley table is not square");
    for (std::size_t v : row)
      if (v >= n) fail(ErrorCode::invalid_argument, "Cayley table index out of range");
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
          fail(ErrorCode::invalid_argument, "Cayley table is not associative");
  bool found_identity = false;
  for (std::size_t e = 0; e < n; ++e) {
    bool ok = true;
    for (std::size_t a = 0; a < n; ++a)
      if (table_[e][a] != a || table_[a][e] != a) {
        ok = false;
        break;
      }
    if (ok) {
      identity_ = e;
      found_identity = true;
      break;
    }
  }
  if (!found_identity)
    fail(ErrorCode::invalid_argument, "Cayley table has no identity");
  inverse_.assign(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b)
      if (table_[a][b] == identity_ && table_[b][a] == identity_) {
        inverse_[a] = b;
        break;
      }
    if (inverse_[a] == n)
      fail(ErrorCode::invalid_argument, "Cayley table element has no inverse");
  }
}

FiniteGroup FiniteGroup::cyclic(std::size_t n) {
  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) table[a][b] = (a + b) % n;
  return FiniteGroup(std::move(table));
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  const std::size_t n = g.order(), m = h.order();
  std::vector<std::vector<std::size_t>> table(n * m, std::vector<std::size_t>(n * m));
  for (std::size_t a1 = 0; a1 < n; ++a1)
    for (std::size_t a2 = 0; a2 < m; ++a2)
      for (std::size_t b1 = 0; b1 < n; ++b1)
        for (std::size_t b2 = 0; b2 < m; ++b2)
          table[a1 * m + a2][b1 * m + b2] = g.mul(a1, b1) * m + h.mul(a2, b2);
  return FiniteGroup(std::move(table));
}

// ---------------------------------------------------------------------------
// Stock Hopf algebras

HopfAlgebra group_algebra(const FiniteGroup& G, const FieldSpec& field) {
  const std::size_t n = G.order();
  Scalar one = Scalar::one(field);

  LinMap mult(field, {n, n}, {n});
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) mult.set(G.mul(a, b), a * n + b, one);

  LinMap unit(field, {1}, {n});
  unit.set(G.identity(), 0, one);

  LinMap comult(field, {n}, {n, n});
  for (std::size_t a = 0; a < n; ++a) comult.set(a * n + a, a, one);

  LinMap counit(field, {n}, {1});
  for (std::size_t a = 0; a < n; ++a) counit.set(0, a, one);

  LinMap antipode(field, {n}, {n});
  for (std::size_t a = 0; a < n; ++a) antipode.set(G.inverse(a), a, one);

  return HopfAlgebra(Algebra(n, std::move(mult), std::move(unit)),
                     Coalgebra(n, std::move(comult), std::move(counit)),
                     std::move(antipode));
}

HopfAlgebra sweedler_h4(const FieldSpec& field) {
  if (field.characteristic() == 2)
    fail(ErrorCode::invalid_argument,
         "this Hopf algebra needs characteristic != 2");
  Scalar one = Scalar::one(field);
  Scalar minus_one = Scalar::from_int(field, -1);

  // basis 0:1, 1:g, 2:x, 3:gx
  LinMap mult(field, {4, 4}, {4});
  auto set_product = [&](std::size_t a, std::size_t b, std::size_t to,
                         const Scalar& coeff) { mult.set(to, a * 4 + b, coeff); };
  for (std::size_t b = 0; b < 4; ++b) set_product(0, b, b, one); // 1*y
  set_product(1, 0, 1, one);
  set_product(1, 1, 0, one);        // g*g = 1
  set_product(1, 2, 3, one);        // g*x = gx
  set_product(1, 3, 2, one);        // g*gx = x
  set_product(2, 0, 2, one);
  set_product(2, 1, 3, minus_one);  // x*g = -gx
  set_product(3, 0, 3, one);
  set_product(3, 1, 2, minus_one);  // gx*g = -x
  // x*x = x*gx = gx*x = gx*gx = 0

  LinMap unit(field, {1}, {4});
  unit.set(0, 0, one);

  LinMap comult(field, {4}, {4, 4});
  comult.set(0 * 4 + 0, 0, one);                          // 1 (x) 1
  comult.set(1 * 4 + 1, 1, one);                          // g (x) g
  comult.set(2 * 4 + 0, 2, one);                          // x (x) 1
  comult.set(1 * 4 + 2, 2, one);                          // g (x) x
  comult.set(3 * 4 + 1, 3, one);                          // gx (x) g
  comult.set(0 * 4 + 3, 3, one);                          // 1 (x) gx

  LinMap counit(field, {4}, {1});
  counit.set(0, 0, one);
  counit.set(0, 1, one);

  LinMap antipode(field, {4}, {4});
  antipode.set(0, 0, one);
  antipode.set(1, 1, one);
  antipode.set(3, 2, minus_one); // S(x) = -gx
  antipode.set(2, 3, one);       // S(gx) = x

  return HopfAlgebra(Algebra(4, std::move(mult), std::move(unit)),
                     Coalgebra(4, std::move(comult), std::move(counit)),
                     std::move(antipode));
}

// ---------------------------------------------------------------------------
// Smash product

LinMap smash_twisting_map(const ComoduleAlgebra& CA) {
  const std::size_t a = CA.A.dim();
  const std::size_t n = CA.H.dim();
  // R(phi (x) a) = a_(0) (x) (phi <- a_(1))
  Wiring w(CA.A.field(), {n, a});
  w.then_at(1, CA.coaction, 1);              // phi, a0, a1
  w.permute({1, 0, 2});                      // a0, phi, a1
  w.then_at(1, harpoon_right_map(CA.H), 2);  // a0, phi<-a1
  return w.map();
}

SmashProduct smash_product(const ComoduleAlgebra& CA) {
  CA.A.require_certified("smash_product");
  CA.H.require_certified("smash_product");
  if (!check_comodule_algebra(CA).ok())
    fail(ErrorCode::check_failed, "smash_product: comodule algebra axioms fail");

  HopfAlgebra dual = dual_hopf(CA.H);
  TwistingData data(CA.A, dual.algebra(), smash_twisting_map(CA));
  Report axioms = check_twisting_axioms(data);
  if (!axioms.ok())
    fail(ErrorCode::internal_consistency,
         "smash twisting map failed its axioms on certified input:\n" +
             axioms.summary());
  TwistedProduct built = build_twisted_product(data);
  return SmashProduct{std::move(dual), std::move(built.source),
                      std::move(built.product)};
}

// ---------------------------------------------------------------------------
// Drinfeld double

LinMap double_twisting_map(const HopfAlgebra& H) {
  const std::size_t n = H.dim();
  const FieldSpec& F = H.field();
  LinMap comult2 = compose(tensor(H.comult(), LinMap::identity(F, {n})), H.comult());
  // h (x) phi |-> (h1 -> phi <- S^-1(h3)) (x) h2
  Wiring w(F, {n, n});
  w.then_at(0, comult2, 1);                // h1, h2, h3, phi
  w.then_at(2, H.antipode_inv(), 1);       // h1, h2, S^-1(h3), phi
  w.permute({0, 3, 2, 1});                 // h1, phi, S^-1(h3), h2
  w.then_at(0, harpoon_left_map(H), 2);    // h1->phi, S^-1(h3), h2
  w.then_at(0, harpoon_right_map(H), 2);   // (h1->phi<-S^-1(h3)), h2
  return w.map();
}

Algebra drinfeld_double(const HopfAlgebra& H) {
  H.require_certified("drinfeld_double");
  const std::size_t n = H.dim();
  const FieldSpec& F = H.field();
  HopfAlgebra dual = dual_hopf(H);
  LinMap comult2 = compose(tensor(H.comult(), LinMap::identity(F, {n})), H.comult());

  // (phi (x) h)(phi' (x) h') = phi (h1 -> phi' <- S^-1(h3)) (x) h2 h'
  Wiring w(F, {n, n, n, n});
  w.then_at(1, comult2, 1);                // phi, h1, h2, h3, phi', h'
  w.then_at(3, H.antipode_inv(), 1);       // phi, h1, h2, S^-1(h3), phi', h'
  w.permute({0, 1, 4, 3, 2, 5});           // phi, h1, phi', S^-1(h3), h2, h'
  w.then_at(1, harpoon_left_map(H), 2);    // phi, h1->phi', S^-1(h3), h2, h'
  w.then_at(1, harpoon_right_map(H), 2);   // phi, phi'', h2, h'
  w.then_at(0, dual.mult(), 2);            // phi phi'', h2, h'
  w.then_at(1, H.mult(), 2);               // phi phi'', h2 h'

  return Algebra(n * n, w.map(), tensor(dual.unit(), H.unit()));
}

// ---------------------------------------------------------------------------
// SqtElement

namespace {

LinMap tensor_square_unit(const HopfAlgebra& H) {
  return tensor(H.unit(), H.unit());
}

// left-multiplication operator by the element r inside H (x) H
LinMap left_multiplication(const Algebra& E, const LinMap& element) {
  const std::size_t n = E.dim();
  LinMap out(E.field(), {n}, {n});
  for (const LinMap::Entry& re : element.column(0)) {
    // column b of out picks up r_a * e_b
    for (std::size_t b = 0; b < n; ++b)
      for (const LinMap::Entry& me : E.mult().column(re.row * n + b))
        out.add_to(me.row, b, re.value * me.value);
  }
  return out;
}

} // namespace

SqtElement::SqtElement(HopfAlgebra h, LinMap r)
    : h_(std::move(h)),
      r_(r.with_factors({1}, {h_.dim(), h_.dim()})),
      r_inv_(LinMap::zero(h_.field(), {1}, {h_.dim(), h_.dim()})) {
  Algebra square = tensor_algebra(h_.algebra(), h_.algebra());
  LinMap lmul = left_multiplication(square, r_);
  std::vector<Scalar> unit_vec = tensor_square_unit(h_).dense_column(0);
  auto solved = try_solve_linear(lmul, unit_vec);
  if (!solved)
    fail(ErrorCode::not_invertible, "r is not invertible in H (x) H");
  r_inv_ = LinMap::column_vector(h_.field(), {h_.dim(), h_.dim()}, *solved);
  verify_inverse_pair();
}

SqtElement::SqtElement(HopfAlgebra h, LinMap r, LinMap r_inv)
    : h_(std::move(h)),
      r_(r.with_factors({1}, {h_.dim(), h_.dim()})),
      r_inv_(r_inv.with_factors({1}, {h_.dim(), h_.dim()})) {
  verify_inverse_pair();
}

void SqtElement::verify_inverse_pair() const {
  Algebra square = tensor_algebra(h_.algebra(), h_.algebra());
  LinMap unit_col = tensor_square_unit(h_);
  LinMap forward = LinMap::column_vector(
      h_.field(), {h_.dim(), h_.dim()},
      left_multiplication(square, r_).apply(r_inv_.dense_column(0)));
  LinMap backward = LinMap::column_vector(
      h_.field(), {h_.dim(), h_.dim()},
      left_multiplication(square, r_inv_).apply(r_.dense_column(0)));
  if (!forward.entries_equal(unit_col) || !backward.entries_equal(unit_col))
    fail(ErrorCode::not_invertible, "r and its claimed inverse do not cancel");
}

SqtElement triangular_kc2(const FieldSpec& field) {
  if (field.characteristic() == 2)
    fail(ErrorCode::invalid_argument, "the triangular structure needs char != 2");
  HopfAlgebra H = group_algebra(FiniteGroup::cyclic(2), field);
  Scalar half = Scalar::from_int(field, 2).inverse();
  LinMap r(field, {1}, {2, 2});
  r.set(0, 0, half);                 // 1 (x) 1
  r.set(1, 0, half);                 // 1 (x) g
  r.set(2, 0, half);                 // g (x) 1
  r.set(3, 0, half.negated());       // g (x) g
  return SqtElement(std::move(H), std::move(r));
}

SqtElement trivial_sqt(const HopfAlgebra& H) {
  LinMap r = tensor(H.unit(), H.unit());
  return SqtElement(H, std::move(r));
}

} // namespace twistlab
