#include "twistlab/algebra.hpp"

namespace twistlab {

// ---------------------------------------------------------------------------
// Algebra / Coalgebra / HopfAlgebra

Algebra::Algebra(std::size_t dim, LinMap mult, LinMap unit)
    : dim_(dim),
      mult_(mult.with_factors({dim, dim}, {dim})),
      unit_(unit.with_factors({1}, {dim})) {
  if (dim == 0) fail(ErrorCode::invalid_argument, "algebra of dimension zero");
  if (!(mult_.field() == unit_.field()))
    fail(ErrorCode::invalid_argument, "algebra maps disagree on the field");
}

Report Algebra::certify() const {
  Report report = check_associative(*this);
  report.append(check_unital(*this));
  certified_ = report.ok();
  return report;
}

bool Algebra::is_certified() const {
  if (!certified_.has_value()) certify();
  return *certified_;
}

void Algebra::require_certified(const std::string& what) const {
  if (!is_certified())
    fail(ErrorCode::check_failed, what + ": algebra failed certification");
}

Coalgebra::Coalgebra(std::size_t dim, LinMap comult, LinMap counit)
    : dim_(dim),
      comult_(comult.with_factors({dim}, {dim, dim})),
      counit_(counit.with_factors({dim}, {1})) {
  if (dim == 0) fail(ErrorCode::invalid_argument, "coalgebra of dimension zero");
  if (!(comult_.field() == counit_.field()))
    fail(ErrorCode::invalid_argument, "coalgebra maps disagree on the field");
}

Report Coalgebra::certify() const {
  Report report = check_coassociative(*this);
  report.append(check_counital(*this));
  certified_ = report.ok();
  return report;
}

HopfAlgebra::HopfAlgebra(Algebra algebra, Coalgebra coalgebra, LinMap antipode)
    : algebra_(std::move(algebra)),
      coalgebra_(std::move(coalgebra)),
      antipode_(antipode.with_factors({algebra_.dim()}, {algebra_.dim()})),
      antipode_inv_(antipode_.invert()) { // fail fast: S^-1 is needed downstream
  if (algebra_.dim() != coalgebra_.dim())
    fail(ErrorCode::invalid_argument,
         "algebra and coalgebra parts have different dimensions");
  if (!(algebra_.field() == coalgebra_.field()))
    fail(ErrorCode::invalid_argument, "Hopf parts disagree on the field");
}

Report HopfAlgebra::certify() const {
  Report report = check_associative(algebra_);
  report.append(check_unital(algebra_));
  report.append(check_coassociative(coalgebra_));
  report.append(check_counital(coalgebra_));
  report.append(check_bialgebra(*this));
  report.append(check_antipode(*this));
  certified_ = report.ok();
  return report;
}

bool HopfAlgebra::is_certified() const {
  if (!certified_.has_value()) certify();
  return *certified_;
}

void HopfAlgebra::require_certified(const std::string& what) const {
  if (!is_certified())
    fail(ErrorCode::check_failed, what + ": Hopf algebra failed certification");
}

ComoduleAlgebra::ComoduleAlgebra(Algebra a, HopfAlgebra h, LinMap coact)
    : A(std::move(a)),
      H(std::move(h)),
      coaction(coact.with_factors({A.dim()}, {A.dim(), H.dim()})) {
  if (!(A.field() == H.field()))
    fail(ErrorCode::invalid_argument, "comodule algebra parts disagree on the field");
}

Report ComoduleAlgebra::certify() const {
  Report report = A.certify();
  report.append(H.certify());
  report.append(check_comodule_algebra(*this));
  certified_ = report.ok();
  return report;
}

bool ComoduleAlgebra::is_certified() const {
  if (!certified_.has_value()) certify();
  return *certified_;
}

void ComoduleAlgebra::require_certified(const std::string& what) const {
  if (!is_certified())
    fail(ErrorCode::check_failed, what + ": comodule algebra failed certification");
}

// ---------------------------------------------------------------------------
// Checkers

Report check_associative(const Algebra& A) {
  const std::size_t n = A.dim();
  LinMap id = LinMap::identity(A.field(), {n});
  Report report;
  report.checks.push_back(check_map_equal(
      "associativity", compose(A.mult(), tensor(A.mult(), id)),
      compose(A.mult(), tensor(id, A.mult()))));
  return report;
}

Report check_unital(const Algebra& A) {
  const std::size_t n = A.dim();
  LinMap id = LinMap::identity(A.field(), {n});
  Report report;
  report.checks.push_back(check_map_equal(
      "unit-left", compose(A.mult(), tensor(A.unit(), id)), id));
  report.checks.push_back(check_map_equal(
      "unit-right", compose(A.mult(), tensor(id, A.unit())), id));
  return report;
}

Report check_coassociative(const Coalgebra& C) {
  const std::size_t n = C.dim();
  LinMap id = LinMap::identity(C.field(), {n});
  Report report;
  report.checks.push_back(check_map_equal(
      "coassociativity", compose(tensor(C.comult(), id), C.comult()),
      compose(tensor(id, C.comult()), C.comult())));
  return report;
}

Report check_counital(const Coalgebra& C) {
  const std::size_t n = C.dim();
  LinMap id = LinMap::identity(C.field(), {n});
  Report report;
  report.checks.push_back(check_map_equal(
      "counit-left", compose(tensor(C.counit(), id), C.comult()), id));
  report.checks.push_back(check_map_equal(
      "counit-right", compose(tensor(id, C.counit()), C.comult()), id));
  return report;
}

Report check_bialgebra(const HopfAlgebra& H) {
  const std::size_t n = H.dim();
  const FieldSpec& F = H.field();
  LinMap middle_swap = LinMap::permute_factors(F, {n, n, n, n}, {0, 2, 1, 3});
  Report report;
  report.checks.push_back(check_map_equal(
      "bialgebra-mult-comult", compose(H.comult(), H.mult()),
      compose(tensor(H.mult(), H.mult()),
              compose(middle_swap, tensor(H.comult(), H.comult())))));
  report.checks.push_back(check_map_equal(
      "bialgebra-mult-counit", compose(H.counit(), H.mult()),
      tensor(H.counit(), H.counit())));
  report.checks.push_back(check_map_equal(
      "bialgebra-unit-comult", compose(H.comult(), H.unit()),
      tensor(H.unit(), H.unit())));
  report.checks.push_back(check_map_equal(
      "bialgebra-unit-counit", compose(H.counit(), H.unit()),
      LinMap::identity(F, {1})));
  return report;
}

Report check_antipode(const HopfAlgebra& H) {
  const std::size_t n = H.dim();
  LinMap id = LinMap::identity(H.field(), {n});
  LinMap target = compose(H.unit(), H.counit());
  Report report;
  report.checks.push_back(check_map_equal(
      "antipode-left",
      compose(H.mult(), compose(tensor(H.antipode(), id), H.comult())), target));
  report.checks.push_back(check_map_equal(
      "antipode-right",
      compose(H.mult(), compose(tensor(id, H.antipode()), H.comult())), target));
  return report;
}

Report check_comodule_algebra(const ComoduleAlgebra& CA) {
  const std::size_t a = CA.A.dim();
  const std::size_t h = CA.H.dim();
  const FieldSpec& F = CA.A.field();
  const LinMap& delta = CA.coaction;
  LinMap id_a = LinMap::identity(F, {a});
  LinMap id_h = LinMap::identity(F, {h});

  Report report;
  report.checks.push_back(check_map_equal(
      "coaction-coassoc", compose(tensor(delta, id_h), delta),
      compose(tensor(id_a, CA.H.comult()), delta)));
  report.checks.push_back(check_map_equal(
      "coaction-counit", compose(tensor(id_a, CA.H.counit()), delta), id_a));
  report.checks.push_back(check_map_equal(
      "coaction-unit", compose(delta, CA.A.unit()),
      tensor(CA.A.unit(), CA.H.unit())));
  LinMap middle_swap = LinMap::permute_factors(F, {a, h, a, h}, {0, 2, 1, 3});
  report.checks.push_back(check_map_equal(
      "coaction-mult", compose(delta, CA.A.mult()),
      compose(tensor(CA.A.mult(), CA.H.mult()),
              compose(middle_swap, tensor(delta, delta)))));
  return report;
}

// ---------------------------------------------------------------------------
// Dual and regular actions

HopfAlgebra dual_hopf(const HopfAlgebra& H) {
  H.require_certified("dual_hopf");
  const std::size_t n = H.dim();
  Algebra dual_alg(n, H.comult().transpose(), H.counit().transpose());
  Coalgebra dual_coalg(n, H.mult().transpose(), H.unit().transpose());
  return HopfAlgebra(std::move(dual_alg), std::move(dual_coalg),
                     H.antipode().transpose());
}

LinMap harpoon_right_map(const HopfAlgebra& H) {
  const std::size_t n = H.dim();
  LinMap out(H.field(), {n, n}, {n});
  const LinMap& mult = H.mult();
  // (e^i <- e_a) has e^b-coefficient mult[i, (a,b)]
  for (std::size_t col = 0; col < mult.cols(); ++col) {
    std::size_t a = col / n, b = col % n;
    for (const LinMap::Entry& e : mult.column(col))
      out.add_to(b, e.row * n + a, e.value);
  }
  return out;
}

LinMap harpoon_left_map(const HopfAlgebra& H) {
  const std::size_t n = H.dim();
  LinMap out(H.field(), {n, n}, {n});
  const LinMap& mult = H.mult();
  // (e_a -> e^i) has e^b-coefficient mult[i, (b,a)]
  for (std::size_t col = 0; col < mult.cols(); ++col) {
    std::size_t b = col / n, a = col % n;
    for (const LinMap::Entry& e : mult.column(col))
      out.add_to(b, a * n + e.row, e.value);
  }
  return out;
}

namespace {
std::vector<Scalar> tensor_coords(const FieldSpec& field,
                                  const std::vector<Scalar>& x,
                                  const std::vector<Scalar>& y) {
  std::vector<Scalar> out;
  out.reserve(x.size() * y.size());
  for (const Scalar& a : x)
    for (const Scalar& b : y) out.push_back(a * b);
  (void)field;
  return out;
}
} // namespace

std::vector<Scalar> harpoon_right(const HopfAlgebra& H,
                                  const std::vector<Scalar>& phi,
                                  const std::vector<Scalar>& h) {
  return harpoon_right_map(H).apply(tensor_coords(H.field(), phi, h));
}

std::vector<Scalar> harpoon_left(const HopfAlgebra& H,
                                 const std::vector<Scalar>& h,
                                 const std::vector<Scalar>& phi) {
  return harpoon_left_map(H).apply(tensor_coords(H.field(), h, phi));
}

// ---------------------------------------------------------------------------
// Convolution

LinMap convolution_product(const LinMap& f, const LinMap& g, const Coalgebra& C,
                           const Algebra& E) {
  return compose(E.mult(), compose(tensor(f, g), C.comult()));
}

LinMap convolution_inverse(const LinMap& f, const Coalgebra& C, const Algebra& E) {
  const std::size_t nc = C.dim();
  const std::size_t ne = E.dim();
  if (f.cols() != nc || f.rows() != ne)
    fail(ErrorCode::invalid_argument, "convolution inverse: map shape mismatch");

  // Unknown g : C -> E, flattened as x[k*ne + m] = g(e_k)_m. The right-inverse
  // condition f * g = unit.counit is linear in g; assemble its matrix.
  LinMap system(f.field(), {nc * ne}, {nc * ne});
  const LinMap& comult = C.comult();
  const LinMap& mult = E.mult();
  for (std::size_t k = 0; k < nc; ++k) {
    for (const LinMap::Entry& de : comult.column(k)) {
      std::size_t a = de.row / nc, b = de.row % nc;
      for (const LinMap::Entry& fe : f.column(a)) {
        std::size_t u = fe.row;
        for (std::size_t n2 = 0; n2 < ne; ++n2) {
          for (const LinMap::Entry& me : mult.column(u * ne + n2)) {
            system.add_to(k * ne + me.row, b * ne + n2,
                          de.value * fe.value * me.value);
          }
        }
      }
    }
  }

  std::vector<Scalar> rhs(nc * ne, Scalar::zero(f.field()));
  std::vector<Scalar> unit_vec = E.unit().dense_column(0);
  for (std::size_t k = 0; k < nc; ++k) {
    Scalar eps = C.counit().at(0, k);
    if (eps.is_zero()) continue;
    for (std::size_t m = 0; m < ne; ++m) rhs[k * ne + m] = eps * unit_vec[m];
  }

  auto solution = try_solve_linear(system, rhs);
  if (!solution)
    fail(ErrorCode::not_convolution_invertible,
         "no right convolution inverse exists");

  LinMap g(f.field(), {nc}, {ne});
  for (std::size_t k = 0; k < nc; ++k)
    for (std::size_t m = 0; m < ne; ++m)
      g.set(m, k, (*solution)[k * ne + m]);

  LinMap neutral = compose(E.unit(), C.counit());
  if (!convolution_product(f, g, C, E).entries_equal(neutral) ||
      !convolution_product(g, f, C, E).entries_equal(neutral))
    fail(ErrorCode::not_convolution_invertible,
         "convolution inverse is only one-sided");
  return g;
}

// ---------------------------------------------------------------------------
// Stock algebras

Algebra matrix_algebra(const FieldSpec& field, std::size_t n) {
  const std::size_t dim = n * n;
  LinMap mult(field, {dim, dim}, {dim});
  Scalar one = Scalar::one(field);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l)
          if (j == k)
            mult.set(i * n + l, (i * n + j) * dim + (k * n + l), one);
  LinMap unit(field, {1}, {dim});
  for (std::size_t i = 0; i < n; ++i) unit.set(i * n + i, 0, one);
  return Algebra(dim, std::move(mult), std::move(unit));
}

Algebra tensor_algebra(const Algebra& A, const Algebra& B) {
  const std::size_t a = A.dim(), b = B.dim();
  LinMap swap = LinMap::permute_factors(A.field(), {a, b, a, b}, {0, 2, 1, 3});
  LinMap mult = compose(tensor(A.mult(), B.mult()), swap);
  return Algebra(a * b, std::move(mult), tensor(A.unit(), B.unit()));
}

LinMap curry_action(const LinMap& action, std::size_t dim_h, std::size_t dim_a) {
  if (action.cols() != dim_h * dim_a || action.rows() != dim_a)
    fail(ErrorCode::invalid_argument, "curry_action: shape mismatch");
  LinMap out(action.field(), {dim_h}, {dim_a * dim_a});
  for (std::size_t col = 0; col < action.cols(); ++col) {
    std::size_t k = col / dim_a, j = col % dim_a;
    for (const LinMap::Entry& e : action.column(col))
      out.set(e.row * dim_a + j, k, e.value);
  }
  return out;
}

LinMap uncurry_action(const LinMap& curried, std::size_t dim_h, std::size_t dim_a) {
  if (curried.cols() != dim_h || curried.rows() != dim_a * dim_a)
    fail(ErrorCode::invalid_argument, "uncurry_action: shape mismatch");
  LinMap out(curried.field(), {dim_h, dim_a}, {dim_a});
  for (std::size_t k = 0; k < dim_h; ++k)
    for (const LinMap::Entry& e : curried.column(k)) {
      std::size_t i = e.row / dim_a, j = e.row % dim_a;
      out.set(i, k * dim_a + j, e.value);
    }
  return out;
}

} // namespace twistlab
