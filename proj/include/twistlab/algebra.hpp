#ifndef TWISTLAB_ALGEBRA_HPP
#define TWISTLAB_ALGEBRA_HPP

#include <optional>
#include <string>
#include <vector>

#include "twistlab/report.hpp"

namespace twistlab {

/// Associative unital algebra given by structure constants:
/// mult : A (x) A -> A and unit : k -> A. Construction checks shapes only;
/// certify() runs the exhaustive axiom suite and caches the verdict.
class Algebra {
public:
  Algebra(std::size_t dim, LinMap mult, LinMap unit);

  std::size_t dim() const { return dim_; }
  const FieldSpec& field() const { return mult_.field(); }
  const LinMap& mult() const { return mult_; }
  const LinMap& unit() const { return unit_; }
  std::vector<Scalar> unit_vector() const { return unit_.dense_column(0); }

  Report certify() const;
  bool is_certified() const;
  void require_certified(const std::string& what) const;

private:
  std::size_t dim_;
  LinMap mult_;
  LinMap unit_;
  mutable std::optional<bool> certified_;
};

class Coalgebra {
public:
  Coalgebra(std::size_t dim, LinMap comult, LinMap counit);

  std::size_t dim() const { return dim_; }
  const FieldSpec& field() const { return comult_.field(); }
  const LinMap& comult() const { return comult_; }
  const LinMap& counit() const { return counit_; }

  Report certify() const;

private:
  std::size_t dim_;
  LinMap comult_;
  LinMap counit_;
  mutable std::optional<bool> certified_;
};

/// Hopf algebra bundle. The antipode inverse is computed eagerly at
/// construction and a non-invertible antipode is a construction error.
class HopfAlgebra {
public:
  HopfAlgebra(Algebra algebra, Coalgebra coalgebra, LinMap antipode);

  std::size_t dim() const { return algebra_.dim(); }
  const FieldSpec& field() const { return algebra_.field(); }
  const Algebra& algebra() const { return algebra_; }
  const Coalgebra& coalgebra() const { return coalgebra_; }
  const LinMap& mult() const { return algebra_.mult(); }
  const LinMap& unit() const { return algebra_.unit(); }
  const LinMap& comult() const { return coalgebra_.comult(); }
  const LinMap& counit() const { return coalgebra_.counit(); }
  const LinMap& antipode() const { return antipode_; }
  const LinMap& antipode_inv() const { return antipode_inv_; }

  /// Runs every Hopf axiom exhaustively; caches the verdict.
  Report certify() const;
  bool is_certified() const;
  void require_certified(const std::string& what) const;

private:
  Algebra algebra_;
  Coalgebra coalgebra_;
  LinMap antipode_;
  LinMap antipode_inv_;
  mutable std::optional<bool> certified_;
};

/// Right H-comodule algebra: coaction : A -> A (x) H that is coassociative,
/// counital, and an algebra map.
struct ComoduleAlgebra {
  Algebra A;
  HopfAlgebra H;
  LinMap coaction;

  ComoduleAlgebra(Algebra a, HopfAlgebra h, LinMap coact);

  /// Certifies A, H and the comodule-algebra axioms together.
  Report certify() const;
  bool is_certified() const;
  void require_certified(const std::string& what) const;

private:
  mutable std::optional<bool> certified_;
};

// --- axiom checkers (each identity becomes one whole-map equality) --------

Report check_associative(const Algebra& A);
Report check_unital(const Algebra& A);
Report check_coassociative(const Coalgebra& C);
Report check_counital(const Coalgebra& C);
Report check_bialgebra(const HopfAlgebra& H);
Report check_antipode(const HopfAlgebra& H);
Report check_comodule_algebra(const ComoduleAlgebra& CA);

// --- duals and regular actions --------------------------------------------

/// Dual Hopf algebra on the dual basis (e^i ordered to match e_i):
/// mult = comult^T, comult = mult^T, unit = counit^T, counit = unit^T,
/// antipode = antipode^T.
HopfAlgebra dual_hopf(const HopfAlgebra& H);

/// Regular actions of H on H^*, as maps and on vectors:
/// (phi <- h)(x) = phi(h x) and (h -> phi)(x) = phi(x h).
LinMap harpoon_right_map(const HopfAlgebra& H); // H* (x) H -> H*
LinMap harpoon_left_map(const HopfAlgebra& H);  // H (x) H* -> H*
std::vector<Scalar> harpoon_right(const HopfAlgebra& H,
                                  const std::vector<Scalar>& phi,
                                  const std::vector<Scalar>& h);
std::vector<Scalar> harpoon_left(const HopfAlgebra& H,
                                 const std::vector<Scalar>& h,
                                 const std::vector<Scalar>& phi);

// --- convolution ------------------------------------------------------------

/// Convolution product on Hom(C, E): (f * g) = mult_E . (f (x) g) . comult_C.
LinMap convolution_product(const LinMap& f, const LinMap& g,
                           const Coalgebra& C, const Algebra& E);

/// Two-sided convolution inverse of f : C -> E, found by an exact linear
/// solve in Hom(C, E); throws not_convolution_invertible when the solve is
/// inconsistent or the solution is only one-sided.
LinMap convolution_inverse(const LinMap& f, const Coalgebra& C, const Algebra& E);

// --- stock algebras ---------------------------------------------------------

/// Full matrix algebra on n x n matrix units; basis E_ij at index i*n + j.
Algebra matrix_algebra(const FieldSpec& field, std::size_t n);

/// Ordinary tensor product algebra A (x) B, built directly from
/// (mult_A (x) mult_B) . (id (x) flip (x) id).
Algebra tensor_algebra(const Algebra& A, const Algebra& B);

/// View a map nu : H (x) A -> A as a map H -> End(A) into the matrix
/// algebra, and back.
LinMap curry_action(const LinMap& action, std::size_t dim_h, std::size_t dim_a);
LinMap uncurry_action(const LinMap& curried, std::size_t dim_h, std::size_t dim_a);

} // namespace twistlab

#endif
