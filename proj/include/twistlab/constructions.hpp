#ifndef TWISTLAB_CONSTRUCTIONS_HPP
#define TWISTLAB_CONSTRUCTIONS_HPP

#include "twistlab/twisting.hpp"

namespace twistlab {

/// Finite group given by its Cayley table; the constructor verifies the
/// table really is a group (associativity, identity, inverses).
class FiniteGroup {
public:
  explicit FiniteGroup(std::vector<std::vector<std::size_t>> table);

  static FiniteGroup cyclic(std::size_t n);
  static FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h);

  std::size_t order() const { return table_.size(); }
  std::size_t identity() const { return identity_; }
  std::size_t mul(std::size_t a, std::size_t b) const { return table_[a][b]; }
  std::size_t inverse(std::size_t a) const { return inverse_[a]; }
  const std::vector<std::vector<std::size_t>>& table() const { return table_; }

private:
  std::vector<std::vector<std::size_t>> table_;
  std::size_t identity_ = 0;
  std::vector<std::size_t> inverse_;
};

/// Group algebra kG: basis = group elements, Delta(g) = g (x) g,
/// eps(g) = 1, S(g) = g^-1.
HopfAlgebra group_algebra(const FiniteGroup& G, const FieldSpec& field);

/// The 4-dimensional Hopf algebra on {1, g, x, gx} with g^2 = 1, x^2 = 0,
/// xg = -gx, Delta(g) = g (x) g, Delta(x) = x (x) 1 + g (x) x, S(g) = g,
/// S(x) = -gx.  Needs characteristic != 2.
HopfAlgebra sweedler_h4(const FieldSpec& field);

struct SmashProduct {
  HopfAlgebra dual;     // H^* used as the right tensor factor
  TwistingData data;    // R(phi (x) a) = a_(0) (x) (phi <- a_(1))
  Algebra product;      // A (x)_R H^*
};

/// Smash product A # H^* of a comodule algebra, realized through its
/// twisting map only; the twisting axioms are re-certified and a failure
/// for certified input is an internal-consistency error.
SmashProduct smash_product(const ComoduleAlgebra& CA);

/// The smash twisting map alone: H^* (x) A -> A (x) H^*.
LinMap smash_twisting_map(const ComoduleAlgebra& CA);

/// Drinfeld double D(H) on H^* (x) H, built directly from
/// (phi (x) h)(phi' (x) h') = phi (h_1 -> phi' <- S^-1(h_3)) (x) h_2 h'.
Algebra drinfeld_double(const HopfAlgebra& H);

/// The twisting map H (x) H^* -> H^* (x) H whose twisted product is D(H):
/// h (x) phi |-> (h_1 -> phi <- S^-1(h_3)) (x) h_2.
LinMap double_twisting_map(const HopfAlgebra& H);

/// Invertible element r = r^1 (x) r^2 of H (x) H together with its inverse
/// u^1 (x) u^2 in the tensor product algebra; the inverse is computed by an
/// exact solve when not supplied, and both products are verified to be
/// 1 (x) 1 either way.
class SqtElement {
public:
  SqtElement(HopfAlgebra h, LinMap r);                 // computes r^-1
  SqtElement(HopfAlgebra h, LinMap r, LinMap r_inv);   // verifies the pair

  const HopfAlgebra& H() const { return h_; }
  const LinMap& r() const { return r_; }          // column k -> H (x) H
  const LinMap& r_inv() const { return r_inv_; }

private:
  HopfAlgebra h_;
  LinMap r_;
  LinMap r_inv_;

  void verify_inverse_pair() const;
};

/// r = (1/2)(1 (x) 1 + 1 (x) g + g (x) 1 - g (x) g) on the group algebra of
/// C2; the standard nontrivial triangular structure. Needs char != 2.
SqtElement triangular_kc2(const FieldSpec& field);

/// r = 1 (x) 1 on any certified Hopf algebra.
SqtElement trivial_sqt(const HopfAlgebra& H);

} // namespace twistlab

#endif
