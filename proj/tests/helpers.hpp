#ifndef TWISTLAB_TEST_HELPERS_HPP
#define TWISTLAB_TEST_HELPERS_HPP

// Test-side oracles. Everything here evaluates formulas by plain loops over
// raw structure constants, independently of the Wiring/compose path the
// library uses, so the two routes genuinely cross-check each other.

#include <cstdint>
#include <vector>

#include "twistlab/algebra.hpp"
#include "twistlab/constructions.hpp"

namespace twistlab::testing {

using Vec = std::vector<Scalar>;

inline Vec zeros(const FieldSpec& field, std::size_t n) {
  return Vec(n, Scalar::zero(field));
}

inline Vec basis_vec(const FieldSpec& field, std::size_t n, std::size_t i) {
  Vec out = zeros(field, n);
  out[i] = Scalar::one(field);
  return out;
}

inline Vec tensor_vec(const Vec& x, const Vec& y) {
  Vec out;
  out.reserve(x.size() * y.size());
  for (const Scalar& a : x)
    for (const Scalar& b : y) out.push_back(a * b);
  return out;
}

inline Vec add_scaled(Vec acc, const Vec& x, const Scalar& c) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = acc[i] + c * x[i];
  return acc;
}

inline bool vec_equal(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

/// x*y through the raw mult entries of A.
inline Vec mult_vec(const Algebra& A, const Vec& x, const Vec& y) {
  const std::size_t n = A.dim();
  Vec out = zeros(A.field(), n);
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (y[j].is_zero()) continue;
      Scalar c = x[i] * y[j];
      for (const LinMap::Entry& e : A.mult().column(i * n + j))
        out[e.row] = out[e.row] + c * e.value;
    }
  }
  return out;
}

/// Componentwise product on the k-th tensor power of A.
inline Vec tensor_power_mult(const Algebra& A, std::size_t k, const Vec& x,
                             const Vec& y) {
  const std::size_t n = A.dim();
  std::size_t total = 1;
  for (std::size_t t = 0; t < k; ++t) total *= n;
  Vec out = zeros(A.field(), total);
  for (std::size_t i = 0; i < total; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < total; ++j) {
      if (y[j].is_zero()) continue;
      Scalar c = x[i] * y[j];
      std::vector<std::size_t> dims(k, n);
      std::vector<std::size_t> mi = split_index(i, dims);
      std::vector<std::size_t> mj = split_index(j, dims);
      Vec term(1, Scalar::one(A.field()));
      for (std::size_t t = 0; t < k; ++t)
        term = tensor_vec(term, mult_vec(A, basis_vec(A.field(), n, mi[t]),
                                         basis_vec(A.field(), n, mj[t])));
      out = add_scaled(std::move(out), term, c);
    }
  }
  return out;
}

/// (phi <- h)(x) = phi(h x), evaluated entrywise from the mult constants.
inline Vec oracle_harpoon_right(const HopfAlgebra& H, const Vec& phi,
                                const Vec& h) {
  const std::size_t n = H.dim();
  Vec out = zeros(H.field(), n);
  for (std::size_t b = 0; b < n; ++b) {
    // out[b] = phi(h e_b)
    Vec hx = mult_vec(H.algebra(), h, basis_vec(H.field(), n, b));
    for (std::size_t c = 0; c < n; ++c) out[b] = out[b] + phi[c] * hx[c];
  }
  return out;
}

/// (h -> phi)(x) = phi(x h).
inline Vec oracle_harpoon_left(const HopfAlgebra& H, const Vec& h,
                               const Vec& phi) {
  const std::size_t n = H.dim();
  Vec out = zeros(H.field(), n);
  for (std::size_t b = 0; b < n; ++b) {
    Vec xh = mult_vec(H.algebra(), basis_vec(H.field(), n, b), h);
    for (std::size_t c = 0; c < n; ++c) out[b] = out[b] + phi[c] * xh[c];
  }
  return out;
}

/// Sweedler expansion of a coaction-like map V -> V (x) W into indexed terms.
struct SweedlerTerm {
  std::size_t left;
  std::size_t right;
  Scalar coeff;
};

inline std::vector<SweedlerTerm> expand_pair(const LinMap& coaction,
                                             std::size_t right_dim,
                                             const Vec& x) {
  std::vector<SweedlerTerm> out;
  Vec image = coaction.apply(x);
  for (std::size_t idx = 0; idx < image.size(); ++idx) {
    if (image[idx].is_zero()) continue;
    out.push_back({idx / right_dim, idx % right_dim, image[idx]});
  }
  return out;
}

/// (a (x) phi)(a' (x) psi) = a a'_(0) (x) (phi <- a'_(1)) psi, by loops.
inline Vec oracle_smash_product(const ComoduleAlgebra& CA,
                                const HopfAlgebra& dual, const Vec& a,
                                const Vec& phi, const Vec& a2, const Vec& psi) {
  const std::size_t n = CA.H.dim();
  const std::size_t m = CA.A.dim();
  Vec out = zeros(CA.A.field(), m * n);
  for (const SweedlerTerm& t : expand_pair(CA.coaction, n, a2)) {
    Vec left = mult_vec(CA.A, a, basis_vec(CA.A.field(), m, t.left));
    Vec acted =
        oracle_harpoon_right(CA.H, phi, basis_vec(CA.H.field(), n, t.right));
    Vec right = mult_vec(dual.algebra(), acted, psi);
    out = add_scaled(std::move(out), tensor_vec(left, right), t.coeff);
  }
  return out;
}

/// (phi (x) h)(phi' (x) h') = phi (h1 -> phi' <- S^-1(h3)) (x) h2 h'.
inline Vec oracle_double_product(const HopfAlgebra& H, const HopfAlgebra& dual,
                                 const Vec& phi, const Vec& h, const Vec& phi2,
                                 const Vec& h2) {
  const std::size_t n = H.dim();
  Vec out = zeros(H.field(), n * n);
  for (const SweedlerTerm& outer : expand_pair(H.comult(), n, h)) {
    // re-expand the first leg: h1 (x) h2 (x) h3 = (Delta (x) id) Delta
    for (const SweedlerTerm& inner :
         expand_pair(H.comult(), n, basis_vec(H.field(), n, outer.left))) {
      std::size_t h1 = inner.left, hmid = inner.right, h3 = outer.right;
      Vec s_inv_h3 = H.antipode_inv().apply(basis_vec(H.field(), n, h3));
      Vec acted = oracle_harpoon_right(
          H, oracle_harpoon_left(H, basis_vec(H.field(), n, h1), phi2), s_inv_h3);
      Vec left = mult_vec(dual.algebra(), phi, acted);
      Vec right = mult_vec(H.algebra(), basis_vec(H.field(), n, hmid), h2);
      out = add_scaled(std::move(out), tensor_vec(left, right),
                       outer.coeff * inner.coeff);
    }
  }
  return out;
}

// --- deterministic randomness ----------------------------------------------

class TestRng {
public:
  explicit TestRng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b9ull) {}

  std::uint64_t next() {
    // xorshift64*
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545f4914f6cdd1dull;
  }

  long long range(long long lo, long long hi) {
    return lo + static_cast<long long>(next() % (hi - lo + 1));
  }

private:
  std::uint64_t state_;
};

inline Scalar random_scalar(TestRng& rng, const FieldSpec& field) {
  if (field.kind == FieldSpec::Kind::rationals)
    return Scalar::rational(BigInt(rng.range(-6, 6)), BigInt(rng.range(1, 5)));
  return Scalar::from_int(field, rng.range(0, field.modulus - 1));
}

inline LinMap random_linmap(TestRng& rng, const FieldSpec& field,
                            std::vector<std::size_t> dom,
                            std::vector<std::size_t> cod) {
  LinMap out(field, std::move(dom), std::move(cod));
  for (std::size_t j = 0; j < out.cols(); ++j)
    for (std::size_t i = 0; i < out.rows(); ++i)
      if (rng.range(0, 2) == 0) out.set(i, j, random_scalar(rng, field));
  return out;
}

inline LinMap random_invertible(TestRng& rng, const FieldSpec& field,
                                std::size_t n) {
  for (;;) {
    LinMap candidate = random_linmap(rng, field, {n}, {n});
    try {
      candidate.invert();
      return candidate;
    } catch (const Error&) {
      // singular draw; try again
    }
  }
}

// --- change of basis ---------------------------------------------------------

inline Algebra conjugate_algebra(const Algebra& A, const LinMap& P) {
  LinMap p_inv = P.invert();
  LinMap mult = compose(P, compose(A.mult(), tensor(p_inv, p_inv)));
  LinMap unit = compose(P, A.unit());
  return Algebra(A.dim(), std::move(mult), std::move(unit));
}

inline HopfAlgebra conjugate_hopf(const HopfAlgebra& H, const LinMap& P) {
  LinMap p_inv = P.invert();
  Algebra alg = conjugate_algebra(H.algebra(), P);
  Coalgebra coalg(H.dim(), compose(tensor(P, P), compose(H.comult(), p_inv)),
                  compose(H.counit(), p_inv));
  LinMap antipode = compose(P, compose(H.antipode(), p_inv));
  return HopfAlgebra(std::move(alg), std::move(coalg), std::move(antipode));
}

} // namespace twistlab::testing

#endif
