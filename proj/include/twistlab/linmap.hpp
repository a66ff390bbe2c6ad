#ifndef TWISTLAB_LINMAP_HPP
#define TWISTLAB_LINMAP_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "twistlab/scalar.hpp"

namespace twistlab {

/// Linear map between tensor products of based vector spaces, stored as
/// sorted sparse columns of exact scalars. The domain and codomain carry
/// explicit tensor-factor dimension lists; the matrix has
/// rows = product(cod_factors) and cols = product(dom_factors).
///
/// Basis order of V (x) W is lexicographic with the left factor major:
/// e_i (x) f_j sits at index i * dim(W) + j. Every structure map in the
/// library is expressed in this one convention.
class LinMap {
public:
  struct Entry {
    std::size_t row;
    Scalar value;
  };

  using Column = std::vector<Entry>;

  LinMap(FieldSpec field, std::vector<std::size_t> dom_factors,
         std::vector<std::size_t> cod_factors);

  static LinMap zero(const FieldSpec& field, std::vector<std::size_t> dom,
                     std::vector<std::size_t> cod);
  static LinMap identity(const FieldSpec& field, std::vector<std::size_t> factors);
  /// tau : V (x) W -> W (x) V, tau(e_i (x) f_j) = f_j (x) e_i.
  static LinMap flip(const FieldSpec& field, std::size_t m, std::size_t n);
  /// Permutation of tensor slots: output slot j carries input slot
  /// src_of_dst[j]. flip(m, n) == permute_factors({m, n}, {1, 0}).
  static LinMap permute_factors(const FieldSpec& field,
                                const std::vector<std::size_t>& dims,
                                const std::vector<std::size_t>& src_of_dst);
  /// Column vector k -> V with the given dense coordinates.
  static LinMap column_vector(const FieldSpec& field,
                              std::vector<std::size_t> cod_factors,
                              const std::vector<Scalar>& coords);

  const FieldSpec& field() const { return field_; }
  const std::vector<std::size_t>& dom_factors() const { return dom_factors_; }
  const std::vector<std::size_t>& cod_factors() const { return cod_factors_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const Column& column(std::size_t j) const { return columns_[j]; }
  std::vector<Scalar> dense_column(std::size_t j) const;

  Scalar at(std::size_t row, std::size_t col) const;
  void set(std::size_t row, std::size_t col, const Scalar& value);
  void add_to(std::size_t row, std::size_t col, const Scalar& value);

  bool is_zero() const;
  std::size_t entry_count() const;

  /// Entrywise equality on matrices of the same shape; tensor-factor lists
  /// are ignored so that e.g. a map out of k (x) A compares against one out
  /// of A. Field must match.
  bool entries_equal(const LinMap& other) const;

  LinMap transpose() const;
  LinMap scaled(const Scalar& factor) const;

  friend LinMap operator+(const LinMap& a, const LinMap& b);
  friend LinMap operator-(const LinMap& a, const LinMap& b);

  /// f.compose(g) = f after g; g's codomain total must match f's domain total.
  friend LinMap compose(const LinMap& f, const LinMap& g);
  /// Kronecker product with concatenated factor lists.
  friend LinMap tensor(const LinMap& f, const LinMap& g);

  /// Exact inverse by Gauss-Jordan elimination; dom/cod factor lists swap.
  /// Throws not_invertible (message carries the rank) when singular.
  LinMap invert() const;

  std::vector<Scalar> apply(const std::vector<Scalar>& input) const;

  /// Replace the factor lists without touching entries; products must match.
  LinMap with_factors(std::vector<std::size_t> dom,
                      std::vector<std::size_t> cod) const;

private:
  FieldSpec field_;
  std::vector<std::size_t> dom_factors_;
  std::vector<std::size_t> cod_factors_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Column> columns_;
};

std::size_t product_of(const std::vector<std::size_t>& factors);

/// Decompose a flat basis index into the multi-index over the given factors.
std::vector<std::size_t> split_index(std::size_t flat,
                                     const std::vector<std::size_t>& factors);
std::size_t join_index(const std::vector<std::size_t>& multi,
                       const std::vector<std::size_t>& factors);

/// Exact solve A x = b; returns std::nullopt when the system is inconsistent.
/// Underdetermined systems get free variables set to zero.
std::optional<std::vector<Scalar>> try_solve_linear(const LinMap& A,
                                                    const std::vector<Scalar>& b);
/// Same, but throws inconsistent_system instead of returning nullopt.
std::vector<Scalar> solve_linear(const LinMap& A, const std::vector<Scalar>& b);

/// Incremental builder for composites of structure maps: starts as the
/// identity on the given slots and grows by applying maps to runs of
/// adjacent slots or by permuting slots. Keeps the factor bookkeeping in
/// one place so each displayed formula is translated exactly once.
class Wiring {
public:
  Wiring(FieldSpec field, std::vector<std::size_t> input_dims);

  /// Apply f to the `consumed` adjacent slots starting at `slot`
  /// (consumed == 0 inserts f's codomain there; f must then have domain k).
  Wiring& then_at(std::size_t slot, const LinMap& f, std::size_t consumed);
  /// Apply f to the whole current space.
  Wiring& then(const LinMap& f);
  /// Reorder slots: new slot j carries old slot src_of_dst[j].
  Wiring& permute(const std::vector<std::size_t>& src_of_dst);

  const std::vector<std::size_t>& slots() const { return map_.cod_factors(); }
  const LinMap& map() const { return map_; }

private:
  LinMap map_;
};

} // namespace twistlab

#endif
