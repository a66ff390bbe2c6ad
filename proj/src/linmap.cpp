#include "twistlab/linmap.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace twistlab {

std::size_t product_of(const std::vector<std::size_t>& factors) {
  std::size_t out = 1;
  for (std::size_t f : factors) out *= f;
  return out;
}

std::vector<std::size_t> split_index(std::size_t flat,
                                     const std::vector<std::size_t>& factors) {
  std::vector<std::size_t> out(factors.size(), 0);
  for (std::size_t i = factors.size(); i-- > 0;) {
    out[i] = flat % factors[i];
    flat /= factors[i];
  }
  return out;
}

std::size_t join_index(const std::vector<std::size_t>& multi,
                       const std::vector<std::size_t>& factors) {
  std::size_t out = 0;
  for (std::size_t i = 0; i < factors.size(); ++i)
    out = out * factors[i] + multi[i];
  return out;
}

LinMap::LinMap(FieldSpec field, std::vector<std::size_t> dom_factors,
               std::vector<std::size_t> cod_factors)
    : field_(field),
      dom_factors_(std::move(dom_factors)),
      cod_factors_(std::move(cod_factors)) {
  if (dom_factors_.empty() || cod_factors_.empty())
    fail(ErrorCode::invalid_argument, "factor lists must be nonempty");
  for (std::size_t f : dom_factors_)
    if (f == 0) fail(ErrorCode::invalid_argument, "zero tensor factor");
  for (std::size_t f : cod_factors_)
    if (f == 0) fail(ErrorCode::invalid_argument, "zero tensor factor");
  rows_ = product_of(cod_factors_);
  cols_ = product_of(dom_factors_);
  columns_.resize(cols_);
}

LinMap LinMap::zero(const FieldSpec& field, std::vector<std::size_t> dom,
                    std::vector<std::size_t> cod) {
  return LinMap(field, std::move(dom), std::move(cod));
}

LinMap LinMap::identity(const FieldSpec& field, std::vector<std::size_t> factors) {
  LinMap out(field, factors, factors);
  Scalar one = Scalar::one(field);
  for (std::size_t j = 0; j < out.cols_; ++j)
    out.columns_[j].push_back({j, one});
  return out;
}

LinMap LinMap::flip(const FieldSpec& field, std::size_t m, std::size_t n) {
  return permute_factors(field, {m, n}, {1, 0});
}

LinMap LinMap::permute_factors(const FieldSpec& field,
                               const std::vector<std::size_t>& dims,
                               const std::vector<std::size_t>& src_of_dst) {
  if (dims.size() != src_of_dst.size())
    fail(ErrorCode::invalid_argument, "permutation arity mismatch");
  std::vector<bool> seen(dims.size(), false);
  std::vector<std::size_t> out_dims(dims.size());
  for (std::size_t j = 0; j < dims.size(); ++j) {
    std::size_t s = src_of_dst[j];
    if (s >= dims.size() || seen[s])
      fail(ErrorCode::invalid_argument, "bad slot permutation");
    seen[s] = true;
    out_dims[j] = dims[s];
  }
  LinMap out(field, dims, out_dims);
  Scalar one = Scalar::one(field);
  for (std::size_t j = 0; j < out.cols_; ++j) {
    std::vector<std::size_t> multi = split_index(j, dims);
    std::vector<std::size_t> target(dims.size());
    for (std::size_t k = 0; k < dims.size(); ++k) target[k] = multi[src_of_dst[k]];
    out.columns_[j].push_back({join_index(target, out_dims), one});
  }
  return out;
}

LinMap LinMap::column_vector(const FieldSpec& field,
                             std::vector<std::size_t> cod_factors,
                             const std::vector<Scalar>& coords) {
  LinMap out(field, {1}, std::move(cod_factors));
  if (coords.size() != out.rows_)
    fail(ErrorCode::invalid_argument, "column vector length mismatch");
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (!coords[i].is_zero()) out.columns_[0].push_back({i, coords[i]});
  return out;
}

std::vector<Scalar> LinMap::dense_column(std::size_t j) const {
  std::vector<Scalar> out(rows_, Scalar::zero(field_));
  for (const Entry& e : columns_[j]) out[e.row] = e.value;
  return out;
}

Scalar LinMap::at(std::size_t row, std::size_t col) const {
  for (const Entry& e : columns_[col])
    if (e.row == row) return e.value;
  return Scalar::zero(field_);
}

void LinMap::set(std::size_t row, std::size_t col, const Scalar& value) {
  if (row >= rows_ || col >= cols_)
    fail(ErrorCode::invalid_argument, "entry out of range");
  Column& c = columns_[col];
  auto it = std::lower_bound(c.begin(), c.end(), row,
                             [](const Entry& e, std::size_t r) { return e.row < r; });
  if (it != c.end() && it->row == row) {
    if (value.is_zero())
      c.erase(it);
    else
      it->value = value;
  } else if (!value.is_zero()) {
    c.insert(it, {row, value});
  }
}

void LinMap::add_to(std::size_t row, std::size_t col, const Scalar& value) {
  if (value.is_zero()) return;
  Column& c = columns_[col];
  auto it = std::lower_bound(c.begin(), c.end(), row,
                             [](const Entry& e, std::size_t r) { return e.row < r; });
  if (it != c.end() && it->row == row) {
    Scalar sum = it->value + value;
    if (sum.is_zero())
      c.erase(it);
    else
      it->value = sum;
  } else {
    c.insert(it, {row, value});
  }
}

bool LinMap::is_zero() const {
  for (const Column& c : columns_)
    if (!c.empty()) return false;
  return true;
}

std::size_t LinMap::entry_count() const {
  std::size_t n = 0;
  for (const Column& c : columns_) n += c.size();
  return n;
}

bool LinMap::entries_equal(const LinMap& other) const {
  if (!(field_ == other.field_)) return false;
  if (rows_ != other.rows_ || cols_ != other.cols_) return false;
  for (std::size_t j = 0; j < cols_; ++j) {
    const Column& a = columns_[j];
    const Column& b = other.columns_[j];
    if (a.size() != b.size()) return false;
    for (std::size_t k = 0; k < a.size(); ++k)
      if (a[k].row != b[k].row || a[k].value != b[k].value) return false;
  }
  return true;
}

LinMap LinMap::transpose() const {
  LinMap out(field_, cod_factors_, dom_factors_);
  for (std::size_t j = 0; j < cols_; ++j)
    for (const Entry& e : columns_[j]) out.columns_[e.row].push_back({j, e.value});
  for (Column& c : out.columns_)
    std::sort(c.begin(), c.end(),
              [](const Entry& a, const Entry& b) { return a.row < b.row; });
  return out;
}

LinMap LinMap::scaled(const Scalar& factor) const {
  if (factor.is_zero()) return zero(field_, dom_factors_, cod_factors_);
  LinMap out = *this;
  for (Column& c : out.columns_)
    for (Entry& e : c) e.value = e.value * factor;
  return out;
}

LinMap operator+(const LinMap& a, const LinMap& b) {
  if (!(a.field_ == b.field_))
    fail(ErrorCode::invalid_argument, "field mismatch in sum");
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    fail(ErrorCode::invalid_argument, "shape mismatch in sum");
  LinMap out = a;
  for (std::size_t j = 0; j < b.cols_; ++j)
    for (const LinMap::Entry& e : b.columns_[j]) out.add_to(e.row, j, e.value);
  return out;
}

LinMap operator-(const LinMap& a, const LinMap& b) {
  return a + b.scaled(Scalar::from_int(b.field_, -1));
}

LinMap compose(const LinMap& f, const LinMap& g) {
  if (!(f.field_ == g.field_))
    fail(ErrorCode::invalid_argument, "field mismatch in composition");
  if (f.cols_ != g.rows_)
    fail(ErrorCode::invalid_argument,
         "dimension mismatch in composition: inner " + std::to_string(f.cols_) +
             " vs " + std::to_string(g.rows_));
  LinMap out(f.field_, g.dom_factors_, f.cod_factors_);
  for (std::size_t j = 0; j < g.cols_; ++j) {
    std::map<std::size_t, Scalar> acc;
    for (const LinMap::Entry& ge : g.columns_[j]) {
      for (const LinMap::Entry& fe : f.columns_[ge.row]) {
        Scalar term = fe.value * ge.value;
        auto it = acc.find(fe.row);
        if (it == acc.end())
          acc.emplace(fe.row, term);
        else
          it->second = it->second + term;
      }
    }
    LinMap::Column& col = out.columns_[j];
    for (const auto& [row, val] : acc)
      if (!val.is_zero()) col.push_back({row, val});
  }
  return out;
}

LinMap tensor(const LinMap& f, const LinMap& g) {
  if (!(f.field_ == g.field_))
    fail(ErrorCode::invalid_argument, "field mismatch in tensor product");
  std::vector<std::size_t> dom = f.dom_factors_;
  dom.insert(dom.end(), g.dom_factors_.begin(), g.dom_factors_.end());
  std::vector<std::size_t> cod = f.cod_factors_;
  cod.insert(cod.end(), g.cod_factors_.begin(), g.cod_factors_.end());
  LinMap out(f.field_, std::move(dom), std::move(cod));
  for (std::size_t j1 = 0; j1 < f.cols_; ++j1) {
    for (std::size_t j2 = 0; j2 < g.cols_; ++j2) {
      LinMap::Column& col = out.columns_[j1 * g.cols_ + j2];
      for (const LinMap::Entry& e1 : f.columns_[j1])
        for (const LinMap::Entry& e2 : g.columns_[j2])
          col.push_back({e1.row * g.rows_ + e2.row, e1.value * e2.value});
    }
  }
  return out;
}

std::vector<Scalar> LinMap::apply(const std::vector<Scalar>& input) const {
  if (input.size() != cols_)
    fail(ErrorCode::invalid_argument, "vector length mismatch in apply");
  std::vector<Scalar> out(rows_, Scalar::zero(field_));
  for (std::size_t j = 0; j < cols_; ++j) {
    if (input[j].is_zero()) continue;
    for (const Entry& e : columns_[j])
      out[e.row] = out[e.row] + e.value * input[j];
  }
  return out;
}

namespace {

using DenseMatrix = std::vector<std::vector<Scalar>>;

DenseMatrix to_dense(const LinMap& m) {
  DenseMatrix out(m.rows(),
                  std::vector<Scalar>(m.cols(), Scalar::zero(m.field())));
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (const LinMap::Entry& e : m.column(j)) out[e.row][j] = e.value;
  return out;
}

// Gauss-Jordan on [A | rhs] with the first nonzero entry as pivot; exact
// arithmetic needs no magnitude pivoting and keeps the run deterministic.
// Returns the pivot column of each row (rank = pivots.size()).
std::vector<std::size_t> row_reduce(DenseMatrix& m, std::size_t lhs_cols) {
  const std::size_t rows = m.size();
  std::vector<std::size_t> pivot_cols;
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < lhs_cols && pivot_row < rows; ++col) {
    std::size_t sel = rows;
    for (std::size_t r = pivot_row; r < rows; ++r) {
      if (!m[r][col].is_zero()) {
        sel = r;
        break;
      }
    }
    if (sel == rows) continue;
    std::swap(m[pivot_row], m[sel]);
    Scalar inv = m[pivot_row][col].inverse();
    for (std::size_t c = col; c < m[pivot_row].size(); ++c)
      m[pivot_row][c] = m[pivot_row][c] * inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == pivot_row || m[r][col].is_zero()) continue;
      Scalar factor = m[r][col];
      for (std::size_t c = col; c < m[r].size(); ++c)
        m[r][c] = m[r][c] - factor * m[pivot_row][c];
    }
    pivot_cols.push_back(col);
    ++pivot_row;
  }
  return pivot_cols;
}

} // namespace

LinMap LinMap::invert() const {
  if (rows_ != cols_)
    fail(ErrorCode::not_invertible,
         "cannot invert a " + std::to_string(rows_) + "x" +
             std::to_string(cols_) + " map");
  const std::size_t n = rows_;
  DenseMatrix aug = to_dense(*this);
  for (std::size_t r = 0; r < n; ++r) {
    aug[r].resize(2 * n, Scalar::zero(field_));
    aug[r][n + r] = Scalar::one(field_);
  }
  std::vector<std::size_t> pivots = row_reduce(aug, n);
  if (pivots.size() < n)
    fail(ErrorCode::not_invertible,
         "singular map: rank " + std::to_string(pivots.size()) + " of " +
             std::to_string(n));
  LinMap out(field_, cod_factors_, dom_factors_);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (!aug[r][n + c].is_zero()) out.columns_[c].push_back({r, aug[r][n + c]});
  return out;
}

std::optional<std::vector<Scalar>> try_solve_linear(const LinMap& A,
                                                    const std::vector<Scalar>& b) {
  if (b.size() != A.rows())
    fail(ErrorCode::invalid_argument, "right-hand side length mismatch");
  DenseMatrix aug = to_dense(A);
  for (std::size_t r = 0; r < A.rows(); ++r) aug[r].push_back(b[r]);
  std::vector<std::size_t> pivots = row_reduce(aug, A.cols());
  for (std::size_t r = pivots.size(); r < A.rows(); ++r)
    if (!aug[r][A.cols()].is_zero()) return std::nullopt;
  std::vector<Scalar> x(A.cols(), Scalar::zero(A.field()));
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug[r][A.cols()];
  return x;
}

std::vector<Scalar> solve_linear(const LinMap& A, const std::vector<Scalar>& b) {
  auto x = try_solve_linear(A, b);
  if (!x) fail(ErrorCode::inconsistent_system, "linear system has no solution");
  return *x;
}

LinMap LinMap::with_factors(std::vector<std::size_t> dom,
                            std::vector<std::size_t> cod) const {
  if (product_of(dom) != cols_ || product_of(cod) != rows_)
    fail(ErrorCode::invalid_argument, "factor relabeling changes total dimension");
  LinMap out(field_, std::move(dom), std::move(cod));
  out.columns_ = columns_;
  return out;
}

// ---------------------------------------------------------------------------
// Wiring

Wiring::Wiring(FieldSpec field, std::vector<std::size_t> input_dims)
    : map_(LinMap::identity(field, std::move(input_dims))) {}

Wiring& Wiring::then(const LinMap& f) {
  map_ = compose(f, map_);
  return *this;
}

Wiring& Wiring::then_at(std::size_t slot, const LinMap& f, std::size_t consumed) {
  const std::vector<std::size_t>& dims = map_.cod_factors();
  if (slot + consumed > dims.size())
    fail(ErrorCode::invalid_argument, "wiring slot out of range");
  std::size_t consumed_dim = 1;
  for (std::size_t i = 0; i < consumed; ++i) consumed_dim *= dims[slot + i];
  if (consumed_dim != product_of(f.dom_factors()))
    fail(ErrorCode::invalid_argument, "wiring map does not fit the slots");

  LinMap step = f;
  if (slot > 0) {
    std::vector<std::size_t> left(dims.begin(), dims.begin() + slot);
    step = tensor(LinMap::identity(map_.field(), std::move(left)), step);
  }
  if (slot + consumed < dims.size()) {
    std::vector<std::size_t> right(dims.begin() + slot + consumed, dims.end());
    step = tensor(step, LinMap::identity(map_.field(), std::move(right)));
  }
  map_ = compose(step, map_);
  return *this;
}

Wiring& Wiring::permute(const std::vector<std::size_t>& src_of_dst) {
  map_ = compose(
      LinMap::permute_factors(map_.field(), map_.cod_factors(), src_of_dst), map_);
  return *this;
}

} // namespace twistlab
