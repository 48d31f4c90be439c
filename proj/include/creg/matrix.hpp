#pragma once

// Dense exact linear algebra over a creg field: row reduction with pivots
// chosen by lowest column index, rank, canonical kernels, span membership,
// and incremental subspaces. Graded pieces at desk scale are at most a few
// thousand coordinates, so everything here is dense.

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace creg {

/// Dense matrices beyond this many entries are refused with CapExhausted.
inline constexpr std::size_t kMaxDenseEntries = 25'000'000;

template <class F>
using Vec = std::vector<typename F::Elem>;

template <class F>
class DenseMatrix {
 public:
  using Elem = typename F::Elem;

  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, const F& field)
      : rows_(rows), cols_(cols), data_(rows * cols, field.zero()) {}

  static DenseMatrix identity(const F& field, std::size_t n) {
    DenseMatrix m(n, n, field);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }

  static DenseMatrix from_rows(const F& field, std::size_t cols, const std::vector<Vec<F>>& rows) {
    DenseMatrix m(rows.size(), cols, field);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      assert(rows[r].size() == cols);
      std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
    }
    return m;
  }

  static DenseMatrix from_columns(const F& field, std::size_t rows, const std::vector<Vec<F>>& cols) {
    DenseMatrix m(rows, cols.size(), field);
    for (std::size_t c = 0; c < cols.size(); ++c) {
      assert(cols[c].size() == rows);
      for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Elem& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Elem& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Elem> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Elem> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  Vec<F> column(std::size_t c) const {
    Vec<F> v;
    v.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v.push_back((*this)(r, c));
    return v;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }

  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

/// Reduces m in place to reduced row echelon form and returns the pivot
/// columns. Pivots are taken at the lowest available column index and, within
/// a column, at the first nonzero row, so the result is deterministic.
template <class F>
std::vector<std::size_t> row_reduce(const F& field, DenseMatrix<F>& m, bool reduced = true) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t sel = r;
    while (sel < m.rows() && field.is_zero(m(sel, c))) ++sel;
    if (sel == m.rows()) continue;
    m.swap_rows(r, sel);
    auto pivot_row = m.row(r);
    if (!field.is_one(pivot_row[c])) {
      auto inv = field.inv(pivot_row[c]);
      for (std::size_t k = c; k < m.cols(); ++k) pivot_row[k] = field.mul(pivot_row[k], inv);
    }
    for (std::size_t i = reduced ? 0 : r + 1; i < m.rows(); ++i) {
      if (i == r || field.is_zero(m(i, c))) continue;
      auto target = m.row(i);
      auto factor = target[c];
      for (std::size_t k = c; k < m.cols(); ++k)
        if (!field.is_zero(pivot_row[k])) field.sub_mul(target[k], factor, pivot_row[k]);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class F>
std::size_t rank(const F& field, DenseMatrix<F> m) {
  return row_reduce(field, m, /*reduced=*/false).size();
}

/// Basis of the right kernel, one column per non-pivot column f of the RREF:
/// the vector with 1 at f, zero at every other free column, and the negated
/// RREF entries at the pivot columns. Read from the last coordinate backwards
/// this is the reduced echelon form of the kernel, so it depends only on the
/// kernel itself.
template <class F>
DenseMatrix<F> kernel_basis(const F& field, const DenseMatrix<F>& m) {
  DenseMatrix<F> work = m;
  auto pivots = row_reduce(field, work);
  std::vector<std::size_t> free_cols;
  std::size_t next = 0;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (next < pivots.size() && pivots[next] == c) {
      ++next;
      continue;
    }
    free_cols.push_back(c);
  }
  DenseMatrix<F> ker(m.cols(), free_cols.size(), field);
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    ker(free_cols[k], k) = field.one();
    for (std::size_t i = 0; i < pivots.size(); ++i) ker(pivots[i], k) = field.neg(work(i, free_cols[k]));
  }
  return ker;
}

template <class F>
DenseMatrix<F> multiply(const F& field, const DenseMatrix<F>& a, const DenseMatrix<F>& b) {
  assert(a.cols() == b.rows());
  DenseMatrix<F> out(a.rows(), b.cols(), field);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const auto& aik = a(i, k);
      if (field.is_zero(aik)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (!field.is_zero(b(k, j))) out(i, j) = field.add(out(i, j), field.mul(aik, b(k, j)));
    }
  return out;
}

template <class F>
Vec<F> apply(const F& field, const DenseMatrix<F>& a, std::span<const typename F::Elem> v) {
  assert(a.cols() == v.size());
  Vec<F> out(a.rows(), field.zero());
  for (std::size_t k = 0; k < a.cols(); ++k) {
    if (field.is_zero(v[k])) continue;
    for (std::size_t i = 0; i < a.rows(); ++i)
      if (!field.is_zero(a(i, k))) out[i] = field.add(out[i], field.mul(a(i, k), v[k]));
  }
  return out;
}

template <class F>
bool is_zero_matrix(const F& field, const DenseMatrix<F>& m) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (const auto& e : m.row(r))
      if (!field.is_zero(e)) return false;
  return true;
}

template <class F>
bool is_zero_vector(const F& field, std::span<const typename F::Elem> v) {
  return std::all_of(v.begin(), v.end(), [&](const auto& e) { return field.is_zero(e); });
}

/// Coefficients expressing target in the span of the columns of basis, or
/// nullopt when target is not in the span. Free variables are set to zero.
template <class F>
std::optional<Vec<F>> solve_in_span(const F& field, const DenseMatrix<F>& basis,
                                    std::span<const typename F::Elem> target) {
  assert(basis.rows() == target.size());
  DenseMatrix<F> aug(basis.rows(), basis.cols() + 1, field);
  for (std::size_t r = 0; r < basis.rows(); ++r) {
    for (std::size_t c = 0; c < basis.cols(); ++c) aug(r, c) = basis(r, c);
    aug(r, basis.cols()) = target[r];
  }
  auto pivots = row_reduce(field, aug);
  if (!pivots.empty() && pivots.back() == basis.cols()) return std::nullopt;
  Vec<F> coeffs(basis.cols(), field.zero());
  for (std::size_t i = 0; i < pivots.size(); ++i) coeffs[pivots[i]] = aug(i, basis.cols());
  return coeffs;
}

/// A subspace of F^n kept as echelon rows (each row normalized to 1 at its
/// pivot and zero before it). Supports incremental insertion, reduction to a
/// canonical residue, and quotient coordinates at the non-pivot positions.
template <class F>
class Subspace {
 public:
  using Elem = typename F::Elem;

  Subspace() = default;
  Subspace(const F& field, std::size_t ambient_dim)
      : field_(field), n_(ambient_dim), pivot_row_(ambient_dim, -1) {}

  std::size_t ambient_dim() const { return n_; }
  std::size_t dim() const { return rows_.size(); }
  bool is_full() const { return rows_.size() == n_; }

  /// Rows ordered by increasing pivot column.
  const std::vector<Vec<F>>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  bool is_pivot(std::size_t pos) const { return pivot_row_[pos] >= 0; }

  /// Removes every pivot coordinate from v. The residue is unique for the
  /// coset v + U.
  void reduce_in_place(Vec<F>& v) const {
    assert(v.size() == n_);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const std::size_t p = pivots_[i];
      if (field_.is_zero(v[p])) continue;
      Elem factor = v[p];
      const auto& row = rows_[i];
      for (std::size_t k = p; k < n_; ++k)
        if (!field_.is_zero(row[k])) field_.sub_mul(v[k], factor, row[k]);
    }
  }

  Vec<F> reduce(Vec<F> v) const {
    reduce_in_place(v);
    return v;
  }

  bool contains(Vec<F> v) const {
    reduce_in_place(v);
    return is_zero_vector(field_, std::span<const Elem>(v));
  }

  /// Inserts v; returns true when the dimension grows.
  bool insert(Vec<F> v) {
    reduce_in_place(v);
    std::size_t p = 0;
    while (p < n_ && field_.is_zero(v[p])) ++p;
    if (p == n_) return false;
    if (!field_.is_one(v[p])) {
      auto inv = field_.inv(v[p]);
      for (std::size_t k = p; k < n_; ++k) v[k] = field_.mul(v[k], inv);
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p) - pivots_.begin();
    rows_.insert(rows_.begin() + pos, std::move(v));
    pivots_.insert(pivots_.begin() + pos, p);
    for (std::size_t i = static_cast<std::size_t>(pos); i < pivots_.size(); ++i)
      pivot_row_[pivots_[i]] = static_cast<int>(i);
    reduced_ = false;
    return true;
  }

  /// Back-substitutes so that every row vanishes at every other pivot.
  void make_reduced() {
    if (reduced_) return;
    for (std::size_t i = rows_.size(); i-- > 0;) {
      for (std::size_t j = 0; j < i; ++j) {
        auto& upper = rows_[j];
        const std::size_t p = pivots_[i];
        if (field_.is_zero(upper[p])) continue;
        Elem factor = upper[p];
        for (std::size_t k = p; k < n_; ++k)
          if (!field_.is_zero(rows_[i][k])) field_.sub_mul(upper[k], factor, rows_[i][k]);
      }
    }
    reduced_ = true;
  }

  /// Positions that are not pivots, ascending: a basis of the quotient.
  std::vector<std::size_t> free_positions() const {
    std::vector<std::size_t> out;
    out.reserve(n_ - rows_.size());
    for (std::size_t k = 0; k < n_; ++k)
      if (pivot_row_[k] < 0) out.push_back(k);
    return out;
  }

  /// Row whose pivot is at pos (requires is_pivot(pos)).
  const Vec<F>& row_at_pivot(std::size_t pos) const { return rows_[pivot_row_[pos]]; }

 private:
  F field_{};
  std::size_t n_ = 0;
  std::vector<Vec<F>> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<int> pivot_row_;
  bool reduced_ = true;
};

/// Coordinates with respect to a fixed list of linearly independent vectors.
template <class F>
class SpanCoordinates {
 public:
  using Elem = typename F::Elem;

  SpanCoordinates() = default;
  SpanCoordinates(const F& field, std::size_t ambient_dim, const std::vector<Vec<F>>& vectors)
      : field_(field), n_(ambient_dim), k_(vectors.size()) {
    DenseMatrix<F> aug(k_, n_ + k_, field);
    for (std::size_t i = 0; i < k_; ++i) {
      for (std::size_t c = 0; c < n_; ++c) aug(i, c) = vectors[i][c];
      aug(i, n_ + i) = field.one();
    }
    auto pivots = row_reduce(field, aug);
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      if (pivots[i] >= n_) break;
      pivots_.push_back(pivots[i]);
    }
    assert(pivots_.size() == k_ && "vectors must be independent");
    echelon_ = DenseMatrix<F>(k_, n_, field);
    transform_ = DenseMatrix<F>(k_, k_, field);
    for (std::size_t i = 0; i < k_; ++i) {
      for (std::size_t c = 0; c < n_; ++c) echelon_(i, c) = aug(i, c);
      for (std::size_t c = 0; c < k_; ++c) transform_(i, c) = aug(i, n_ + c);
    }
  }

  std::size_t size() const { return k_; }

  std::optional<Vec<F>> coords(std::span<const Elem> v) const {
    assert(v.size() == n_);
    Vec<F> residual(v.begin(), v.end());
    Vec<F> out(k_, field_.zero());
    for (std::size_t i = 0; i < k_; ++i) {
      Elem a = residual[pivots_[i]];
      if (field_.is_zero(a)) continue;
      for (std::size_t c = 0; c < n_; ++c)
        if (!field_.is_zero(echelon_(i, c))) field_.sub_mul(residual[c], a, echelon_(i, c));
      for (std::size_t c = 0; c < k_; ++c)
        if (!field_.is_zero(transform_(i, c))) out[c] = field_.add(out[c], field_.mul(a, transform_(i, c)));
    }
    if (!is_zero_vector(field_, std::span<const Elem>(residual))) return std::nullopt;
    return out;
  }

 private:
  F field_{};
  std::size_t n_ = 0;
  std::size_t k_ = 0;
  std::vector<std::size_t> pivots_;
  DenseMatrix<F> echelon_;
  DenseMatrix<F> transform_;
};

}  // namespace creg
