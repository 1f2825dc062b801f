#pragma once

#include <algorithm>
#include <cassert>
#include <optional>
#include <utility>
#include <vector>

#include "thinlie/field.hpp"

namespace thinlie {

template <field F>
using Vec = std::vector<typename F::Elem>;

/// Dense row-major matrix over an exact field.
template <field F>
struct Matrix {
  using Elem = typename F::Elem;
  int rows = 0;
  int cols = 0;
  std::vector<Elem> a;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}

  Elem& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  const Elem& at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

  Vec<F> row(int i) const {
    return Vec<F>(a.begin() + static_cast<std::size_t>(i) * cols,
                  a.begin() + static_cast<std::size_t>(i + 1) * cols);
  }
  void set_row(int i, const Vec<F>& v) {
    assert(static_cast<int>(v.size()) == cols);
    std::copy(v.begin(), v.end(), a.begin() + static_cast<std::size_t>(i) * cols);
  }

  static Matrix identity(const F& f, int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = f.one();
    return m;
  }

  bool operator==(const Matrix&) const = default;
};

template <field F>
bool is_zero_vec(const F& f, const Vec<F>& v) {
  return std::all_of(v.begin(), v.end(), [&](const auto& e) { return f.is_zero(e); });
}

template <field F>
Vec<F> apply(const F& f, const Matrix<F>& m, const Vec<F>& v) {
  assert(static_cast<int>(v.size()) == m.cols);
  Vec<F> out(m.rows, f.zero());
  for (int i = 0; i < m.rows; ++i) {
    auto acc = f.zero();
    for (int j = 0; j < m.cols; ++j)
      if (!f.is_zero(v[j])) acc = f.add(acc, f.mul(m.at(i, j), v[j]));
    out[i] = acc;
  }
  return out;
}

template <field F>
Matrix<F> mat_mul(const F& f, const Matrix<F>& a, const Matrix<F>& b) {
  assert(a.cols == b.rows);
  Matrix<F> c(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      const auto& aik = a.at(i, k);
      if (f.is_zero(aik)) continue;
      for (int j = 0; j < b.cols; ++j)
        c.at(i, j) = f.add(c.at(i, j), f.mul(aik, b.at(k, j)));
    }
  return c;
}

template <field F>
Vec<F> vec_add(const F& f, const Vec<F>& a, const Vec<F>& b) {
  assert(a.size() == b.size());
  Vec<F> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.add(a[i], b[i]);
  return r;
}

template <field F>
Vec<F> vec_scale(const F& f, const typename F::Elem& c, const Vec<F>& v) {
  Vec<F> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = f.mul(c, v[i]);
  return r;
}

/// Reduced row echelon form; returns the canonical matrix and its rank.
/// The result has leading ones, cleared pivot columns, zero rows last.
template <field F>
std::pair<Matrix<F>, int> rref(const F& f, Matrix<F> m) {
  int rank = 0;
  for (int col = 0; col < m.cols && rank < m.rows; ++col) {
    int piv = -1;
    for (int r = rank; r < m.rows; ++r)
      if (!f.is_zero(m.at(r, col))) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    if (piv != rank)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(rank, j));
    auto s = f.inv(m.at(rank, col));
    for (int j = col; j < m.cols; ++j) m.at(rank, j) = f.mul(s, m.at(rank, j));
    for (int r = 0; r < m.rows; ++r) {
      if (r == rank) continue;
      const auto c = m.at(r, col);
      if (f.is_zero(c)) continue;
      for (int j = col; j < m.cols; ++j) m.at(r, j) = f.sub(m.at(r, j), f.mul(c, m.at(rank, j)));
    }
    ++rank;
  }
  return {std::move(m), rank};
}

/// A subspace of the coordinate row space F^width held as a reduced
/// row-echelon basis: pivots strictly increasing, pivot entries 1, pivot
/// columns cleared in all other rows. Canonical per subspace, so equality
/// of subspaces is equality of representations.
template <field F>
class RowSpace {
 public:
  using Elem = typename F::Elem;

  RowSpace(const F& f, int width) : fld_(f), width_(width) {}

  int width() const { return width_; }
  int dim() const { return static_cast<int>(rows_.size()); }
  const std::vector<Vec<F>>& rows() const { return rows_; }
  const std::vector<int>& pivots() const { return pivots_; }
  const F& fld() const { return fld_; }

  /// Residue of v modulo the subspace: pivot coordinates eliminated.
  Vec<F> reduce(Vec<F> v) const {
    assert(static_cast<int>(v.size()) == width_);
    std::size_t budget = fld_.axpy_headroom();
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      Elem c = fld_.canon(v[pivots_[r]]);
      if (fld_.is_zero(c)) {
        v[pivots_[r]] = c;
        continue;
      }
      fld_.axpy_nored(v.data() + pivots_[r], rows_[r].data() + pivots_[r], fld_.neg(c),
                      static_cast<std::size_t>(width_ - pivots_[r]));
      if (--budget == 0) {
        fld_.canonicalize_row(v.data(), v.size());
        budget = fld_.axpy_headroom();
      }
    }
    fld_.canonicalize_row(v.data(), v.size());
    return v;
  }

  bool contains(const Vec<F>& v) const { return is_zero_vec(fld_, reduce(v)); }

  /// Insert a vector; returns true when the dimension grew.
  bool insert(Vec<F> v) {
    v = reduce(std::move(v));
    int lead = -1;
    for (int j = 0; j < width_; ++j)
      if (!fld_.is_zero(v[j])) {
        lead = j;
        break;
      }
    if (lead < 0) return false;
    auto s = fld_.inv(v[lead]);
    for (int j = lead; j < width_; ++j) v[j] = fld_.mul(s, v[j]);
    // clear the new pivot column in existing rows
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Elem c = rows_[r][lead];
      if (fld_.is_zero(c)) continue;
      auto& row = rows_[r];
      for (int j = lead; j < width_; ++j) row[j] = fld_.sub(row[j], fld_.mul(c, v[j]));
    }
    auto pos = std::upper_bound(pivots_.begin(), pivots_.end(), lead) - pivots_.begin();
    pivots_.insert(pivots_.begin() + pos, lead);
    rows_.insert(rows_.begin() + pos, std::move(v));
    return true;
  }

  void insert_rows(const Matrix<F>& m) {
    assert(m.cols == width_);
    for (int i = 0; i < m.rows; ++i) insert(m.row(i));
  }

  Matrix<F> basis_matrix() const {
    Matrix<F> m(dim(), width_);
    for (int i = 0; i < dim(); ++i) m.set_row(i, rows_[i]);
    return m;
  }

  bool operator==(const RowSpace& o) const {
    return width_ == o.width_ && pivots_ == o.pivots_ && rows_ == o.rows_;
  }

 private:
  F fld_;
  int width_;
  std::vector<Vec<F>> rows_;
  std::vector<int> pivots_;
};

/// Exact basis of the right kernel {v : m v = 0}.
template <field F>
RowSpace<F> nullspace(const F& f, const Matrix<F>& m) {
  auto [r, rank] = rref(f, m);
  std::vector<int> pivot_col(rank);
  std::vector<bool> is_pivot(m.cols, false);
  for (int i = 0; i < rank; ++i) {
    int j = 0;
    while (f.is_zero(r.at(i, j))) ++j;
    pivot_col[i] = j;
    is_pivot[j] = true;
  }
  RowSpace<F> ker(f, m.cols);
  for (int j = 0; j < m.cols; ++j) {
    if (is_pivot[j]) continue;
    Vec<F> v(m.cols, f.zero());
    v[j] = f.one();
    for (int i = 0; i < rank; ++i) v[pivot_col[i]] = f.neg(r.at(i, j));
    ker.insert(std::move(v));
  }
  return ker;
}

/// Solve m x = b; returns one solution or nullopt when inconsistent.
template <field F>
std::optional<Vec<F>> solve(const F& f, const Matrix<F>& m, const Vec<F>& b) {
  assert(static_cast<int>(b.size()) == m.rows);
  Matrix<F> aug(m.rows, m.cols + 1);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols) = b[i];
  }
  auto [r, rank] = rref(f, std::move(aug));
  Vec<F> x(m.cols, f.zero());
  for (int i = 0; i < rank; ++i) {
    int j = 0;
    while (j <= m.cols && f.is_zero(r.at(i, j))) ++j;
    if (j == m.cols) return std::nullopt;  // 0 = 1 row
    x[j] = r.at(i, m.cols);
  }
  return x;
}

/// All points of the projective space P(GF(p)^dim), each normalized so its
/// first nonzero coordinate is 1; lexicographic order, deterministic.
inline std::vector<Vec<Gf>> enumerate_projective(const Gf& f, int dim) {
  std::vector<Vec<Gf>> out;
  const std::int64_t p = f.characteristic();
  for (int lead = 0; lead < dim; ++lead) {
    // first nonzero coordinate at position `lead`
    std::vector<std::int64_t> tail(dim - lead - 1, 0);
    while (true) {
      Vec<Gf> v(dim, 0);
      v[lead] = 1;
      for (int i = 0; i < dim - lead - 1; ++i) v[lead + 1 + i] = tail[i];
      out.push_back(std::move(v));
      int i = dim - lead - 2;
      while (i >= 0 && tail[i] == p - 1) tail[i--] = 0;
      if (i < 0) break;
      ++tail[i];
    }
  }
  return out;
}

/// All r-dimensional subspaces of GF(p)^dim as reduced-echelon basis
/// matrices, ordered by (pivot set, entries); deterministic.
inline std::vector<Matrix<Gf>> enumerate_subspaces(const Gf& f, int dim, int r) {
  std::vector<Matrix<Gf>> out;
  if (r < 0 || r > dim) return out;
  if (r == 0) {
    out.emplace_back(0, dim);
    return out;
  }
  const std::int64_t p = f.characteristic();
  std::vector<int> piv(r);
  for (int i = 0; i < r; ++i) piv[i] = i;
  auto next_combo = [&]() {
    int i = r - 1;
    while (i >= 0 && piv[i] == dim - r + i) --i;
    if (i < 0) return false;
    ++piv[i];
    for (int j = i + 1; j < r; ++j) piv[j] = piv[j - 1] + 1;
    return true;
  };
  do {
    // free entries: row i may be nonzero at columns > piv[i] that are not pivots
    std::vector<std::pair<int, int>> slots;
    std::vector<bool> is_piv(dim, false);
    for (int i = 0; i < r; ++i) is_piv[piv[i]] = true;
    for (int i = 0; i < r; ++i)
      for (int j = piv[i] + 1; j < dim; ++j)
        if (!is_piv[j]) slots.emplace_back(i, j);
    std::vector<std::int64_t> vals(slots.size(), 0);
    while (true) {
      Matrix<Gf> m(r, dim);
      for (int i = 0; i < r; ++i) m.at(i, piv[i]) = 1;
      for (std::size_t s = 0; s < slots.size(); ++s) m.at(slots[s].first, slots[s].second) = vals[s];
      out.push_back(std::move(m));
      int i = static_cast<int>(vals.size()) - 1;
      while (i >= 0 && vals[i] == p - 1) vals[i--] = 0;
      if (i < 0) break;
      ++vals[i];
    }
  } while (next_combo());
  return out;
}

}  // namespace thinlie
