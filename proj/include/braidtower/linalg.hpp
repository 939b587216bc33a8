#pragma once

// Exact dense linear algebra.  The canonical form of a subspace is the
// reduced row echelon basis for a fixed column order; with the same pivot
// side, two subspaces are equal iff their canonical bases are equal arrays.
// PivotSide::left takes each pivot at the first nonzero column (the usual
// textbook form), PivotSide::right at the last one, which is what the tensor
// machinery uses so that reduction only ever eliminates the largest word.

#include "scalar.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace braidtower {

template <Scalar K>
class DenseMatrix {
  size_t rows_ = 0, cols_ = 0;
  std::vector<K> a_;

public:
  DenseMatrix() = default;
  DenseMatrix(size_t r, size_t c) : rows_(r), cols_(c), a_(r * c) {}

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  K& at(size_t i, size_t j) { return a_[i * cols_ + j]; }
  const K& at(size_t i, size_t j) const { return a_[i * cols_ + j]; }

  static DenseMatrix identity(size_t n) {
    DenseMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = K(1);
    return m;
  }

  std::vector<K> row(size_t i) const {
    return std::vector<K>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
  }
  void set_row(size_t i, const std::vector<K>& v) {
    for (size_t j = 0; j < cols_; ++j) at(i, j) = v[j];
  }

  bool is_zero() const {
    for (auto& x : a_)
      if (!x.is_zero()) return false;
    return true;
  }

  DenseMatrix operator*(const DenseMatrix& o) const {
    if (cols_ != o.rows_) throw std::logic_error("shape mismatch in matrix product");
    DenseMatrix r(rows_, o.cols_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t k = 0; k < cols_; ++k) {
        const K& x = at(i, k);
        if (x.is_zero()) continue;
        for (size_t j = 0; j < o.cols_; ++j) r.at(i, j) += x * o.at(k, j);
      }
    return r;
  }
  DenseMatrix operator+(const DenseMatrix& o) const {
    DenseMatrix r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
  }
  DenseMatrix operator-(const DenseMatrix& o) const {
    DenseMatrix r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
  }
  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }
};

enum class PivotSide { left, right };

template <Scalar K>
struct SubspaceBasis {
  size_t ambient = 0;
  PivotSide side = PivotSide::left;
  DenseMatrix<K> mat;            // canonical rows, sorted by pivot column
  std::vector<size_t> pivots;    // strictly increasing

  size_t dim() const { return mat.rows(); }

  // residue of v modulo the row space; zero iff v is a member
  std::vector<K> reduce(std::vector<K> v) const {
    for (size_t r = 0; r < mat.rows(); ++r) {
      K c = v[pivots[r]];
      if (c.is_zero()) continue;
      for (size_t j = 0; j < ambient; ++j) v[j] = v[j] - c * mat.at(r, j);
    }
    return v;
  }

  bool contains(const std::vector<K>& v) const {
    for (auto& x : reduce(v))
      if (!x.is_zero()) return false;
    return true;
  }

  // coordinates of a member vector in the canonical basis
  std::vector<K> coordinates(const std::vector<K>& v) const {
    std::vector<K> coords(mat.rows());
    std::vector<K> w = v;
    for (size_t r = 0; r < mat.rows(); ++r) {
      K c = w[pivots[r]];
      coords[r] = c;
      if (c.is_zero()) continue;
      for (size_t j = 0; j < ambient; ++j) w[j] = w[j] - c * mat.at(r, j);
    }
    for (auto& x : w)
      if (!x.is_zero()) throw std::domain_error("vector outside subspace");
    return coords;
  }

  friend bool operator==(const SubspaceBasis& a, const SubspaceBasis& b) {
    return a.ambient == b.ambient && a.side == b.side && a.mat == b.mat;
  }
};

// Reduced row echelon form of the row space.  Zero rows are dropped and the
// surviving rows are sorted by pivot column.
template <Scalar K>
SubspaceBasis<K> rref(const DenseMatrix<K>& m, PivotSide side = PivotSide::left) {
  size_t nr = m.rows(), nc = m.cols();
  std::vector<std::vector<K>> rows;
  rows.reserve(nr);
  for (size_t i = 0; i < nr; ++i) rows.push_back(m.row(i));

  std::vector<size_t> pivot_of_row;
  size_t lead = 0;
  for (size_t cc = 0; cc < nc && lead < rows.size(); ++cc) {
    size_t col = side == PivotSide::left ? cc : nc - 1 - cc;
    size_t sel = lead;
    while (sel < rows.size() && rows[sel][col].is_zero()) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[lead], rows[sel]);
    K inv = K(1) / rows[lead][col];
    for (size_t j = 0; j < nc; ++j) rows[lead][j] = rows[lead][j] * inv;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == lead) continue;
      K c = rows[i][col];
      if (c.is_zero()) continue;
      for (size_t j = 0; j < nc; ++j) rows[i][j] = rows[i][j] - c * rows[lead][j];
    }
    pivot_of_row.push_back(col);
    ++lead;
  }

  // sort by pivot column so equal subspaces give equal arrays
  std::vector<size_t> order(pivot_of_row.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (size_t i = 0; i < order.size(); ++i)
    for (size_t j = i + 1; j < order.size(); ++j)
      if (pivot_of_row[order[j]] < pivot_of_row[order[i]]) std::swap(order[i], order[j]);

  SubspaceBasis<K> out;
  out.ambient = nc;
  out.side = side;
  out.mat = DenseMatrix<K>(pivot_of_row.size(), nc);
  for (size_t i = 0; i < order.size(); ++i) {
    out.mat.set_row(i, rows[order[i]]);
    out.pivots.push_back(pivot_of_row[order[i]]);
  }
  return out;
}

template <Scalar K>
SubspaceBasis<K> subspace_from_vectors(const std::vector<std::vector<K>>& vecs, size_t ambient,
                                       PivotSide side = PivotSide::left) {
  DenseMatrix<K> m(vecs.size(), ambient);
  for (size_t i = 0; i < vecs.size(); ++i) m.set_row(i, vecs[i]);
  return rref(m, side);
}

// Basis of { x : m x = 0 }, canonicalized with the requested pivot side.
template <Scalar K>
SubspaceBasis<K> kernel_basis(const DenseMatrix<K>& m, PivotSide side = PivotSide::left) {
  SubspaceBasis<K> r = rref(m, PivotSide::left);
  size_t nc = m.cols();
  std::vector<bool> is_pivot(nc, false);
  for (size_t p : r.pivots) is_pivot[p] = true;

  std::vector<std::vector<K>> null_vecs;
  for (size_t j = 0; j < nc; ++j) {
    if (is_pivot[j]) continue;
    std::vector<K> v(nc);
    v[j] = K(1);
    for (size_t i = 0; i < r.mat.rows(); ++i) v[r.pivots[i]] = -r.mat.at(i, j);
    null_vecs.push_back(std::move(v));
  }
  return subspace_from_vectors(null_vecs, nc, side);
}

template <Scalar K>
bool membership(const std::vector<K>& v, const SubspaceBasis<K>& s) {
  return s.contains(v);
}

template <Scalar K>
SubspaceBasis<K> sum(const SubspaceBasis<K>& a, const SubspaceBasis<K>& b) {
  if (a.ambient != b.ambient) throw std::logic_error("ambient mismatch");
  DenseMatrix<K> m(a.dim() + b.dim(), a.ambient);
  for (size_t i = 0; i < a.dim(); ++i) m.set_row(i, a.mat.row(i));
  for (size_t i = 0; i < b.dim(); ++i) m.set_row(a.dim() + i, b.mat.row(i));
  return rref(m, a.side);
}

template <Scalar K>
SubspaceBasis<K> intersect(const SubspaceBasis<K>& a, const SubspaceBasis<K>& b) {
  if (a.ambient != b.ambient) throw std::logic_error("ambient mismatch");
  // columns of m are the basis vectors of a then b; kernel elements (l, u)
  // satisfy sum l_i a_i = -sum u_j b_j, an element of the intersection
  DenseMatrix<K> m(a.ambient, a.dim() + b.dim());
  for (size_t i = 0; i < a.dim(); ++i)
    for (size_t j = 0; j < a.ambient; ++j) m.at(j, i) = a.mat.at(i, j);
  for (size_t i = 0; i < b.dim(); ++i)
    for (size_t j = 0; j < a.ambient; ++j) m.at(j, a.dim() + i) = b.mat.at(i, j);
  SubspaceBasis<K> ker = kernel_basis(m);
  std::vector<std::vector<K>> vecs;
  for (size_t r = 0; r < ker.dim(); ++r) {
    std::vector<K> v(a.ambient);
    for (size_t i = 0; i < a.dim(); ++i) {
      K c = ker.mat.at(r, i);
      if (c.is_zero()) continue;
      for (size_t j = 0; j < a.ambient; ++j) v[j] += c * a.mat.at(i, j);
    }
    vecs.push_back(std::move(v));
  }
  return subspace_from_vectors(vecs, a.ambient, a.side);
}

}  // namespace braidtower
