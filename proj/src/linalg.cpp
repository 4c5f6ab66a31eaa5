#include "hopfad/linalg.hpp"

#include <algorithm>

namespace hopfad {

bool exact_equal(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

bool is_zero_matrix(const Mat& a) {
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (!a(i, j).is_zero()) return false;
  return true;
}

Echelon row_reduce(const Mat& m) {
  Mat a = m;
  const Eigen::Index rows = a.rows(), cols = a.cols();
  std::vector<Eigen::Index> pivots;
  Eigen::Index rank = 0;
  for (Eigen::Index c = 0; c < cols && rank < rows; ++c) {
    Eigen::Index pr = -1;
    for (Eigen::Index r = rank; r < rows; ++r) {
      if (!a(r, c).is_zero()) {
        pr = r;
        break;
      }
    }
    if (pr < 0) continue;
    if (pr != rank) a.row(pr).swap(a.row(rank));
    Scalar inv = a(rank, c).inverse();
    for (Eigen::Index j = c; j < cols; ++j) a(rank, j) *= inv;
    for (Eigen::Index r = 0; r < rows; ++r) {
      if (r == rank || a(r, c).is_zero()) continue;
      Scalar f = a(r, c);
      for (Eigen::Index j = c; j < cols; ++j) a(r, j) -= f * a(rank, j);
    }
    pivots.push_back(c);
    ++rank;
  }
  Echelon e;
  e.rows = a.topRows(rank);
  e.pivots = std::move(pivots);
  return e;
}

Mat kernel(const Mat& m) {
  Echelon e = row_reduce(m);
  const Eigen::Index cols = m.cols();
  std::vector<Eigen::Index> free_cols;
  {
    size_t pi = 0;
    for (Eigen::Index c = 0; c < cols; ++c) {
      if (pi < e.pivots.size() && e.pivots[pi] == c) {
        ++pi;
      } else {
        free_cols.push_back(c);
      }
    }
  }
  Mat k = Mat::Zero(cols, static_cast<Eigen::Index>(free_cols.size()));
  for (size_t t = 0; t < free_cols.size(); ++t) {
    Eigen::Index fc = free_cols[t];
    k(fc, static_cast<Eigen::Index>(t)) = Scalar(1);
    for (size_t r = 0; r < e.pivots.size(); ++r)
      k(e.pivots[r], static_cast<Eigen::Index>(t)) = -e.rows(static_cast<Eigen::Index>(r), fc);
  }
  return k;
}

std::optional<Vec> solve(const Mat& a, const Vec& b) {
  if (a.rows() != b.rows())
    throw DimensionMismatch("solve: matrix has " + std::to_string(a.rows()) +
                            " rows, vector has " + std::to_string(b.rows()));
  Mat aug(a.rows(), a.cols() + 1);
  aug.leftCols(a.cols()) = a;
  aug.col(a.cols()) = b;
  Echelon e = row_reduce(aug);
  Vec x = Vec::Zero(a.cols());
  for (size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] == a.cols()) return std::nullopt;  // 0 = 1 row
    x(e.pivots[r]) = e.rows(static_cast<Eigen::Index>(r), a.cols());
  }
  // pivots may leave free columns at zero; verify in case of inconsistency
  Vec check = a * x;
  for (Eigen::Index i = 0; i < b.rows(); ++i)
    if (check(i) != b(i)) return std::nullopt;
  return x;
}

Subspace Subspace::zero(Eigen::Index ambient) {
  Subspace s;
  s.ambient_ = ambient;
  s.basis_.rows = Mat(0, ambient);
  return s;
}

Subspace Subspace::full(Eigen::Index ambient) {
  Subspace s;
  s.ambient_ = ambient;
  s.basis_.rows = Mat::Zero(ambient, ambient);
  for (Eigen::Index i = 0; i < ambient; ++i) {
    s.basis_.rows(i, i) = Scalar(1);
    s.basis_.pivots.push_back(i);
  }
  return s;
}

Subspace Subspace::span_rows(const Mat& rows) {
  Subspace s;
  s.ambient_ = rows.cols();
  s.basis_ = row_reduce(rows);
  return s;
}

Subspace Subspace::span(const std::vector<Vec>& vs, Eigen::Index ambient) {
  Mat rows(static_cast<Eigen::Index>(vs.size()), ambient);
  for (size_t i = 0; i < vs.size(); ++i) {
    if (vs[i].rows() != ambient)
      throw DimensionMismatch("span: vector of length " + std::to_string(vs[i].rows()) +
                              " in ambient " + std::to_string(ambient));
    rows.row(static_cast<Eigen::Index>(i)) = vs[i].transpose();
  }
  return span_rows(rows);
}

std::optional<Vec> Subspace::coordinates(const Vec& v) const {
  if (v.rows() != ambient_)
    throw DimensionMismatch("coordinates: wrong ambient dimension");
  Vec c(dim());
  for (Eigen::Index r = 0; r < dim(); ++r) c(r) = v(basis_.pivots[r]);
  Vec rec = Vec::Zero(ambient_);
  for (Eigen::Index r = 0; r < dim(); ++r)
    if (!c(r).is_zero()) rec += c(r) * basis_.rows.row(r).transpose();
  for (Eigen::Index i = 0; i < ambient_; ++i)
    if (rec(i) != v(i)) return std::nullopt;
  return c;
}

bool Subspace::contains(const Vec& v) const { return coordinates(v).has_value(); }

bool Subspace::contains_subspace(const Subspace& o) const {
  if (o.ambient_ != ambient_)
    throw DimensionMismatch("contains_subspace: ambient dimensions differ");
  for (Eigen::Index r = 0; r < o.dim(); ++r)
    if (!contains(o.basis_.rows.row(r).transpose())) return false;
  return true;
}

bool Subspace::grow(const Vec& v) {
  if (contains(v)) return false;
  Mat rows(dim() + 1, ambient_);
  rows.topRows(dim()) = basis_.rows;
  rows.row(dim()) = v.transpose();
  basis_ = row_reduce(rows);
  return true;
}

bool Subspace::operator==(const Subspace& o) const {
  return ambient_ == o.ambient_ && basis_.pivots == o.basis_.pivots &&
         exact_equal(basis_.rows, o.basis_.rows);
}

Subspace operator+(const Subspace& a, const Subspace& b) {
  if (a.ambient_ != b.ambient_)
    throw DimensionMismatch("subspace sum: ambient dimensions differ");
  Mat rows(a.dim() + b.dim(), a.ambient_);
  rows.topRows(a.dim()) = a.basis_.rows;
  rows.bottomRows(b.dim()) = b.basis_.rows;
  return Subspace::span_rows(rows);
}

Subspace Subspace::intersect(const Subspace& o) const {
  if (o.ambient_ != ambient_)
    throw DimensionMismatch("subspace intersection: ambient dimensions differ");
  if (dim() == 0 || o.dim() == 0) return Subspace::zero(ambient_);
  // x in both spans: x = A^T u = B^T w, solve [A^T | -B^T] (u;w) = 0
  Mat m(ambient_, dim() + o.dim());
  m.leftCols(dim()) = basis_.rows.transpose();
  m.rightCols(o.dim()) = -o.basis_.rows.transpose();
  Mat k = kernel(m);
  Mat rows(k.cols(), ambient_);
  for (Eigen::Index t = 0; t < k.cols(); ++t) {
    Vec u = k.col(t).topRows(dim());
    rows.row(t) = (basis_.rows.transpose() * u).transpose();
  }
  return Subspace::span_rows(rows);
}

Mat quotient_map(const Subspace& s) {
  const Eigen::Index n = s.ambient();
  std::vector<Eigen::Index> free_cols;
  {
    size_t pi = 0;
    const auto& pivots = s.pivots();
    for (Eigen::Index c = 0; c < n; ++c) {
      if (pi < pivots.size() && pivots[pi] == c) {
        ++pi;
      } else {
        free_cols.push_back(c);
      }
    }
  }
  Mat q = Mat::Zero(static_cast<Eigen::Index>(free_cols.size()), n);
  for (size_t r = 0; r < free_cols.size(); ++r) {
    // image of e_j under reduction by the basis, restricted to free coords:
    // e_{free_cols[r]} itself is free; pivot columns contribute the negated
    // basis entries.
    q(static_cast<Eigen::Index>(r), free_cols[r]) = Scalar(1);
  }
  const auto& pivots = s.pivots();
  for (size_t pr = 0; pr < pivots.size(); ++pr)
    for (size_t r = 0; r < free_cols.size(); ++r)
      q(static_cast<Eigen::Index>(r), pivots[pr]) =
          -s.basis_rows()(static_cast<Eigen::Index>(pr), free_cols[r]);
  return q;
}

Subspace image(const LinearMap& m) { return Subspace::span_rows(m.transpose()); }

Subspace kernel_space(const LinearMap& m) { return Subspace::span_rows(kernel(m).transpose()); }

Mat kron(const Mat& a, const Mat& b) {
  Mat r(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index ia = 0; ia < a.rows(); ++ia)
    for (Eigen::Index ja = 0; ja < a.cols(); ++ja)
      for (Eigen::Index ib = 0; ib < b.rows(); ++ib)
        for (Eigen::Index jb = 0; jb < b.cols(); ++jb)
          r(ia * b.rows() + ib, ja * b.cols() + jb) = a(ia, ja) * b(ib, jb);
  return r;
}

Eigen::Index tensor_index(Eigen::Index i, Eigen::Index j, Eigen::Index dim_w) {
  if (i < 0 || j < 0 || dim_w <= 0 || j >= dim_w)
    throw IndexOutOfRange("tensor_index(" + std::to_string(i) + ", " + std::to_string(j) +
                          ") with second factor dimension " + std::to_string(dim_w));
  return i * dim_w + j;
}

std::pair<Eigen::Index, Eigen::Index> tensor_split(Eigen::Index idx, Eigen::Index dim_w) {
  if (idx < 0 || dim_w <= 0)
    throw IndexOutOfRange("tensor_split(" + std::to_string(idx) + ")");
  return {idx / dim_w, idx % dim_w};
}

Mat tensor_to_matrix(const Vec& v, Eigen::Index dim_v, Eigen::Index dim_w) {
  if (v.rows() != dim_v * dim_w)
    throw DimensionMismatch("tensor_to_matrix: length " + std::to_string(v.rows()) +
                            " is not " + std::to_string(dim_v) + " * " + std::to_string(dim_w));
  Mat m(dim_v, dim_w);
  for (Eigen::Index i = 0; i < dim_v; ++i)
    for (Eigen::Index j = 0; j < dim_w; ++j) m(i, j) = v(i * dim_w + j);
  return m;
}

Vec matrix_to_tensor(const Mat& m) {
  Vec v(m.rows() * m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j);
  return v;
}

}  // namespace hopfad
