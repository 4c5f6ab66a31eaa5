#pragma once

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "hopfad/scalar.hpp"

namespace Eigen {

// Exact field scalars: no rounding, so all precision knobs are zero.
template <>
struct NumTraits<hopfad::Scalar> {
  using Real = hopfad::Scalar;
  using NonInteger = hopfad::Scalar;
  using Nested = hopfad::Scalar;
  using Literal = hopfad::Scalar;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 30,
    MulCost = 30,
  };
  static inline Real epsilon() { return hopfad::Scalar(0); }
  static inline Real dummy_precision() { return hopfad::Scalar(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace hopfad {

using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
using RowVec = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

// A linear map stored by its matrix; column j is the image of basis vector j.
using LinearMap = Mat;

bool exact_equal(const Mat& a, const Mat& b);
bool is_zero_matrix(const Mat& a);

// Reduced row echelon form with zero rows dropped.
struct Echelon {
  Mat rows;                          // dim x ambient, pivot entries are 1
  std::vector<Eigen::Index> pivots;  // pivot column of each row, increasing
};
Echelon row_reduce(const Mat& m);

// Columns form a basis of the right nullspace.
Mat kernel(const Mat& m);

// Exact solve A x = b; empty when inconsistent.
std::optional<Vec> solve(const Mat& a, const Vec& b);

// Row-span subspace of k^ambient with a canonical echelon basis, so equality
// of subspaces is matrix equality of bases.
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(Eigen::Index ambient);
  static Subspace full(Eigen::Index ambient);
  static Subspace span_rows(const Mat& rows);
  static Subspace span(const std::vector<Vec>& vs, Eigen::Index ambient);

  Eigen::Index dim() const { return basis_.rows.rows(); }
  Eigen::Index ambient() const { return ambient_; }
  const Mat& basis_rows() const { return basis_.rows; }
  const std::vector<Eigen::Index>& pivots() const { return basis_.pivots; }
  Vec basis_vector(Eigen::Index i) const { return basis_.rows.row(i).transpose(); }

  bool contains(const Vec& v) const;
  // Coefficients of v in the echelon basis; empty when v is outside.
  std::optional<Vec> coordinates(const Vec& v) const;
  bool contains_subspace(const Subspace& o) const;

  // Adds v to the span; true when the dimension grew.  Used by closure loops.
  bool grow(const Vec& v);

  bool operator==(const Subspace& o) const;
  bool operator!=(const Subspace& o) const { return !(*this == o); }

  friend Subspace operator+(const Subspace& a, const Subspace& b);
  Subspace intersect(const Subspace& o) const;

 private:
  Eigen::Index ambient_ = 0;
  Echelon basis_;
};

Subspace image(const LinearMap& m);
Subspace kernel_space(const LinearMap& m);

// Coordinates in a complement of s: a (ambient - dim) x ambient map whose
// kernel is exactly s.  Rows read off the non-pivot coordinates after
// reduction by the echelon basis of s.
Mat quotient_map(const Subspace& s);

// Kronecker product in the row-major tensor convention used throughout:
// basis vector e_i (x) f_j of V (x) W sits at flat index i * dimW + j.
Mat kron(const Mat& a, const Mat& b);

Eigen::Index tensor_index(Eigen::Index i, Eigen::Index j, Eigen::Index dim_w);
std::pair<Eigen::Index, Eigen::Index> tensor_split(Eigen::Index idx, Eigen::Index dim_w);

// Reshape between a tensor vector of length dimV * dimW and its
// dimV x dimW coefficient matrix.
Mat tensor_to_matrix(const Vec& v, Eigen::Index dim_v, Eigen::Index dim_w);
Vec matrix_to_tensor(const Mat& m);

}  // namespace hopfad
