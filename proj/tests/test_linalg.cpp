#include <doctest.h>

#include "hopfad/linalg.hpp"
#include "hopfad/rng.hpp"
#include "support/random_linalg.hpp"

using namespace hopfad;
using testsupport::random_mat;
using testsupport::random_vec;

namespace {

std::vector<FieldDescriptor> fields() {
  return {
      FieldDescriptor::rationals(),
      FieldDescriptor::prime_field(5),
      FieldDescriptor::cyclotomic(3),
  };
}

}  // namespace

TEST_SUITE("linalg") {

TEST_CASE("eigen products with exact scalars") {
  Rng rng(101);
  for (const auto& f : fields()) {
    for (int t = 0; t < 8; ++t) {
      Mat a = random_mat(rng, f, 4, 3), b = random_mat(rng, f, 3, 5), c = random_mat(rng, f, 5, 2);
      CHECK(exact_equal((a * b) * c, a * (b * c)));
      Mat s = a + a;
      CHECK(exact_equal(s, Scalar(2) * a));
    }
  }
}

TEST_CASE("row reduction invariants") {
  Rng rng(202);
  for (const auto& f : fields()) {
    for (int t = 0; t < 12; ++t) {
      Mat m = random_mat(rng, f, 5, 7);
      Echelon e = row_reduce(m);
      // idempotent
      Echelon e2 = row_reduce(e.rows);
      CHECK(exact_equal(e.rows, e2.rows));
      // pivots are 1 and alone in their column
      for (size_t r = 0; r < e.pivots.size(); ++r) {
        CHECK(e.rows(static_cast<Eigen::Index>(r), e.pivots[r]).is_one());
        for (Eigen::Index r2 = 0; r2 < e.rows.rows(); ++r2)
          if (r2 != static_cast<Eigen::Index>(r))
            CHECK(e.rows(r2, e.pivots[r]).is_zero());
      }
      // row space preserved both ways
      Subspace orig = Subspace::span_rows(m);
      Subspace red = Subspace::span_rows(e.rows);
      CHECK(orig == red);
    }
  }
}

TEST_CASE("kernel and rank nullity") {
  Rng rng(303);
  for (const auto& f : fields()) {
    for (int t = 0; t < 12; ++t) {
      Mat m = random_mat(rng, f, 4, 6);
      Mat k = kernel(m);
      Echelon e = row_reduce(m);
      CHECK(static_cast<Eigen::Index>(e.pivots.size()) + k.cols() == m.cols());
      Mat prod = m * k;
      CHECK(is_zero_matrix(prod));
      // kernel columns are independent
      Echelon ek = row_reduce(k.transpose());
      CHECK(static_cast<Eigen::Index>(ek.pivots.size()) == k.cols());
    }
  }
}

TEST_CASE("solve") {
  Rng rng(404);
  for (const auto& f : fields()) {
    for (int t = 0; t < 12; ++t) {
      Mat a = random_mat(rng, f, 5, 4);
      Vec x0 = random_vec(rng, f, 4);
      Vec b = a * x0;
      auto x = solve(a, b);
      REQUIRE(x.has_value());
      CHECK(exact_equal(a * *x, b));
      // a right-hand side outside the column space must be rejected
      Subspace im = image(a);
      Vec probe = random_vec(rng, f, 5);
      if (!im.contains(probe)) CHECK(!solve(a, probe).has_value());
    }
  }
}

TEST_CASE("subspace dimension formula") {
  Rng rng(505);
  for (const auto& f : fields()) {
    for (int t = 0; t < 15; ++t) {
      Subspace a = Subspace::span_rows(random_mat(rng, f, 3, 6));
      Subspace b = Subspace::span_rows(random_mat(rng, f, 3, 6));
      Subspace sum = a + b;
      Subspace meet = a.intersect(b);
      CHECK(sum.dim() + meet.dim() == a.dim() + b.dim());
      for (Eigen::Index r = 0; r < meet.dim(); ++r) {
        CHECK(a.contains(meet.basis_vector(r)));
        CHECK(b.contains(meet.basis_vector(r)));
      }
      CHECK(sum.contains_subspace(a));
      CHECK(sum.contains_subspace(b));
      CHECK(a.intersect(b) == b.intersect(a));
    }
  }
}

TEST_CASE("subspace membership and growth") {
  Rng rng(606);
  FieldDescriptor f = FieldDescriptor::rationals();
  Subspace s = Subspace::zero(5);
  std::vector<Vec> added;
  for (int t = 0; t < 10; ++t) {
    Vec v = random_vec(rng, f, 5);
    bool grew = s.grow(v);
    if (!grew) CHECK(s.contains(v));
    added.push_back(v);
  }
  for (const auto& v : added) CHECK(s.contains(v));
  CHECK(s == Subspace::span(added, 5));
  CHECK(Subspace::full(5).contains_subspace(s));
  auto c = s.coordinates(added[0]);
  REQUIRE(c.has_value());
  Vec rec = Vec::Zero(5);
  for (Eigen::Index i = 0; i < s.dim(); ++i) rec += (*c)(i)*s.basis_vector(i);
  CHECK(exact_equal(rec, added[0]));
}

TEST_CASE("quotient map has exactly the subspace as kernel") {
  Rng rng(808);
  for (const auto& f : fields()) {
    for (int t = 0; t < 10; ++t) {
      Subspace s = Subspace::span_rows(random_mat(rng, f, rng.integer(0, 5), 6));
      Mat q = quotient_map(s);
      CHECK(q.rows() == 6 - s.dim());
      CHECK(kernel_space(q) == s);
      // vanishes on the subspace, injective on a complement
      for (Eigen::Index r = 0; r < s.dim(); ++r) {
        Vec img = q * s.basis_vector(r);
        CHECK(is_zero_matrix(img));
      }
    }
    CHECK(quotient_map(Subspace::full(6)).rows() == 0);
    Mat qz = quotient_map(Subspace::zero(4));
    CHECK(qz.rows() == 4);
    CHECK(kernel_space(qz).dim() == 0);
  }
}

TEST_CASE("kron respects the flat tensor convention") {
  Rng rng(707);
  for (const auto& f : fields()) {
    Mat a = random_mat(rng, f, 3, 3), b = random_mat(rng, f, 4, 4);
    Vec x = random_vec(rng, f, 3), y = random_vec(rng, f, 4);
    Vec xy(12);
    for (Eigen::Index i = 0; i < 3; ++i)
      for (Eigen::Index j = 0; j < 4; ++j) xy(tensor_index(i, j, 4)) = x(i) * y(j);
    Vec lhs = kron(a, b) * xy;
    Vec ax = a * x, by = b * y;
    Vec rhs(12);
    for (Eigen::Index i = 0; i < 3; ++i)
      for (Eigen::Index j = 0; j < 4; ++j) rhs(tensor_index(i, j, 4)) = ax(i) * by(j);
    CHECK(exact_equal(lhs, rhs));
  }
  CHECK_THROWS_AS(tensor_index(0, 4, 4), IndexOutOfRange);
  CHECK_THROWS_AS(tensor_index(-1, 0, 4), IndexOutOfRange);
  CHECK(tensor_split(tensor_index(2, 3, 4), 4) == std::make_pair<Eigen::Index, Eigen::Index>(2, 3));
}

TEST_CASE("tensor reshape round trip") {
  Rng rng(808);
  FieldDescriptor f = FieldDescriptor::cyclotomic(4);
  Vec v = random_vec(rng, f, 12);
  Mat m = tensor_to_matrix(v, 3, 4);
  CHECK(exact_equal(matrix_to_tensor(m), v));
  for (Eigen::Index i = 0; i < 3; ++i)
    for (Eigen::Index j = 0; j < 4; ++j) CHECK(m(i, j) == v(tensor_index(i, j, 4)));
  CHECK_THROWS_AS(tensor_to_matrix(v, 5, 2), DimensionMismatch);
}

}  // TEST_SUITE
