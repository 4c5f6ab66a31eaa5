#include <doctest.h>

#include <memory>
#include <set>
#include <utility>
#include <vector>

#include "hopfad/finmod.hpp"
#include "hopfad/rng.hpp"
#include "support/random_linalg.hpp"
#include "support/tables.hpp"

using namespace hopfad;
using testsupport::cyclic_table;
using testsupport::random_mat;
using testsupport::random_vec;
using testsupport::s3_perms;
using testsupport::s3_table;

namespace {

const FieldDescriptor kQ = FieldDescriptor::rationals();

std::shared_ptr<const HopfAlgebra> shared(HopfAlgebra h) {
  return std::make_shared<const HopfAlgebra>(std::move(h));
}

Vec basis(Eigen::Index n, Eigen::Index i) {
  Vec v = Vec::Zero(n);
  v(i) = Scalar(1);
  return v;
}

// flat tensor of column vectors with the row-major index convention
Vec flat(const Vec& v, const Vec& w) {
  Vec t = Vec::Zero(v.rows() * w.rows());
  for (Eigen::Index i = 0; i < v.rows(); ++i)
    for (Eigen::Index j = 0; j < w.rows(); ++j) t(i * w.rows() + j) = v(i) * w(j);
  return t;
}

// the subspace X (x) W inside the flat tensor space
Subspace tensor_with_full_w(const Subspace& x, Eigen::Index dim_w) {
  std::vector<Vec> vs;
  for (Eigen::Index r = 0; r < x.dim(); ++r)
    for (Eigen::Index j = 0; j < dim_w; ++j)
      vs.push_back(flat(x.basis_vector(r), basis(dim_w, j)));
  return Subspace::span(vs, x.ambient() * dim_w);
}

Subspace full_v_tensor_with(const Subspace& y, Eigen::Index dim_v) {
  std::vector<Vec> vs;
  for (Eigen::Index r = 0; r < y.dim(); ++r)
    for (Eigen::Index i = 0; i < dim_v; ++i)
      vs.push_back(flat(basis(dim_v, i), y.basis_vector(r)));
  return Subspace::span(vs, dim_v * y.ambient());
}

// permutation action of the symmetric group on three points
ModuleData s3_permutation_module(std::shared_ptr<const HopfAlgebra> h) {
  const auto& perms = s3_perms();
  std::vector<Mat> action;
  for (int g = 0; g < 6; ++g) {
    Mat m = Mat::Zero(3, 3);
    for (int k = 0; k < 3; ++k) m(perms[g][k], k) = Scalar(1);
    action.push_back(std::move(m));
  }
  return ModuleData::make(std::move(h), std::move(action));
}

Vec embed_vec(const Vec& v, const FieldDescriptor& f) {
  Vec out(v.rows());
  for (Eigen::Index i = 0; i < v.rows(); ++i) out(i) = v(i).embedded_into(f);
  return out;
}

}  // namespace

TEST_SUITE("finmod") {

TEST_CASE("module construction validates the action") {
  auto c2 = shared(group_algebra(cyclic_table(2), kQ));
  Mat eye = Mat::Zero(2, 2), minus = Mat::Zero(2, 2);
  eye(0, 0) = eye(1, 1) = Scalar(1);
  minus(0, 0) = minus(1, 1) = Scalar(-1);
  CHECK_NOTHROW(ModuleData::make(c2, {eye, minus}));

  // g acting by 2 breaks g * g = e
  Mat twice = Mat::Zero(2, 2);
  twice(0, 0) = twice(1, 1) = Scalar(2);
  CHECK_THROWS_AS(ModuleData::make(c2, {eye, twice}), PreconditionViolated);
  // identity element must act as the identity matrix
  CHECK_THROWS_AS(ModuleData::make(c2, {twice, twice}), PreconditionViolated);
  // one matrix per algebra basis element
  CHECK_THROWS_AS(ModuleData::make(c2, {eye}), ShapeMismatch);
  CHECK_THROWS_AS(ModuleData::make(c2, {eye, Mat::Zero(3, 3)}), ShapeMismatch);
  CHECK_THROWS_AS(ModuleData::make(c2, {Mat::Zero(2, 3), Mat::Zero(2, 3)}), ShapeMismatch);
  CHECK_THROWS_AS(ModuleData::make(nullptr, {}), PreconditionViolated);
}

TEST_CASE("ready-made modules match the element operations") {
  Rng rng(6001);
  for (auto h : {shared(sweedler(kQ)), shared(group_algebra(s3_table(), kQ))}) {
    ModuleData reg = regular_module(h);
    ModuleData ad = adjoint_module(h);
    ModuleData triv = trivial_module(h);
    CHECK(reg.dim == h->dim);
    CHECK(triv.dim == 1);
    for (int t = 0; t < 8; ++t) {
      Vec a = random_element(rng, *h);
      Vec v = random_element(rng, *h);
      CHECK(exact_equal(reg.apply(a, v), h->multiply(a, v)));
      CHECK(exact_equal(ad.apply(a, v), h->adjoint_action(a, v)));
      Vec x(1);
      x(0) = rng.scalar(kQ, 5);
      CHECK(exact_equal(triv.apply(a, x), Vec(x * h->counit_of(a))));
    }
    CHECK_THROWS_AS(reg.apply(Vec::Zero(h->dim + 1), Vec::Zero(h->dim)), DimensionMismatch);
    CHECK_THROWS_AS(reg.apply(Vec::Zero(h->dim), Vec::Zero(h->dim + 1)), DimensionMismatch);
  }
}

TEST_CASE("orbit closure on dense modules") {
  GroupTable t = s3_table();
  auto h = shared(group_algebra(t, kQ));
  ModuleData ad = adjoint_module(h);

  // table-derived conjugacy classes as the oracle
  auto inv_of = [&](int p) {
    for (int q = 0; q < 6; ++q)
      if (t.product[p * 6 + q] == 0) return q;
    return -1;
  };
  auto conj_class = [&](int g) {
    std::set<int> cls;
    for (int p = 0; p < 6; ++p) cls.insert(t.product[t.product[p * 6 + g] * 6 + inv_of(p)]);
    return cls;
  };

  for (int g = 0; g < 6; ++g) {
    auto cls = conj_class(g);
    ModuleOrbitVerdict v = orbit_closure(ad, {basis(6, g)}, 100);
    REQUIRE(v.finite());
    CHECK(v.dim == static_cast<Eigen::Index>(cls.size()));
    std::vector<Vec> expect;
    for (int c : cls) expect.push_back(basis(6, c));
    CHECK(v.space == Subspace::span(expect, 6));
    CHECK(v.level_dims.back() == v.dim);
  }

  // budget breach reports the dimension reached, as evidence only
  ModuleOrbitVerdict breach = orbit_closure(ad, {basis(6, 3)}, 2);
  CHECK_FALSE(breach.finite());
  CHECK(breach.kind == Finiteness::BudgetExceeded);
  CHECK(breach.dim == 3);
  CHECK(breach.budget == 2);

  CHECK_THROWS_AS(orbit_closure(ad, {basis(6, 0)}, 0), PreconditionViolated);
  CHECK_THROWS_AS(orbit_closure(ad, {basis(5, 0)}, 10), DimensionMismatch);

  ModuleData triv = trivial_module(h);
  Vec one(1);
  one(0) = Scalar(3);
  CHECK(orbit_closure(triv, {one}, 5).finite());
  CHECK(orbit_closure(triv, {one}, 5).dim == 1);
}

TEST_CASE("locally finite part of a dense module is everything") {
  auto sw = shared(sweedler(kQ));
  auto ks3 = shared(group_algebra(s3_table(), kQ));
  CHECK(locally_finite_part(adjoint_module(sw)) == Subspace::full(4));
  CHECK(locally_finite_part(regular_module(ks3)) == Subspace::full(6));
  CHECK(locally_finite_part(trivial_module(sw)) == Subspace::full(1));

  ModuleData zero = ModuleData::make(sw, std::vector<Mat>(4, Mat::Zero(0, 0)));
  Subspace z = locally_finite_part(zero);
  CHECK(z.ambient() == 0);
  CHECK(z.dim() == 0);
}

TEST_CASE("tensor slice spans") {
  {  // forced two-term example in 3 x 3
    Vec v1 = basis(3, 0) + basis(3, 1), w1 = basis(3, 0);
    Vec v2 = basis(3, 2), w2 = basis(3, 1) + Scalar(2) * basis(3, 2);
    Subspace u = Subspace::span({flat(v1, w1) + flat(v2, w2)}, 9);
    CHECK(u_prime(u, 3, 3) == Subspace::span({v1, v2}, 3));
    CHECK(u_double_prime(u, 3, 3) == Subspace::span({w1, w2}, 3));
  }
  CHECK(u_prime(Subspace::full(12), 4, 3) == Subspace::full(4));
  CHECK(u_double_prime(Subspace::full(12), 4, 3) == Subspace::full(3));
  CHECK(u_prime(Subspace::zero(12), 4, 3) == Subspace::zero(4));
  CHECK_THROWS_AS(u_prime(Subspace::zero(7), 2, 3), DimensionMismatch);
  CHECK_THROWS_AS(u_double_prime(Subspace::zero(7), 2, 3), DimensionMismatch);

  // smallest-subspace property on random data over several fields
  Rng rng(6200);
  for (const char* fs : {"Q", "fp:7", "cyclotomic:4"}) {
    FieldDescriptor f = FieldDescriptor::parse(fs);
    for (int t = 0; t < 12; ++t) {
      const Eigen::Index dv = 4, dw = 3;
      Mat rows = random_mat(rng, f, rng.integer(1, 4), dv * dw);
      Subspace u = Subspace::span_rows(rows);
      Subspace up = u_prime(u, dv, dw);
      Subspace upp = u_double_prime(u, dv, dw);
      // containment in both envelopes
      CHECK(tensor_with_full_w(up, dw).contains_subspace(u));
      CHECK(full_v_tensor_with(upp, dv).contains_subspace(u));
      // dimension bounds
      CHECK(up.dim() <= std::min<Eigen::Index>(dv, u.dim() * dw));
      CHECK(upp.dim() <= std::min<Eigen::Index>(dw, u.dim() * dv));
      // minimality: dropping any direction of the slice span loses containment
      for (Eigen::Index r = 0; r < up.dim(); ++r) {
        std::vector<Vec> rest;
        for (Eigen::Index s = 0; s < up.dim(); ++s)
          if (s != r) rest.push_back(up.basis_vector(s));
        Subspace smaller = Subspace::span(rest, dv);
        CHECK_FALSE(tensor_with_full_w(smaller, dw).contains_subspace(u));
      }
    }
  }
}

TEST_CASE("tensor modules act through the comultiplication") {
  auto sw = shared(sweedler(kQ));
  auto ks3 = shared(group_algebra(s3_table(), kQ));

  {  // dimensions multiply
    ModuleData perm = s3_permutation_module(ks3);
    std::vector<Mat> two;
    for (int g = 0; g < 6; ++g) {
      Mat m = Mat::Zero(2, 2);
      m(0, 0) = Scalar(1);
      m(1, 1) = Scalar(g < 3 ? 1 : -1);  // trivial plus sign character
      two.push_back(std::move(m));
    }
    ModuleData ts = ModuleData::make(ks3, std::move(two));
    CHECK(tensor_module(ts, perm).dim == 6);
  }

  {  // unit law of the tensor: trivial factors drop out exactly
    for (auto h : {sw, ks3}) {
      ModuleData reg = regular_module(h);
      ModuleData triv = trivial_module(h);
      ModuleData lt = tensor_module(triv, reg);
      ModuleData rt = tensor_module(reg, triv);
      for (Eigen::Index i = 0; i < h->dim; ++i) {
        CHECK(exact_equal(lt.action[i], reg.action[i]));
        CHECK(exact_equal(rt.action[i], reg.action[i]));
      }
    }
  }

  {  // characters multiply: sign (x) sign is trivial over the two-element group
    auto c2 = shared(group_algebra(cyclic_table(2), kQ));
    Mat eye = Mat::Zero(1, 1), minus = Mat::Zero(1, 1);
    eye(0, 0) = Scalar(1);
    minus(0, 0) = Scalar(-1);
    ModuleData sign = ModuleData::make(c2, {eye, minus});
    ModuleData ss = tensor_module(sign, sign);
    ModuleData triv = trivial_module(c2);
    for (int i = 0; i < 2; ++i) CHECK(exact_equal(ss.action[i], triv.action[i]));
  }

  {  // comultiplication oracle on random triples
    Rng rng(6300);
    ModuleData reg = regular_module(sw);
    ModuleData tt = tensor_module(reg, reg);
    for (int t = 0; t < 10; ++t) {
      Vec a = random_element(rng, *sw);
      Vec v = random_vec(rng, kQ, 4);
      Vec w = random_vec(rng, kQ, 4);
      Vec da = sw->comultiply(a);
      Vec expect = Vec::Zero(16);
      for (Eigen::Index idx = 0; idx < 16; ++idx) {
        if (da(idx).is_zero()) continue;
        Vec lv = reg.action[idx / 4] * v;
        Vec rw = reg.action[idx % 4] * w;
        expect += da(idx) * flat(lv, rw);
      }
      CHECK(exact_equal(tt.apply(a, flat(v, w)), expect));
    }
  }

  CHECK_THROWS_AS(tensor_module(regular_module(sw), regular_module(ks3)), AlgebraMismatch);
  // structurally equal algebras behind different handles are accepted
  auto sw2 = shared(sweedler(kQ));
  CHECK_NOTHROW(tensor_module(regular_module(sw), regular_module(sw2)));
}

TEST_CASE("slices of submodules are stable under the action") {
  Rng rng(6400);
  auto sw = shared(sweedler(kQ));
  auto ks3 = shared(group_algebra(s3_table(), kQ));
  struct Host {
    ModuleData v, w;
  };
  std::vector<Host> hosts;
  hosts.push_back({regular_module(sw), regular_module(sw)});
  hosts.push_back({s3_permutation_module(ks3), s3_permutation_module(ks3)});
  for (const Host& host : hosts) {
    ModuleData tt = tensor_module(host.v, host.w);
    const FieldDescriptor& f = host.v.algebra->field;
    for (int t = 0; t < 10; ++t) {
      Vec seed = random_vec(rng, f, tt.dim);
      ModuleOrbitVerdict orb = orbit_closure(tt, {seed}, static_cast<size_t>(tt.dim));
      REQUIRE(orb.finite());
      Subspace u = orb.space;
      Subspace up = u_prime(u, host.v.dim, host.w.dim);
      Subspace upp = u_double_prime(u, host.v.dim, host.w.dim);
      for (Eigen::Index i = 0; i < host.v.algebra->dim; ++i) {
        for (Eigen::Index r = 0; r < up.dim(); ++r)
          CHECK(up.contains(host.v.action[i] * up.basis_vector(r)));
        for (Eigen::Index r = 0; r < upp.dim(); ++r)
          CHECK(upp.contains(host.w.action[i] * upp.basis_vector(r)));
      }
    }
  }
}

TEST_CASE("laurent modules over the integer group algebra") {
  ComputableModule<long> reg = laurent_regular_module(kQ);
  CHECK(reg.grouplike_generators);
  CHECK(reg.key_str(-2) == "e[-2]");

  auto verdict = orbit_closure(reg, {SparseVec<long>::unit(0)}, 50);
  CHECK(verdict.kind == Finiteness::BudgetExceeded);
  CHECK(verdict.dim == 51);
  CHECK(verdict.budget == 50);
  for (size_t i = 1; i < verdict.level_dims.size(); ++i)
    CHECK(verdict.level_dims[i] == verdict.level_dims[i - 1] + 2);

  // determinism of the closure trace
  auto again = orbit_closure(reg, {SparseVec<long>::unit(0)}, 50);
  CHECK(again.level_dims == verdict.level_dims);

  ComputableModule<long> triv = laurent_character_module(kQ, Scalar(1));
  CHECK(orbit_closure(triv, {SparseVec<long>::unit(0)}, 5).finite());
  ComputableModule<long> sign = laurent_character_module(kQ, Scalar(-1));
  auto sv = orbit_closure(sign, {SparseVec<long>::unit(0)}, 5);
  CHECK(sv.finite());
  CHECK(sv.dim == 1);
  CHECK(sign.generators[0].act(0).coeff(0) == Scalar(-1));

  CHECK_THROWS_AS(laurent_character_module(kQ, Scalar(0)), PreconditionViolated);
  CHECK_THROWS_AS(sign.generators[0].act(3), ActionNotComputable);
}

TEST_CASE("direct sums and diagonal tensors of computable modules") {
  using VKey = std::pair<int, long>;
  using TKey = std::pair<VKey, VKey>;
  ComputableModule<VKey> v =
      direct_sum(laurent_regular_module(kQ), laurent_character_module(kQ, Scalar(1)));
  ComputableModule<VKey> w =
      direct_sum(laurent_regular_module(kQ), laurent_character_module(kQ, Scalar(-1)));

  CHECK(orbit_closure(v, {SparseVec<VKey>::unit({1, 0})}, 10).finite());
  CHECK(orbit_closure(v, {SparseVec<VKey>::unit({0, 5})}, 10).kind ==
        Finiteness::BudgetExceeded);
  SparseVec<VKey> mixed = SparseVec<VKey>::unit({0, 1}) + SparseVec<VKey>::unit({1, 0});
  CHECK(orbit_closure(v, {mixed}, 10).kind == Finiteness::BudgetExceeded);
  CHECK(v.key_str({0, 3}) == "l:e[3]");
  CHECK(v.key_str({1, 0}) == "r:u");

  ComputableModule<TKey> t = tensor_module(v, w);
  CHECK(t.key_str({{0, 2}, {1, 0}}) == "l:e[2](x)r:u");
  // the one-dimensional corner is t-stable with eigenvalue -1
  SparseVec<TKey> corner = t.generators[0].act({{1, 0}, {1, 0}});
  CHECK(corner.coeff({{1, 0}, {1, 0}}) == Scalar(-1));
  auto fin_corner = orbit_closure(t, {SparseVec<TKey>::unit({{1, 0}, {1, 0}})}, 10);
  CHECK(fin_corner.finite());
  CHECK(fin_corner.dim == 1);
  CHECK(orbit_closure(t, {SparseVec<TKey>::unit({{0, 0}, {0, 0}})}, 20).kind ==
        Finiteness::BudgetExceeded);
  CHECK(orbit_closure(t, {SparseVec<TKey>::unit({{0, 2}, {1, 0}})}, 20).kind ==
        Finiteness::BudgetExceeded);

  // mismatched algebras are rejected
  ComputableModule<long> renamed = laurent_regular_module(kQ);
  renamed.generators[0].name = "shift";
  CHECK_THROWS_AS(tensor_module(laurent_regular_module(kQ), renamed), AlgebraMismatch);
  CHECK_THROWS_AS(direct_sum(laurent_regular_module(kQ), renamed), AlgebraMismatch);
  CHECK_THROWS_AS(
      tensor_module(laurent_regular_module(kQ),
                    laurent_regular_module(FieldDescriptor::cyclotomic(3))),
      AlgebraMismatch);
  ComputableModule<long> notgl = laurent_regular_module(kQ);
  notgl.grouplike_generators = false;
  CHECK_THROWS_AS(tensor_module(laurent_regular_module(kQ), notgl), PreconditionViolated);
}

TEST_CASE("field extension support predicate") {
  FieldDescriptor rf = FieldDescriptor::parse("ratfunc");
  FieldDescriptor rf3 = FieldDescriptor::parse("ratfunc:q:cyclotomic:3");
  CHECK(field_extends(kQ, kQ));
  CHECK(field_extends(FieldDescriptor::cyclotomic(4), kQ));
  CHECK(field_extends(rf, kQ));
  CHECK(field_extends(rf3, kQ));
  CHECK(field_extends(rf3, FieldDescriptor::cyclotomic(3)));
  CHECK_FALSE(field_extends(FieldDescriptor::prime_field(5), kQ));
  CHECK_FALSE(field_extends(kQ, FieldDescriptor::cyclotomic(4)));
  CHECK_FALSE(field_extends(FieldDescriptor::cyclotomic(4), FieldDescriptor::cyclotomic(3)));
}

TEST_CASE("scalar extension of modules") {
  const FieldDescriptor cyc3 = FieldDescriptor::cyclotomic(3);
  auto ks3 = shared(group_algebra(s3_table(), kQ));
  ModuleData ad = adjoint_module(ks3);
  ModuleData big = extend_scalars(ad, cyc3);
  CHECK(big.algebra->field == cyc3);
  CHECK(locally_finite_part(big).dim() == 6);

  Rng rng(6500);
  for (int t = 0; t < 5; ++t) {
    Vec a = random_element(rng, *ks3);
    Vec v = random_vec(rng, kQ, 6);
    CHECK(exact_equal(big.apply(embed_vec(a, cyc3), embed_vec(v, cyc3)),
                      embed_vec(ad.apply(a, v), cyc3)));
  }

  CHECK_THROWS_AS(extend_scalars(ad, FieldDescriptor::prime_field(5)), UnsupportedExtension);
  ModuleData over3 = extend_scalars(ad, cyc3);
  CHECK_THROWS_AS(extend_scalars(over3, FieldDescriptor::cyclotomic(4)), UnsupportedExtension);

  // computable side: verdicts keep their kind, dimension, and trace
  ComputableModule<long> reg = laurent_regular_module(kQ);
  ComputableModule<long> rege = extend_scalars(reg, FieldDescriptor::cyclotomic(4));
  auto before = orbit_closure(reg, {SparseVec<long>::unit(0)}, 20);
  auto after = orbit_closure(rege, {SparseVec<long>::unit(0)}, 20);
  CHECK(before.kind == after.kind);
  CHECK(before.dim == after.dim);
  CHECK(before.level_dims == after.level_dims);
  ComputableModule<long> sgne =
      extend_scalars(laurent_character_module(kQ, Scalar(-1)), FieldDescriptor::cyclotomic(4));
  CHECK(sgne.field == FieldDescriptor::cyclotomic(4));
  auto sv = orbit_closure(sgne, {SparseVec<long>::unit(0)}, 5);
  CHECK(sv.finite());
  CHECK(sv.dim == 1);
  CHECK_THROWS_AS(extend_scalars(reg, FieldDescriptor::prime_field(5)), UnsupportedExtension);
}

}  // TEST_SUITE
