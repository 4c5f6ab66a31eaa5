#include "hopfad/finmod.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace hopfad {

namespace {

void require_algebra(const std::shared_ptr<const HopfAlgebra>& h, const char* who) {
  if (!h) throw PreconditionViolated(std::string(who) + ": missing algebra handle");
}

}  // namespace

ModuleData ModuleData::make(std::shared_ptr<const HopfAlgebra> algebra, std::vector<Mat> action) {
  require_algebra(algebra, "ModuleData::make");
  const HopfAlgebra& h = *algebra;
  if (static_cast<Eigen::Index>(action.size()) != h.dim)
    throw ShapeMismatch("module needs one action matrix per algebra basis element: got " +
                        std::to_string(action.size()) + " for algebra dimension " +
                        std::to_string(h.dim));
  const Eigen::Index d = action.empty() ? 0 : action.front().rows();
  for (const Mat& m : action)
    if (m.rows() != d || m.cols() != d)
      throw ShapeMismatch("module action matrices must all be square of one size");

  Mat unit_action = Mat::Zero(d, d);
  for (Eigen::Index i = 0; i < h.dim; ++i)
    if (!h.unit(i).is_zero()) unit_action += h.unit(i) * action[static_cast<size_t>(i)];
  Mat eye = Mat::Zero(d, d);
  for (Eigen::Index r = 0; r < d; ++r) eye(r, r) = Scalar(1);
  if (!exact_equal(unit_action, eye))
    throw PreconditionViolated("module action: the unit must act as the identity");

  for (Eigen::Index i = 0; i < h.dim; ++i)
    for (Eigen::Index j = 0; j < h.dim; ++j) {
      Mat lhs = action[static_cast<size_t>(i)] * action[static_cast<size_t>(j)];
      Mat rhs = Mat::Zero(d, d);
      for (const auto& [k, c] : h.mult[static_cast<size_t>(i * h.dim + j)].terms())
        rhs += c * action[static_cast<size_t>(k)];
      if (!exact_equal(lhs, rhs))
        throw PreconditionViolated("module action breaks the product " + h.basis_label(i) + " * " +
                                   h.basis_label(j));
    }

  ModuleData m;
  m.algebra = std::move(algebra);
  m.dim = d;
  m.action = std::move(action);
  return m;
}

Mat ModuleData::action_of(const Vec& a) const {
  if (a.rows() != static_cast<Eigen::Index>(action.size()))
    throw DimensionMismatch("action_of: algebra element of wrong length");
  Mat out = Mat::Zero(dim, dim);
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    if (!a(i).is_zero()) out += a(i) * action[static_cast<size_t>(i)];
  return out;
}

Vec ModuleData::apply(const Vec& a, const Vec& v) const {
  if (v.rows() != dim) throw DimensionMismatch("apply: module element of wrong length");
  return action_of(a) * v;
}

ModuleData regular_module(std::shared_ptr<const HopfAlgebra> h) {
  require_algebra(h, "regular_module");
  std::vector<Mat> action;
  for (Eigen::Index i = 0; i < h->dim; ++i)
    action.push_back(h->left_mult_matrix(h->basis_vector(i)));
  return ModuleData::make(std::move(h), std::move(action));
}

ModuleData adjoint_module(std::shared_ptr<const HopfAlgebra> h) {
  require_algebra(h, "adjoint_module");
  std::vector<Mat> action;
  for (Eigen::Index i = 0; i < h->dim; ++i) action.push_back(h->adjoint_matrix(h->basis_vector(i)));
  return ModuleData::make(std::move(h), std::move(action));
}

ModuleData trivial_module(std::shared_ptr<const HopfAlgebra> h) {
  require_algebra(h, "trivial_module");
  std::vector<Mat> action;
  for (Eigen::Index i = 0; i < h->dim; ++i) {
    Mat m(1, 1);
    m(0, 0) = h->counit(i);
    action.push_back(std::move(m));
  }
  return ModuleData::make(std::move(h), std::move(action));
}

ModuleOrbitVerdict orbit_closure(const ModuleData& m, const std::vector<Vec>& seeds,
                                 size_t budget) {
  if (budget < 1) throw PreconditionViolated("orbit budget must be at least 1");
  ModuleOrbitVerdict v;
  v.budget = budget;
  v.space = Subspace::zero(m.dim);
  std::vector<Vec> frontier;
  for (const Vec& s : seeds) {
    if (s.rows() != m.dim) throw DimensionMismatch("orbit seed of wrong length");
    if (v.space.grow(s)) frontier.push_back(v.space.basis_vector(v.space.dim() - 1));
  }
  v.level_dims.push_back(v.space.dim());
  while (true) {
    if (static_cast<size_t>(v.space.dim()) > budget) {
      v.kind = Finiteness::BudgetExceeded;
      v.dim = v.space.dim();
      return v;
    }
    std::vector<Vec> next;
    for (const Vec& x : frontier)
      for (const Mat& g : m.action) {
        Vec img = g * x;
        if (v.space.grow(img)) next.push_back(v.space.basis_vector(v.space.dim() - 1));
      }
    if (next.empty()) {
      v.kind = Finiteness::Finite;
      v.dim = v.space.dim();
      return v;
    }
    v.level_dims.push_back(v.space.dim());
    frontier = std::move(next);
  }
}

Subspace locally_finite_part(const ModuleData& m) {
  const size_t budget = static_cast<size_t>(std::max<Eigen::Index>(m.dim, 1));
  for (Eigen::Index i = 0; i < m.dim; ++i) {
    Vec e = Vec::Zero(m.dim);
    e(i) = Scalar(1);
    ModuleOrbitVerdict v = orbit_closure(m, {e}, budget);
    if (!v.finite())
      throw Error("basis orbit failed to stabilize inside the module; action data inconsistent");
  }
  return Subspace::full(m.dim);
}

Subspace u_prime(const Subspace& u, Eigen::Index dim_v, Eigen::Index dim_w) {
  if (dim_v < 0 || dim_w < 0 || u.ambient() != dim_v * dim_w)
    throw DimensionMismatch("u_prime: ambient " + std::to_string(u.ambient()) + " is not " +
                            std::to_string(dim_v) + " x " + std::to_string(dim_w));
  std::vector<Vec> slices;
  for (Eigen::Index r = 0; r < u.dim(); ++r) {
    Mat m = tensor_to_matrix(u.basis_vector(r), dim_v, dim_w);
    for (Eigen::Index j = 0; j < dim_w; ++j) slices.push_back(m.col(j));
  }
  return Subspace::span(slices, dim_v);
}

Subspace u_double_prime(const Subspace& u, Eigen::Index dim_v, Eigen::Index dim_w) {
  if (dim_v < 0 || dim_w < 0 || u.ambient() != dim_v * dim_w)
    throw DimensionMismatch("u_double_prime: ambient " + std::to_string(u.ambient()) +
                            " is not " + std::to_string(dim_v) + " x " + std::to_string(dim_w));
  std::vector<Vec> slices;
  for (Eigen::Index r = 0; r < u.dim(); ++r) {
    Mat m = tensor_to_matrix(u.basis_vector(r), dim_v, dim_w);
    for (Eigen::Index i = 0; i < dim_v; ++i) slices.push_back(m.row(i).transpose());
  }
  return Subspace::span(slices, dim_w);
}

ModuleData tensor_module(const ModuleData& a, const ModuleData& b) {
  require_algebra(a.algebra, "tensor_module");
  require_algebra(b.algebra, "tensor_module");
  if (a.algebra != b.algebra && !same_structure(*a.algebra, *b.algebra))
    throw AlgebraMismatch("tensor factors live over different algebras");
  const HopfAlgebra& h = *a.algebra;
  std::vector<Mat> action;
  for (Eigen::Index k = 0; k < h.dim; ++k) {
    Mat m = Mat::Zero(a.dim * b.dim, a.dim * b.dim);
    for (const auto& t : h.comult[static_cast<size_t>(k)])
      m += t.c * kron(a.action[static_cast<size_t>(t.i)], b.action[static_cast<size_t>(t.j)]);
    action.push_back(std::move(m));
  }
  return ModuleData::make(a.algebra, std::move(action));
}

ModuleData extend_scalars(const ModuleData& m, const FieldDescriptor& extension) {
  require_algebra(m.algebra, "extend_scalars");
  if (!field_extends(extension, m.algebra->field))
    throw UnsupportedExtension("cannot extend " + m.algebra->field.str() + " to " +
                               extension.str());
  auto big = std::make_shared<HopfAlgebra>(extend_scalars(*m.algebra, extension));
  std::vector<Mat> action;
  for (const Mat& g : m.action) {
    Mat e(g.rows(), g.cols());
    for (Eigen::Index r = 0; r < g.rows(); ++r)
      for (Eigen::Index c = 0; c < g.cols(); ++c) e(r, c) = g(r, c).embedded_into(extension);
    action.push_back(std::move(e));
  }
  return ModuleData::make(std::move(big), std::move(action));
}

bool field_extends(const FieldDescriptor& target, const FieldDescriptor& base) {
  if (target == base) return true;
  switch (target.kind()) {
    case FieldKind::Cyclotomic:
      return base == FieldDescriptor::rationals();
    case FieldKind::RationalFunctions:
      return field_extends(target.base(), base);
    default:
      return false;
  }
}

ComputableModule<long> laurent_regular_module(const FieldDescriptor& field) {
  ComputableModule<long> m;
  m.field = field;
  m.grouplike_generators = true;
  m.key_str = [](const long& n) { return "e[" + std::to_string(n) + "]"; };
  m.generators.push_back(
      {"t", false, [](const long& n) { return SparseVec<long>::unit(n + 1); }});
  m.generators.push_back(
      {"t^-1", false, [](const long& n) { return SparseVec<long>::unit(n - 1); }});
  return m;
}

ComputableModule<long> laurent_character_module(const FieldDescriptor& field,
                                                const Scalar& value) {
  if (value.is_zero()) throw PreconditionViolated("character value must be invertible");
  auto check_key = [](long n) {
    if (n != 0) throw ActionNotComputable("character module has the single key 0");
  };
  ComputableModule<long> m;
  m.field = field;
  m.grouplike_generators = true;
  m.key_str = [](const long&) { return std::string("u"); };
  m.generators.push_back({"t", false, [check_key, value](const long& n) {
                            check_key(n);
                            return SparseVec<long>::unit(0, value);
                          }});
  m.generators.push_back({"t^-1", false, [check_key, inv = value.inverse()](const long& n) {
                            check_key(n);
                            return SparseVec<long>::unit(0, inv);
                          }});
  return m;
}

}  // namespace hopfad
