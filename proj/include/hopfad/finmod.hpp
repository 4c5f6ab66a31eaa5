#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "hopfad/computable.hpp"
#include "hopfad/errors.hpp"
#include "hopfad/hopf.hpp"
#include "hopfad/linalg.hpp"

namespace hopfad {

// Finite-dimensional left module over a structure-constant Hopf algebra:
// one action matrix per algebra basis element, applied to column vectors.
struct ModuleData {
  std::shared_ptr<const HopfAlgebra> algebra;
  Eigen::Index dim = 0;
  std::vector<Mat> action;

  // Validates shapes, that the unit acts as the identity, and that the
  // matrices respect the multiplication structure constants.
  static ModuleData make(std::shared_ptr<const HopfAlgebra> algebra, std::vector<Mat> action);

  Mat action_of(const Vec& a) const;           // sum_i a_i action[i]
  Vec apply(const Vec& a, const Vec& v) const; // action_of(a) * v
};

// Ready-made modules.
ModuleData regular_module(std::shared_ptr<const HopfAlgebra> h);  // left multiplication
ModuleData adjoint_module(std::shared_ptr<const HopfAlgebra> h);  // k.v = k_(1) v S(k_(2))
ModuleData trivial_module(std::shared_ptr<const HopfAlgebra> h);  // counit on a line

// Orbit closure verdict for dense modules; mirrors FinitenessVerdict from the
// computable layer but carries an exact Subspace.
struct ModuleOrbitVerdict {
  Finiteness kind = Finiteness::Finite;
  Eigen::Index dim = 0;  // stabilized dimension, or dimension reached at breach
  size_t budget = 0;
  std::vector<Eigen::Index> level_dims;
  Subspace space;

  bool finite() const { return kind == Finiteness::Finite; }
};

// Level-synchronous closure of span(seeds) under all basis-element actions.
ModuleOrbitVerdict orbit_closure(const ModuleData& m, const std::vector<Vec>& seeds,
                                 size_t budget);

// The whole space, returned after certifying that every basis orbit
// stabilizes within the module dimension.
Subspace locally_finite_part(const ModuleData& m);

// For U inside the flat tensor space V (x) W (index i*dim_w + j): the smallest
// X with U contained in X (x) W, and the smallest Y with U contained in
// V (x) Y.  Computed by slicing each basis tensor along the other leg.
Subspace u_prime(const Subspace& u, Eigen::Index dim_v, Eigen::Index dim_w);
Subspace u_double_prime(const Subspace& u, Eigen::Index dim_v, Eigen::Index dim_w);

// Tensor product module: a basis element acts through its comultiplication,
// legs acting on the two factors.
ModuleData tensor_module(const ModuleData& a, const ModuleData& b);

// Same module with coefficients reinterpreted in the extension field; the
// algebra handle is replaced by its extended form.
ModuleData extend_scalars(const ModuleData& m, const FieldDescriptor& extension);

// True when `target` contains `base` among the supported extension pairs:
// equal fields, rationals inside a cyclotomic field, and any supported base
// inside rational functions over it.
bool field_extends(const FieldDescriptor& target, const FieldDescriptor& base);

// Modules over the group algebra of the integers, k[t, t^-1], with keys in Z.
// The regular module shifts keys; a character module is one-dimensional on
// key 0 with t acting by the given invertible value.
ComputableModule<long> laurent_regular_module(const FieldDescriptor& field);
ComputableModule<long> laurent_character_module(const FieldDescriptor& field,
                                                const Scalar& value);

namespace detail {

inline void require_same_field(const FieldDescriptor& a, const FieldDescriptor& b) {
  if (!(a == b))
    throw AlgebraMismatch("modules live over different fields: " + a.str() + " vs " + b.str());
}

template <class A, class B>
void require_same_generator_names(const A& a, const B& b) {
  bool ok = a.generators.size() == b.generators.size();
  for (size_t i = 0; ok && i < a.generators.size(); ++i)
    ok = a.generators[i].name == b.generators[i].name &&
         a.generators[i].coefficient_subalgebra == b.generators[i].coefficient_subalgebra;
  if (!ok) throw AlgebraMismatch("modules have different algebra generator lists");
}

}  // namespace detail

// Direct sum of two computable modules over the same algebra; keys are tagged
// with the side, 0 for the first summand and 1 for the second.
template <class Key>
ComputableModule<std::pair<int, Key>> direct_sum(const ComputableModule<Key>& a,
                                                 const ComputableModule<Key>& b) {
  detail::require_same_field(a.field, b.field);
  detail::require_same_generator_names(a, b);
  ComputableModule<std::pair<int, Key>> out;
  out.field = a.field;
  out.grouplike_generators = a.grouplike_generators && b.grouplike_generators;
  out.key_str = [pa = a.key_str, pb = b.key_str](const std::pair<int, Key>& k) {
    return (k.first == 0 ? "l:" + pa(k.second) : "r:" + pb(k.second));
  };
  for (size_t g = 0; g < a.generators.size(); ++g) {
    GeneratorAction<std::pair<int, Key>> act;
    act.name = a.generators[g].name;
    act.coefficient_subalgebra = a.generators[g].coefficient_subalgebra;
    act.act = [fa = a.generators[g].act, fb = b.generators[g].act](const std::pair<int, Key>& k) {
      SparseVec<std::pair<int, Key>> out;
      SparseVec<Key> img = k.first == 0 ? fa(k.second) : fb(k.second);
      for (const auto& [t, c] : img.terms()) out.add({k.first, t}, c);
      return out;
    };
    out.generators.push_back(std::move(act));
  }
  return out;
}

// Tensor product of computable modules whose generators all act as
// grouplikes, so each generator acts diagonally on key pairs.  This covers
// group-algebra actions; general comultiplications need the dense path.
template <class K1, class K2>
ComputableModule<std::pair<K1, K2>> tensor_module(const ComputableModule<K1>& a,
                                                  const ComputableModule<K2>& b) {
  detail::require_same_field(a.field, b.field);
  detail::require_same_generator_names(a, b);
  if (!a.grouplike_generators || !b.grouplike_generators)
    throw PreconditionViolated(
        "computable tensor modules need grouplike generator actions on both factors");
  ComputableModule<std::pair<K1, K2>> out;
  out.field = a.field;
  out.grouplike_generators = true;
  out.key_str = [pa = a.key_str, pb = b.key_str](const std::pair<K1, K2>& k) {
    return pa(k.first) + "(x)" + pb(k.second);
  };
  for (size_t g = 0; g < a.generators.size(); ++g) {
    GeneratorAction<std::pair<K1, K2>> act;
    act.name = a.generators[g].name;
    act.coefficient_subalgebra = a.generators[g].coefficient_subalgebra;
    act.act = [fa = a.generators[g].act, fb = b.generators[g].act](const std::pair<K1, K2>& k) {
      SparseVec<std::pair<K1, K2>> out;
      SparseVec<K1> left = fa(k.first);
      SparseVec<K2> right = fb(k.second);
      for (const auto& [x, cx] : left.terms())
        for (const auto& [y, cy] : right.terms()) out.add({x, y}, cx * cy);
      return out;
    };
    out.generators.push_back(std::move(act));
  }
  return out;
}

// Same keys and rules with every coefficient embedded into the extension.
template <class Key>
ComputableModule<Key> extend_scalars(const ComputableModule<Key>& m,
                                     const FieldDescriptor& extension) {
  if (!field_extends(extension, m.field))
    throw UnsupportedExtension("cannot extend " + m.field.str() + " to " + extension.str());
  ComputableModule<Key> out;
  out.field = extension;
  out.grouplike_generators = m.grouplike_generators;
  out.key_str = m.key_str;
  for (const auto& g : m.generators) {
    GeneratorAction<Key> act;
    act.name = g.name;
    act.coefficient_subalgebra = g.coefficient_subalgebra;
    act.act = [f = g.act, extension](const Key& k) {
      SparseVec<Key> out;
      SparseVec<Key> img = f(k);
      for (const auto& [t, c] : img.terms()) out.add(t, c.embedded_into(extension));
      return out;
    };
    out.generators.push_back(std::move(act));
  }
  return out;
}

}  // namespace hopfad
