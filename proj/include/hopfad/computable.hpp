#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hopfad/scalar.hpp"
#include "hopfad/sparse.hpp"

namespace hopfad {

// One algebra generator acting on basis keys.  The action must be finitely
// supported on every key; linear extension is automatic.
template <class Key>
struct GeneratorAction {
  std::string name;
  // marks generators spanning the distinguished coefficient subalgebra, so
  // closures can optionally iterate over that subalgebra alone
  bool coefficient_subalgebra = false;
  std::function<SparseVec<Key>(const Key&)> act;
};

// A module given by generator actions on a (possibly infinite) basis indexed
// by Key.  Nothing is materialized; orbit closures drive all computation.
template <class Key>
struct ComputableModule {
  FieldDescriptor field;
  std::vector<GeneratorAction<Key>> generators;
  std::function<std::string(const Key&)> key_str;
  // set when every generator acts as a grouplike (tensor actions factor)
  bool grouplike_generators = false;
};

enum class Finiteness { Finite, BudgetExceeded };

template <class Key>
struct FinitenessVerdict {
  Finiteness kind = Finiteness::Finite;
  size_t dim = 0;     // stabilized dimension, or dimension reached at breach
  size_t budget = 0;
  std::vector<size_t> level_dims;  // dimension after each closure round
  SparseSpan<Key> space;           // the (partial) orbit span

  bool finite() const { return kind == Finiteness::Finite; }
};

// Level-synchronous closure of span(seeds) under the generator actions.
// Stops with Finite when a round adds nothing, with BudgetExceeded when the
// dimension passes the budget after a completed round.
template <class Key>
FinitenessVerdict<Key> orbit_closure(const ComputableModule<Key>& mod,
                                     const std::vector<SparseVec<Key>>& seeds,
                                     size_t budget,
                                     bool coefficient_generators_only = false) {
  FinitenessVerdict<Key> v;
  v.budget = budget;
  std::vector<SparseVec<Key>> frontier;
  for (const auto& s : seeds)
    if (v.space.grow(s)) frontier.push_back(v.space.basis().back());
  v.level_dims.push_back(v.space.dim());
  auto apply_gen = [&](const GeneratorAction<Key>& g, const SparseVec<Key>& x) {
    SparseVec<Key> out;
    for (const auto& [k, c] : x.terms()) out += c * g.act(k);
    return out;
  };
  while (true) {
    if (v.space.dim() > budget) {
      v.kind = Finiteness::BudgetExceeded;
      v.dim = v.space.dim();
      return v;
    }
    std::vector<SparseVec<Key>> next;
    for (const auto& x : frontier) {
      for (const auto& g : mod.generators) {
        if (coefficient_generators_only && !g.coefficient_subalgebra) continue;
        SparseVec<Key> img = apply_gen(g, x);
        if (v.space.grow(std::move(img))) next.push_back(v.space.basis().back());
      }
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

}  // namespace hopfad
