#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "hopfad/scalar.hpp"

namespace hopfad {

// Sparse vector over an ordered key type.  Terms are kept sorted by key with
// no zero coefficients, so equal values have equal representations.
template <class Key>
class SparseVec {
 public:
  using Term = std::pair<Key, Scalar>;

  SparseVec() = default;

  static SparseVec unit(Key k, Scalar c = Scalar(1)) {
    SparseVec v;
    if (!c.is_zero()) v.terms_.emplace_back(std::move(k), std::move(c));
    return v;
  }

  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  const Term& leading() const {
    if (terms_.empty()) throw Error("leading term of zero vector");
    return terms_.front();
  }

  Scalar coeff(const Key& k) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), k,
                               [](const Term& t, const Key& key) { return t.first < key; });
    if (it != terms_.end() && it->first == k) return it->second;
    return Scalar(0);
  }

  void add(const Key& k, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), k,
                               [](const Term& t, const Key& key) { return t.first < key; });
    if (it != terms_.end() && it->first == k) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    } else {
      terms_.insert(it, {k, c});
    }
  }

  SparseVec& operator+=(const SparseVec& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) {
      terms_ = o.terms_;
      return *this;
    }
    std::vector<Term> merged;
    merged.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.begin();
    auto b = o.terms_.begin();
    while (a != terms_.end() && b != o.terms_.end()) {
      if (a->first < b->first) {
        merged.push_back(*a++);
      } else if (b->first < a->first) {
        merged.push_back(*b++);
      } else {
        Scalar c = a->second + b->second;
        if (!c.is_zero()) merged.emplace_back(a->first, std::move(c));
        ++a;
        ++b;
      }
    }
    merged.insert(merged.end(), a, terms_.end());
    merged.insert(merged.end(), b, o.terms_.end());
    terms_ = std::move(merged);
    return *this;
  }

  SparseVec& operator-=(const SparseVec& o) { return *this += o * Scalar(-1); }

  SparseVec& operator*=(const Scalar& c) {
    if (c.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& t : terms_) t.second *= c;
    return *this;
  }

  friend SparseVec operator+(SparseVec a, const SparseVec& b) { return a += b; }
  friend SparseVec operator-(SparseVec a, const SparseVec& b) { return a -= b; }
  friend SparseVec operator*(SparseVec a, const Scalar& c) { return a *= c; }
  friend SparseVec operator*(const Scalar& c, SparseVec a) { return a *= c; }

  bool operator==(const SparseVec& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (size_t i = 0; i < terms_.size(); ++i)
      if (!(terms_[i].first == o.terms_[i].first) || terms_[i].second != o.terms_[i].second)
        return false;
    return true;
  }
  bool operator!=(const SparseVec& o) const { return !(*this == o); }

 private:
  std::vector<Term> terms_;
};

// Echelonized span of sparse vectors.  Each basis vector is monic in its
// leading (smallest) key, and that pivot key occurs in no other basis vector.
template <class Key>
class SparseSpan {
 public:
  size_t dim() const { return basis_.size(); }
  const std::vector<SparseVec<Key>>& basis() const { return basis_; }

  // Remainder of v after eliminating every pivot key of the span.
  SparseVec<Key> reduce(SparseVec<Key> v) const {
    bool changed = true;
    while (changed && !v.is_zero()) {
      changed = false;
      for (const auto& [k, c] : v.terms()) {
        auto it = pivot_of_.find(k);
        if (it == pivot_of_.end()) continue;
        v -= c * basis_[it->second];
        changed = true;
        break;  // term list mutated; restart the scan
      }
    }
    return v;
  }

  bool contains(const SparseVec<Key>& v) const { return reduce(v).is_zero(); }

  // Coefficients on the echelon basis; empty when v lies outside the span.
  std::optional<std::vector<std::pair<size_t, Scalar>>> coordinates(SparseVec<Key> v) const {
    std::vector<std::pair<size_t, Scalar>> coords;
    bool changed = true;
    while (changed && !v.is_zero()) {
      changed = false;
      for (const auto& [k, c] : v.terms()) {
        auto it = pivot_of_.find(k);
        if (it == pivot_of_.end()) continue;
        coords.emplace_back(it->second, c);
        v -= c * basis_[it->second];
        changed = true;
        break;
      }
    }
    if (!v.is_zero()) return std::nullopt;
    // accumulate repeated basis indices
    std::map<size_t, Scalar> acc;
    for (auto& [i, c] : coords) {
      auto [it, fresh] = acc.emplace(i, c);
      if (!fresh) it->second += c;
    }
    std::vector<std::pair<size_t, Scalar>> out;
    for (auto& [i, c] : acc)
      if (!c.is_zero()) out.emplace_back(i, c);
    return out;
  }

  // Inserts v if independent; true when the dimension grew.
  bool grow(SparseVec<Key> v) {
    v = reduce(std::move(v));
    if (v.is_zero()) return false;
    const auto& [k, c] = v.leading();
    v *= c.inverse();
    // eliminate the new pivot from existing basis vectors
    for (auto& b : basis_) {
      Scalar bc = b.coeff(k);
      if (!bc.is_zero()) b -= bc * v;
    }
    pivot_of_.emplace(v.leading().first, basis_.size());
    basis_.push_back(std::move(v));
    return true;
  }

  bool operator==(const SparseSpan& o) const {
    if (dim() != o.dim()) return false;
    for (const auto& b : basis_)
      if (!o.contains(b)) return false;
    return true;
  }

 private:
  std::vector<SparseVec<Key>> basis_;
  std::map<Key, size_t> pivot_of_;
};

}  // namespace hopfad
