#include "hopfad/dietzmann.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <utility>

#include "hopfad/errors.hpp"

namespace hopfad {

namespace {

void require_window_vec(const WindowedAlgebra& w, const Vec& v) {
  if (v.rows() != w.dim())
    throw DimensionMismatch("element length " + std::to_string(v.rows()) +
                            " does not match the window dimension " +
                            std::to_string(w.dim()));
}

// --------------------------------------------------------------------------
// Dense ambient: the whole of a finite-dimensional Hopf algebra.

class DenseWindow final : public WindowedAlgebra {
 public:
  explicit DenseWindow(std::shared_ptr<const HopfAlgebra> h) : h_(std::move(h)) {
    if (!h_) throw PreconditionViolated("dense_window needs an algebra");
  }

  const FieldDescriptor& field() const override { return h_->field; }
  Eigen::Index dim() const override { return h_->dim; }
  std::string basis_label(Eigen::Index i) const override { return h_->basis_label(i); }
  Vec one() const override { return h_->unit; }

  Vec mul(const Vec& a, const Vec& b) const override { return h_->multiply(a, b); }
  Vec ad(const Vec& a, const Vec& b) const override { return h_->adjoint_action(a, b); }

  Mat comult_rows(const Vec& c) const override {
    return tensor_to_matrix(h_->comultiply(c), h_->dim, h_->dim);
  }

  std::vector<Vec> ad_probes() const override {
    std::vector<Vec> out;
    for (Eigen::Index i = 0; i < h_->dim; ++i) {
      Vec e = Vec::Zero(h_->dim);
      e(i) = Scalar(1);
      out.push_back(std::move(e));
    }
    return out;
  }

 private:
  std::shared_ptr<const HopfAlgebra> h_;
};

// --------------------------------------------------------------------------
// Group ambient: the span of a word-length ball inside a group algebra.

class GroupWindow final : public WindowedAlgebra {
 public:
  GroupWindow(std::shared_ptr<const GroupProvider> g, long length,
              FieldDescriptor field)
      : group_(std::move(g)), field_(std::move(field)) {
    if (!group_) throw PreconditionViolated("group_window needs a provider");
    if (length < 1)
      throw PreconditionViolated("the window must contain the group generators");
    keys_ = group_->elements_up_to(length);
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(keys_.size()); ++i)
      index_[keys_[static_cast<size_t>(i)]] = i;
  }

  const FieldDescriptor& field() const override { return field_; }
  Eigen::Index dim() const override { return static_cast<Eigen::Index>(keys_.size()); }
  std::string basis_label(Eigen::Index i) const override {
    return keys_.at(static_cast<size_t>(i));
  }
  Vec one() const override { return basis_element(key_index(group_->identity())); }

  Vec mul(const Vec& a, const Vec& b) const override {
    return bilinear(a, b, [&](const std::string& g, const std::string& h) {
      return group_->multiply(g, h);
    });
  }

  Vec ad(const Vec& a, const Vec& b) const override {
    return bilinear(a, b, [&](const std::string& g, const std::string& h) {
      return group_->multiply(group_->multiply(g, h), group_->inverse(g));
    });
  }

  Mat comult_rows(const Vec& c) const override {
    require_window_vec(*this, c);
    Mat m = Mat::Zero(dim(), dim());
    for (Eigen::Index i = 0; i < dim(); ++i) m(i, i) = c(i);
    return m;
  }

  std::vector<Vec> ad_probes() const override {
    std::vector<Vec> out;
    std::vector<std::string> seen;
    for (const std::string& g : group_->generators())
      for (const std::string& u : {g, group_->inverse(g)})
        if (std::find(seen.begin(), seen.end(), u) == seen.end()) {
          seen.push_back(u);
          out.push_back(basis_element(key_index(u)));
        }
    return out;
  }

 private:
  Eigen::Index key_index(const std::string& key) const {
    auto it = index_.find(key);
    if (it == index_.end())
      throw WindowOverflow("'" + key + "' lies outside the group window");
    return it->second;
  }

  template <class Op>
  Vec bilinear(const Vec& a, const Vec& b, Op&& op) const {
    require_window_vec(*this, a);
    require_window_vec(*this, b);
    Vec out = Vec::Zero(dim());
    for (Eigen::Index i = 0; i < dim(); ++i) {
      if (a(i).is_zero()) continue;
      for (Eigen::Index j = 0; j < dim(); ++j) {
        if (b(j).is_zero()) continue;
        Eigen::Index k = key_index(op(keys_[static_cast<size_t>(i)],
                                      keys_[static_cast<size_t>(j)]));
        out(k) += a(i) * b(j);
      }
    }
    return out;
  }

  std::shared_ptr<const GroupProvider> group_;
  FieldDescriptor field_;
  std::vector<std::string> keys_;
  std::map<std::string, Eigen::Index> index_;
};

// --------------------------------------------------------------------------
// PBW ambient: a box of normal monomials in a presented algebra.

class PbwWindow final : public WindowedAlgebra {
 public:
  PbwWindow(std::shared_ptr<const PresentedAlgebra> p, long max_f, long max_e,
            long max_k)
      : alg_(std::move(p)) {
    if (!alg_) throw PreconditionViolated("pbw_window needs an algebra");
    if (max_f < 0 || max_e < 0 || max_k < 0)
      throw PreconditionViolated("window bounds must be nonnegative");
    if (alg_->truncation()) {
      max_f = std::min(max_f, *alg_->truncation() - 1);
      max_e = std::min(max_e, *alg_->truncation() - 1);
    }
    long klo = -max_k, khi = max_k;
    if (alg_->k_modulus()) {
      klo = 0;
      khi = std::min(max_k, *alg_->k_modulus() - 1);
    }
    for (long f = 0; f <= max_f; ++f)
      for (long e = 0; e <= max_e; ++e)
        for (long k = klo; k <= khi; ++k) keys_.push_back(PBWKey{f, e, k});
    std::sort(keys_.begin(), keys_.end());
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(keys_.size()); ++i)
      index_[keys_[static_cast<size_t>(i)]] = i;
  }

  const FieldDescriptor& field() const override { return alg_->field(); }
  Eigen::Index dim() const override { return static_cast<Eigen::Index>(keys_.size()); }
  std::string basis_label(Eigen::Index i) const override {
    return pbw_key_str(keys_.at(static_cast<size_t>(i)));
  }
  Vec one() const override {
    Vec v = Vec::Zero(dim());
    v(index_.at(PBWKey{})) = Scalar(1);
    return v;
  }

  Vec mul(const Vec& a, const Vec& b) const override {
    return from_element(alg_->multiply(to_element(a), to_element(b)));
  }

  Vec ad(const Vec& a, const Vec& b) const override {
    return from_element(alg_->adjoint(to_element(a), to_element(b)));
  }

  Mat comult_rows(const Vec& c) const override {
    PBWTensor t = alg_->coproduct(to_element(c));
    std::map<PBWKey, Eigen::Index> extra;
    for (const auto& [pair, coeff] : t.terms()) {
      (void)coeff;
      if (!index_.count(pair.first) && !extra.count(pair.first))
        extra[pair.first] = dim() + static_cast<Eigen::Index>(extra.size());
    }
    Mat m = Mat::Zero(dim() + static_cast<Eigen::Index>(extra.size()), dim());
    for (const auto& [pair, coeff] : t.terms()) {
      auto jt = index_.find(pair.second);
      if (jt == index_.end())
        throw WindowOverflow("second comultiplication leg " +
                             pbw_key_str(pair.second) +
                             " lies outside the monomial window");
      auto it = index_.find(pair.first);
      Eigen::Index row = it != index_.end() ? it->second : extra.at(pair.first);
      m(row, jt->second) += coeff;
    }
    return m;
  }

  std::vector<Vec> ad_probes() const override {
    std::vector<Vec> out;
    for (PBWLetter g : {PBWLetter::E, PBWLetter::F, PBWLetter::K, PBWLetter::Kinv})
      out.push_back(from_element(alg_->gen(g), /*probe=*/true));
    return out;
  }

 private:
  PBWElement to_element(const Vec& v) const {
    require_window_vec(*this, v);
    PBWElement out;
    for (Eigen::Index i = 0; i < dim(); ++i)
      if (!v(i).is_zero())
        out += PBWElement::unit(keys_[static_cast<size_t>(i)], v(i));
    return out;
  }

  Vec from_element(const PBWElement& x, bool probe = false) const {
    Vec out = Vec::Zero(dim());
    for (const auto& [key, coeff] : x.terms()) {
      auto it = index_.find(key);
      if (it == index_.end()) {
        if (probe)
          throw PreconditionViolated("the window must contain the algebra generators");
        throw WindowOverflow("monomial " + pbw_key_str(key) +
                             " lies outside the monomial window");
      }
      out(it->second) = coeff;
    }
    return out;
  }

  std::shared_ptr<const PresentedAlgebra> alg_;
  std::vector<PBWKey> keys_;
  std::map<PBWKey, Eigen::Index> index_;
};

// --------------------------------------------------------------------------
// Greedy decomposition against the concatenated component bases.

class TaggedDecomposer {
 public:
  TaggedDecomposer(const std::vector<Subspace>& components, Eigen::Index ambient)
      : ambient_(ambient) {
    for (size_t j = 0; j < components.size(); ++j)
      for (Eigen::Index r = 0; r < components[j].dim(); ++r) {
        stacked_.push_back(components[j].basis_vector(r));
        tag_.push_back(j);
      }
    parts_ = components.size();
    // forward-eliminate with combination tracking: elim[t] = combo[t] * stacked
    for (size_t r = 0; r < stacked_.size(); ++r) {
      Vec v = stacked_[r];
      Vec comb = Vec::Zero(static_cast<Eigen::Index>(stacked_.size()));
      comb(static_cast<Eigen::Index>(r)) = Scalar(1);
      for (size_t t = 0; t < elim_.size(); ++t) {
        const Scalar& c = v(piv_[t]);
        if (c.is_zero()) continue;
        Scalar coef = c;  // pivots are normalized to 1
        v -= coef * elim_[t];
        comb -= coef * combo_[t];
      }
      Eigen::Index lead = -1;
      for (Eigen::Index i = 0; i < ambient_; ++i)
        if (!v(i).is_zero()) {
          lead = i;
          break;
        }
      if (lead < 0) continue;  // dependent row
      Scalar inv = v(lead).inverse();
      v *= inv;
      comb *= inv;
      // keep pivot order ascending so reduction can scan once
      size_t pos = 0;
      while (pos < piv_.size() && piv_[pos] < lead) ++pos;
      elim_.insert(elim_.begin() + static_cast<long>(pos), std::move(v));
      combo_.insert(combo_.begin() + static_cast<long>(pos), std::move(comb));
      piv_.insert(piv_.begin() + static_cast<long>(pos), lead);
    }
  }

  // Splits x into per-component parts summing to x; empty when x is outside
  // the sum of the components.
  std::optional<std::vector<Vec>> decompose(const Vec& x) const {
    Vec res = x;
    Vec mu = Vec::Zero(static_cast<Eigen::Index>(elim_.size()));
    for (size_t t = 0; t < elim_.size(); ++t) {
      Scalar coef = res(piv_[t]);  // copy: the subtraction rewrites this entry
      if (coef.is_zero()) continue;
      mu(static_cast<Eigen::Index>(t)) = coef;
      res -= coef * elim_[t];
    }
    if (!is_zero_matrix(res)) return std::nullopt;
    Vec lambda = Vec::Zero(static_cast<Eigen::Index>(stacked_.size()));
    for (size_t t = 0; t < elim_.size(); ++t)
      if (!mu(static_cast<Eigen::Index>(t)).is_zero())
        lambda += mu(static_cast<Eigen::Index>(t)) * combo_[t];
    std::vector<Vec> parts(parts_, Vec::Zero(ambient_));
    for (size_t r = 0; r < stacked_.size(); ++r)
      if (!lambda(static_cast<Eigen::Index>(r)).is_zero())
        parts[tag_[r]] += lambda(static_cast<Eigen::Index>(r)) * stacked_[r];
    return parts;
  }

 private:
  Eigen::Index ambient_ = 0;
  size_t parts_ = 0;
  std::vector<Vec> stacked_;
  std::vector<size_t> tag_;
  std::vector<Vec> elim_;
  std::vector<Vec> combo_;
  std::vector<Eigen::Index> piv_;
};

// --------------------------------------------------------------------------
// Family verification helpers.

std::string describe(const WindowedAlgebra& w, const Vec& v) {
  for (Eigen::Index i = 0; i < w.dim(); ++i)
    if (!v(i).is_zero()) return w.basis_label(i);
  return "0";
}

void verify_component(const WindowedAlgebra& w, const Subspace& c, size_t which) {
  const std::string name = "component " + std::to_string(which + 1);
  if (!c.contains(w.one()))
    throw HypothesisViolated(name + " does not contain the unit");
  for (Eigen::Index r = 0; r < c.dim(); ++r)
    for (Eigen::Index s = 0; s < c.dim(); ++s) {
      Vec prod = w.mul(c.basis_vector(r), c.basis_vector(s));
      if (!c.contains(prod))
        throw HypothesisViolated(name + " is not closed under products (basis " +
                                 "pair " + std::to_string(r) + ", " +
                                 std::to_string(s) + ")");
    }
  for (Eigen::Index r = 0; r < c.dim(); ++r) {
    Mat rows = w.comult_rows(c.basis_vector(r));
    for (Eigen::Index i = 0; i < rows.rows(); ++i) {
      Vec row = rows.row(i).transpose();
      if (is_zero_matrix(row)) continue;
      if (!c.contains(row))
        throw HypothesisViolated(
            name + " is not a left coideal: a second comultiplication leg of "
                   "basis vector " +
            std::to_string(r) + " escapes it");
    }
  }
}

void verify_ad_stability(const WindowedAlgebra& w, const Subspace& sum,
                         const std::vector<Vec>& probes,
                         const std::string& how) {
  for (const Vec& p : probes)
    for (Eigen::Index r = 0; r < sum.dim(); ++r) {
      Vec img = w.ad(p, sum.basis_vector(r));
      if (!sum.contains(img))
        throw HypothesisViolated(
            "the adjoint image of '" + describe(w, p) + "' on '" +
            describe(w, sum.basis_vector(r)) + "' leaves the family sum (" +
            how + " check)");
    }
}

}  // namespace

// --------------------------------------------------------------------------
// WindowedAlgebra conveniences.

Eigen::Index WindowedAlgebra::index_of(const std::string& label) const {
  for (Eigen::Index i = 0; i < dim(); ++i)
    if (basis_label(i) == label) return i;
  return -1;
}

Vec WindowedAlgebra::basis_element(Eigen::Index i) const {
  if (i < 0 || i >= dim())
    throw IndexOutOfRange("basis index " + std::to_string(i));
  Vec v = Vec::Zero(dim());
  v(i) = Scalar(1);
  return v;
}

std::shared_ptr<const WindowedAlgebra> dense_window(
    std::shared_ptr<const HopfAlgebra> algebra) {
  return std::make_shared<DenseWindow>(std::move(algebra));
}

std::shared_ptr<const WindowedAlgebra> group_window(
    std::shared_ptr<const GroupProvider> group, long length,
    const FieldDescriptor& field) {
  return std::make_shared<GroupWindow>(std::move(group), length, field);
}

std::shared_ptr<const WindowedAlgebra> pbw_window(
    std::shared_ptr<const PresentedAlgebra> algebra, long max_f, long max_e,
    long max_k) {
  return std::make_shared<PbwWindow>(std::move(algebra), max_f, max_e, max_k);
}

// --------------------------------------------------------------------------
// Families.

Subspace CoidealFamily::sum() const {
  Subspace s = Subspace::zero(ambient ? ambient->dim() : 0);
  for (const Subspace& c : components) s = s + c;
  return s;
}

CoidealFamily make_family(std::shared_ptr<const WindowedAlgebra> ambient,
                          const std::vector<std::vector<Vec>>& component_spans,
                          bool verify_components, AdCheck ad_check) {
  if (!ambient) throw PreconditionViolated("make_family needs an ambient algebra");
  if (component_spans.empty())
    throw PreconditionViolated("a family needs at least one component");
  CoidealFamily fam;
  fam.ambient = ambient;
  for (const auto& span : component_spans) {
    for (const Vec& v : span) require_window_vec(*ambient, v);
    fam.components.push_back(Subspace::span(span, ambient->dim()));
  }
  fam.component_verified.assign(fam.components.size(), false);
  if (verify_components)
    for (size_t j = 0; j < fam.components.size(); ++j) {
      verify_component(*ambient, fam.components[j], j);
      fam.component_verified[j] = true;
    }
  switch (ad_check) {
    case AdCheck::full:
      verify_ad_stability(*ambient, fam.sum(), ambient->ad_probes(), "generator");
      fam.ad_status = AdStability::verified;
      break;
    case AdCheck::family_only: {
      std::vector<Vec> probes;
      for (const Subspace& c : fam.components)
        for (Eigen::Index r = 0; r < c.dim(); ++r)
          probes.push_back(c.basis_vector(r));
      verify_ad_stability(*ambient, fam.sum(), probes, "component");
      fam.ad_status = AdStability::verified;
      break;
    }
    case AdCheck::none:
      fam.ad_status = AdStability::assumed;
      break;
  }
  return fam;
}

// --------------------------------------------------------------------------
// Product filtration.

FiltrationReport product_filtration(const CoidealFamily& family,
                                    size_t max_steps, size_t budget) {
  if (!family.ambient) throw PreconditionViolated("family has no ambient algebra");
  if (max_steps < 1) throw PreconditionViolated("max_steps must be positive");
  if (budget < 1) throw PreconditionViolated("budget must be positive");
  const WindowedAlgebra& w = *family.ambient;
  Subspace c = family.sum();
  FiltrationReport rep;
  rep.dims.push_back(c.dim());
  Subspace cur = c;
  for (size_t n = 1; n <= max_steps; ++n) {
    Subspace next = cur;
    for (Eigen::Index r = 0; r < c.dim(); ++r)
      for (Eigen::Index s = 0; s < cur.dim(); ++s)
        next.grow(w.mul(c.basis_vector(r), cur.basis_vector(s)));
    rep.dims.push_back(next.dim());
    if (next == cur) {
      rep.stabilized = true;
      rep.s_star = n;
      rep.closure = std::move(next);
      return rep;
    }
    cur = std::move(next);
    if (static_cast<size_t>(cur.dim()) > budget) {
      rep.budget_exceeded = true;
      break;
    }
  }
  rep.closure = std::move(cur);
  return rep;
}

// --------------------------------------------------------------------------
// Straightening.

namespace {

using Monomial = std::vector<MonomialFactor>;

struct StraightenRun {
  const WindowedAlgebra& w;
  const std::vector<Subspace>& components;
  const TaggedDecomposer& decomp;
  std::vector<Monomial>& out;
  size_t steps = 0;
  size_t depth_cap = 0;

  void run(Monomial m, size_t l, size_t lp, size_t depth) {
    if (depth > depth_cap)
      throw Error("straightening exceeded its recursion depth cap");
    ++steps;
    if (lp == l + 1) {
      // adjacent equal components: merge the pair inside the component
      Vec merged = w.mul(m[l].element, m[lp].element);
      if (!components[m[l].component].contains(merged))
        throw HypothesisViolated("component " +
                                 std::to_string(m[l].component + 1) +
                                 " is not closed under products");
      if (is_zero_matrix(merged)) return;
      Monomial shorter;
      shorter.reserve(m.size() - 1);
      for (size_t i = 0; i < m.size(); ++i) {
        if (i == lp) continue;
        if (i == l) shorter.push_back({m[l].component, merged});
        else shorter.push_back(m[i]);
      }
      out.push_back(std::move(shorter));
      return;
    }
    // move the left element of the pair one slot right:
    //   c d = sum_r (a_r . d) u_r   with u_r a basis vector of c's component
    const size_t ci = m[l].component;
    const Subspace& comp = components[ci];
    Mat rows = w.comult_rows(m[l].element);
    for (Eigen::Index i = w.dim(); i < rows.rows(); ++i)
      if (!is_zero_matrix(Vec(rows.row(i).transpose())))
        throw WindowOverflow(
            "a first comultiplication leg escapes the window during "
            "straightening");
    Mat a = Mat::Zero(w.dim(), comp.dim());
    for (Eigen::Index i = 0; i < w.dim(); ++i) {
      Vec row = rows.row(i).transpose();
      if (is_zero_matrix(row)) continue;
      std::optional<Vec> coords = comp.coordinates(row);
      if (!coords)
        throw HypothesisViolated(
            "component " + std::to_string(ci + 1) +
            " is not a left coideal: a comultiplication leg escapes it");
      a.row(i) = coords->transpose();
    }
    for (Eigen::Index r = 0; r < comp.dim(); ++r) {
      Vec ar = a.col(r);
      if (is_zero_matrix(ar)) continue;
      Vec left = w.ad(ar, m[l + 1].element);
      if (is_zero_matrix(left)) continue;
      std::optional<std::vector<Vec>> parts = decomp.decompose(left);
      if (!parts)
        throw HypothesisViolated(
            "an adjoint image leaves the family sum during straightening");
      for (size_t j = 0; j < parts->size(); ++j) {
        if (is_zero_matrix((*parts)[j])) continue;
        Monomial next = m;
        next[l] = {j, (*parts)[j]};
        next[l + 1] = {ci, comp.basis_vector(r)};
        run(std::move(next), l + 1, lp, depth + 1);
      }
    }
  }
};

}  // namespace

StraightenResult straighten(const CoidealFamily& family,
                            const std::vector<MonomialFactor>& monomial) {
  if (!family.ambient) throw PreconditionViolated("family has no ambient algebra");
  const WindowedAlgebra& w = *family.ambient;
  if (monomial.size() < 2)
    throw PreconditionViolated("straightening needs at least two factors");
  for (const MonomialFactor& f : monomial) {
    if (f.component >= family.components.size())
      throw PreconditionViolated("factor component index out of range");
    require_window_vec(w, f.element);
    if (!family.components[f.component].contains(f.element))
      throw PreconditionViolated("a factor lies outside its component");
  }
  // the closest pair of equal component indices, leftmost on ties
  size_t best_l = 0, best_lp = 0;
  size_t best_gap = monomial.size();
  for (size_t l = 0; l < monomial.size(); ++l)
    for (size_t lp = l + 1; lp < monomial.size(); ++lp)
      if (monomial[l].component == monomial[lp].component &&
          lp - l - 1 < best_gap) {
        best_gap = lp - l - 1;
        best_l = l;
        best_lp = lp;
      }
  if (best_gap == monomial.size())
    throw PreconditionViolated(
        "straightening needs a repeated component index; with more factors "
        "than components one always exists");

  StraightenResult res;
  res.value = w.one();
  for (const MonomialFactor& f : monomial) res.value = w.mul(res.value, f.element);

  TaggedDecomposer decomp(family.components, w.dim());
  StraightenRun run{w, family.components, decomp, res.terms, 0,
                    std::max<size_t>(64, 4 * monomial.size() * monomial.size())};
  run.run(monomial, best_l, best_lp, 0);
  res.rewrite_steps = run.steps;

  // certify: the terms multiply back to the input product
  Vec acc = Vec::Zero(w.dim());
  for (const Monomial& term : res.terms) {
    Vec prod = w.one();
    for (const MonomialFactor& f : term) prod = w.mul(prod, f.element);
    acc += prod;
  }
  if (!exact_equal(acc, res.value))
    throw Error("internal: straightening changed the value of the product");
  return res;
}

}  // namespace hopfad
