#include "hopfad/pbw.hpp"

#include <array>
#include <mutex>

namespace hopfad {

struct PresentedAlgebra::Caches {
  std::mutex mu;
  std::map<std::pair<PBWKey, PBWKey>, PBWElement> prod;
  std::map<PBWKey, PBWTensor> coprod;
  std::map<PBWKey, PBWElement> antipode;
};

namespace {

int rank(PBWLetter l) {
  switch (l) {
    case PBWLetter::F: return 0;
    case PBWLetter::E: return 1;
    case PBWLetter::K:
    case PBWLetter::Kinv: return 2;
  }
  return 0;
}

bool is_k_type(PBWLetter l) { return l == PBWLetter::K || l == PBWLetter::Kinv; }

bool cancels(PBWLetter x, PBWLetter y) {
  return (x == PBWLetter::K && y == PBWLetter::Kinv) ||
         (x == PBWLetter::Kinv && y == PBWLetter::K);
}

bool pair_reducible(PBWLetter x, PBWLetter y) {
  return cancels(x, y) || rank(x) > rank(y);
}

const char* letter_name(PBWLetter l) {
  switch (l) {
    case PBWLetter::F: return "F";
    case PBWLetter::E: return "E";
    case PBWLetter::K: return "K";
    case PBWLetter::Kinv: return "K^-1";
  }
  return "?";
}

std::string word_str(const std::vector<PBWLetter>& w) {
  std::string s;
  for (auto l : w) {
    if (!s.empty()) s += "*";
    s += letter_name(l);
  }
  return s.empty() ? "1" : s;
}

}  // namespace

std::string pbw_key_str(const PBWKey& m) {
  if (m.f == 0 && m.e == 0 && m.k == 0) return "1";
  std::string out;
  auto app = [&](char g, long p) {
    if (p == 0) return;
    if (!out.empty()) out += "*";
    out += g;
    if (p != 1) out += "^" + std::to_string(p);
  };
  app('F', m.f);
  app('E', m.e);
  app('K', m.k);
  return out;
}

std::string pbw_element_str(const PBWElement& x) {
  if (x.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : x.terms()) {
    if (!out.empty()) out += " + ";
    if (c.is_one())
      out += pbw_key_str(m);
    else if (m == PBWKey{})
      out += "(" + c.str() + ")";
    else
      out += "(" + c.str() + ")*" + pbw_key_str(m);
  }
  return out;
}

PresentedAlgebra::PresentedAlgebra(FieldDescriptor field, Scalar q,
                                   std::optional<long> trunc, std::optional<long> kmod)
    : field_(std::move(field)),
      q_(q.embedded_into(field_)),
      trunc_(trunc),
      kmod_(kmod),
      caches_(std::make_shared<Caches>()) {
  if (q_.is_zero() || (q_ * q_).is_one())
    throw PreconditionViolated("deformation parameter must satisfy q^2 != 1");
  q_inv_ = q_.inverse();
  comm_inv_ = (q_ - q_inv_).inverse();
}

PresentedAlgebra PresentedAlgebra::uq_sl2(const FieldDescriptor& field, const Scalar& q) {
  PresentedAlgebra a(field, q, std::nullopt, std::nullopt);
  a.confluence_self_test();
  return a;
}

namespace {

void require_primitive(const Scalar& q, long n) {
  if (n < 3 || n % 2 == 0)
    throw PreconditionViolated("quotient order must be odd and at least 3, got " +
                               std::to_string(n));
  if (!q.pow(n).is_one())
    throw PreconditionViolated("parameter is not an n-th root of unity for n = " +
                               std::to_string(n));
  for (long d = 1; d < n; ++d)
    if (n % d == 0 && q.pow(d).is_one())
      throw PreconditionViolated("parameter is an n-th root of unity but not primitive");
}

}  // namespace

PresentedAlgebra PresentedAlgebra::uq_sl2_quotient(long n, const FieldDescriptor& field,
                                                   const Scalar& q) {
  PresentedAlgebra a(field, q, n, std::nullopt);
  require_primitive(a.q_, n);
  a.confluence_self_test();
  return a;
}

PresentedAlgebra PresentedAlgebra::uq_sl2_finite(long n, const FieldDescriptor& field,
                                                 const Scalar& q) {
  PresentedAlgebra a(field, q, n, n);
  require_primitive(a.q_, n);
  a.confluence_self_test();
  return a;
}

PBWElement PresentedAlgebra::gen(PBWLetter g) const {
  switch (g) {
    case PBWLetter::F: return element(PBWKey{1, 0, 0});
    case PBWLetter::E: return element(PBWKey{0, 1, 0});
    case PBWLetter::K: return element(PBWKey{0, 0, 1});
    case PBWLetter::Kinv: return element(PBWKey{0, 0, -1});
  }
  throw Error("unreachable");
}

PBWElement PresentedAlgebra::element(PBWKey m, Scalar c) const {
  if (m.f < 0 || m.e < 0)
    throw PreconditionViolated("negative exponent on a nilpotent-type generator");
  if (trunc_ && (m.f >= *trunc_ || m.e >= *trunc_)) return PBWElement();
  if (kmod_) m.k = ((m.k % *kmod_) + *kmod_) % *kmod_;
  return PBWElement::unit(m, c.embedded_into(field_));
}

PresentedAlgebra::Word PresentedAlgebra::key_to_word(const PBWKey& m) {
  Word w;
  for (long i = 0; i < m.f; ++i) w.push_back(PBWLetter::F);
  for (long i = 0; i < m.e; ++i) w.push_back(PBWLetter::E);
  for (long i = 0; i < (m.k >= 0 ? m.k : -m.k); ++i)
    w.push_back(m.k >= 0 ? PBWLetter::K : PBWLetter::Kinv);
  return w;
}

namespace {

// One rewrite step at position i; returns the replacement combination.
struct RuleResult {
  std::vector<std::pair<std::vector<PBWLetter>, Scalar>> terms;
};

}  // namespace

PBWElement PresentedAlgebra::reduce_word(const Word& w0, const Scalar& c0) const {
  PBWElement out;
  std::vector<std::pair<Word, Scalar>> stack;
  stack.emplace_back(w0, c0.embedded_into(field_));
  Scalar q2 = q_ * q_;
  Scalar qm2 = q_inv_ * q_inv_;
  while (!stack.empty()) {
    auto [w, c] = std::move(stack.back());
    stack.pop_back();
    if (c.is_zero()) continue;
    if (trunc_) {
      long run = 0;
      PBWLetter prev = PBWLetter::K;
      bool dead = false;
      for (auto l : w) {
        run = (!is_k_type(l) && l == prev) ? run + 1 : 1;
        prev = l;
        if (!is_k_type(l) && run >= *trunc_) {
          dead = true;
          break;
        }
      }
      if (dead) continue;
    }
    size_t i = 0;
    bool reduced = false;
    for (; i + 1 < w.size(); ++i) {
      PBWLetter x = w[i], y = w[i + 1];
      if (!pair_reducible(x, y)) continue;
      reduced = true;
      if (cancels(x, y)) {
        Word nw(w.begin(), w.begin() + i);
        nw.insert(nw.end(), w.begin() + i + 2, w.end());
        stack.emplace_back(std::move(nw), c);
      } else if (x == PBWLetter::E && y == PBWLetter::F) {
        // E F = F E + (K - K^-1)/(q - q^-1)
        Word swp = w;
        std::swap(swp[i], swp[i + 1]);
        stack.emplace_back(std::move(swp), c);
        Word wk(w.begin(), w.begin() + i);
        wk.push_back(PBWLetter::K);
        wk.insert(wk.end(), w.begin() + i + 2, w.end());
        stack.emplace_back(std::move(wk), c * comm_inv_);
        Word wki(w.begin(), w.begin() + i);
        wki.push_back(PBWLetter::Kinv);
        wki.insert(wki.end(), w.begin() + i + 2, w.end());
        stack.emplace_back(std::move(wki), -(c * comm_inv_));
      } else {
        // K-type letter moves right across E or F with a q-power
        Scalar factor = (x == PBWLetter::K) ? (y == PBWLetter::E ? q2 : qm2)
                                            : (y == PBWLetter::E ? qm2 : q2);
        Word swp = w;
        std::swap(swp[i], swp[i + 1]);
        stack.emplace_back(std::move(swp), c * factor);
      }
      break;
    }
    if (reduced) continue;
    // irreducible: blocks F^a E^c then a uniform K-type tail
    PBWKey m;
    for (auto l : w) {
      switch (l) {
        case PBWLetter::F: ++m.f; break;
        case PBWLetter::E: ++m.e; break;
        case PBWLetter::K: ++m.k; break;
        case PBWLetter::Kinv: --m.k; break;
      }
    }
    if (trunc_ && (m.f >= *trunc_ || m.e >= *trunc_)) continue;
    if (kmod_) m.k = ((m.k % *kmod_) + *kmod_) % *kmod_;
    out.add(m, c);
  }
  return out;
}

PBWElement PresentedAlgebra::normal_form(
    const std::vector<std::pair<PBWLetter, long>>& word) const {
  Word w;
  for (const auto& [l, p] : word) {
    if (p < 0) {
      if (l == PBWLetter::K)
        for (long i = 0; i < -p; ++i) w.push_back(PBWLetter::Kinv);
      else if (l == PBWLetter::Kinv)
        for (long i = 0; i < -p; ++i) w.push_back(PBWLetter::K);
      else
        throw PreconditionViolated("negative exponent on a nilpotent-type generator");
    } else {
      for (long i = 0; i < p; ++i) w.push_back(l);
    }
  }
  return reduce_word(w, Scalar(1));
}

PBWElement PresentedAlgebra::monomial_product(const PBWKey& a, const PBWKey& b) const {
  {
    std::lock_guard<std::mutex> lock(caches_->mu);
    auto it = caches_->prod.find({a, b});
    if (it != caches_->prod.end()) return it->second;
  }
  Word w = key_to_word(a);
  Word wb = key_to_word(b);
  w.insert(w.end(), wb.begin(), wb.end());
  PBWElement r = reduce_word(w, Scalar(1));
  std::lock_guard<std::mutex> lock(caches_->mu);
  return caches_->prod.emplace(std::make_pair(a, b), std::move(r)).first->second;
}

PBWElement PresentedAlgebra::multiply(const PBWElement& x, const PBWElement& y) const {
  PBWElement out;
  for (const auto& [a, ca] : x.terms())
    for (const auto& [b, cb] : y.terms()) out += (ca * cb) * monomial_product(a, b);
  return out;
}

PBWTensor PresentedAlgebra::tensor_of(const PBWElement& x, const PBWElement& y) const {
  PBWTensor out;
  for (const auto& [a, ca] : x.terms())
    for (const auto& [b, cb] : y.terms()) out.add({a, b}, ca * cb);
  return out;
}

PBWTensor PresentedAlgebra::tensor_multiply(const PBWTensor& x, const PBWTensor& y) const {
  PBWTensor out;
  for (const auto& [p, cp] : x.terms()) {
    for (const auto& [r, cr] : y.terms()) {
      PBWElement left = monomial_product(p.first, r.first);
      PBWElement right = monomial_product(p.second, r.second);
      Scalar c = cp * cr;
      for (const auto& [k1, c1] : left.terms())
        for (const auto& [k2, c2] : right.terms()) out.add({k1, k2}, c * c1 * c2);
    }
  }
  return out;
}

PBWTensor PresentedAlgebra::coproduct_monomial(const PBWKey& m) const {
  {
    std::lock_guard<std::mutex> lock(caches_->mu);
    auto it = caches_->coprod.find(m);
    if (it != caches_->coprod.end()) return it->second;
  }
  // Delta F = F (x) K^-1 + 1 (x) F ; Delta E = E (x) 1 + K (x) E ;
  // Delta K^k = K^k (x) K^k
  PBWTensor dF;
  dF.add({PBWKey{1, 0, 0}, element(PBWKey{0, 0, -1}).leading().first}, Scalar(1));
  dF.add({PBWKey{}, PBWKey{1, 0, 0}}, Scalar(1));
  PBWTensor dE;
  dE.add({PBWKey{0, 1, 0}, PBWKey{}}, Scalar(1));
  dE.add({element(PBWKey{0, 0, 1}).leading().first, PBWKey{0, 1, 0}}, Scalar(1));

  PBWTensor acc;
  PBWKey kk = element(PBWKey{0, 0, m.k}).is_zero() ? PBWKey{} : element(PBWKey{0, 0, m.k}).leading().first;
  acc.add({kk, kk}, Scalar(1));
  for (long i = 0; i < m.e; ++i) acc = tensor_multiply(dE, acc);
  for (long i = 0; i < m.f; ++i) acc = tensor_multiply(dF, acc);
  std::lock_guard<std::mutex> lock(caches_->mu);
  return caches_->coprod.emplace(m, std::move(acc)).first->second;
}

PBWTensor PresentedAlgebra::coproduct(const PBWElement& x) const {
  PBWTensor out;
  for (const auto& [m, c] : x.terms()) {
    PBWTensor dm = coproduct_monomial(m);
    for (const auto& [p, cp] : dm.terms()) out.add(p, c * cp);
  }
  return out;
}

Scalar PresentedAlgebra::counit(const PBWElement& x) const {
  Scalar s = Scalar::zero(field_);
  for (const auto& [m, c] : x.terms())
    if (m.f == 0 && m.e == 0) s += c;  // counit kills E and F, sends K to 1
  return s;
}

PBWElement PresentedAlgebra::antipode_monomial(const PBWKey& m) const {
  {
    std::lock_guard<std::mutex> lock(caches_->mu);
    auto it = caches_->antipode.find(m);
    if (it != caches_->antipode.end()) return it->second;
  }
  // antihomomorphism on F^f E^e K^k: S(K)^k S(E)^e S(F)^f with
  // S(E) = -K^-1 E, S(F) = -F K, S(K) = K^-1
  PBWElement sk = element(PBWKey{0, 0, -m.k});
  PBWElement se = reduce_word({PBWLetter::Kinv, PBWLetter::E}, Scalar(-1));
  PBWElement sf = reduce_word({PBWLetter::F, PBWLetter::K}, Scalar(-1));
  PBWElement acc = sk;
  for (long i = 0; i < m.e; ++i) acc = multiply(acc, se);
  for (long i = 0; i < m.f; ++i) acc = multiply(acc, sf);
  std::lock_guard<std::mutex> lock(caches_->mu);
  return caches_->antipode.emplace(m, std::move(acc)).first->second;
}

PBWElement PresentedAlgebra::antipode(const PBWElement& x) const {
  PBWElement out;
  for (const auto& [m, c] : x.terms()) out += c * antipode_monomial(m);
  return out;
}

PBWElement PresentedAlgebra::adjoint(const PBWElement& h, const PBWElement& v) const {
  PBWTensor dh = coproduct(h);
  PBWElement out;
  for (const auto& [p, c] : dh.terms()) {
    PBWElement t = multiply(PBWElement::unit(p.first), v);
    t = multiply(t, antipode_monomial(p.second));
    out += c * t;
  }
  return out;
}

void PresentedAlgebra::confluence_self_test() const {
  const std::array<PBWLetter, 4> letters{PBWLetter::F, PBWLetter::E, PBWLetter::K,
                                         PBWLetter::Kinv};
  auto one_step = [&](const Word& w, size_t i) {
    // the same case analysis as reduce_word, applied at a chosen position
    std::vector<std::pair<Word, Scalar>> terms;
    PBWLetter x = w[i], y = w[i + 1];
    Scalar q2 = q_ * q_, qm2 = q_inv_ * q_inv_;
    if (cancels(x, y)) {
      Word nw(w.begin(), w.begin() + i);
      nw.insert(nw.end(), w.begin() + i + 2, w.end());
      terms.emplace_back(nw, Scalar(1));
    } else if (x == PBWLetter::E && y == PBWLetter::F) {
      Word swp = w;
      std::swap(swp[i], swp[i + 1]);
      terms.emplace_back(swp, Scalar(1));
      Word wk(w.begin(), w.begin() + i);
      wk.push_back(PBWLetter::K);
      wk.insert(wk.end(), w.begin() + i + 2, w.end());
      terms.emplace_back(wk, comm_inv_);
      Word wki(w.begin(), w.begin() + i);
      wki.push_back(PBWLetter::Kinv);
      wki.insert(wki.end(), w.begin() + i + 2, w.end());
      terms.emplace_back(wki, -comm_inv_);
    } else {
      Scalar factor = (x == PBWLetter::K) ? (y == PBWLetter::E ? q2 : qm2)
                                          : (y == PBWLetter::E ? qm2 : q2);
      Word swp = w;
      std::swap(swp[i], swp[i + 1]);
      terms.emplace_back(swp, factor);
    }
    return terms;
  };
  auto settle = [&](const std::vector<std::pair<Word, Scalar>>& terms) {
    PBWElement out;
    for (const auto& [w, c] : terms) out += reduce_word(w, c);
    return out;
  };
  for (PBWLetter x : letters)
    for (PBWLetter y : letters)
      for (PBWLetter z : letters) {
        if (!pair_reducible(x, y) || !pair_reducible(y, z)) continue;
        Word w{x, y, z};
        PBWElement left = settle(one_step(w, 0));
        PBWElement right = settle(one_step(w, 1));
        if (left != right)
          throw Error("rewrite rules not confluent at overlap " + word_str(w));
      }
  if (trunc_) {
    // overlaps of the nilpotency rules with the straightening rule
    long n = *trunc_;
    Word enf(static_cast<size_t>(n), PBWLetter::E);
    enf.push_back(PBWLetter::F);
    PBWElement a = settle(one_step(enf, static_cast<size_t>(n) - 1));
    if (!a.is_zero())
      throw Error("rewrite rules not confluent at overlap E^n*F");
    Word efn{PBWLetter::E};
    efn.insert(efn.end(), static_cast<size_t>(n), PBWLetter::F);
    PBWElement b = settle(one_step(efn, 0));
    if (!b.is_zero())
      throw Error("rewrite rules not confluent at overlap E*F^n");
  }
  if (kmod_) {
    // K^n = 1 must commute with the q-power moves, which needs q^(2n) = 1
    long n = *kmod_;
    Word kne(static_cast<size_t>(n), PBWLetter::K);
    kne.push_back(PBWLetter::E);
    if (reduce_word(kne, Scalar(1)) != gen(PBWLetter::E))
      throw Error("K-modulus incompatible with the straightening rules");
  }
  // spot-check associativity of the reduced product
  std::vector<PBWKey> probes{PBWKey{1, 1, 1}, PBWKey{0, 2, -1}, PBWKey{2, 0, 1},
                             PBWKey{1, 2, 0}};
  for (const auto& a : probes)
    for (const auto& b : probes)
      for (const auto& c : probes) {
        PBWElement ea = element(a), eb = element(b), ec = element(c);
        if (multiply(multiply(ea, eb), ec) != multiply(ea, multiply(eb, ec)))
          throw Error("reduced product failed associativity spot check");
      }
}

ComputableModule<PBWKey> pbw_adjoint_module(std::shared_ptr<const PresentedAlgebra> alg) {
  ComputableModule<PBWKey> mod;
  mod.field = alg->field();
  mod.key_str = [](const PBWKey& k) { return pbw_key_str(k); };
  auto add = [&](const std::string& name, PBWLetter l, bool coeff_sub) {
    GeneratorAction<PBWKey> g;
    g.name = name;
    g.coefficient_subalgebra = coeff_sub;
    g.act = [alg, l](const PBWKey& k) {
      return alg->adjoint(alg->gen(l), PBWElement::unit(k));
    };
    mod.generators.push_back(std::move(g));
  };
  add("E", PBWLetter::E, false);
  add("F", PBWLetter::F, false);
  add("K", PBWLetter::K, true);
  add("K^-1", PBWLetter::Kinv, true);
  return mod;
}

}  // namespace hopfad
