#pragma once

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hopfad/computable.hpp"
#include "hopfad/scalar.hpp"
#include "hopfad/sparse.hpp"

namespace hopfad {

// Normal monomial F^f E^e K^k.  The rewrite rules push K-type letters to the
// right and E past F, so normal words have all F's first, then E's, then a
// power of K (negative k meaning inverse powers).
struct PBWKey {
  long f = 0;
  long e = 0;
  long k = 0;
  auto operator<=>(const PBWKey&) const = default;
};

std::string pbw_key_str(const PBWKey& m);

using PBWElement = SparseVec<PBWKey>;
using PBWPairKey = std::pair<PBWKey, PBWKey>;
using PBWTensor = SparseVec<PBWPairKey>;

std::string pbw_element_str(const PBWElement& x);

enum class PBWLetter { F, E, K, Kinv };

// Quantized enveloping algebra of sl2 presented by generators E, F, K, K^-1
// and directed rewrite rules, with optional quotient data: truncation kills
// E^n and F^n, the K modulus imposes K^n = 1.  Immutable after construction;
// construction runs a critical-pair self-test over the rule overlaps.
class PresentedAlgebra {
 public:
  static PresentedAlgebra uq_sl2(const FieldDescriptor& field, const Scalar& q);
  // q must be a primitive n-th root of unity, n odd >= 3
  static PresentedAlgebra uq_sl2_quotient(long n, const FieldDescriptor& field,
                                          const Scalar& q);
  // quotient with K^n = 1 on top; finite dimension n^3
  static PresentedAlgebra uq_sl2_finite(long n, const FieldDescriptor& field,
                                        const Scalar& q);

  const FieldDescriptor& field() const { return field_; }
  const Scalar& q() const { return q_; }
  std::optional<long> truncation() const { return trunc_; }
  std::optional<long> k_modulus() const { return kmod_; }

  PBWElement one() const { return PBWElement::unit(PBWKey{}); }
  PBWElement gen(PBWLetter g) const;
  // validates exponent ranges against the quotient data
  PBWElement element(PBWKey m, Scalar c = Scalar(1)) const;

  // full reduction of a word in the generators (letter, exponent >= 0 pairs)
  PBWElement normal_form(const std::vector<std::pair<PBWLetter, long>>& word) const;

  PBWElement multiply(const PBWElement& x, const PBWElement& y) const;
  PBWTensor coproduct(const PBWElement& x) const;
  Scalar counit(const PBWElement& x) const;
  PBWElement antipode(const PBWElement& x) const;

  PBWTensor tensor_multiply(const PBWTensor& x, const PBWTensor& y) const;
  PBWTensor tensor_of(const PBWElement& x, const PBWElement& y) const;

  // h . v  =  sum h_(1) v S(h_(2))
  PBWElement adjoint(const PBWElement& h, const PBWElement& v) const;

  // ambiguity overlaps of the rule set reduced both ways; throws on mismatch
  void confluence_self_test() const;

 private:
  PresentedAlgebra(FieldDescriptor field, Scalar q, std::optional<long> trunc,
                   std::optional<long> kmod);

  using Word = std::vector<PBWLetter>;
  PBWElement reduce_word(const Word& w, const Scalar& coeff) const;
  PBWElement monomial_product(const PBWKey& a, const PBWKey& b) const;
  PBWTensor coproduct_monomial(const PBWKey& m) const;
  PBWElement antipode_monomial(const PBWKey& m) const;
  static Word key_to_word(const PBWKey& m);

  FieldDescriptor field_;
  Scalar q_;
  Scalar q_inv_;
  Scalar comm_inv_;  // 1 / (q - q^-1)
  std::optional<long> trunc_;
  std::optional<long> kmod_;

  // memoized monomial products, coproducts and antipodes; shared across
  // copies, which is sound because the rule data is immutable
  struct Caches;
  std::shared_ptr<Caches> caches_;
};

// Adjoint-action module on the monomial basis.  K-type generators are tagged
// as the coefficient subalgebra, so closures can iterate over k[K^{+-1}]
// alone when asked.
ComputableModule<PBWKey> pbw_adjoint_module(std::shared_ptr<const PresentedAlgebra> alg);

}  // namespace hopfad
