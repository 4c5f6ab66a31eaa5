#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "hopfad/errors.hpp"

namespace hopfad {

enum class FieldKind { Rationals, PrimeField, Cyclotomic, RationalFunctions };

// Value-semantic description of a computable field.  Rational function fields
// carry their variable name and a (non-ratfunc) base field.
class FieldDescriptor {
 public:
  FieldDescriptor() = default;

  static FieldDescriptor rationals();
  static FieldDescriptor prime_field(unsigned long p);
  static FieldDescriptor cyclotomic(unsigned long n);
  static FieldDescriptor rational_functions(std::string var = "q",
                                            FieldDescriptor base = rationals());

  // Grammar: "Q" | "rationals" | "fp:P" | "cyclotomic:N" | "ratfunc[:var[:base]]".
  static FieldDescriptor parse(const std::string& text);

  FieldKind kind() const { return kind_; }
  unsigned long p() const { return p_; }
  unsigned long n() const { return n_; }
  const std::string& var() const { return var_; }
  const FieldDescriptor& base() const;

  // 0 for everything except prime fields.
  unsigned long characteristic() const;

  std::string str() const;

  bool operator==(const FieldDescriptor& o) const;
  bool operator!=(const FieldDescriptor& o) const { return !(*this == o); }

 private:
  FieldKind kind_ = FieldKind::Rationals;
  unsigned long p_ = 0;
  unsigned long n_ = 0;
  std::string var_;
  std::shared_ptr<const FieldDescriptor> base_;
};

// Exact field element.  The payload determines the field: plain rationals
// embed implicitly into any other field on contact (canonical homomorphism),
// any other cross-field mix raises FieldMismatch.  All representations are
// canonical, so payload equality coincides with field-element equality.
class Scalar {
 public:
  Scalar() : v_(mpq_class(0)) {}
  Scalar(int v) : v_(mpq_class(v)) {}
  Scalar(long v) : v_(mpq_class(static_cast<signed long>(v))) {}
  explicit Scalar(mpq_class q);

  // num/den as a plain rational; den must be nonzero.
  static Scalar rational(long num, long den);
  // Canonical residue of value mod p.
  static Scalar mod_p(unsigned long p, const mpz_class& value);

  static Scalar zero(const FieldDescriptor& f);
  static Scalar one(const FieldDescriptor& f);
  // z for cyclotomic fields, the variable for rational function fields.
  static Scalar generator(const FieldDescriptor& f);

  FieldDescriptor field() const;
  bool is_zero() const;
  bool is_one() const;
  bool is_rational_payload() const { return std::holds_alternative<mpq_class>(v_); }
  const mpq_class& as_rational() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  Scalar inverse() const;
  Scalar pow(long e) const;

  // Canonical embedding into a larger (or equal) field.  Raises
  // UnsupportedExtension when no canonical embedding is implemented and
  // FieldMismatch when the value has no image (rational with denominator
  // divisible by p into F_p).
  Scalar embedded_into(const FieldDescriptor& target) const;

  // print/parse round-trip exactly: parse(str(x), f) == x for x in field f.
  std::string str() const;
  static Scalar parse(const std::string& text, const FieldDescriptor& expected);

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s);

 private:
  struct ModP {
    unsigned long p = 0;
    unsigned long r = 0;
    bool operator==(const ModP&) const = default;
  };
  struct Cyc {
    unsigned long n = 0;
    std::vector<mpq_class> c;  // ascending degree, reduced mod the n-th
                               // cyclotomic polynomial, no trailing zeros
    bool operator==(const Cyc& o) const { return n == o.n && c == o.c; }
  };
  struct RatFunc {
    std::shared_ptr<const FieldDescriptor> field;  // the ratfunc descriptor
    std::vector<Scalar> num;  // ascending degree, base-field coefficients
    std::vector<Scalar> den;  // monic, coprime to num, no trailing zeros
    bool operator==(const RatFunc& o) const;
  };
  using Payload = std::variant<mpq_class, ModP, Cyc, RatFunc>;

  explicit Scalar(Payload v) : v_(std::move(v)) {}

  static void coerce_pair(Scalar& a, Scalar& b);
  void normalize();

  Payload v_;

  friend struct ScalarOps;
};

// Primitive n-th root of unity in the field; among prime-field solutions the
// smallest positive residue is chosen.  Raises NoSuchRoot when none exists.
Scalar primitive_root(const FieldDescriptor& f, unsigned long n);

// Degree of the n-th cyclotomic polynomial (Euler phi).
unsigned long cyclotomic_degree(unsigned long n);

// Coefficients of the n-th cyclotomic polynomial, ascending degree.
const std::vector<mpq_class>& cyclotomic_polynomial(unsigned long n);

}  // namespace hopfad
