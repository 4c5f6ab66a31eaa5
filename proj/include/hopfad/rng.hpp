#pragma once

#include <cstdint>
#include <random>

#include "hopfad/scalar.hpp"

namespace hopfad {

// Deterministic source for randomized identity checks.  Everything funnels
// through one engine so a fixed seed reproduces a whole run.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t raw() { return eng_(); }

  // Uniform integer in [lo, hi].
  long integer(long lo, long hi) {
    std::uniform_int_distribution<long> d(lo, hi);
    return d(eng_);
  }

  // Small-height random element of the field: a rational with numerator and
  // denominator bounded by height, embedded canonically.  For generated
  // fields, mixes in the generator with a random small exponent.
  Scalar scalar(const FieldDescriptor& f, long height = 5) {
    long den = integer(1, height);
    // keep denominators invertible in positive characteristic
    if (f.characteristic() != 0 && den % static_cast<long>(f.characteristic()) == 0) den = 1;
    Scalar base = Scalar::rational(integer(-height, height), den);
    switch (f.kind()) {
      case FieldKind::Rationals:
        return base;
      case FieldKind::PrimeField:
        return Scalar::mod_p(f.p(), integer(0, static_cast<long>(f.p()) - 1));
      case FieldKind::Cyclotomic:
      case FieldKind::RationalFunctions: {
        Scalar g = Scalar::generator(f);
        Scalar v = base.embedded_into(f) + g.pow(integer(0, 3)) * Scalar(integer(-2, 2));
        return v;
      }
    }
    return base;
  }

  // Nonzero variant; retries until a unit comes out.
  Scalar nonzero_scalar(const FieldDescriptor& f, long height = 5) {
    for (int i = 0; i < 64; ++i) {
      Scalar s = scalar(f, height);
      if (!s.is_zero()) return s;
    }
    return Scalar::one(f);
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace hopfad
