#include "hopfad/scalar.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <utility>

namespace hopfad {

namespace {

constexpr unsigned long kMaxPrime = (1ul << 31) - 1;

bool probably_prime(unsigned long p) {
  mpz_class z(static_cast<unsigned long>(p));
  return mpz_probab_prime_p(z.get_mpz_t(), 30) > 0;
}

unsigned long mod_add(unsigned long a, unsigned long b, unsigned long p) {
  return (a + b) % p;
}
unsigned long mod_sub(unsigned long a, unsigned long b, unsigned long p) {
  return (a + p - b) % p;
}
unsigned long mod_mul(unsigned long a, unsigned long b, unsigned long p) {
  return (a * b) % p;  // p < 2^31 keeps the product below 2^62
}
unsigned long mod_pow(unsigned long g, unsigned long e, unsigned long p) {
  unsigned long r = 1 % p;
  g %= p;
  while (e) {
    if (e & 1) r = mod_mul(r, g, p);
    g = mod_mul(g, g, p);
    e >>= 1;
  }
  return r;
}
unsigned long mod_inv(unsigned long a, unsigned long p) {
  if (a % p == 0) throw DivisionByZero("inverse of 0 mod " + std::to_string(p));
  long t = 0, nt = 1;
  long r = static_cast<long>(p), nr = static_cast<long>(a % p);
  while (nr != 0) {
    long q = r / nr;
    std::swap(t -= q * nt, nt);
    std::swap(r -= q * nr, nr);
  }
  if (t < 0) t += static_cast<long>(p);
  return static_cast<unsigned long>(t);
}

bool coeff_is_zero(const mpq_class& x) { return sgn(x) == 0; }
bool coeff_is_zero(const Scalar& x) { return x.is_zero(); }

template <class T>
void poly_trim(std::vector<T>& v) {
  while (!v.empty() && coeff_is_zero(v.back())) v.pop_back();
}

template <class T>
std::vector<T> poly_add(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> r(std::max(a.size(), b.size()), T());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  poly_trim(r);
  return r;
}

template <class T>
std::vector<T> poly_sub(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> r(std::max(a.size(), b.size()), T());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  poly_trim(r);
  return r;
}

template <class T>
std::vector<T> poly_mul(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<T> r(a.size() + b.size() - 1, T());
  for (size_t i = 0; i < a.size(); ++i) {
    if (coeff_is_zero(a[i])) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  poly_trim(r);
  return r;
}

template <class T>
std::vector<T> poly_scale(std::vector<T> a, const T& c) {
  for (auto& x : a) x *= c;
  poly_trim(a);
  return a;
}

template <class T>
T coeff_inverse(const T& x);
template <>
mpq_class coeff_inverse(const mpq_class& x) {
  if (sgn(x) == 0) throw DivisionByZero();
  return 1 / x;
}
template <>
Scalar coeff_inverse(const Scalar& x) {
  return x.inverse();
}

// Division with remainder; the divisor's leading coefficient must be a unit.
template <class T>
std::pair<std::vector<T>, std::vector<T>> poly_divmod(std::vector<T> a,
                                                      const std::vector<T>& b) {
  if (b.empty()) throw DivisionByZero("polynomial division by zero");
  poly_trim(a);
  std::vector<T> q;
  if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, T());
  T lead_inv = coeff_inverse(b.back());
  while (a.size() >= b.size()) {
    T c = a.back() * lead_inv;
    size_t shift = a.size() - b.size();
    q[shift] = c;
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    poly_trim(a);  // the subtraction kills the leading term
  }
  poly_trim(q);
  return {q, a};
}

template <class T>
std::vector<T> poly_monic(std::vector<T> a) {
  poly_trim(a);
  if (a.empty()) return a;
  T inv = coeff_inverse(a.back());
  return poly_scale(std::move(a), inv);
}

template <class T>
std::vector<T> poly_gcd(std::vector<T> a, std::vector<T> b) {
  poly_trim(a);
  poly_trim(b);
  while (!b.empty()) {
    auto [q, r] = poly_divmod(a, b);
    (void)q;
    a = std::move(b);
    b = std::move(r);
  }
  return poly_monic(std::move(a));
}

// s with s*a + t*m = gcd; used for inversion mod m.
template <class T>
std::pair<std::vector<T>, std::vector<T>> poly_ext_gcd_first(std::vector<T> a,
                                                             std::vector<T> m) {
  std::vector<T> s0{}, s1{};
  s0.push_back(T(1));
  std::vector<T> r0 = std::move(a), r1 = std::move(m);
  poly_trim(r0);
  poly_trim(r1);
  std::vector<T> s_prev = s0, s_cur{};
  while (!r1.empty()) {
    auto [q, r] = poly_divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    auto s_next = poly_sub(s_prev, poly_mul(q, s_cur));
    s_prev = std::move(s_cur);
    s_cur = std::move(s_next);
  }
  return {s_prev, r0};  // s with s*a ≡ gcd (mod m), and the gcd itself
}

}  // namespace

// ---------------------------------------------------------------------------
// FieldDescriptor

FieldDescriptor FieldDescriptor::rationals() { return FieldDescriptor(); }

FieldDescriptor FieldDescriptor::prime_field(unsigned long p) {
  if (p < 2 || p > kMaxPrime || !probably_prime(p))
    throw PreconditionViolated("prime field modulus must be a prime below 2^31, got " +
                               std::to_string(p));
  FieldDescriptor f;
  f.kind_ = FieldKind::PrimeField;
  f.p_ = p;
  return f;
}

FieldDescriptor FieldDescriptor::cyclotomic(unsigned long n) {
  if (n == 0) throw PreconditionViolated("cyclotomic order must be positive");
  FieldDescriptor f;
  f.kind_ = FieldKind::Cyclotomic;
  f.n_ = n;
  return f;
}

FieldDescriptor FieldDescriptor::rational_functions(std::string var,
                                                    FieldDescriptor base) {
  if (base.kind_ == FieldKind::RationalFunctions)
    throw PreconditionViolated("rational function base field must not itself be a rational function field");
  if (var.empty()) throw PreconditionViolated("rational function variable must be named");
  FieldDescriptor f;
  f.kind_ = FieldKind::RationalFunctions;
  f.var_ = std::move(var);
  f.base_ = std::make_shared<FieldDescriptor>(std::move(base));
  return f;
}

const FieldDescriptor& FieldDescriptor::base() const {
  static const FieldDescriptor rat;
  return base_ ? *base_ : rat;
}

unsigned long FieldDescriptor::characteristic() const {
  switch (kind_) {
    case FieldKind::PrimeField: return p_;
    case FieldKind::RationalFunctions: return base().characteristic();
    default: return 0;
  }
}

std::string FieldDescriptor::str() const {
  switch (kind_) {
    case FieldKind::Rationals: return "Q";
    case FieldKind::PrimeField: return "fp:" + std::to_string(p_);
    case FieldKind::Cyclotomic: return "cyclotomic:" + std::to_string(n_);
    case FieldKind::RationalFunctions:
      return "ratfunc:" + var_ + ":" + base().str();
  }
  return "?";
}

bool FieldDescriptor::operator==(const FieldDescriptor& o) const {
  if (kind_ != o.kind_) return false;
  switch (kind_) {
    case FieldKind::Rationals: return true;
    case FieldKind::PrimeField: return p_ == o.p_;
    case FieldKind::Cyclotomic: return n_ == o.n_;
    case FieldKind::RationalFunctions:
      return var_ == o.var_ && base() == o.base();
  }
  return false;
}

FieldDescriptor FieldDescriptor::parse(const std::string& text) {
  if (text == "Q" || text == "q" || text == "rationals") return rationals();
  auto starts = [&](const char* pre) {
    return text.rfind(pre, 0) == 0;
  };
  auto number_after = [&](size_t off) -> unsigned long {
    if (off >= text.size()) throw ParseError("field descriptor missing number: " + text);
    unsigned long v = 0;
    for (size_t i = off; i < text.size(); ++i) {
      if (!isdigit(static_cast<unsigned char>(text[i])))
        throw ParseError("bad number in field descriptor: " + text);
      v = v * 10 + static_cast<unsigned long>(text[i] - '0');
    }
    return v;
  };
  if (starts("fp:")) return prime_field(number_after(3));
  if (starts("cyclotomic:")) return cyclotomic(number_after(11));
  if (text == "ratfunc") return rational_functions();
  if (starts("ratfunc:")) {
    std::string rest = text.substr(8);
    auto colon = rest.find(':');
    if (colon == std::string::npos) return rational_functions(rest);
    std::string var = rest.substr(0, colon);
    return rational_functions(var, parse(rest.substr(colon + 1)));
  }
  throw ParseError("unknown field descriptor: " + text);
}

// ---------------------------------------------------------------------------
// Cyclotomic polynomials

unsigned long cyclotomic_degree(unsigned long n) {
  return static_cast<unsigned long>(cyclotomic_polynomial(n).size()) - 1;
}

const std::vector<mpq_class>& cyclotomic_polynomial(unsigned long n) {
  static std::map<unsigned long, std::vector<mpq_class>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);

  std::function<const std::vector<mpq_class>&(unsigned long)> get =
      [&](unsigned long m) -> const std::vector<mpq_class>& {
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    std::vector<mpq_class> num(m + 1, mpq_class(0));
    num[0] = -1;
    num[m] = 1;  // x^m - 1
    for (unsigned long d = 1; d < m; ++d) {
      if (m % d != 0) continue;
      auto [q, r] = poly_divmod(num, get(d));
      if (!r.empty())
        throw Error("internal: cyclotomic polynomial division not exact");
      num = std::move(q);
    }
    return cache.emplace(m, std::move(num)).first->second;
  };
  return get(n);
}

// ---------------------------------------------------------------------------
// Scalar

bool Scalar::RatFunc::operator==(const RatFunc& o) const {
  return *field == *o.field && num == o.num && den == o.den;
}

Scalar::Scalar(mpq_class q) : v_(std::move(q)) {
  std::get<mpq_class>(v_).canonicalize();
}

Scalar Scalar::rational(long num, long den) {
  if (den == 0) throw DivisionByZero("rational with zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return Scalar(std::move(q));
}

Scalar Scalar::mod_p(unsigned long p, const mpz_class& value) {
  FieldDescriptor::prime_field(p);  // validates
  mpz_class r = value % static_cast<unsigned long>(p);
  if (r < 0) r += static_cast<unsigned long>(p);
  return Scalar(Payload(ModP{p, r.get_ui()}));
}

Scalar Scalar::zero(const FieldDescriptor& f) { return Scalar(0).embedded_into(f); }
Scalar Scalar::one(const FieldDescriptor& f) { return Scalar(1).embedded_into(f); }

Scalar Scalar::generator(const FieldDescriptor& f) {
  switch (f.kind()) {
    case FieldKind::Cyclotomic: {
      std::vector<mpq_class> z{mpq_class(0), mpq_class(1)};
      auto [q, r] = poly_divmod(z, cyclotomic_polynomial(f.n()));
      (void)q;
      Scalar s{Payload(Cyc{f.n(), std::move(r)})};
      return s;
    }
    case FieldKind::RationalFunctions: {
      RatFunc rf;
      rf.field = std::make_shared<FieldDescriptor>(f);
      rf.num = {Scalar::zero(f.base()), Scalar::one(f.base())};
      rf.den = {Scalar::one(f.base())};
      return Scalar(Payload(std::move(rf)));
    }
    default:
      throw PreconditionViolated("field " + f.str() + " has no distinguished generator");
  }
}

FieldDescriptor Scalar::field() const {
  if (std::holds_alternative<mpq_class>(v_)) return FieldDescriptor::rationals();
  if (auto* m = std::get_if<ModP>(&v_)) return FieldDescriptor::prime_field(m->p);
  if (auto* c = std::get_if<Cyc>(&v_)) return FieldDescriptor::cyclotomic(c->n);
  return *std::get<RatFunc>(v_).field;
}

bool Scalar::is_zero() const {
  if (auto* q = std::get_if<mpq_class>(&v_)) return sgn(*q) == 0;
  if (auto* m = std::get_if<ModP>(&v_)) return m->r == 0;
  if (auto* c = std::get_if<Cyc>(&v_)) return c->c.empty();
  return std::get<RatFunc>(v_).num.empty();
}

bool Scalar::is_one() const {
  if (auto* q = std::get_if<mpq_class>(&v_)) return *q == 1;
  if (auto* m = std::get_if<ModP>(&v_)) return m->r == 1 % m->p;
  if (auto* c = std::get_if<Cyc>(&v_))
    return c->c.size() == 1 && c->c[0] == 1;
  const auto& rf = std::get<RatFunc>(v_);
  return rf.num.size() == 1 && rf.num[0].is_one() && rf.den.size() == 1 &&
         rf.den[0].is_one();
}

const mpq_class& Scalar::as_rational() const {
  if (auto* q = std::get_if<mpq_class>(&v_)) return *q;
  throw FieldMismatch("scalar of field " + field().str() + " is not a plain rational");
}

Scalar Scalar::embedded_into(const FieldDescriptor& target) const {
  FieldDescriptor cur = field();
  if (cur == target) return *this;
  if (std::holds_alternative<mpq_class>(v_)) {
    const mpq_class& q = std::get<mpq_class>(v_);
    switch (target.kind()) {
      case FieldKind::Rationals:
        return *this;
      case FieldKind::PrimeField: {
        unsigned long p = target.p();
        mpz_class den = q.get_den();
        if (mpz_divisible_ui_p(den.get_mpz_t(), p))
          throw FieldMismatch("rational " + str() + " has no image in " + target.str());
        mpz_class num = q.get_num();
        mpz_class rn = num % static_cast<unsigned long>(p);
        if (rn < 0) rn += static_cast<unsigned long>(p);
        mpz_class rd = den % static_cast<unsigned long>(p);
        unsigned long r = mod_mul(rn.get_ui(), mod_inv(rd.get_ui(), p), p);
        return Scalar(Payload(ModP{p, r}));
      }
      case FieldKind::Cyclotomic: {
        Cyc c{target.n(), {}};
        if (sgn(q) != 0) c.c.push_back(q);
        return Scalar(Payload(std::move(c)));
      }
      case FieldKind::RationalFunctions: {
        RatFunc rf;
        rf.field = std::make_shared<FieldDescriptor>(target);
        Scalar cnum = embedded_into(target.base());
        if (!cnum.is_zero()) rf.num = {std::move(cnum)};
        rf.den = {Scalar::one(target.base())};
        return Scalar(Payload(std::move(rf)));
      }
    }
  }
  if (target.kind() == FieldKind::RationalFunctions && cur == target.base()) {
    RatFunc rf;
    rf.field = std::make_shared<FieldDescriptor>(target);
    if (!is_zero()) rf.num = {*this};
    rf.den = {Scalar::one(target.base())};
    return Scalar(Payload(std::move(rf)));
  }
  throw UnsupportedExtension("no canonical embedding of " + cur.str() + " into " +
                             target.str());
}

void Scalar::coerce_pair(Scalar& a, Scalar& b) {
  if (a.v_.index() == b.v_.index()) {
    bool same = true;
    if (auto* m = std::get_if<ModP>(&a.v_))
      same = m->p == std::get<ModP>(b.v_).p;
    else if (auto* c = std::get_if<Cyc>(&a.v_))
      same = c->n == std::get<Cyc>(b.v_).n;
    else if (auto* r = std::get_if<RatFunc>(&a.v_))
      same = *r->field == *std::get<RatFunc>(b.v_).field;
    if (same) return;
    throw FieldMismatch("cannot mix " + a.field().str() + " with " + b.field().str());
  }
  // Unequal payload kinds: move along a canonical embedding when one exists
  // (rationals into anything, a base field into rational functions over it).
  try {
    a = a.embedded_into(b.field());
    return;
  } catch (const UnsupportedExtension&) {
  }
  try {
    b = b.embedded_into(a.field());
    return;
  } catch (const UnsupportedExtension&) {
  }
  throw FieldMismatch("cannot mix " + a.field().str() + " with " + b.field().str());
}

namespace {

// Canonical fraction form: coprime, monic denominator, zero has empty num.
void ratfunc_canonicalize(std::vector<Scalar>& num, std::vector<Scalar>& den) {
  poly_trim(num);
  poly_trim(den);
  if (den.empty()) throw DivisionByZero("rational function with zero denominator");
  if (num.empty()) {
    den = {den.back() * den.back().inverse()};  // one, in the base field
    return;
  }
  auto g = poly_gcd(num, den);
  if (g.size() > 1) {
    num = poly_divmod(num, g).first;
    den = poly_divmod(den, g).first;
  }
  Scalar lead_inv = den.back().inverse();
  num = poly_scale(std::move(num), lead_inv);
  den = poly_scale(std::move(den), lead_inv);
}

}  // namespace

Scalar& Scalar::operator+=(const Scalar& o) {
  Scalar b = o;
  coerce_pair(*this, b);
  switch (v_.index()) {
    case 0:
      std::get<mpq_class>(v_) += std::get<mpq_class>(b.v_);
      break;
    case 1: {
      auto& m = std::get<ModP>(v_);
      m.r = mod_add(m.r, std::get<ModP>(b.v_).r, m.p);
      break;
    }
    case 2: {
      auto& c = std::get<Cyc>(v_);
      c.c = poly_add(c.c, std::get<Cyc>(b.v_).c);
      break;
    }
    case 3: {
      auto& x = std::get<RatFunc>(v_);
      const auto& y = std::get<RatFunc>(b.v_);
      auto num = poly_add(poly_mul(x.num, y.den), poly_mul(y.num, x.den));
      auto den = poly_mul(x.den, y.den);
      ratfunc_canonicalize(num, den);
      x.num = std::move(num);
      x.den = std::move(den);
      break;
    }
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar Scalar::operator-() const {
  Scalar r = *this;
  switch (r.v_.index()) {
    case 0:
      std::get<mpq_class>(r.v_) = -std::get<mpq_class>(r.v_);
      break;
    case 1: {
      auto& m = std::get<ModP>(r.v_);
      m.r = mod_sub(0, m.r, m.p);
      break;
    }
    case 2:
      for (auto& x : std::get<Cyc>(r.v_).c) x = -x;
      break;
    case 3:
      for (auto& x : std::get<RatFunc>(r.v_).num) x = -x;
      break;
  }
  return r;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  Scalar b = o;
  coerce_pair(*this, b);
  switch (v_.index()) {
    case 0:
      std::get<mpq_class>(v_) *= std::get<mpq_class>(b.v_);
      break;
    case 1: {
      auto& m = std::get<ModP>(v_);
      m.r = mod_mul(m.r, std::get<ModP>(b.v_).r, m.p);
      break;
    }
    case 2: {
      auto& c = std::get<Cyc>(v_);
      auto prod = poly_mul(c.c, std::get<Cyc>(b.v_).c);
      c.c = poly_divmod(prod, cyclotomic_polynomial(c.n)).second;
      break;
    }
    case 3: {
      auto& x = std::get<RatFunc>(v_);
      const auto& y = std::get<RatFunc>(b.v_);
      auto num = poly_mul(x.num, y.num);
      auto den = poly_mul(x.den, y.den);
      ratfunc_canonicalize(num, den);
      x.num = std::move(num);
      x.den = std::move(den);
      break;
    }
  }
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero in " + field().str());
  switch (v_.index()) {
    case 0:
      return Scalar(mpq_class(1 / std::get<mpq_class>(v_)));
    case 1: {
      const auto& m = std::get<ModP>(v_);
      return Scalar(Payload(ModP{m.p, mod_inv(m.r, m.p)}));
    }
    case 2: {
      const auto& c = std::get<Cyc>(v_);
      auto [s, g] = poly_ext_gcd_first(c.c, cyclotomic_polynomial(c.n));
      if (g.size() != 1)
        throw Error("internal: cyclotomic inversion found nonconstant gcd");
      auto inv = poly_scale(std::move(s), mpq_class(1 / g[0]));
      auto red = poly_divmod(inv, cyclotomic_polynomial(c.n)).second;
      return Scalar(Payload(Cyc{c.n, std::move(red)}));
    }
    case 3: {
      const auto& rf = std::get<RatFunc>(v_);
      RatFunc r;
      r.field = rf.field;
      r.num = rf.den;
      r.den = rf.num;
      ratfunc_canonicalize(r.num, r.den);
      return Scalar(Payload(std::move(r)));
    }
  }
  throw Error("unreachable");
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw DivisionByZero("division by zero in " + field().str());
  return *this *= o.inverse();
}

bool Scalar::operator==(const Scalar& o) const {
  Scalar a = *this, b = o;
  coerce_pair(a, b);
  return a.v_ == b.v_;
}

Scalar Scalar::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Scalar r(1), base = *this;
  unsigned long u = static_cast<unsigned long>(e);
  while (u) {
    if (u & 1) r *= base;
    base *= base;
    u >>= 1;
  }
  if (e == 0) return Scalar(1).embedded_into(field());
  return r.embedded_into(field());
}

// ---------------------------------------------------------------------------
// printing

namespace {

std::string rational_str(const mpq_class& q) { return q.get_str(); }

// One polynomial term "c*v^k" with the sign pulled out when extractable.
struct TermPiece {
  bool negative = false;
  std::string body;
};

TermPiece rational_term(const mpq_class& c, const std::string& var, size_t k) {
  TermPiece t;
  mpq_class a = c;
  if (sgn(a) < 0) {
    t.negative = true;
    a = -a;
  }
  std::string cs = rational_str(a);
  if (k == 0) {
    t.body = cs;
  } else {
    std::string v = (k == 1) ? var : var + "^" + std::to_string(k);
    t.body = (cs == "1") ? v : cs + "*" + v;
  }
  return t;
}

TermPiece scalar_term(const Scalar& c, const std::string& var, size_t k) {
  if (c.is_rational_payload()) return rational_term(c.as_rational(), var, k);
  TermPiece t;
  std::string cs = "(" + c.str() + ")";
  if (k == 0) {
    t.body = cs;
  } else {
    std::string v = (k == 1) ? var : var + "^" + std::to_string(k);
    t.body = cs + "*" + v;
  }
  return t;
}

template <class T, class TermFn>
std::string poly_str(const std::vector<T>& coeffs, TermFn&& term_of) {
  std::string out;
  bool first = true;
  for (size_t k = 0; k < coeffs.size(); ++k) {
    if (coeff_is_zero(coeffs[k])) continue;
    TermPiece t = term_of(coeffs[k], k);
    if (first) {
      out += (t.negative ? "-" : "") + t.body;
      first = false;
    } else {
      out += (t.negative ? " - " : " + ") + t.body;
    }
  }
  return first ? "0" : out;
}

}  // namespace

std::string Scalar::str() const {
  switch (v_.index()) {
    case 0:
      return rational_str(std::get<mpq_class>(v_));
    case 1: {
      const auto& m = std::get<ModP>(v_);
      return std::to_string(m.r) + " mod " + std::to_string(m.p);
    }
    case 2: {
      const auto& c = std::get<Cyc>(v_);
      return poly_str(c.c, [](const mpq_class& q, size_t k) {
        return rational_term(q, "z", k);
      });
    }
    case 3: {
      const auto& rf = std::get<RatFunc>(v_);
      const std::string& var = rf.field->var();
      auto term = [&](const Scalar& c, size_t k) { return scalar_term(c, var, k); };
      std::string num = poly_str(rf.num, term);
      if (rf.den.size() == 1 && rf.den[0].is_one()) return num;
      return "(" + num + ")/(" + poly_str(rf.den, term) + ")";
    }
  }
  return "?";
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

// ---------------------------------------------------------------------------
// parsing

namespace {

struct Token {
  enum Kind { Int, Ident, Op, End } kind = End;
  std::string text;
  mpz_class value;
  int pos = 0;
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) { advance(); }
  const Token& peek() const { return tok_; }
  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (i_ < s_.size() && isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    tok_ = Token{};
    tok_.pos = static_cast<int>(i_) + 1;
    if (i_ >= s_.size()) return;
    char c = s_[i_];
    if (isdigit(static_cast<unsigned char>(c))) {
      size_t j = i_;
      while (j < s_.size() && isdigit(static_cast<unsigned char>(s_[j]))) ++j;
      tok_.kind = Token::Int;
      tok_.text = s_.substr(i_, j - i_);
      tok_.value = mpz_class(tok_.text);
      i_ = j;
      return;
    }
    if (isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i_;
      while (j < s_.size() && (isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_')) ++j;
      tok_.kind = Token::Ident;
      tok_.text = s_.substr(i_, j - i_);
      i_ = j;
      return;
    }
    if (std::string("+-*/^()").find(c) != std::string::npos) {
      tok_.kind = Token::Op;
      tok_.text = std::string(1, c);
      ++i_;
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "' in scalar literal", 0,
                     static_cast<int>(i_) + 1);
  }

  const std::string& s_;
  size_t i_ = 0;
  Token tok_;
};

class ScalarParser {
 public:
  ScalarParser(const std::string& text, const FieldDescriptor& f)
      : lex_(text), field_(f) {}

  Scalar run() {
    Scalar v = expr();
    if (lex_.peek().kind != Token::End)
      throw ParseError("trailing input in scalar literal", 0, lex_.peek().pos);
    return v;
  }

 private:
  bool at_op(const char* t) const {
    return lex_.peek().kind == Token::Op && lex_.peek().text == t;
  }

  Scalar expr() {
    Scalar a = term();
    while (at_op("+") || at_op("-")) {
      bool plus = at_op("+");
      lex_.next();
      Scalar b = term();
      a = plus ? a + b : a - b;
    }
    return a;
  }

  Scalar term() {
    Scalar a = factor();
    while (at_op("*") || at_op("/")) {
      bool mul = at_op("*");
      lex_.next();
      Scalar b = factor();
      a = mul ? a * b : a / b;
    }
    return a;
  }

  Scalar factor() {
    if (at_op("-")) {
      lex_.next();
      return -factor();
    }
    if (at_op("+")) {
      lex_.next();
      return factor();
    }
    Scalar p = primary();
    if (at_op("^")) {
      lex_.next();
      bool neg = false;
      if (at_op("-")) {
        lex_.next();
        neg = true;
      }
      Token t = lex_.next();
      if (t.kind != Token::Int)
        throw ParseError("exponent must be an integer", 0, t.pos);
      long e = static_cast<long>(t.value.get_si());
      p = p.pow(neg ? -e : e);
    }
    return p;
  }

  Scalar resolve_identifier(const std::string& name, int pos) {
    const FieldDescriptor* f = &field_;
    while (true) {
      if (f->kind() == FieldKind::RationalFunctions) {
        if (name == f->var()) {
          Scalar g = Scalar::generator(*f);
          return f == &field_ ? g : g.embedded_into(field_);
        }
        f = &f->base();
        continue;
      }
      if (f->kind() == FieldKind::Cyclotomic && name == "z")
        return Scalar::generator(*f);
      break;
    }
    throw ParseError("unknown symbol '" + name + "' for field " + field_.str(), 0, pos);
  }

  Scalar primary() {
    Token t = lex_.next();
    if (t.kind == Token::Int) {
      if (lex_.peek().kind == Token::Ident && lex_.peek().text == "mod") {
        lex_.next();
        Token pt = lex_.next();
        if (pt.kind != Token::Int)
          throw ParseError("modulus must be an integer", 0, pt.pos);
        return Scalar::mod_p(pt.value.get_ui(), t.value);
      }
      return Scalar(mpq_class(t.value));
    }
    if (t.kind == Token::Ident) return resolve_identifier(t.text, t.pos);
    if (t.kind == Token::Op && t.text == "(") {
      Scalar v = expr();
      if (!at_op(")"))
        throw ParseError("expected ')'", 0, lex_.peek().pos);
      lex_.next();
      return v;
    }
    throw ParseError("expected a scalar atom", 0, t.pos);
  }

  Lexer lex_;
  const FieldDescriptor& field_;
};

}  // namespace

Scalar Scalar::parse(const std::string& text, const FieldDescriptor& expected) {
  Scalar v = ScalarParser(text, expected).run();
  try {
    return v.embedded_into(expected);
  } catch (const UnsupportedExtension&) {
    throw FieldMismatch("literal '" + text + "' lies in " + v.field().str() +
                        ", expected " + expected.str());
  }
}

// ---------------------------------------------------------------------------
// primitive roots

namespace {

std::vector<unsigned long> prime_factors(unsigned long m) {
  std::vector<unsigned long> fs;
  for (unsigned long d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      fs.push_back(d);
      while (m % d == 0) m /= d;
    }
  }
  if (m > 1) fs.push_back(m);
  return fs;
}

bool has_order(unsigned long g, unsigned long n, unsigned long p) {
  if (mod_pow(g, n, p) != 1) return false;
  for (unsigned long f : prime_factors(n))
    if (mod_pow(g, n / f, p) == 1) return false;
  return true;
}

}  // namespace

Scalar primitive_root(const FieldDescriptor& f, unsigned long n) {
  if (n == 0) throw PreconditionViolated("root order must be positive");
  switch (f.kind()) {
    case FieldKind::Rationals:
      if (n == 1) return Scalar(1);
      if (n == 2) return Scalar(-1);
      throw NoSuchRoot("Q contains no primitive " + std::to_string(n) + "-th root of unity");
    case FieldKind::PrimeField: {
      unsigned long p = f.p();
      if ((p - 1) % n != 0)
        throw NoSuchRoot("F_" + std::to_string(p) + " contains no primitive " +
                         std::to_string(n) + "-th root of unity");
      if (p < 1000000) {
        for (unsigned long g = 1; g < p; ++g)
          if (has_order(g, n, p)) return Scalar::mod_p(p, static_cast<long>(g));
        throw NoSuchRoot("no element of order " + std::to_string(n) + " in F_" +
                         std::to_string(p));
      }
      // find a generator of the multiplicative group, then minimize over the
      // primitive n-th roots it produces
      unsigned long g0 = 0;
      auto fac = prime_factors(p - 1);
      for (unsigned long c = 2; c < p; ++c) {
        bool ok = true;
        for (unsigned long q : fac)
          if (mod_pow(c, (p - 1) / q, p) == 1) {
            ok = false;
            break;
          }
        if (ok) {
          g0 = c;
          break;
        }
      }
      unsigned long w = mod_pow(g0, (p - 1) / n, p);
      unsigned long best = 0;
      unsigned long cur = 1;
      for (unsigned long j = 1; j <= n; ++j) {
        cur = mod_mul(cur, w, p);
        if (std::gcd(j, n) == 1 && (best == 0 || cur < best)) best = cur;
      }
      return Scalar::mod_p(p, static_cast<long>(best));
    }
    case FieldKind::Cyclotomic: {
      unsigned long m = f.n();
      if (n == 1) return Scalar::one(f);
      if (m % n == 0) return Scalar::generator(f).pow(static_cast<long>(m / n));
      if (n == 2) return (-Scalar(1)).embedded_into(f);
      throw NoSuchRoot(f.str() + " contains no primitive " + std::to_string(n) +
                       "-th root of unity");
    }
    case FieldKind::RationalFunctions:
      return primitive_root(f.base(), n).embedded_into(f);
  }
  throw Error("unreachable");
}

}  // namespace hopfad
