#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hopfad/errors.hpp"
#include "hopfad/linalg.hpp"
#include "hopfad/rng.hpp"
#include "hopfad/scalar.hpp"
#include "hopfad/sparse.hpp"

namespace hopfad {

// One term of a comultiplication expansion: the coefficient of e_i (x) e_j.
struct ComultTerm {
  Eigen::Index i = 0;
  Eigen::Index j = 0;
  Scalar c;
};

// A finite group given by its multiplication table.  product[a * order + b]
// is the index of the product of elements a and b.  Tables are validated
// (identity, associativity, inverses) when a group algebra is built.
struct GroupTable {
  std::string name;
  Eigen::Index order = 0;
  std::vector<Eigen::Index> product;
  std::vector<std::string> element_names;  // optional; size order when present
};

// Throws NotAGroup with a description of the first violated group law.
void validate_group_table(const GroupTable& table);

// A finite-dimensional Hopf algebra as structure-constant data on a fixed
// basis e_0 .. e_{dim-1}:
//
//   e_i e_j        = mult[i * dim + j]           (sparse element)
//   Delta(e_k)     = sum of c * e_i (x) e_j      over comult[k]
//   unit           = coordinates of the algebra unit
//   counit(e_i)    = counit[i]
//   S(e_j)         = column j of antipode
//
// The data members are public on purpose: tests and callers may build or
// perturb raw tables, then ask verify_axioms whether the result is a Hopf
// algebra.  Nothing here is checked on construction.
struct HopfAlgebra {
  FieldDescriptor field = FieldDescriptor::rationals();
  Eigen::Index dim = 0;
  std::string name;
  std::vector<std::string> basis_names;  // optional; size dim when present
  std::vector<SparseVec<Eigen::Index>> mult;
  Vec unit;
  std::vector<std::vector<ComultTerm>> comult;
  RowVec counit;
  Mat antipode;

  // Optional certificates recorded by constructors that know them: a complete
  // list of grouplike elements, and whether the algebra is pointed.  Empty /
  // unset means "not known"; consumers recompute in that case.
  std::vector<Vec> known_grouplikes;
  std::optional<bool> known_pointed;

  std::string basis_label(Eigen::Index i) const;
  Vec basis_vector(Eigen::Index i) const;

  // Element operations on dense coordinate vectors.
  Vec multiply(const Vec& a, const Vec& b) const;
  Vec comultiply(const Vec& v) const;  // flat tensor, index i * dim + j
  Scalar counit_of(const Vec& v) const;
  Vec antipode_of(const Vec& v) const;

  // Adjoint action of k on h: sum over Delta(k) = k1 (x) k2 of k1 h S(k2).
  Vec adjoint_action(const Vec& k, const Vec& h) const;

  Mat left_mult_matrix(const Vec& a) const;   // h -> a h
  Mat right_mult_matrix(const Vec& a) const;  // h -> h a
  Mat adjoint_matrix(const Vec& k) const;     // h -> adjoint_action(k, h)
  Mat comult_matrix() const;                  // dim^2 x dim

  std::string element_str(const Vec& v) const;
};

// Structural equality of field, dimension and all five structure tensors,
// ignoring names and certificates.
bool same_structure(const HopfAlgebra& a, const HopfAlgebra& b);

// ---------------------------------------------------------------------------
// Axiom verification
// ---------------------------------------------------------------------------

struct AxiomCheck {
  std::string axiom;
  bool pass = true;
  std::string witness;  // first failing instance; empty when pass
};

struct AxiomReport {
  std::vector<AxiomCheck> checks;
  bool all_pass() const;
};

// Exhaustively checks associativity, unit, coassociativity, counit, that
// comultiplication and counit are algebra maps, and both antipode identities,
// directly on the structure constants.  Throws ShapeMismatch if the table
// sizes or index ranges are inconsistent; IndexOutOfRange never escapes for
// well-shaped tables.
AxiomReport verify_axioms(const HopfAlgebra& h);

// ---------------------------------------------------------------------------
// Constructors
// ---------------------------------------------------------------------------

// Group algebra kG with the basis indexed like the table.  Every basis
// element is grouplike and the algebra is pointed and cocommutative.
HopfAlgebra group_algebra(const GroupTable& table, const FieldDescriptor& field);

// The 4-dimensional algebra with basis 1, g, x, gx subject to g^2 = 1,
// x^2 = 0, x g = -g x, with Delta(g) = g (x) g, Delta(x) = x (x) 1 + g (x) x.
// Requires characteristic != 2 (throws BadCharacteristic).
HopfAlgebra sweedler(const FieldDescriptor& field);

// The n^2-dimensional algebra with basis g^a x^b (0 <= a, b < n), relations
// g^n = 1, x^n = 0, x g = q g x for q a primitive n-th root of unity in the
// field (throws NoSuchRoot if none exists).  taft(2, F) is sweedler(F).
HopfAlgebra taft(long n, const FieldDescriptor& field);

// The n^3-dimensional quotient of the quantized enveloping algebra of sl2 at
// a primitive n-th root of unity q (n odd, >= 3), with PBW basis
// F^a E^c K^b, relations E^n = F^n = 0, K^n = 1.
HopfAlgebra small_quantum_sl2(long n, const FieldDescriptor& field);

// Dual Hopf algebra on the dual basis: multiplication is transposed
// comultiplication and vice versa.  Certificates are not carried over.
HopfAlgebra dual_hopf(const HopfAlgebra& h);

// Coefficient extension along an embedding of fields (throws
// UnsupportedExtension if none exists).  The pointedness certificate and the
// grouplike list survive only when the algebra is certified pointed.
HopfAlgebra extend_scalars(const HopfAlgebra& h, const FieldDescriptor& target);

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------
//
// Line-oriented structure-constant files:
//
//   field <descriptor>            e.g. "field Q", "field fp:5"
//   dim <d>
//   name <free text>              optional
//   basis <name-0> ... <name-d-1> optional
//   unit <i> <coeff>              sparse entries; <coeff> is the rest of the
//   counit <i> <coeff>            line and may contain spaces
//   mult <i> <j> <k> <coeff>      coefficient of e_k in e_i e_j
//   comult <k> <i> <j> <coeff>    coefficient of e_i (x) e_j in Delta(e_k)
//   antipode <i> <j> <coeff>      coefficient of e_i in S(e_j)
//
// '#' starts a comment; blank lines are ignored; unspecified entries are
// zero.  "field" must precede coefficients, "dim" must precede indices.

HopfAlgebra parse_hsc(const std::string& text);  // throws ParseError
HopfAlgebra read_hsc(std::istream& in);
std::string write_hsc(const HopfAlgebra& h);

// ---------------------------------------------------------------------------
// Identities of the adjoint action (exact, per element pair)
// ---------------------------------------------------------------------------

// Delta(k . h) equals the sum over Delta2(k) = k1 (x) k2 (x) k3 and
// Delta(h) = h1 (x) h2 of (k1 h1 S(k3)) (x) (k2 . h2).
bool adjoint_comult_identity(const HopfAlgebra& h, const Vec& k, const Vec& v);

// k . (v w) equals the sum of (k1 . v)(k2 . w): the algebra is a module
// algebra over itself under the adjoint action.
bool module_algebra_identity(const HopfAlgebra& h, const Vec& k, const Vec& v, const Vec& w);

// a b equals the sum of (a1 . b) a2: multiplication is recovered from the
// adjoint action and comultiplication.
bool mult_recovery_identity(const HopfAlgebra& h, const Vec& a, const Vec& b);

// Delta(k . v) equals the sum of (k1 . v1) (x) (k2 . v2).  Holds for all
// elements when the coalgebra is cocommutative.
bool equivariant_comult_identity(const HopfAlgebra& h, const Vec& k, const Vec& v);

bool is_commutative(const HopfAlgebra& h);
bool is_cocommutative(const HopfAlgebra& h);

// ---------------------------------------------------------------------------
// Subspace structure
// ---------------------------------------------------------------------------

// b contains the unit, is closed under multiplication, and satisfies
// Delta(b) in H (x) b (every second tensor leg of Delta on b stays in b).
bool is_left_coideal_subalgebra(const HopfAlgebra& h, const Subspace& b);

// All grouplike elements (Delta g = g (x) g, counit 1).  Returns the
// certificate when one was recorded; otherwise enumerates them, which is
// supported over the rationals and over prime fields with p <= 1000 (throws
// UnsupportedField otherwise).
std::vector<Vec> grouplikes(const HopfAlgebra& h);

// Largest cosemisimple subcoalgebra.  Computed from the radical of the trace
// form of the dual algebra in characteristic zero; in positive characteristic
// it is read off the certificates when the algebra is certified pointed
// (throws UnsupportedCharacteristic otherwise).
Subspace coradical(const HopfAlgebra& h);

// Ascending chain H_0 <= H_1 <= ... starting at the coradical, where H_n is
// the preimage of H (x) H_{n-1} + H_0 (x) H under comultiplication.  The
// returned chain ends at the full space.
std::vector<Subspace> coradical_filtration(const HopfAlgebra& h);

// Whether the coradical is spanned by grouplikes.
bool is_pointed(const HopfAlgebra& h);

// For a pointed h and a left coideal subalgebra b: h is free as a module
// over b if and only if the antipode maps b intersected with the span of the
// grouplikes onto itself.  Throws PreconditionViolated when h is not pointed
// or b is not a left coideal subalgebra.
bool masuoka_freeness_criterion(const HopfAlgebra& h, const Subspace& b);

// ---------------------------------------------------------------------------
// Test support
// ---------------------------------------------------------------------------

// Random element supported on at most max_support basis vectors, with
// nonzero coefficients drawn from the field.
Vec random_element(Rng& rng, const HopfAlgebra& h, int max_support = 3);

}  // namespace hopfad
