#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hopfad/computable.hpp"
#include "hopfad/hopf.hpp"

namespace hopfad {

// Answer of a conjugacy oracle for a single group element.
struct ConjugacyVerdict {
  bool finite = false;
  // the full conjugacy class in canonical form when finite (contains g)
  std::vector<std::string> conjugates;
  // short reason when the class is infinite
  std::string certificate;
};

// A group whose elements are exact canonical strings.  Canonical forms are
// unique per element, so string equality is element equality.  Providers are
// immutable and all operations are pure.
class GroupProvider {
 public:
  virtual ~GroupProvider() = default;

  virtual std::string name() const = 0;
  virtual std::string identity() const = 0;
  // canonical strings of a finite generating set (inverses not listed)
  virtual std::vector<std::string> generators() const = 0;
  virtual std::string multiply(const std::string& a, const std::string& b) const = 0;
  virtual std::string inverse(const std::string& g) const = 0;
  // Exact per-family oracle; when finite, the class it returns is closed
  // under conjugation by every generator.
  virtual ConjugacyVerdict conjugacy(const std::string& g) const = 0;
  virtual bool is_finite() const = 0;

  // All elements admitting a word of length <= length over the generators
  // and their inverses, computed by breadth-first search.  The identity
  // comes first; within each word length, elements are ordered
  // lexicographically.  Throws Error if the ball grows past an internal
  // safety cap.
  std::vector<std::string> elements_up_to(long length) const;
};

// Built-in families ----------------------------------------------------------

// Finite permutation group on the points 0..n-1 generated by the given
// one-line permutations (generator_perms[g][i] is the image of i).  The whole
// group is enumerated on construction.  Canonical form: "[2,0,1]".
std::shared_ptr<const GroupProvider> permutation_group(
    std::vector<std::vector<int>> generator_perms);

// <r, s | s^2 = 1, s r s = r^-1>.  Canonical forms: "e", "r^k", "r^k*s", "s".
std::shared_ptr<const GroupProvider> infinite_dihedral();

// Integer upper unitriangular 3x3 matrices; the triple (a, b, c) is the
// matrix with a, b above the diagonal and c in the corner.  Canonical form:
// "(a,b,c)"; generators x = (1,0,0) and y = (0,1,0).
std::shared_ptr<const GroupProvider> heisenberg_group();

// Free group on a and b; canonical form is the reduced word over a, b and
// the capitalized inverses A, B, with "e" for the identity.
std::shared_ptr<const GroupProvider> free_group_rank2();

// The integers under addition, generated by 1; canonical form is the decimal
// numeral.
std::shared_ptr<const GroupProvider> integer_group();

// Direct product; canonical form "(u|v)" with u, v canonical in the factors.
std::shared_ptr<const GroupProvider> product_group(
    std::shared_ptr<const GroupProvider> a, std::shared_ptr<const GroupProvider> b);

// Descriptor grammar: "dinf" | "heis" | "free2" | "z"
//   | "perm:<gens>"   with generators in cycle notation separated by ';',
//                     e.g. "perm:(0 1 2);(0 1)"
//   | "prod:<a>,<b>"  with <a>, <b> again descriptors.
// Throws ParseError on anything else.
std::shared_ptr<const GroupProvider> parse_group(const std::string& descriptor);

// FC-center ------------------------------------------------------------------

// Membership of one element in the set of elements with finite conjugacy
// class, together with the class size when finite.
struct FcMembership {
  bool finite = false;
  long class_size = 0;      // when finite
  std::string certificate;  // reason when infinite
};

FcMembership fc_center_membership(const GroupProvider& group, const std::string& g);

// The elements of word length <= length whose conjugacy class is finite, in
// the order of elements_up_to.
std::vector<std::string> fc_center_window(const GroupProvider& group, long length);

// Modules and tables ---------------------------------------------------------

// The group algebra as a module over itself under conjugation: basis keys
// are canonical group elements and each group generator u acts by
// g -> u g u^-1.  Generators are grouplike, so diagonal tensor actions are
// available.
ComputableModule<std::string> group_ad_module(
    std::shared_ptr<const GroupProvider> group,
    const FieldDescriptor& field = FieldDescriptor::rationals());

// Full multiplication table of a finite provider, identity first, then by
// word length and lexicographic order.  Throws PreconditionViolated for
// infinite providers.
GroupTable group_table(const GroupProvider& group);

}  // namespace hopfad
