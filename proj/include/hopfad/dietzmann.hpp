#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hopfad/groups.hpp"
#include "hopfad/hopf.hpp"
#include "hopfad/linalg.hpp"
#include "hopfad/pbw.hpp"

namespace hopfad {

// An algebra with comultiplication and adjoint action, presented on a fixed
// finite basis window.  Elements are coordinate vectors over the window
// basis.  Operations whose result cannot be represented inside the window
// throw WindowOverflow; for finite-dimensional algebras the window is the
// whole algebra and overflow never happens.
class WindowedAlgebra {
 public:
  virtual ~WindowedAlgebra() = default;

  virtual const FieldDescriptor& field() const = 0;
  virtual Eigen::Index dim() const = 0;
  virtual std::string basis_label(Eigen::Index i) const = 0;
  virtual Vec one() const = 0;
  virtual Vec mul(const Vec& a, const Vec& b) const = 0;
  // adjoint action of a on b
  virtual Vec ad(const Vec& a, const Vec& b) const = 0;
  // Coefficient matrix of the comultiplication of c: entry (i, j) is the
  // coefficient of (first leg i) tensor (second leg j).  First legs outside
  // the window occupy extra rows appended after the window rows; second
  // legs outside the window throw WindowOverflow.
  virtual Mat comult_rows(const Vec& c) const = 0;
  // Elements whose adjoint stability certifies stability under the whole
  // algebra: the algebra generators.
  virtual std::vector<Vec> ad_probes() const = 0;

  // index of a basis label, or -1 when absent
  Eigen::Index index_of(const std::string& label) const;
  Vec basis_element(Eigen::Index i) const;
};

// The whole of a finite-dimensional Hopf algebra.
std::shared_ptr<const WindowedAlgebra> dense_window(
    std::shared_ptr<const HopfAlgebra> algebra);

// The span of the group elements of word length <= length inside the group
// algebra of the provider.
std::shared_ptr<const WindowedAlgebra> group_window(
    std::shared_ptr<const GroupProvider> group, long length,
    const FieldDescriptor& field = FieldDescriptor::rationals());

// The span of the normal monomials F^f E^e K^k with f <= max_f, e <= max_e
// and |k| <= max_k (0 <= k < modulus when the presentation imposes one).
std::shared_ptr<const WindowedAlgebra> pbw_window(
    std::shared_ptr<const PresentedAlgebra> algebra, long max_f, long max_e,
    long max_k);

// ---------------------------------------------------------------------------
// Families of left coideal subalgebras
// ---------------------------------------------------------------------------

enum class AdStability { verified, assumed, unknown };

// What to verify about the adjoint stability of the sum C = C_1 + ... + C_k
// when building a family:
//   full        - probe the algebra generators (certifies stability under
//                 the whole algebra),
//   family_only - probe only the elements of the components themselves
//                 (enough when every component is a sub-bialgebra),
//   none        - record the stability as assumed.
enum class AdCheck { full, family_only, none };

struct CoidealFamily {
  std::shared_ptr<const WindowedAlgebra> ambient;
  std::vector<Subspace> components;        // C_1 .. C_k
  std::vector<bool> component_verified;    // left-coideal-subalgebra check ran
  AdStability ad_status = AdStability::unknown;

  // C = C_1 + ... + C_k
  Subspace sum() const;
};

// Builds a family from spanning vectors over the ambient window.  When
// verify_components is set, each component is checked to be a left coideal
// subalgebra (contains 1, closed under products, second comultiplication
// legs stay inside); failures throw HypothesisViolated with a witness.  The
// requested adjoint check runs afterwards and also throws HypothesisViolated
// when an image escapes the sum.
CoidealFamily make_family(std::shared_ptr<const WindowedAlgebra> ambient,
                          const std::vector<std::vector<Vec>>& component_spans,
                          bool verify_components, AdCheck ad_check);

// ---------------------------------------------------------------------------
// Product filtration
// ---------------------------------------------------------------------------

// Dimensions of the subspaces C^(n) generated by products of at most n
// factors from C: C^(1) = C and C^(n+1) = C^(n) + C * C^(n).  dims[0] is
// dim C^(1); the run stops at the first n with C^(n+1) = C^(n) (then
// stabilized holds and s_star = n, with the repeated dimension included),
// when max_steps is exhausted, or when the dimension passes the budget
// (budget_exceeded).
struct FiltrationReport {
  std::vector<Eigen::Index> dims;
  bool stabilized = false;
  size_t s_star = 0;
  bool budget_exceeded = false;
  Subspace closure;  // the last computed C^(n)
};

FiltrationReport product_filtration(const CoidealFamily& family,
                                    size_t max_steps, size_t budget);

// ---------------------------------------------------------------------------
// Straightening
// ---------------------------------------------------------------------------

// One factor of a product monomial: an element of the named component.
struct MonomialFactor {
  size_t component = 0;
  Vec element;
};

// A certified rewriting of the input product: the value equals the sum of
// the products of the output monomials, and every output monomial has one
// factor less than the input.
struct StraightenResult {
  std::vector<std::vector<MonomialFactor>> terms;
  Vec value;  // product of the input monomial
  size_t rewrite_steps = 0;
};

// Rewrites a product c_{i_1} ... c_{i_s} with a repeated component index as
// a sum of products of s - 1 component elements.  Repeatedly picks the
// closest pair of equal indices (leftmost on ties): adjacent equal factors
// are merged inside their component; otherwise the left factor of the pair
// is moved one slot to the right with the adjoint rewrite
//   c d = sum (c_(1) . d) c_(2),
// which shrinks the pair's gap.  Adjoint images are re-expanded into
// component parts by a greedy decomposition against the concatenated
// component bases; an image outside the sum C (or a comultiplication leg
// outside its component) throws HypothesisViolated -- the diagnostic that
// the family's stability flags were wrong.  Throws PreconditionViolated
// when no component index repeats or a factor lies outside its component,
// and WindowOverflow when an intermediate product escapes the window.
StraightenResult straighten(const CoidealFamily& family,
                            const std::vector<MonomialFactor>& monomial);

}  // namespace hopfad
