#include "hopfad/hopf.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "hopfad/pbw.hpp"

namespace hopfad {

namespace {

using SElem = SparseVec<Eigen::Index>;

SElem to_sparse(const Vec& v) {
  SElem s;
  for (Eigen::Index i = 0; i < v.rows(); ++i)
    if (!v(i).is_zero()) s.add(i, v(i));
  return s;
}

Vec to_dense(const SElem& s, Eigen::Index dim) {
  Vec v = Vec::Zero(dim);
  for (const auto& [k, c] : s.terms()) v(k) = c;
  return v;
}

const SElem& basis_product(const HopfAlgebra& h, Eigen::Index i, Eigen::Index j) {
  return h.mult[i * h.dim + j];
}

SElem smul(const HopfAlgebra& h, const SElem& a, const SElem& b) {
  SElem out;
  for (const auto& [i, ca] : a.terms())
    for (const auto& [j, cb] : b.terms()) {
      Scalar c = ca * cb;
      for (const auto& [t, ct] : basis_product(h, i, j).terms()) out.add(t, c * ct);
    }
  return out;
}

SElem santipode_col(const HopfAlgebra& h, Eigen::Index j) {
  SElem out;
  for (Eigen::Index i = 0; i < h.dim; ++i)
    if (!h.antipode(i, j).is_zero()) out.add(i, h.antipode(i, j));
  return out;
}

SElem santipode(const HopfAlgebra& h, const SElem& a) {
  SElem out;
  for (const auto& [j, c] : a.terms())
    for (Eigen::Index i = 0; i < h.dim; ++i) {
      const Scalar& s = h.antipode(i, j);
      if (!s.is_zero()) out.add(i, c * s);
    }
  return out;
}

// flat tensor on keys i * dim + j
SElem scomult(const HopfAlgebra& h, const SElem& a) {
  SElem out;
  for (const auto& [k, c] : a.terms())
    for (const auto& t : h.comult[k]) out.add(t.i * h.dim + t.j, c * t.c);
  return out;
}

SElem stensor(const HopfAlgebra& h, const SElem& a, const SElem& b) {
  SElem out;
  for (const auto& [i, ca] : a.terms())
    for (const auto& [j, cb] : b.terms()) out.add(i * h.dim + j, ca * cb);
  return out;
}

SElem sadjoint(const HopfAlgebra& h, const SElem& k, const SElem& v) {
  SElem out;
  for (const auto& [t, c] : k.terms())
    for (const auto& ct : h.comult[t]) {
      SElem part = smul(h, smul(h, SElem::unit(ct.i), v), santipode_col(h, ct.j));
      part *= c * ct.c;
      out += part;
    }
  return out;
}

// (k1, k2, k3, coeff) terms of the twofold comultiplication
std::vector<std::tuple<Eigen::Index, Eigen::Index, Eigen::Index, Scalar>> sdelta2(
    const HopfAlgebra& h, const SElem& a) {
  std::vector<std::tuple<Eigen::Index, Eigen::Index, Eigen::Index, Scalar>> out;
  for (const auto& [t, c] : a.terms())
    for (const auto& t1 : h.comult[t])
      for (const auto& t2 : h.comult[t1.i]) out.emplace_back(t2.i, t2.j, t1.j, c * t1.c * t2.c);
  return out;
}

void check_shapes(const HopfAlgebra& h) {
  auto bad = [&](const std::string& what) {
    throw ShapeMismatch((h.name.empty() ? std::string("Hopf algebra") : h.name) + ": " + what);
  };
  if (h.dim <= 0) bad("dimension must be positive, got " + std::to_string(h.dim));
  const Eigen::Index d = h.dim;
  if (static_cast<Eigen::Index>(h.mult.size()) != d * d)
    bad("mult table has " + std::to_string(h.mult.size()) + " entries, expected dim^2 = " +
        std::to_string(d * d));
  for (const auto& p : h.mult)
    for (const auto& [k, c] : p.terms())
      if (k < 0 || k >= d) bad("mult entry hits basis index " + std::to_string(k));
  if (h.unit.rows() != d) bad("unit vector has length " + std::to_string(h.unit.rows()));
  if (static_cast<Eigen::Index>(h.comult.size()) != d)
    bad("comult table has " + std::to_string(h.comult.size()) + " rows, expected dim");
  for (const auto& row : h.comult)
    for (const auto& t : row)
      if (t.i < 0 || t.i >= d || t.j < 0 || t.j >= d)
        bad("comult entry hits basis pair (" + std::to_string(t.i) + ", " + std::to_string(t.j) +
            ")");
  if (h.counit.cols() != d) bad("counit row has length " + std::to_string(h.counit.cols()));
  if (h.antipode.rows() != d || h.antipode.cols() != d)
    bad("antipode matrix is " + std::to_string(h.antipode.rows()) + " x " +
        std::to_string(h.antipode.cols()));
  if (!h.basis_names.empty() && static_cast<Eigen::Index>(h.basis_names.size()) != d)
    bad("basis name list has " + std::to_string(h.basis_names.size()) + " entries");
}

std::map<std::pair<Eigen::Index, Eigen::Index>, Scalar> comult_map(
    const std::vector<ComultTerm>& row) {
  std::map<std::pair<Eigen::Index, Eigen::Index>, Scalar> m;
  for (const auto& t : row) {
    auto [it, fresh] = m.emplace(std::make_pair(t.i, t.j), t.c);
    if (!fresh) it->second += t.c;
  }
  for (auto it = m.begin(); it != m.end();)
    it = it->second.is_zero() ? m.erase(it) : std::next(it);
  return m;
}

}  // namespace

// ---------------------------------------------------------------------------
// element operations
// ---------------------------------------------------------------------------

std::string HopfAlgebra::basis_label(Eigen::Index i) const {
  if (i < 0 || i >= dim) throw IndexOutOfRange("basis index " + std::to_string(i));
  if (static_cast<size_t>(i) < basis_names.size() && !basis_names[i].empty())
    return basis_names[i];
  return "e" + std::to_string(i);
}

Vec HopfAlgebra::basis_vector(Eigen::Index i) const {
  if (i < 0 || i >= dim) throw IndexOutOfRange("basis index " + std::to_string(i));
  Vec v = Vec::Zero(dim);
  v(i) = Scalar::one(field);
  return v;
}

Vec HopfAlgebra::multiply(const Vec& a, const Vec& b) const {
  if (a.rows() != dim || b.rows() != dim)
    throw DimensionMismatch("multiply: elements of length " + std::to_string(a.rows()) + ", " +
                            std::to_string(b.rows()) + " in dimension " + std::to_string(dim));
  return to_dense(smul(*this, to_sparse(a), to_sparse(b)), dim);
}

Vec HopfAlgebra::comultiply(const Vec& v) const {
  if (v.rows() != dim) throw DimensionMismatch("comultiply: element of wrong length");
  return to_dense(scomult(*this, to_sparse(v)), dim * dim);
}

Scalar HopfAlgebra::counit_of(const Vec& v) const {
  if (v.rows() != dim) throw DimensionMismatch("counit_of: element of wrong length");
  Scalar s = Scalar::zero(field);
  for (Eigen::Index i = 0; i < dim; ++i) s += counit(i) * v(i);
  return s;
}

Vec HopfAlgebra::antipode_of(const Vec& v) const {
  if (v.rows() != dim) throw DimensionMismatch("antipode_of: element of wrong length");
  return antipode * v;
}

Vec HopfAlgebra::adjoint_action(const Vec& k, const Vec& h) const {
  if (k.rows() != dim || h.rows() != dim)
    throw DimensionMismatch("adjoint_action: elements of wrong length");
  return to_dense(sadjoint(*this, to_sparse(k), to_sparse(h)), dim);
}

Mat HopfAlgebra::left_mult_matrix(const Vec& a) const {
  if (a.rows() != dim) throw DimensionMismatch("left_mult_matrix: element of wrong length");
  SElem sa = to_sparse(a);
  Mat m = Mat::Zero(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    SElem col = smul(*this, sa, SElem::unit(j));
    for (const auto& [t, c] : col.terms()) m(t, j) = c;
  }
  return m;
}

Mat HopfAlgebra::right_mult_matrix(const Vec& a) const {
  if (a.rows() != dim) throw DimensionMismatch("right_mult_matrix: element of wrong length");
  SElem sa = to_sparse(a);
  Mat m = Mat::Zero(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    SElem col = smul(*this, SElem::unit(j), sa);
    for (const auto& [t, c] : col.terms()) m(t, j) = c;
  }
  return m;
}

Mat HopfAlgebra::adjoint_matrix(const Vec& k) const {
  if (k.rows() != dim) throw DimensionMismatch("adjoint_matrix: element of wrong length");
  SElem sk = to_sparse(k);
  Mat m = Mat::Zero(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    SElem col = sadjoint(*this, sk, SElem::unit(j));
    for (const auto& [t, c] : col.terms()) m(t, j) = c;
  }
  return m;
}

Mat HopfAlgebra::comult_matrix() const {
  Mat m = Mat::Zero(dim * dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k)
    for (const auto& t : comult[k]) m(t.i * dim + t.j, k) += t.c;
  return m;
}

std::string HopfAlgebra::element_str(const Vec& v) const {
  if (v.rows() != dim) throw DimensionMismatch("element_str: element of wrong length");
  std::string out;
  for (Eigen::Index i = 0; i < dim; ++i) {
    if (v(i).is_zero()) continue;
    std::string cs = v(i).str();
    std::string piece;
    if (cs == "1")
      piece = basis_label(i);
    else if (cs == "-1")
      piece = "-" + basis_label(i);
    else if (cs.find_first_of("+- /") == std::string::npos)
      piece = cs + "*" + basis_label(i);
    else
      piece = "(" + cs + ")*" + basis_label(i);
    if (out.empty())
      out = piece;
    else if (piece[0] == '-')
      out += " - " + piece.substr(1);
    else
      out += " + " + piece;
  }
  return out.empty() ? "0" : out;
}

bool same_structure(const HopfAlgebra& a, const HopfAlgebra& b) {
  if (a.field != b.field || a.dim != b.dim) return false;
  if (a.mult.size() != b.mult.size() || a.comult.size() != b.comult.size()) return false;
  for (size_t i = 0; i < a.mult.size(); ++i)
    if (!(a.mult[i] == b.mult[i])) return false;
  for (size_t k = 0; k < a.comult.size(); ++k)
    if (comult_map(a.comult[k]) != comult_map(b.comult[k])) return false;
  return exact_equal(a.unit, b.unit) && exact_equal(a.counit, b.counit) &&
         exact_equal(a.antipode, b.antipode);
}

// ---------------------------------------------------------------------------
// axiom verification
// ---------------------------------------------------------------------------

bool AxiomReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

AxiomReport verify_axioms(const HopfAlgebra& h) {
  check_shapes(h);
  const Eigen::Index d = h.dim;
  AxiomReport rep;
  auto add = [&](std::string axiom, bool pass, std::string witness) {
    rep.checks.push_back({std::move(axiom), pass, pass ? std::string() : std::move(witness)});
  };

  {  // associativity on basis triples
    bool ok = true;
    std::string w;
    for (Eigen::Index i = 0; ok && i < d; ++i)
      for (Eigen::Index j = 0; ok && j < d; ++j) {
        const SElem& ij = basis_product(h, i, j);
        for (Eigen::Index k = 0; ok && k < d; ++k) {
          if (!(smul(h, ij, SElem::unit(k)) == smul(h, SElem::unit(i), basis_product(h, j, k)))) {
            ok = false;
            w = "(" + h.basis_label(i) + " " + h.basis_label(j) + ") " + h.basis_label(k) +
                " != " + h.basis_label(i) + " (" + h.basis_label(j) + " " + h.basis_label(k) + ")";
          }
        }
      }
    add("associativity", ok, w);
  }

  {  // two-sided unit
    bool ok = true;
    std::string w;
    SElem u = to_sparse(h.unit);
    for (Eigen::Index i = 0; ok && i < d; ++i) {
      SElem e = SElem::unit(i);
      if (!(smul(h, u, e) == e) || !(smul(h, e, u) == e)) {
        ok = false;
        w = "1 * " + h.basis_label(i) + " or " + h.basis_label(i) + " * 1 differs from " +
            h.basis_label(i);
      }
    }
    add("unit", ok, w);
  }

  {  // coassociativity on basis vectors, compared as threefold tensors
    bool ok = true;
    std::string w;
    for (Eigen::Index k = 0; ok && k < d; ++k) {
      SElem left, right;  // keys (a * d + b) * d + c
      for (const auto& t : h.comult[k]) {
        for (const auto& s : h.comult[t.i]) left.add((s.i * d + s.j) * d + t.j, t.c * s.c);
        for (const auto& s : h.comult[t.j]) right.add((t.i * d + s.i) * d + s.j, t.c * s.c);
      }
      if (!(left == right)) {
        ok = false;
        w = "(Delta x id) Delta != (id x Delta) Delta on " + h.basis_label(k);
      }
    }
    add("coassociativity", ok, w);
  }

  {  // counit
    bool ok = true;
    std::string w;
    for (Eigen::Index k = 0; ok && k < d; ++k) {
      SElem left, right;
      for (const auto& t : h.comult[k]) {
        left.add(t.j, t.c * h.counit(t.i));
        right.add(t.i, t.c * h.counit(t.j));
      }
      SElem e = SElem::unit(k);
      if (!(left == e) || !(right == e)) {
        ok = false;
        w = "(counit x id) Delta or (id x counit) Delta differs from identity on " +
            h.basis_label(k);
      }
    }
    add("counit", ok, w);
  }

  {  // comultiplication is an algebra map
    bool ok = true;
    std::string w;
    using T4 = std::map<long, Scalar>;
    auto addm = [](T4& m, long key, const Scalar& c) {
      if (c.is_zero()) return;
      auto [it, fresh] = m.emplace(key, c);
      if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) m.erase(it);
      }
    };
    auto key4 = [d](Eigen::Index i, Eigen::Index j, Eigen::Index a, Eigen::Index b) {
      return static_cast<long>(((i * d + j) * d + a) * d + b);
    };
    T4 lhs;  // Delta(e_i e_j)
    long mult_nnz = 0;
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j)
        for (const auto& [k, ck] : basis_product(h, i, j).terms()) {
          ++mult_nnz;
          for (const auto& t : h.comult[k]) addm(lhs, key4(i, j, t.i, t.j), ck * t.c);
        }
    long comult_nnz = 0;
    for (const auto& row : h.comult) comult_nnz += static_cast<long>(row.size());

    T4 rhs;  // Delta(e_i) Delta(e_j), expanded from the sparser side
    if (comult_nnz <= mult_nnz) {
      for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
          for (const auto& t1 : h.comult[i])
            for (const auto& t2 : h.comult[j]) {
              Scalar c12 = t1.c * t2.c;
              for (const auto& [a, m1] : basis_product(h, t1.i, t2.i).terms())
                for (const auto& [b, m2] : basis_product(h, t1.j, t2.j).terms())
                  addm(rhs, key4(i, j, a, b), c12 * m1 * m2);
            }
    } else {
      // reverse index: tensor slot (a, b) -> terms of Delta containing it
      std::map<long, std::vector<std::pair<Eigen::Index, Scalar>>> rev;
      for (Eigen::Index k = 0; k < d; ++k)
        for (const auto& t : h.comult[k]) rev[t.i * d + t.j].push_back({k, t.c});
      struct MEntry {
        Eigen::Index x, y, t;
        Scalar c;
      };
      std::vector<MEntry> entries;
      for (Eigen::Index x = 0; x < d; ++x)
        for (Eigen::Index y = 0; y < d; ++y)
          for (const auto& [t, c] : basis_product(h, x, y).terms()) entries.push_back({x, y, t, c});
      for (const auto& ea : entries)
        for (const auto& eb : entries) {
          auto ra = rev.find(ea.x * d + eb.x);
          if (ra == rev.end()) continue;
          auto rb = rev.find(ea.y * d + eb.y);
          if (rb == rev.end()) continue;
          Scalar m12 = ea.c * eb.c;
          for (const auto& [i, ci] : ra->second)
            for (const auto& [j, cj] : rb->second) addm(rhs, key4(i, j, ea.t, eb.t), m12 * ci * cj);
        }
    }
    if (!(lhs == rhs)) {
      ok = false;
      long bad = -1;
      for (const auto& [k, c] : lhs)
        if (bad < 0) {
          auto it = rhs.find(k);
          if (it == rhs.end() || it->second != c) bad = k;
        }
      if (bad < 0)
        for (const auto& [k, c] : rhs)
          if (bad < 0 && lhs.find(k) == lhs.end()) bad = k;
      if (bad >= 0) {
        Eigen::Index j = (bad / (d * d)) % d, i = bad / (d * d * d);
        w = "Delta(" + h.basis_label(i) + " " + h.basis_label(j) + ") != Delta(" +
            h.basis_label(i) + ") Delta(" + h.basis_label(j) + ")";
      } else {
        w = "Delta is not multiplicative";
      }
    }
    SElem u = to_sparse(h.unit);
    if (ok && !(scomult(h, u) == stensor(h, u, u))) {
      ok = false;
      w = "Delta(1) != 1 (x) 1";
    }
    add("comultiplication is an algebra map", ok, w);
  }

  {  // counit is an algebra map
    bool ok = true;
    std::string w;
    for (Eigen::Index i = 0; ok && i < d; ++i)
      for (Eigen::Index j = 0; ok && j < d; ++j) {
        Scalar s = Scalar::zero(h.field);
        for (const auto& [k, ck] : basis_product(h, i, j).terms()) s += ck * h.counit(k);
        if (s != h.counit(i) * h.counit(j)) {
          ok = false;
          w = "counit(" + h.basis_label(i) + " " + h.basis_label(j) +
              ") != counit(" + h.basis_label(i) + ") counit(" + h.basis_label(j) + ")";
        }
      }
    if (ok) {
      Scalar s = Scalar::zero(h.field);
      for (Eigen::Index i = 0; i < d; ++i) s += h.counit(i) * h.unit(i);
      if (!s.is_one()) {
        ok = false;
        w = "counit(1) != 1";
      }
    }
    add("counit is an algebra map", ok, w);
  }

  {  // antipode identities, both sides
    bool ok = true;
    std::string w;
    SElem u = to_sparse(h.unit);
    std::vector<SElem> scol;
    scol.reserve(static_cast<size_t>(d));
    for (Eigen::Index j = 0; j < d; ++j) scol.push_back(santipode_col(h, j));
    for (Eigen::Index k = 0; ok && k < d; ++k) {
      SElem left, right;
      for (const auto& t : h.comult[k]) {
        left += t.c * smul(h, scol[static_cast<size_t>(t.i)], SElem::unit(t.j));
        right += t.c * smul(h, SElem::unit(t.i), scol[static_cast<size_t>(t.j)]);
      }
      SElem expect = u * h.counit(k);
      if (!(left == expect) || !(right == expect)) {
        ok = false;
        w = "antipode convolution identity fails on " + h.basis_label(k);
      }
    }
    add("antipode law", ok, w);
  }

  return rep;
}

// ---------------------------------------------------------------------------
// constructors
// ---------------------------------------------------------------------------

namespace {

std::string table_label(const GroupTable& t, Eigen::Index i) {
  if (static_cast<size_t>(i) < t.element_names.size() && !t.element_names[i].empty())
    return t.element_names[i];
  return "g" + std::to_string(i);
}

Eigen::Index table_identity(const GroupTable& t) {
  const Eigen::Index n = t.order;
  for (Eigen::Index e = 0; e < n; ++e) {
    bool ok = true;
    for (Eigen::Index b = 0; ok && b < n; ++b)
      ok = t.product[e * n + b] == b && t.product[b * n + e] == b;
    if (ok) return e;
  }
  return -1;
}

}  // namespace

void validate_group_table(const GroupTable& t) {
  const Eigen::Index n = t.order;
  if (n <= 0) throw NotAGroup("group order must be positive, got " + std::to_string(n));
  if (static_cast<Eigen::Index>(t.product.size()) != n * n)
    throw NotAGroup("multiplication table has " + std::to_string(t.product.size()) +
                    " entries, expected order^2 = " + std::to_string(n * n));
  if (!t.element_names.empty() && static_cast<Eigen::Index>(t.element_names.size()) != n)
    throw NotAGroup("element name list has " + std::to_string(t.element_names.size()) +
                    " entries for order " + std::to_string(n));
  for (Eigen::Index v : t.product)
    if (v < 0 || v >= n)
      throw NotAGroup("table entry " + std::to_string(v) + " outside [0, " + std::to_string(n) +
                      ")");
  Eigen::Index e = table_identity(t);
  if (e < 0) throw NotAGroup("no two-sided identity element");
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b)
      for (Eigen::Index c = 0; c < n; ++c)
        if (t.product[t.product[a * n + b] * n + c] != t.product[a * n + t.product[b * n + c]])
          throw NotAGroup("associativity fails at (" + table_label(t, a) + ", " +
                          table_label(t, b) + ", " + table_label(t, c) + ")");
  for (Eigen::Index a = 0; a < n; ++a) {
    bool found = false;
    for (Eigen::Index b = 0; !found && b < n; ++b)
      found = t.product[a * n + b] == e && t.product[b * n + a] == e;
    if (!found) throw NotAGroup("no inverse for " + table_label(t, a));
  }
}

HopfAlgebra group_algebra(const GroupTable& t, const FieldDescriptor& field) {
  validate_group_table(t);
  const Eigen::Index n = t.order;
  const Eigen::Index e = table_identity(t);
  HopfAlgebra h;
  h.field = field;
  h.dim = n;
  h.name = t.name.empty() ? "group-algebra" : "k[" + t.name + "]";
  h.basis_names.reserve(static_cast<size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) h.basis_names.push_back(table_label(t, i));
  const Scalar one = Scalar::one(field);
  h.mult.resize(static_cast<size_t>(n * n));
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b)
      h.mult[a * n + b] = SElem::unit(t.product[a * n + b], one);
  h.unit = Vec::Zero(n);
  h.unit(e) = one;
  h.comult.resize(static_cast<size_t>(n));
  for (Eigen::Index g = 0; g < n; ++g) h.comult[g] = {{g, g, one}};
  h.counit = RowVec::Zero(n);
  for (Eigen::Index g = 0; g < n; ++g) h.counit(g) = one;
  h.antipode = Mat::Zero(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b)
      if (t.product[a * n + b] == e && t.product[b * n + a] == e) h.antipode(b, a) = one;
  for (Eigen::Index g = 0; g < n; ++g) h.known_grouplikes.push_back(h.basis_vector(g));
  h.known_pointed = true;
  return h;
}

HopfAlgebra sweedler(const FieldDescriptor& field) {
  if (field.characteristic() == 2)
    throw BadCharacteristic("the 4-dimensional algebra needs characteristic != 2");
  HopfAlgebra h;
  h.field = field;
  h.dim = 4;
  h.name = "sweedler";
  h.basis_names = {"1", "g", "x", "gx"};
  const Scalar one = Scalar::one(field);
  // basis element i <-> g^a x^b with (a, b) = ab[i]
  const int ab[4][2] = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  auto idx = [](int a, int b) { return static_cast<Eigen::Index>(b == 0 ? a : 2 + a); };
  h.mult.resize(16);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      int a1 = ab[i][0], b1 = ab[i][1], a2 = ab[j][0], b2 = ab[j][1];
      if (b1 + b2 >= 2) continue;  // x^2 = 0
      Scalar c = (b1 * a2) % 2 ? -one : one;  // x g = -g x
      h.mult[static_cast<Eigen::Index>(i) * 4 + j] = SElem::unit(idx((a1 + a2) % 2, b1 + b2), c);
    }
  h.unit = Vec::Zero(4);
  h.unit(0) = one;
  h.comult.resize(4);
  h.comult[0] = {{0, 0, one}};
  h.comult[1] = {{1, 1, one}};
  h.comult[2] = {{2, 0, one}, {1, 2, one}};  // x (x) 1 + g (x) x
  h.comult[3] = {{3, 1, one}, {0, 3, one}};  // gx (x) g + 1 (x) gx
  h.counit = RowVec::Zero(4);
  h.counit(0) = one;
  h.counit(1) = one;
  h.antipode = Mat::Zero(4, 4);
  h.antipode(0, 0) = one;
  h.antipode(1, 1) = one;
  h.antipode(3, 2) = -one;  // S(x) = -gx
  h.antipode(2, 3) = one;   // S(gx) = x
  h.known_grouplikes = {h.basis_vector(0), h.basis_vector(1)};
  h.known_pointed = true;
  return h;
}

HopfAlgebra taft(long n, const FieldDescriptor& field) {
  if (n < 2) throw PreconditionViolated("taft algebra needs n >= 2, got " + std::to_string(n));
  const Scalar q = primitive_root(field, static_cast<unsigned long>(n));
  const Eigen::Index d = static_cast<Eigen::Index>(n) * n;
  auto idx = [n](long a, long b) { return static_cast<Eigen::Index>(a * n + b); };
  // monomial product (g^a x^b)(g^c x^e) = q^{bc} g^{(a+c) mod n} x^{b+e}
  struct Mono {
    long a, b;
    Scalar c;
  };
  auto mono_mul = [&](const Mono& u, const Mono& v) -> std::optional<Mono> {
    if (u.b + v.b >= n) return std::nullopt;  // x^n = 0
    return Mono{(u.a + v.a) % n, u.b + v.b, u.c * v.c * q.pow(u.b * v.a)};
  };
  HopfAlgebra h;
  h.field = field;
  h.dim = d;
  h.name = "taft:" + std::to_string(n);
  h.basis_names.resize(static_cast<size_t>(d));
  for (long a = 0; a < n; ++a)
    for (long b = 0; b < n; ++b) {
      std::string s;
      if (a > 0) s += (a == 1) ? "g" : "g^" + std::to_string(a);
      if (b > 0) {
        if (!s.empty()) s += "*";
        s += (b == 1) ? "x" : "x^" + std::to_string(b);
      }
      h.basis_names[static_cast<size_t>(idx(a, b))] = s.empty() ? "1" : s;
    }
  const Scalar one = Scalar::one(field);
  h.mult.resize(static_cast<size_t>(d * d));
  for (long a = 0; a < n; ++a)
    for (long b = 0; b < n; ++b)
      for (long c = 0; c < n; ++c)
        for (long e = 0; e < n; ++e) {
          auto p = mono_mul(Mono{a, b, one}, Mono{c, e, one});
          if (p) h.mult[idx(a, b) * d + idx(c, e)] = SElem::unit(idx(p->a, p->b), p->c);
        }
  h.unit = Vec::Zero(d);
  h.unit(idx(0, 0)) = one;
  h.counit = RowVec::Zero(d);
  for (long a = 0; a < n; ++a) h.counit(idx(a, 0)) = one;
  // Delta(g^a x^b) = (g^a (x) g^a) (x (x) 1 + g (x) x)^b, expanded leg by leg
  h.comult.resize(static_cast<size_t>(d));
  for (long a = 0; a < n; ++a)
    for (long b = 0; b < n; ++b) {
      std::map<std::pair<long, long>, Scalar> cur;  // keys (index left, index right)
      cur[{idx(a, 0), idx(a, 0)}] = one;
      for (long step = 0; step < b; ++step) {
        std::map<std::pair<long, long>, Scalar> next;
        for (const auto& [lr, c] : cur) {
          long la = lr.first / n, lb = lr.first % n;
          long ra = lr.second / n, rb = lr.second % n;
          // times x (x) 1
          if (auto p = mono_mul(Mono{la, lb, c}, Mono{0, 1, one})) {
            auto key = std::make_pair(static_cast<long>(idx(p->a, p->b)), lr.second);
            auto [it, fresh] = next.emplace(key, p->c);
            if (!fresh) it->second += p->c;
          }
          // times g (x) x
          auto pl = mono_mul(Mono{la, lb, c}, Mono{1, 0, one});
          auto pr = mono_mul(Mono{ra, rb, one}, Mono{0, 1, one});
          if (pl && pr) {
            auto key = std::make_pair(static_cast<long>(idx(pl->a, pl->b)),
                                      static_cast<long>(idx(pr->a, pr->b)));
            Scalar c2 = pl->c * pr->c;
            auto [it, fresh] = next.emplace(key, c2);
            if (!fresh) it->second += c2;
          }
        }
        cur = std::move(next);
      }
      auto& row = h.comult[static_cast<size_t>(idx(a, b))];
      for (const auto& [lr, c] : cur)
        if (!c.is_zero()) row.push_back({static_cast<Eigen::Index>(lr.first),
                                         static_cast<Eigen::Index>(lr.second), c});
    }
  // S(g^a x^b) = (-g^{n-1} x)^b g^{(n - a) mod n}, a single monomial
  h.antipode = Mat::Zero(d, d);
  for (long a = 0; a < n; ++a)
    for (long b = 0; b < n; ++b) {
      Mono acc{0, 0, one};
      bool dead = false;
      for (long step = 0; !dead && step < b; ++step) {
        auto p = mono_mul(acc, Mono{n - 1, 1, -one});
        if (!p)
          dead = true;
        else
          acc = *p;
      }
      if (!dead) {
        auto p = mono_mul(acc, Mono{(n - a) % n, 0, one});
        if (p) h.antipode(idx(p->a, p->b), idx(a, b)) = p->c;
      }
    }
  for (long a = 0; a < n; ++a) h.known_grouplikes.push_back(h.basis_vector(idx(a, 0)));
  h.known_pointed = true;
  return h;
}

HopfAlgebra small_quantum_sl2(long n, const FieldDescriptor& field) {
  const Scalar q = primitive_root(field, static_cast<unsigned long>(n));
  PresentedAlgebra alg = PresentedAlgebra::uq_sl2_finite(n, field, q);
  const Eigen::Index d = static_cast<Eigen::Index>(n) * n * n;
  auto key_of = [n](Eigen::Index t) {
    return PBWKey{t / (n * n), (t / n) % n, t % n};
  };
  auto idx_of = [n, d](const PBWKey& k) {
    Eigen::Index t = (k.f * n + k.e) * n + k.k;
    if (k.f < 0 || k.f >= n || k.e < 0 || k.e >= n || k.k < 0 || k.k >= n || t < 0 || t >= d)
      throw Error("monomial outside the finite basis: " + pbw_key_str(k));
    return t;
  };
  HopfAlgebra h;
  h.field = field;
  h.dim = d;
  h.name = "uq-sl2:" + std::to_string(n);
  h.basis_names.resize(static_cast<size_t>(d));
  for (Eigen::Index t = 0; t < d; ++t) h.basis_names[static_cast<size_t>(t)] = pbw_key_str(key_of(t));
  h.mult.resize(static_cast<size_t>(d * d));
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) {
      PBWElement p = alg.multiply(PBWElement::unit(key_of(i)), PBWElement::unit(key_of(j)));
      SElem& out = h.mult[i * d + j];
      for (const auto& [m, c] : p.terms()) out.add(idx_of(m), c);
    }
  h.unit = Vec::Zero(d);
  h.unit(0) = Scalar::one(field);
  h.comult.resize(static_cast<size_t>(d));
  for (Eigen::Index t = 0; t < d; ++t) {
    PBWTensor dt = alg.coproduct(PBWElement::unit(key_of(t)));
    for (const auto& [pq, c] : dt.terms())
      h.comult[static_cast<size_t>(t)].push_back({idx_of(pq.first), idx_of(pq.second), c});
  }
  h.counit = RowVec::Zero(d);
  for (Eigen::Index t = 0; t < d; ++t) h.counit(t) = alg.counit(PBWElement::unit(key_of(t)));
  h.antipode = Mat::Zero(d, d);
  for (Eigen::Index t = 0; t < d; ++t) {
    PBWElement s = alg.antipode(PBWElement::unit(key_of(t)));
    for (const auto& [m, c] : s.terms()) h.antipode(idx_of(m), t) += c;
  }
  for (long j = 0; j < n; ++j) h.known_grouplikes.push_back(h.basis_vector(j));  // K^j
  h.known_pointed = true;
  return h;
}

HopfAlgebra dual_hopf(const HopfAlgebra& src) {
  check_shapes(src);
  const Eigen::Index d = src.dim;
  HopfAlgebra h;
  h.field = src.field;
  h.dim = d;
  h.name = "dual(" + (src.name.empty() ? "H" : src.name) + ")";
  if (!src.basis_names.empty()) {
    h.basis_names.reserve(static_cast<size_t>(d));
    for (Eigen::Index i = 0; i < d; ++i) h.basis_names.push_back(src.basis_label(i) + "*");
  }
  h.mult.resize(static_cast<size_t>(d * d));
  for (Eigen::Index t = 0; t < d; ++t)
    for (const auto& ct : src.comult[t]) h.mult[ct.i * d + ct.j].add(t, ct.c);
  h.unit = src.counit.transpose();
  h.comult.resize(static_cast<size_t>(d));
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      for (const auto& [t, c] : basis_product(src, i, j).terms())
        h.comult[static_cast<size_t>(t)].push_back({i, j, c});
  h.counit = src.unit.transpose();
  h.antipode = src.antipode.transpose();
  return h;
}

HopfAlgebra extend_scalars(const HopfAlgebra& src, const FieldDescriptor& target) {
  check_shapes(src);
  auto emb = [&](const Scalar& s) { return s.embedded_into(target); };
  HopfAlgebra h;
  h.field = target;
  h.dim = src.dim;
  h.name = src.name;
  h.basis_names = src.basis_names;
  h.mult.resize(src.mult.size());
  for (size_t i = 0; i < src.mult.size(); ++i)
    for (const auto& [k, c] : src.mult[i].terms()) h.mult[i].add(k, emb(c));
  h.unit = Vec::Zero(src.dim);
  for (Eigen::Index i = 0; i < src.dim; ++i) h.unit(i) = emb(src.unit(i));
  h.comult.resize(src.comult.size());
  for (size_t k = 0; k < src.comult.size(); ++k)
    for (const auto& t : src.comult[k]) h.comult[k].push_back({t.i, t.j, emb(t.c)});
  h.counit = RowVec::Zero(src.dim);
  for (Eigen::Index i = 0; i < src.dim; ++i) h.counit(i) = emb(src.counit(i));
  h.antipode = Mat::Zero(src.dim, src.dim);
  for (Eigen::Index i = 0; i < src.dim; ++i)
    for (Eigen::Index j = 0; j < src.dim; ++j)
      if (!src.antipode(i, j).is_zero()) h.antipode(i, j) = emb(src.antipode(i, j));
  // Pointedness survives extension (grouplikes stay grouplike and keep
  // spanning the coradical); a negative or unknown verdict does not carry.
  if (src.known_pointed == true) {
    h.known_pointed = true;
    for (const auto& g : src.known_grouplikes) {
      Vec gg = Vec::Zero(src.dim);
      for (Eigen::Index i = 0; i < src.dim; ++i) gg(i) = emb(g(i));
      h.known_grouplikes.push_back(std::move(gg));
    }
  }
  return h;
}

// ---------------------------------------------------------------------------
// text format
// ---------------------------------------------------------------------------

namespace {

struct LineCursor {
  const std::string& line;
  int lineno;
  size_t pos = 0;

  static bool space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

  // next whitespace-separated token with its 1-based column; empty at end
  std::pair<std::string, int> token() {
    while (pos < line.size() && space(line[pos])) ++pos;
    size_t start = pos;
    while (pos < line.size() && !space(line[pos])) ++pos;
    return {line.substr(start, pos - start), static_cast<int>(start) + 1};
  }

  // trimmed remainder of the line
  std::pair<std::string, int> rest() {
    while (pos < line.size() && space(line[pos])) ++pos;
    size_t start = pos;
    size_t end = line.size();
    while (end > start && space(line[end - 1])) --end;
    pos = line.size();
    return {line.substr(start, end - start), static_cast<int>(start) + 1};
  }
};

long parse_index(LineCursor& cur, Eigen::Index bound, const std::string& what) {
  auto [tok, col] = cur.token();
  if (tok.empty())
    throw ParseError(what + ": missing basis index", cur.lineno, col);
  for (char c : tok)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw ParseError(what + ": bad basis index '" + tok + "'", cur.lineno, col);
  long v;
  try {
    v = std::stol(tok);
  } catch (const std::exception&) {
    throw ParseError(what + ": bad basis index '" + tok + "'", cur.lineno, col);
  }
  if (v < 0 || v >= bound)
    throw ParseError(what + ": basis index " + tok + " outside [0, " + std::to_string(bound) + ")",
                     cur.lineno, col);
  return v;
}

Scalar parse_coeff(LineCursor& cur, const FieldDescriptor& field, const std::string& what) {
  auto [text, col] = cur.rest();
  if (text.empty()) throw ParseError(what + ": missing coefficient", cur.lineno, col);
  try {
    return Scalar::parse(text, field);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(what + ": bad coefficient '" + text + "': " + e.what(), cur.lineno, col);
  }
}

}  // namespace

HopfAlgebra read_hsc(std::istream& in) {
  HopfAlgebra h;
  bool have_field = false, have_dim = false;
  std::vector<std::map<std::pair<Eigen::Index, Eigen::Index>, Scalar>> comult_acc;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    LineCursor cur{line, lineno};
    auto [kw, kwcol] = cur.token();
    if (kw.empty()) continue;
    auto need_field = [&] {
      if (!have_field)
        throw ParseError("'" + kw + "' before the field declaration", lineno, kwcol);
    };
    auto need_dim = [&] {
      if (!have_dim) throw ParseError("'" + kw + "' before the dim declaration", lineno, kwcol);
    };
    if (kw == "field") {
      auto [text, col] = cur.rest();
      if (text.empty()) throw ParseError("field: missing descriptor", lineno, col);
      try {
        h.field = FieldDescriptor::parse(text);
      } catch (const Error& e) {
        throw ParseError("field: " + std::string(e.what()), lineno, col);
      }
      have_field = true;
    } else if (kw == "dim") {
      auto [tok, col] = cur.token();
      long d = 0;
      try {
        d = std::stol(tok);
      } catch (const std::exception&) {
        throw ParseError("dim: bad value '" + tok + "'", lineno, col);
      }
      if (d <= 0) throw ParseError("dim: must be positive, got '" + tok + "'", lineno, col);
      h.dim = d;
      h.mult.assign(static_cast<size_t>(d) * d, SElem());
      comult_acc.assign(static_cast<size_t>(d), {});
      h.unit = Vec::Zero(d);
      h.counit = RowVec::Zero(d);
      h.antipode = Mat::Zero(d, d);
      have_dim = true;
    } else if (kw == "name") {
      h.name = cur.rest().first;
    } else if (kw == "basis") {
      need_dim();
      std::vector<std::string> names;
      for (;;) {
        auto [tok, col] = cur.token();
        if (tok.empty()) break;
        names.push_back(tok);
      }
      if (static_cast<Eigen::Index>(names.size()) != h.dim)
        throw ParseError("basis: got " + std::to_string(names.size()) + " names for dimension " +
                         std::to_string(h.dim), lineno, kwcol);
      h.basis_names = std::move(names);
    } else if (kw == "unit" || kw == "counit") {
      need_field();
      need_dim();
      long i = parse_index(cur, h.dim, kw);
      Scalar c = parse_coeff(cur, h.field, kw);
      if (kw == "unit")
        h.unit(i) += c;
      else
        h.counit(i) += c;
    } else if (kw == "mult") {
      need_field();
      need_dim();
      long i = parse_index(cur, h.dim, kw);
      long j = parse_index(cur, h.dim, kw);
      long k = parse_index(cur, h.dim, kw);
      h.mult[static_cast<size_t>(i * h.dim + j)].add(k, parse_coeff(cur, h.field, kw));
    } else if (kw == "comult") {
      need_field();
      need_dim();
      long k = parse_index(cur, h.dim, kw);
      long i = parse_index(cur, h.dim, kw);
      long j = parse_index(cur, h.dim, kw);
      Scalar c = parse_coeff(cur, h.field, kw);
      auto& acc = comult_acc[static_cast<size_t>(k)];
      auto [it, fresh] = acc.emplace(
          std::make_pair(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)), c);
      if (!fresh) it->second += c;
    } else if (kw == "antipode") {
      need_field();
      need_dim();
      long i = parse_index(cur, h.dim, kw);
      long j = parse_index(cur, h.dim, kw);
      h.antipode(i, j) += parse_coeff(cur, h.field, kw);
    } else {
      throw ParseError("unknown directive '" + kw + "'", lineno, kwcol);
    }
  }
  if (!have_field) throw ParseError("missing field declaration");
  if (!have_dim) throw ParseError("missing dim declaration");
  h.comult.resize(static_cast<size_t>(h.dim));
  for (size_t k = 0; k < comult_acc.size(); ++k)
    for (const auto& [ij, c] : comult_acc[k])
      if (!c.is_zero()) h.comult[k].push_back({ij.first, ij.second, c});
  return h;
}

HopfAlgebra parse_hsc(const std::string& text) {
  std::istringstream in(text);
  return read_hsc(in);
}

std::string write_hsc(const HopfAlgebra& h) {
  check_shapes(h);
  std::ostringstream os;
  os << "field " << h.field.str() << "\n";
  os << "dim " << h.dim << "\n";
  if (!h.name.empty()) os << "name " << h.name << "\n";
  if (!h.basis_names.empty()) {
    os << "basis";
    for (const auto& n : h.basis_names) os << " " << n;
    os << "\n";
  }
  for (Eigen::Index i = 0; i < h.dim; ++i)
    if (!h.unit(i).is_zero()) os << "unit " << i << " " << h.unit(i).str() << "\n";
  for (Eigen::Index i = 0; i < h.dim; ++i)
    if (!h.counit(i).is_zero()) os << "counit " << i << " " << h.counit(i).str() << "\n";
  for (Eigen::Index i = 0; i < h.dim; ++i)
    for (Eigen::Index j = 0; j < h.dim; ++j)
      for (const auto& [k, c] : basis_product(h, i, j).terms())
        os << "mult " << i << " " << j << " " << k << " " << c.str() << "\n";
  for (Eigen::Index k = 0; k < h.dim; ++k)
    for (const auto& [ij, c] : comult_map(h.comult[static_cast<size_t>(k)]))
      os << "comult " << k << " " << ij.first << " " << ij.second << " " << c.str() << "\n";
  for (Eigen::Index i = 0; i < h.dim; ++i)
    for (Eigen::Index j = 0; j < h.dim; ++j)
      if (!h.antipode(i, j).is_zero())
        os << "antipode " << i << " " << j << " " << h.antipode(i, j).str() << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// adjoint-action identities
// ---------------------------------------------------------------------------

bool adjoint_comult_identity(const HopfAlgebra& h, const Vec& k, const Vec& v) {
  if (k.rows() != h.dim || v.rows() != h.dim)
    throw DimensionMismatch("adjoint_comult_identity: elements of wrong length");
  SElem sk = to_sparse(k), sv = to_sparse(v);
  SElem lhs = scomult(h, sadjoint(h, sk, sv));
  SElem rhs;
  std::vector<std::tuple<Eigen::Index, Eigen::Index, Scalar>> dv;
  for (const auto& [xy, cv] : scomult(h, sv).terms())
    dv.emplace_back(xy / h.dim, xy % h.dim, cv);
  // The double sum below revisits the same basis pairs many times when the
  // comultiplication is dense (duals), so cache the per-basis pieces.
  std::vector<std::optional<SElem>> scol(static_cast<size_t>(h.dim));
  std::vector<std::optional<SElem>> adj(static_cast<size_t>(h.dim) * h.dim);
  auto scol_of = [&](Eigen::Index j) -> const SElem& {
    auto& slot = scol[static_cast<size_t>(j)];
    if (!slot) slot = santipode_col(h, j);
    return *slot;
  };
  auto adj_of = [&](Eigen::Index a, Eigen::Index b) -> const SElem& {
    auto& slot = adj[static_cast<size_t>(a) * h.dim + b];
    if (!slot) slot = sadjoint(h, SElem::unit(a), SElem::unit(b));
    return *slot;
  };
  for (const auto& [k1, k2, k3, c] : sdelta2(h, sk)) {
    const SElem& sc3 = scol_of(k3);
    for (const auto& [x, y, cv] : dv) {
      const SElem& prod = basis_product(h, k1, x);
      if (prod.terms().empty()) continue;
      SElem first = smul(h, prod, sc3);
      if (first.terms().empty()) continue;
      const SElem& second = adj_of(k2, y);
      if (second.terms().empty()) continue;
      Scalar cc = c * cv;
      for (const auto& [p, cp] : first.terms())
        for (const auto& [qq, cq] : second.terms()) rhs.add(p * h.dim + qq, cc * cp * cq);
    }
  }
  return lhs == rhs;
}

bool module_algebra_identity(const HopfAlgebra& h, const Vec& k, const Vec& v, const Vec& w) {
  if (k.rows() != h.dim || v.rows() != h.dim || w.rows() != h.dim)
    throw DimensionMismatch("module_algebra_identity: elements of wrong length");
  SElem sk = to_sparse(k), sv = to_sparse(v), sw = to_sparse(w);
  SElem lhs = sadjoint(h, sk, smul(h, sv, sw));
  SElem rhs;
  for (const auto& [t, c] : sk.terms())
    for (const auto& ct : h.comult[t]) {
      SElem part = smul(h, sadjoint(h, SElem::unit(ct.i), sv), sadjoint(h, SElem::unit(ct.j), sw));
      part *= c * ct.c;
      rhs += part;
    }
  return lhs == rhs;
}

bool mult_recovery_identity(const HopfAlgebra& h, const Vec& a, const Vec& b) {
  if (a.rows() != h.dim || b.rows() != h.dim)
    throw DimensionMismatch("mult_recovery_identity: elements of wrong length");
  SElem sa = to_sparse(a), sb = to_sparse(b);
  SElem lhs = smul(h, sa, sb);
  SElem rhs;
  for (const auto& [t, c] : sa.terms())
    for (const auto& ct : h.comult[t]) {
      SElem part = smul(h, sadjoint(h, SElem::unit(ct.i), sb), SElem::unit(ct.j));
      part *= c * ct.c;
      rhs += part;
    }
  return lhs == rhs;
}

bool equivariant_comult_identity(const HopfAlgebra& h, const Vec& k, const Vec& v) {
  if (k.rows() != h.dim || v.rows() != h.dim)
    throw DimensionMismatch("equivariant_comult_identity: elements of wrong length");
  SElem sk = to_sparse(k), sv = to_sparse(v);
  SElem lhs = scomult(h, sadjoint(h, sk, sv));
  SElem rhs;
  SElem dv = scomult(h, sv);
  for (const auto& [t, c] : sk.terms())
    for (const auto& ct : h.comult[t])
      for (const auto& [xy, cv] : dv.terms()) {
        Eigen::Index x = xy / h.dim, y = xy % h.dim;
        SElem first = sadjoint(h, SElem::unit(ct.i), SElem::unit(x));
        SElem second = sadjoint(h, SElem::unit(ct.j), SElem::unit(y));
        Scalar cc = c * ct.c * cv;
        for (const auto& [p, cp] : first.terms())
          for (const auto& [qq, cq] : second.terms()) rhs.add(p * h.dim + qq, cc * cp * cq);
      }
  return lhs == rhs;
}

bool is_commutative(const HopfAlgebra& h) {
  check_shapes(h);
  for (Eigen::Index i = 0; i < h.dim; ++i)
    for (Eigen::Index j = i + 1; j < h.dim; ++j)
      if (!(basis_product(h, i, j) == basis_product(h, j, i))) return false;
  return true;
}

bool is_cocommutative(const HopfAlgebra& h) {
  check_shapes(h);
  for (Eigen::Index k = 0; k < h.dim; ++k) {
    auto m = comult_map(h.comult[static_cast<size_t>(k)]);
    for (const auto& [ij, c] : m) {
      auto it = m.find({ij.second, ij.first});
      if (it == m.end() || it->second != c) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// subspace structure
// ---------------------------------------------------------------------------

bool is_left_coideal_subalgebra(const HopfAlgebra& h, const Subspace& b) {
  check_shapes(h);
  if (b.ambient() != h.dim)
    throw DimensionMismatch("subspace lives in dimension " + std::to_string(b.ambient()) +
                            ", algebra in " + std::to_string(h.dim));
  if (!b.contains(h.unit)) return false;
  for (Eigen::Index r = 0; r < b.dim(); ++r)
    for (Eigen::Index s = 0; s < b.dim(); ++s)
      if (!b.contains(h.multiply(b.basis_vector(r), b.basis_vector(s)))) return false;
  for (Eigen::Index r = 0; r < b.dim(); ++r) {
    Mat legs = tensor_to_matrix(h.comultiply(b.basis_vector(r)), h.dim, h.dim);
    for (Eigen::Index i = 0; i < h.dim; ++i)
      if (!b.contains(legs.row(i).transpose())) return false;
  }
  return true;
}

namespace {

bool is_grouplike(const HopfAlgebra& h, const Vec& g) {
  SElem sg = to_sparse(g);
  if (sg.is_zero()) return false;
  return scomult(h, sg) == stensor(h, sg, sg) && h.counit_of(g).is_one();
}

// (id (x) f) Delta as a matrix, for an integer-valued functional f
Mat functional_matrix(const HopfAlgebra& h, const std::vector<long>& f) {
  Mat m = Mat::Zero(h.dim, h.dim);
  for (Eigen::Index k = 0; k < h.dim; ++k)
    for (const auto& t : h.comult[k])
      if (f[static_cast<size_t>(t.j)] != 0) m(t.i, k) += t.c * Scalar(f[static_cast<size_t>(t.j)]);
  return m;
}

Scalar matrix_trace(const Mat& m) {
  Scalar t = Scalar(0);
  for (Eigen::Index i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

// monic characteristic polynomial; c[k] is the coefficient of x^k.  Divides
// by 1..n, so the characteristic must be zero or exceed n.
std::vector<Scalar> char_poly(const Mat& m) {
  const Eigen::Index n = m.rows();
  std::vector<Scalar> c(static_cast<size_t>(n));
  Mat a = m;
  Scalar last = Scalar(0);
  for (Eigen::Index k = 1; k <= n; ++k) {
    if (k > 1) {
      Mat t = a;
      for (Eigen::Index i = 0; i < n; ++i) t(i, i) += last;
      a = m * t;
    }
    last = -(matrix_trace(a) / Scalar(static_cast<long>(k)));
    c[static_cast<size_t>(n - k)] = last;
  }
  return c;
}

Scalar eval_monic(const std::vector<Scalar>& c, const Scalar& x) {
  Scalar r = Scalar(1);
  for (size_t k = c.size(); k-- > 0;) r = r * x + c[k];
  return r;
}

// eigenvalues of m that lie in the base field itself
std::vector<Scalar> base_field_eigenvalues(const FieldDescriptor& f, const Mat& m) {
  std::vector<Scalar> out;
  const Eigen::Index n = m.rows();
  if (f.kind() == FieldKind::Rationals) {
    // scale to an integer matrix: rational eigenvalues mu / D with mu an
    // integer root of the monic integer characteristic polynomial, bounded
    // by the largest absolute row sum
    mpz_class den = 1;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) {
        const mpq_class& q = m(i, j).as_rational();
        mpz_class g = gcd(den, q.get_den());
        den = den / g * q.get_den();
      }
    Mat mi = m * Scalar(mpq_class(den));
    mpz_class bound = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      mpz_class row = 0;
      for (Eigen::Index j = 0; j < n; ++j) row += abs(mi(i, j).as_rational().get_num());
      if (row > bound) bound = row;
    }
    if (bound > 200000)
      throw Error("grouplike search: eigenvalue scan bound " + bound.get_str() + " too large");
    std::vector<Scalar> cp = char_poly(mi);
    for (long mu = -bound.get_si(); mu <= bound.get_si(); ++mu) {
      if (!eval_monic(cp, Scalar(mu)).is_zero()) continue;
      out.push_back(Scalar(mpq_class(mpz_class(mu), den)));
    }
    return out;
  }
  // prime field: candidates are the residues; filter by the characteristic
  // polynomial when the division-free range allows computing it
  const long p = static_cast<long>(f.p());
  if (p > n) {
    std::vector<Scalar> cp = char_poly(m);
    for (long r = 0; r < p; ++r) {
      Scalar lam = Scalar::mod_p(f.p(), r);
      if (eval_monic(cp, lam).is_zero()) out.push_back(lam);
    }
  } else {
    for (long r = 0; r < p; ++r) out.push_back(Scalar::mod_p(f.p(), r));
  }
  return out;
}

std::vector<Vec> computed_grouplikes(const HopfAlgebra& h) {
  const FieldDescriptor& f = h.field;
  const bool supported = f.kind() == FieldKind::Rationals ||
                         (f.kind() == FieldKind::PrimeField && f.p() <= 1000);
  if (!supported)
    throw UnsupportedField("grouplike enumeration is implemented over the rationals and prime "
                           "fields with p <= 1000, not over " + f.str());
  const Eigen::Index d = h.dim;
  std::vector<Subspace> cands = {Subspace::full(d)};
  Rng rng(0x6b7f3a2905ec1d41ULL ^ static_cast<std::uint64_t>(d));
  const int max_rounds = 24;
  for (int round = 0; round < max_rounds; ++round) {
    bool any_big = false;
    for (const auto& s : cands) any_big = any_big || s.dim() >= 2;
    if (!any_big) break;
    std::vector<long> fv(static_cast<size_t>(d));
    long hi = f.kind() == FieldKind::PrimeField
                  ? std::min<long>(static_cast<long>(f.p()) - 1, 9)
                  : 4;
    for (auto& x : fv) x = rng.integer(0, hi);
    Mat m = functional_matrix(h, fv);
    std::vector<Subspace> eigs;
    for (const Scalar& lam : base_field_eigenvalues(f, m)) {
      Mat shifted = m;
      for (Eigen::Index i = 0; i < d; ++i) shifted(i, i) -= lam;
      Subspace e = kernel_space(shifted);
      if (e.dim() > 0) eigs.push_back(std::move(e));
    }
    std::vector<Subspace> next;
    for (const auto& s : cands) {
      if (s.dim() <= 1) {
        next.push_back(s);
        continue;
      }
      for (const auto& e : eigs) {
        Subspace t = s.intersect(e);
        if (t.dim() >= 1) next.push_back(std::move(t));
      }
    }
    cands = std::move(next);
    if (cands.empty()) break;
  }
  for (const auto& s : cands)
    if (s.dim() >= 2)
      throw Error("grouplike search could not isolate candidate lines after " +
                  std::to_string(max_rounds) + " refinement rounds");
  std::vector<Vec> out;
  for (const auto& s : cands) {
    Vec v = s.basis_vector(0);
    Scalar e = h.counit_of(v);
    if (e.is_zero()) continue;  // a grouplike line has nonzero counit
    Vec g = v * e.inverse();
    if (!is_grouplike(h, g)) continue;
    bool dup = false;
    for (const auto& o : out) dup = dup || exact_equal(o, g);
    if (!dup) out.push_back(std::move(g));
  }
  // completeness self-check: the set of all grouplikes is closed under
  // multiplication and the antipode, so a violation means something was missed
  auto member = [&](const Vec& v) {
    for (const auto& o : out)
      if (exact_equal(o, v)) return true;
    return false;
  };
  for (const auto& g1 : out) {
    for (const auto& g2 : out)
      if (!member(h.multiply(g1, g2)))
        throw Error("grouplike search found a set not closed under multiplication");
    if (!member(h.antipode_of(g1)))
      throw Error("grouplike search found a set not closed under the antipode");
  }
  return out;
}

}  // namespace

std::vector<Vec> grouplikes(const HopfAlgebra& h) {
  check_shapes(h);
  if (!h.known_grouplikes.empty()) return h.known_grouplikes;
  return computed_grouplikes(h);
}

Subspace coradical(const HopfAlgebra& h) {
  check_shapes(h);
  if (h.field.characteristic() == 0) {
    // Gram matrix of the trace form of the dual algebra; its kernel is the
    // dual radical, and the coradical is the common kernel of those
    // functionals.
    Mat g = Mat::Zero(h.dim, h.dim);
    for (Eigen::Index k = 0; k < h.dim; ++k)
      for (const auto& t1 : h.comult[static_cast<size_t>(k)])
        for (const auto& t2 : h.comult[static_cast<size_t>(t1.j)])
          if (t2.j == k) g(t1.i, t2.i) += t1.c * t2.c;
    Subspace rad = kernel_space(g);
    if (rad.dim() == 0) return Subspace::full(h.dim);
    return kernel_space(rad.basis_rows());
  }
  if (h.known_pointed == true && !h.known_grouplikes.empty())
    return Subspace::span(h.known_grouplikes, h.dim);
  throw UnsupportedCharacteristic(
      "coradical computation needs characteristic zero or a pointedness certificate; field is " +
      h.field.str());
}

std::vector<Subspace> coradical_filtration(const HopfAlgebra& h) {
  Subspace h0 = coradical(h);
  std::vector<Subspace> chain = {h0};
  Mat p0 = quotient_map(h0);
  for (Eigen::Index step = 0; step <= h.dim + 1; ++step) {
    const Subspace& prev = chain.back();
    if (prev.dim() == h.dim) return chain;
    Mat p1 = quotient_map(prev);
    const Eigen::Index r0 = p0.rows(), r1 = p1.rows();
    // rows (a, b) of (proj mod H_0) (x) (proj mod H_{n-1}) composed with Delta;
    // the kernel is exactly Delta^{-1}(H (x) H_{n-1} + H_0 (x) H)
    Mat m = Mat::Zero(r0 * r1, h.dim);
    for (Eigen::Index t = 0; t < h.dim; ++t)
      for (const auto& ct : h.comult[static_cast<size_t>(t)])
        for (Eigen::Index a = 0; a < r0; ++a) {
          if (p0(a, ct.i).is_zero()) continue;
          Scalar ca = ct.c * p0(a, ct.i);
          for (Eigen::Index b = 0; b < r1; ++b) {
            if (p1(b, ct.j).is_zero()) continue;
            m(a * r1 + b, t) += ca * p1(b, ct.j);
          }
        }
    Subspace next = kernel_space(m);
    if (!next.contains_subspace(prev) || next.dim() <= prev.dim())
      throw Error("coradical filtration stopped growing at dimension " +
                  std::to_string(prev.dim()) + " of " + std::to_string(h.dim) +
                  "; structure data or certificates are inconsistent");
    chain.push_back(std::move(next));
  }
  throw Error("coradical filtration failed to exhaust the algebra");
}

bool is_pointed(const HopfAlgebra& h) {
  check_shapes(h);
  if (h.known_pointed.has_value()) return *h.known_pointed;
  Subspace h0 = coradical(h);
  std::vector<Vec> gs = grouplikes(h);
  // distinct grouplikes are linearly independent and lie in the coradical,
  // so counting them against its dimension decides pointedness
  return static_cast<Eigen::Index>(gs.size()) == h0.dim();
}

bool masuoka_freeness_criterion(const HopfAlgebra& h, const Subspace& b) {
  check_shapes(h);
  if (b.ambient() != h.dim)
    throw DimensionMismatch("subspace lives in dimension " + std::to_string(b.ambient()) +
                            ", algebra in " + std::to_string(h.dim));
  if (!is_pointed(h))
    throw PreconditionViolated("freeness criterion requires a pointed Hopf algebra");
  if (!is_left_coideal_subalgebra(h, b))
    throw PreconditionViolated("freeness criterion requires a left coideal subalgebra");
  std::vector<Vec> gs = grouplikes(h);
  Subspace kg = Subspace::span(gs, h.dim);
  Subspace bg = b.intersect(kg);
  if (bg.dim() == 0) return true;
  Mat img(bg.dim(), h.dim);
  for (Eigen::Index r = 0; r < bg.dim(); ++r)
    img.row(r) = (h.antipode * bg.basis_vector(r)).transpose();
  return Subspace::span_rows(img) == bg;
}

Vec random_element(Rng& rng, const HopfAlgebra& h, int max_support) {
  const long cap = std::min<long>(std::max(1, max_support), h.dim);
  const long support = rng.integer(1, cap);
  Vec v = Vec::Zero(h.dim);
  for (long t = 0; t < support; ++t) {
    Eigen::Index i = rng.integer(0, h.dim - 1);
    for (int guard = 0; !v(i).is_zero() && guard < 64; ++guard) i = rng.integer(0, h.dim - 1);
    v(i) = rng.nonzero_scalar(h.field);
  }
  return v;
}

}  // namespace hopfad
