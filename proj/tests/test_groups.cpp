#include <doctest.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "hopfad/groups.hpp"
#include "hopfad/rng.hpp"

using namespace hopfad;

namespace {

// ---- independent model of the infinite dihedral group as isometries of Z:
// an element is x -> sign*x + shift.
struct Isom {
  long sign = 1;
  long shift = 0;
  friend Isom operator*(const Isom& f, const Isom& g) {
    return {f.sign * g.sign, f.sign * g.shift + f.shift};
  }
  friend bool operator==(const Isom& f, const Isom& g) = default;
};

Isom dinf_to_isom(const std::string& g) {
  long a = 0;
  bool refl = false;
  std::string rot = g;
  if (rot == "e") return {1, 0};
  if (rot.size() >= 2 && rot.compare(rot.size() - 2, 2, "*s") == 0) {
    refl = true;
    rot.resize(rot.size() - 2);
  } else if (rot == "s") {
    return {-1, 0};
  }
  if (rot == "r") a = 1;
  else a = std::stol(rot.substr(2));
  return Isom{refl ? -1 : 1, a};
}

// ---- independent model of the Heisenberg group as integer matrices.
using M3 = std::array<std::array<long, 3>, 3>;

M3 m3_mul(const M3& x, const M3& y) {
  M3 z{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) z[i][j] += x[i][k] * y[k][j];
  return z;
}

M3 heis_to_m3(const std::string& g) {
  long a = 0, b = 0, c = 0;
  REQUIRE(std::sscanf(g.c_str(), "(%ld,%ld,%ld)", &a, &b, &c) == 3);
  return M3{{{1, a, c}, {0, 1, b}, {0, 0, 1}}};
}

std::string m3_to_heis(const M3& m) {
  return "(" + std::to_string(m[0][1]) + "," + std::to_string(m[1][2]) + "," +
         std::to_string(m[0][2]) + ")";
}

// ---- independent free reduction over a, b, A, B.
std::string free_reduce(const std::string& word) {
  auto flip = [](char c) -> char {
    return std::isupper(static_cast<unsigned char>(c))
               ? static_cast<char>(std::tolower(static_cast<unsigned char>(c)))
               : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  };
  std::string out;
  for (char c : word) {
    if (!out.empty() && out.back() == flip(c)) out.pop_back();
    else out.push_back(c);
  }
  return out.empty() ? "e" : out;
}

std::string random_word(Rng& rng, const GroupProvider& g, int len) {
  std::vector<std::string> letters;
  for (const std::string& u : g.generators()) {
    letters.push_back(u);
    letters.push_back(g.inverse(u));
  }
  std::string w = g.identity();
  for (int i = 0; i < len; ++i)
    w = g.multiply(w, letters[static_cast<size_t>(
                        rng.integer(0, static_cast<long>(letters.size()) - 1))]);
  return w;
}

std::set<std::string> as_set(const std::vector<std::string>& v) {
  return {v.begin(), v.end()};
}

// every finite class must be closed under conjugation by the generators
void check_class_closure(const GroupProvider& g, const std::string& elem) {
  ConjugacyVerdict v = g.conjugacy(elem);
  if (!v.finite) return;
  std::set<std::string> cls = as_set(v.conjugates);
  CHECK(cls.count(elem) == 1);
  for (const std::string& c : v.conjugates)
    for (const std::string& u : g.generators()) {
      std::string moved = g.multiply(g.multiply(u, c), g.inverse(u));
      CHECK(cls.count(moved) == 1);
    }
}

}  // namespace

TEST_SUITE("groups") {

TEST_CASE("infinite dihedral matches the isometry model") {
  auto d = infinite_dihedral();
  CHECK(d->name() == "dinf");
  CHECK(d->identity() == "e");
  CHECK_FALSE(d->is_finite());

  // defining relations
  CHECK(d->multiply("s", "s") == "e");
  CHECK(d->multiply(d->multiply("s", "r"), "s") == "r^-1");
  CHECK(d->multiply("r", "r") == "r^2");
  CHECK(d->inverse("r^5") == "r^-5");
  CHECK(d->inverse("r^3*s") == "r^3*s");

  Rng rng(7100);
  for (int t = 0; t < 40; ++t) {
    std::string x = random_word(rng, *d, static_cast<int>(rng.integer(0, 6)));
    std::string y = random_word(rng, *d, static_cast<int>(rng.integer(0, 6)));
    CHECK(dinf_to_isom(d->multiply(x, y)) == dinf_to_isom(x) * dinf_to_isom(y));
    CHECK(d->multiply(x, d->inverse(x)) == "e");
    CHECK(d->multiply(d->inverse(x), x) == "e");
  }

  // canonical-form rejection
  CHECK_THROWS_AS(d->multiply("r^1", "e"), Error);
  CHECK_THROWS_AS(d->multiply("r^0", "e"), Error);
  CHECK_THROWS_AS(d->multiply("r^02", "e"), Error);
  CHECK_THROWS_AS(d->inverse("x"), Error);
}

TEST_CASE("infinite dihedral conjugacy: rotations finite, reflections infinite") {
  auto d = infinite_dihedral();
  ConjugacyVerdict r5 = d->conjugacy("r^5");
  REQUIRE(r5.finite);
  CHECK(as_set(r5.conjugates) == std::set<std::string>{"r^-5", "r^5"});
  ConjugacyVerdict e = d->conjugacy("e");
  REQUIRE(e.finite);
  CHECK(e.conjugates == std::vector<std::string>{"e"});
  CHECK_FALSE(d->conjugacy("s").finite);
  CHECK_FALSE(d->conjugacy("r^4*s").finite);
  CHECK_FALSE(d->conjugacy("s").certificate.empty());
  for (const std::string& g : {"e", "r", "r^-3", "r^7"}) check_class_closure(*d, g);

  FcMembership m = fc_center_membership(*d, "r^5");
  CHECK(m.finite);
  CHECK(m.class_size == 2);
  CHECK_FALSE(fc_center_membership(*d, "s").finite);
}

TEST_CASE("infinite dihedral windows") {
  auto d = infinite_dihedral();
  // |word(r^a)| = |a|, |word(r^a*s)| = |a| + 1
  std::vector<std::string> ball = d->elements_up_to(3);
  auto rot = [](long a) {
    return a == 0 ? std::string("e")
                  : a == 1 ? std::string("r") : "r^" + std::to_string(a);
  };
  std::set<std::string> expect;
  for (long a = -3; a <= 3; ++a) expect.insert(rot(a));
  for (long a = -2; a <= 2; ++a)
    expect.insert(a == 0 ? "s" : rot(a) + "*s");
  CHECK(as_set(ball) == expect);
  CHECK(ball.front() == "e");
  CHECK(ball.size() == 12);

  // FC members of the length-8 window are exactly the 17 rotations
  std::vector<std::string> fc = fc_center_window(*d, 8);
  CHECK(fc.size() == 17);
  for (const std::string& g : fc) CHECK(g.find('s') == std::string::npos);

  // the FC window is closed under inverses, and under products staying inside
  std::set<std::string> fcset = as_set(fc);
  for (const std::string& g : fc) CHECK(fcset.count(d->inverse(g)) == 1);
  std::set<std::string> window = as_set(d->elements_up_to(8));
  for (const std::string& g : fc)
    for (const std::string& h : fc) {
      std::string p = d->multiply(g, h);
      if (window.count(p)) CHECK(fcset.count(p) == 1);
    }

  CHECK_THROWS_AS(fc_center_window(*d, -1), PreconditionViolated);
}

TEST_CASE("heisenberg group matches the matrix model") {
  auto h = heisenberg_group();
  CHECK(h->identity() == "(0,0,0)");
  CHECK_FALSE(h->is_finite());

  // commutator of the generators is the central element
  std::string x = "(1,0,0)", y = "(0,1,0)";
  std::string z = h->multiply(h->multiply(x, y), h->multiply(h->inverse(x), h->inverse(y)));
  CHECK(z == "(0,0,1)");

  Rng rng(7200);
  for (int t = 0; t < 40; ++t) {
    std::string u = random_word(rng, *h, static_cast<int>(rng.integer(0, 6)));
    std::string v = random_word(rng, *h, static_cast<int>(rng.integer(0, 6)));
    CHECK(h->multiply(u, v) == m3_to_heis(m3_mul(heis_to_m3(u), heis_to_m3(v))));
    CHECK(h->multiply(u, h->inverse(u)) == "(0,0,0)");
  }

  // conjugacy: center finite with class size one, everything else infinite
  CHECK(h->conjugacy("(0,0,5)").finite);
  CHECK(h->conjugacy("(0,0,5)").conjugates == std::vector<std::string>{"(0,0,5)"});
  CHECK_FALSE(h->conjugacy("(1,0,0)").finite);
  CHECK_FALSE(h->conjugacy("(2,3,1)").finite);
  check_class_closure(*h, "(0,0,-2)");

  // window ball agrees with a brute-force matrix enumeration
  for (long L : {2L, 3L}) {
    std::set<std::string> brute{"(0,0,0)"};
    std::vector<M3> gens = {heis_to_m3(x), heis_to_m3(y)};
    std::vector<M3> letters = gens;
    letters.push_back(heis_to_m3(h->inverse(x)));
    letters.push_back(heis_to_m3(h->inverse(y)));
    std::vector<M3> frontier{heis_to_m3("(0,0,0)")};
    for (long l = 0; l < L; ++l) {
      std::vector<M3> next;
      for (const M3& m : frontier)
        for (const M3& w : letters) {
          M3 p = m3_mul(m, w);
          if (brute.insert(m3_to_heis(p)).second) next.push_back(p);
        }
      frontier = std::move(next);
    }
    CHECK(as_set(h->elements_up_to(L)) == brute);
  }

  // FC members within length 4: identity and the two shortest central elements
  std::vector<std::string> fc = fc_center_window(*h, 4);
  CHECK(as_set(fc) ==
        std::set<std::string>{"(0,0,0)", "(0,0,1)", "(0,0,-1)"});

  CHECK_THROWS_AS(h->multiply("(1, 0, 0)", y), Error);
  CHECK_THROWS_AS(h->multiply("(1,0)", y), Error);
}

TEST_CASE("free group of rank two") {
  auto f = free_group_rank2();
  CHECK(f->multiply("ab", "Ba") == "aa");
  CHECK(f->multiply("aB", "bA") == "e");
  CHECK(f->inverse("abA") == "aBA");
  CHECK(f->inverse("e") == "e");

  Rng rng(7300);
  std::vector<std::string> letters = {"a", "b", "A", "B"};
  for (int t = 0; t < 40; ++t) {
    std::string raw1, raw2;
    for (long i = rng.integer(0, 5); i > 0; --i)
      raw1 += letters[static_cast<size_t>(rng.integer(0, 3))];
    for (long i = rng.integer(0, 5); i > 0; --i)
      raw2 += letters[static_cast<size_t>(rng.integer(0, 3))];
    std::string w1 = free_reduce(raw1), w2 = free_reduce(raw2);
    CHECK(f->multiply(w1, w2) == free_reduce(raw1 + raw2));
  }

  CHECK(f->conjugacy("e").finite);
  CHECK_FALSE(f->conjugacy("a").finite);
  CHECK_FALSE(f->conjugacy("abAB").finite);
  CHECK(fc_center_window(*f, 3) == std::vector<std::string>{"e"});
  // 1 + 4 + 4*3 + 4*9 reduced words of length at most three
  CHECK(f->elements_up_to(3).size() == 53);
  CHECK_THROWS_AS(f->multiply("aA", "e"), Error);
  CHECK_THROWS_AS(f->multiply("ax", "e"), Error);
}

TEST_CASE("integers as a group provider") {
  auto z = integer_group();
  CHECK(z->multiply("3", "-5") == "-2");
  CHECK(z->inverse("-7") == "7");
  CHECK(z->conjugacy("42").finite);
  CHECK(z->conjugacy("42").conjugates == std::vector<std::string>{"42"});
  CHECK(z->elements_up_to(2) ==
        std::vector<std::string>{"0", "-1", "1", "-2", "2"});
  CHECK(fc_center_window(*z, 2).size() == 5);
  CHECK_FALSE(z->is_finite());
}

TEST_CASE("permutation groups enumerate and classify by brute force") {
  auto s3 = parse_group("perm:(0 1 2);(0 1)");
  CHECK(s3->is_finite());
  GroupTable t = group_table(*s3);
  CHECK(t.order == 6);
  CHECK(t.element_names.front() == s3->identity());

  // brute-force conjugacy over the enumerated table as the oracle
  std::vector<std::string> all = s3->elements_up_to(10);
  CHECK(all.size() == 6);
  std::multiset<size_t> sizes;
  for (const std::string& g : all) {
    std::set<std::string> brute;
    for (const std::string& p : all)
      brute.insert(s3->multiply(s3->multiply(p, g), s3->inverse(p)));
    ConjugacyVerdict v = s3->conjugacy(g);
    REQUIRE(v.finite);
    CHECK(as_set(v.conjugates) == brute);
    sizes.insert(v.conjugates.size());
  }
  CHECK(sizes == std::multiset<size_t>{1, 2, 2, 3, 3, 3});

  // non-disjoint cycles compose with the rightmost acting first
  auto c3 = parse_group("perm:(0 1)(1 2)");
  CHECK(group_table(*c3).order == 3);

  auto a4 = parse_group("perm:(0 1 2);(1 2 3)");
  CHECK(group_table(*a4).order == 12);
  std::multiset<size_t> a4sizes;
  for (const std::string& g : a4->elements_up_to(12))
    a4sizes.insert(a4->conjugacy(g).conjugates.size());
  CHECK(a4sizes == std::multiset<size_t>{1, 3, 3, 3, 4, 4, 4, 4, 4, 4, 4, 4});

  auto klein = parse_group("perm:(0 1);(2 3)");
  for (const std::string& g : klein->elements_up_to(4))
    CHECK(klein->conjugacy(g).conjugates.size() == 1);

  // compact cycle notation: one point per digit, ',' also separates generators
  auto s3c = parse_group("perm:(123),(12)");
  CHECK(group_table(*s3c).order == 6);
  CHECK(s3c->identity() == "[0,1,2,3]");  // degree from the largest point seen
  auto swap10 = parse_group("perm:(10)");
  CHECK(group_table(*swap10).order == 2);
  CHECK(swap10->identity() == "[0,1]");
  // separators switch the same digits to one multi-digit point
  auto big = parse_group("perm:(1 0)(0 10)");
  CHECK(big->identity().size() == std::string("[0,1,2,3,4,5,6,7,8,9,10]").size());

  CHECK_THROWS_AS(parse_group("perm:"), ParseError);
  CHECK_THROWS_AS(parse_group("perm:(0 1"), ParseError);
  CHECK_THROWS_AS(parse_group("perm:()"), ParseError);
  CHECK_THROWS_AS(parse_group("perm:(0 1),"), ParseError);
  CHECK_THROWS_AS(parse_group("perm:(0 1 1)"), ParseError);
  CHECK_THROWS_AS(parse_group("perm:(11)"), ParseError);
  CHECK_THROWS_AS(s3->multiply("[0,0,1]", s3->identity()), Error);
  CHECK_THROWS_AS(s3->multiply("[0,1]", s3->identity()), Error);
}

TEST_CASE("direct products and descriptor parsing") {
  auto zs3 = parse_group("prod:z,perm:(0 1 2);(0 1)");
  CHECK_FALSE(zs3->is_finite());
  CHECK(zs3->identity() == "(0|[0,1,2])");
  CHECK(zs3->generators().size() == 3);

  // componentwise multiplication and inverses
  std::string g = zs3->multiply("(3|[1,2,0])", "(-1|[1,0,2])");
  CHECK(g == "(2|" + parse_group("perm:(0 1 2);(0 1)")->multiply("[1,2,0]", "[1,0,2]") + ")");
  CHECK(zs3->multiply(g, zs3->inverse(g)) == zs3->identity());

  // classes are products of factor classes; in Z x S3 everything is finite
  ConjugacyVerdict v = zs3->conjugacy("(5|[1,2,0])");
  REQUIRE(v.finite);
  CHECK(v.conjugates.size() == 2);
  for (const std::string& w : zs3->elements_up_to(2))
    CHECK(zs3->conjugacy(w).finite);
  CHECK(fc_center_window(*zs3, 2) == zs3->elements_up_to(2));

  // an infinite factor makes classes infinite off the FC part
  auto zdinf = parse_group("prod:z,dinf");
  CHECK_FALSE(zdinf->conjugacy("(0|s)").finite);
  CHECK(zdinf->conjugacy("(3|r^2)").finite);
  CHECK(zdinf->conjugacy("(0|s)").certificate.rfind("right factor:", 0) == 0);

  // finite products admit tables
  auto v4 = parse_group("prod:perm:(0 1),perm:(0 1)");
  GroupTable t = group_table(*v4);
  CHECK(t.order == 4);
  for (Eigen::Index i = 0; i < 4; ++i)
    for (Eigen::Index j = 0; j < 4; ++j)
      CHECK(t.product[static_cast<size_t>(i) * 4 + j] ==
            t.product[static_cast<size_t>(j) * 4 + i]);
  CHECK_THROWS_AS(group_table(*zs3), PreconditionViolated);

  // nested products parse by splitting at the first workable comma
  auto nested = parse_group("prod:prod:z,z,z");
  CHECK(nested->identity() == "((0|0)|0)");

  CHECK_THROWS_AS(parse_group("frobnicate"), ParseError);
  CHECK_THROWS_AS(parse_group("prod:z"), ParseError);
  CHECK_THROWS_AS(parse_group("prod:z,"), ParseError);
  CHECK_THROWS_AS(parse_group(""), ParseError);
}

TEST_CASE("adjoint modules realize conjugacy orbits") {
  struct Probe {
    std::shared_ptr<const GroupProvider> g;
    long window;
  };
  std::vector<Probe> probes = {
      {infinite_dihedral(), 5},
      {heisenberg_group(), 3},
      {free_group_rank2(), 2},
      {parse_group("prod:z,perm:(0 1 2);(0 1)"), 2},
      {parse_group("perm:(0 1 2);(0 1)"), 6},
  };
  for (const Probe& probe : probes) {
    ComputableModule<std::string> mod = group_ad_module(probe.g);
    CHECK(mod.grouplike_generators);
    CHECK(mod.field == FieldDescriptor::rationals());
    for (const std::string& g : probe.g->elements_up_to(probe.window)) {
      FcMembership fc = fc_center_membership(*probe.g, g);
      auto verdict = orbit_closure(mod, {SparseVec<std::string>::unit(g)}, 60);
      CHECK(verdict.finite() == fc.finite);
      if (fc.finite) CHECK(verdict.dim == static_cast<size_t>(fc.class_size));
    }
  }

  // the worked examples: class of r has size two, s exceeds any budget
  auto d = infinite_dihedral();
  ComputableModule<std::string> mod = group_ad_module(d);
  auto fin = orbit_closure(mod, {SparseVec<std::string>::unit("r")}, 30);
  CHECK(fin.finite());
  CHECK(fin.dim == 2);
  auto inf = orbit_closure(mod, {SparseVec<std::string>::unit("s")}, 30);
  CHECK(inf.kind == Finiteness::BudgetExceeded);
  CHECK(inf.dim > 30);
}

TEST_CASE("tables feed group algebras") {
  auto s3 = parse_group("perm:(0 1 2);(0 1)");
  HopfAlgebra h = group_algebra(group_table(*s3), FieldDescriptor::rationals());
  CHECK(verify_axioms(h).all_pass());

  // sanity: a one-generator trivial permutation group gives the base field
  auto triv = permutation_group({{0}});
  CHECK(group_table(*triv).order == 1);
}

}  // TEST_SUITE
