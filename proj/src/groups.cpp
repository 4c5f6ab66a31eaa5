#include "hopfad/groups.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>
#include <utility>

#include "hopfad/errors.hpp"

namespace hopfad {

namespace {

constexpr size_t kBallCap = 200000;  // safety cap for word-ball enumeration

long parse_long(const std::string& text) {
  long value = 0;
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    throw Error("not an integer: '" + text + "'");
  return value;
}

[[noreturn]] void bad_element(const std::string& group, const std::string& g) {
  throw Error("'" + g + "' is not a canonical element of " + group);
}

// --------------------------------------------------------------------------
// Infinite dihedral group: elements r^a s^eps with s r s = r^-1.

struct DinfElem {
  long a = 0;
  int eps = 0;
};

class DinfGroup final : public GroupProvider {
 public:
  std::string name() const override { return "dinf"; }
  std::string identity() const override { return "e"; }
  std::vector<std::string> generators() const override { return {"r", "s"}; }

  std::string multiply(const std::string& x, const std::string& y) const override {
    DinfElem u = parse(x), v = parse(y);
    // (r^a s^eps)(r^b s^del) = r^(a + b) s^del        when eps = 0
    //                        = r^(a - b) s^(1 + del)  when eps = 1
    DinfElem w;
    w.a = u.eps ? u.a - v.a : u.a + v.a;
    w.eps = (u.eps + v.eps) % 2;
    return str(w);
  }

  std::string inverse(const std::string& x) const override {
    DinfElem u = parse(x);
    return u.eps ? x : str({-u.a, 0});
  }

  ConjugacyVerdict conjugacy(const std::string& x) const override {
    DinfElem u = parse(x);
    ConjugacyVerdict v;
    if (u.eps) {
      v.finite = false;
      v.certificate = "the conjugates r^(k+2m)*s, m in Z, are pairwise distinct";
      return v;
    }
    v.finite = true;
    v.conjugates.push_back(str(u));
    if (u.a != 0) v.conjugates.push_back(str({-u.a, 0}));
    std::sort(v.conjugates.begin(), v.conjugates.end());
    return v;
  }

  bool is_finite() const override { return false; }

 private:
  static std::string str(const DinfElem& u) {
    std::string rot;
    if (u.a == 1) rot = "r";
    else if (u.a != 0) rot = "r^" + std::to_string(u.a);
    if (!u.eps) return rot.empty() ? "e" : rot;
    return rot.empty() ? "s" : rot + "*s";
  }

  DinfElem parse(const std::string& g) const {
    DinfElem u;
    std::string rot = g;
    if (rot == "e") return u;
    if (rot.size() >= 2 && rot.compare(rot.size() - 2, 2, "*s") == 0) {
      u.eps = 1;
      rot.resize(rot.size() - 2);
    } else if (rot == "s") {
      u.eps = 1;
      return u;
    }
    if (rot == "r") {
      u.a = 1;
      return u;
    }
    if (rot.size() < 3 || rot.compare(0, 2, "r^") != 0) bad_element(name(), g);
    u.a = parse_long(rot.substr(2));
    if (str(u) != g) bad_element(name(), g);  // canonical: "e"/"s"/"r", no padding
    return u;
  }
};

// --------------------------------------------------------------------------
// Discrete Heisenberg group: triples (a, b, c) standing for the integer
// matrix with rows (1 a c / 0 1 b / 0 0 1).

struct HeisElem {
  long a = 0, b = 0, c = 0;
};

class HeisGroup final : public GroupProvider {
 public:
  std::string name() const override { return "heis"; }
  std::string identity() const override { return "(0,0,0)"; }
  std::vector<std::string> generators() const override {
    return {"(1,0,0)", "(0,1,0)"};
  }

  std::string multiply(const std::string& x, const std::string& y) const override {
    HeisElem u = parse(x), v = parse(y);
    return str({u.a + v.a, u.b + v.b, u.c + v.c + u.a * v.b});
  }

  std::string inverse(const std::string& x) const override {
    HeisElem u = parse(x);
    return str({-u.a, -u.b, -u.c + u.a * u.b});
  }

  ConjugacyVerdict conjugacy(const std::string& x) const override {
    // (l,m,n) (a,b,c) (l,m,n)^-1 = (a, b, c + l b - a m)
    HeisElem u = parse(x);
    ConjugacyVerdict v;
    if (u.a == 0 && u.b == 0) {
      v.finite = true;
      v.conjugates.push_back(str(u));
      return v;
    }
    v.finite = false;
    v.certificate =
        "conjugation shifts the corner entry by every multiple of gcd(a,b)";
    return v;
  }

  bool is_finite() const override { return false; }

 private:
  static std::string str(const HeisElem& u) {
    return "(" + std::to_string(u.a) + "," + std::to_string(u.b) + "," +
           std::to_string(u.c) + ")";
  }

  HeisElem parse(const std::string& g) const {
    if (g.size() < 7 || g.front() != '(' || g.back() != ')') bad_element(name(), g);
    std::string body = g.substr(1, g.size() - 2);
    size_t c1 = body.find(',');
    size_t c2 = body.find(',', c1 == std::string::npos ? 0 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) bad_element(name(), g);
    HeisElem u;
    u.a = parse_long(body.substr(0, c1));
    u.b = parse_long(body.substr(c1 + 1, c2 - c1 - 1));
    u.c = parse_long(body.substr(c2 + 1));
    if (str(u) != g) bad_element(name(), g);  // rejects padded digits
    return u;
  }
};

// --------------------------------------------------------------------------
// Free group on a and b; canonical form is the reduced word, inverses as
// capital letters, identity "e".

class Free2Group final : public GroupProvider {
 public:
  std::string name() const override { return "free2"; }
  std::string identity() const override { return "e"; }
  std::vector<std::string> generators() const override { return {"a", "b"}; }

  std::string multiply(const std::string& x, const std::string& y) const override {
    check(x);
    check(y);
    std::string w = (x == "e" ? "" : x);
    for (char ch : y == "e" ? std::string() : y) {
      if (!w.empty() && w.back() == flip(ch)) w.pop_back();
      else w.push_back(ch);
    }
    return w.empty() ? "e" : w;
  }

  std::string inverse(const std::string& x) const override {
    check(x);
    if (x == "e") return x;
    std::string w(x.rbegin(), x.rend());
    for (char& ch : w) ch = flip(ch);
    return w;
  }

  ConjugacyVerdict conjugacy(const std::string& x) const override {
    check(x);
    ConjugacyVerdict v;
    if (x == "e") {
      v.finite = true;
      v.conjugates.push_back("e");
      return v;
    }
    v.finite = false;
    v.certificate = "the reduced conjugates w g w^-1 grow without bound";
    return v;
  }

  bool is_finite() const override { return false; }

 private:
  static char flip(char ch) {
    switch (ch) {
      case 'a': return 'A';
      case 'A': return 'a';
      case 'b': return 'B';
      case 'B': return 'b';
      default: return '\0';
    }
  }

  void check(const std::string& g) const {
    if (g.empty()) bad_element(name(), g);
    if (g == "e") return;
    for (size_t i = 0; i < g.size(); ++i) {
      if (!flip(g[i])) bad_element(name(), g);
      if (i + 1 < g.size() && g[i + 1] == flip(g[i])) bad_element(name(), g);
    }
  }
};

// --------------------------------------------------------------------------
// The integers under addition.

class IntegerGroup final : public GroupProvider {
 public:
  std::string name() const override { return "z"; }
  std::string identity() const override { return "0"; }
  std::vector<std::string> generators() const override { return {"1"}; }

  std::string multiply(const std::string& x, const std::string& y) const override {
    return std::to_string(parse_long(x) + parse_long(y));
  }

  std::string inverse(const std::string& x) const override {
    return std::to_string(-parse_long(x));
  }

  ConjugacyVerdict conjugacy(const std::string& x) const override {
    ConjugacyVerdict v;
    v.finite = true;
    v.conjugates.push_back(std::to_string(parse_long(x)));
    return v;
  }

  bool is_finite() const override { return false; }
};

// --------------------------------------------------------------------------
// Finite permutation groups; canonical form "[2,0,1]" lists images.

using Perm = std::vector<int>;

class PermGroup final : public GroupProvider {
 public:
  explicit PermGroup(std::vector<Perm> gens) : gens_(std::move(gens)) {
    if (gens_.empty()) throw PreconditionViolated("a permutation group needs at least one generator");
    degree_ = gens_.front().size();
    for (const Perm& p : gens_) validate(p);
    enumerate();
  }

  std::string name() const override { return "perm" + std::to_string(degree_); }
  std::string identity() const override {
    Perm id(degree_);
    for (size_t i = 0; i < degree_; ++i) id[i] = static_cast<int>(i);
    return str(id);
  }
  std::vector<std::string> generators() const override {
    std::vector<std::string> out;
    for (const Perm& p : gens_) out.push_back(str(p));
    return out;
  }

  std::string multiply(const std::string& x, const std::string& y) const override {
    Perm u = parse(x), v = parse(y), w(degree_);
    for (size_t i = 0; i < degree_; ++i) w[i] = u[v[i]];
    return str(w);
  }

  std::string inverse(const std::string& x) const override {
    Perm u = parse(x), w(degree_);
    for (size_t i = 0; i < degree_; ++i) w[u[i]] = static_cast<int>(i);
    return str(w);
  }

  ConjugacyVerdict conjugacy(const std::string& x) const override {
    parse(x);
    std::set<std::string> cls;
    for (const std::string& p : elements_)
      cls.insert(multiply(multiply(p, x), inverse(p)));
    ConjugacyVerdict v;
    v.finite = true;
    v.conjugates.assign(cls.begin(), cls.end());
    return v;
  }

  bool is_finite() const override { return true; }

  size_t order() const { return elements_.size(); }

 private:
  static std::string str(const Perm& p) {
    std::string out = "[";
    for (size_t i = 0; i < p.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(p[i]);
    }
    return out + "]";
  }

  Perm parse(const std::string& g) const {
    if (g.size() < 2 || g.front() != '[' || g.back() != ']') bad_element(name(), g);
    Perm p;
    std::string body = g.substr(1, g.size() - 2);
    size_t pos = 0;
    while (pos <= body.size()) {
      size_t comma = body.find(',', pos);
      std::string item = body.substr(pos, comma == std::string::npos ? std::string::npos
                                                                     : comma - pos);
      p.push_back(static_cast<int>(parse_long(item)));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    validate(p);
    if (str(p) != g) bad_element(name(), g);
    return p;
  }

  void validate(const Perm& p) const {
    if (p.size() != degree_)
      throw Error("permutation degree mismatch: expected " + std::to_string(degree_));
    std::vector<bool> seen(degree_, false);
    for (int img : p) {
      if (img < 0 || static_cast<size_t>(img) >= degree_ || seen[img])
        throw Error("not a permutation of 0.." + std::to_string(degree_ - 1));
      seen[img] = true;
    }
  }

  void enumerate() {
    std::set<std::string> seen{identity()};
    std::vector<std::string> frontier(seen.begin(), seen.end());
    std::vector<std::string> words;
    for (const Perm& p : gens_) {
      words.push_back(str(p));
      Perm q(degree_);
      for (size_t i = 0; i < degree_; ++i) q[p[i]] = static_cast<int>(i);
      words.push_back(str(q));
    }
    while (!frontier.empty()) {
      std::vector<std::string> next;
      for (const std::string& e : frontier)
        for (const std::string& w : words) {
          std::string m = multiply(e, w);
          if (seen.insert(m).second) next.push_back(m);
        }
      if (seen.size() > kBallCap) throw Error("permutation group is too large to enumerate");
      frontier = std::move(next);
    }
    elements_.assign(seen.begin(), seen.end());
  }

  std::vector<Perm> gens_;
  size_t degree_ = 0;
  std::vector<std::string> elements_;
};

// --------------------------------------------------------------------------
// Direct products; canonical form "(u|v)".

class ProductGroup final : public GroupProvider {
 public:
  ProductGroup(std::shared_ptr<const GroupProvider> a,
               std::shared_ptr<const GroupProvider> b)
      : a_(std::move(a)), b_(std::move(b)) {
    if (!a_ || !b_) throw PreconditionViolated("product of null group providers");
  }

  std::string name() const override { return a_->name() + "x" + b_->name(); }
  std::string identity() const override {
    return wrap(a_->identity(), b_->identity());
  }

  std::vector<std::string> generators() const override {
    std::vector<std::string> out;
    for (const std::string& g : a_->generators()) out.push_back(wrap(g, b_->identity()));
    for (const std::string& g : b_->generators()) out.push_back(wrap(a_->identity(), g));
    return out;
  }

  std::string multiply(const std::string& x, const std::string& y) const override {
    auto [xu, xv] = split(x);
    auto [yu, yv] = split(y);
    return wrap(a_->multiply(xu, yu), b_->multiply(xv, yv));
  }

  std::string inverse(const std::string& x) const override {
    auto [u, v] = split(x);
    return wrap(a_->inverse(u), b_->inverse(v));
  }

  ConjugacyVerdict conjugacy(const std::string& x) const override {
    auto [u, v] = split(x);
    ConjugacyVerdict ca = a_->conjugacy(u);
    ConjugacyVerdict cb = b_->conjugacy(v);
    ConjugacyVerdict out;
    if (!ca.finite || !cb.finite) {
      out.finite = false;
      out.certificate = !ca.finite ? "left factor: " + ca.certificate
                                   : "right factor: " + cb.certificate;
      return out;
    }
    out.finite = true;
    for (const std::string& cu : ca.conjugates)
      for (const std::string& cv : cb.conjugates) out.conjugates.push_back(wrap(cu, cv));
    std::sort(out.conjugates.begin(), out.conjugates.end());
    return out;
  }

  bool is_finite() const override { return a_->is_finite() && b_->is_finite(); }

 private:
  static std::string wrap(const std::string& u, const std::string& v) {
    return "(" + u + "|" + v + ")";
  }

  std::pair<std::string, std::string> split(const std::string& g) const {
    if (g.size() < 3 || g.front() != '(' || g.back() != ')') bad_element(name(), g);
    long depth = 0;
    for (size_t i = 0; i < g.size(); ++i) {
      char ch = g[i];
      if (ch == '(' || ch == '[') ++depth;
      else if (ch == ')' || ch == ']') --depth;
      else if (ch == '|' && depth == 1)
        return {g.substr(1, i - 1), g.substr(i + 1, g.size() - i - 2)};
    }
    bad_element(name(), g);
  }

  std::shared_ptr<const GroupProvider> a_, b_;
};

// --------------------------------------------------------------------------
// Cycle-notation parsing for the perm descriptor.

// A cycle body without separators whose characters are all digits is read
// one point per character, so "(123)" is the 3-cycle on {1,2,3} and "(10)"
// the transposition swapping 1 and 0.  Bodies with ' ' or ',' separators
// use multi-digit entries: "(0 10 2)".
std::vector<std::vector<int>> parse_cycles(const std::string& text) {
  std::vector<std::vector<int>> cycles;
  size_t pos = 0;
  while (pos < text.size()) {
    if (text[pos] == ' ') {
      ++pos;
      continue;
    }
    if (text[pos] != '(')
      throw ParseError("expected '(' in cycle notation", 1, static_cast<int>(pos) + 1);
    size_t close = text.find(')', pos);
    if (close == std::string::npos)
      throw ParseError("unclosed cycle", 1, static_cast<int>(pos) + 1);
    std::string body = text.substr(pos + 1, close - pos - 1);
    std::vector<int> cycle;
    const bool separated = body.find(' ') != std::string::npos ||
                           body.find(',') != std::string::npos;
    const bool all_digits =
        !body.empty() && std::all_of(body.begin(), body.end(), [](char ch) {
          return std::isdigit(static_cast<unsigned char>(ch));
        });
    if (!separated && all_digits && body.size() > 1) {
      for (char ch : body) cycle.push_back(ch - '0');
    } else {
      std::string item;
      for (char ch : body + " ") {
        if (ch == ' ' || ch == ',') {
          if (!item.empty()) cycle.push_back(static_cast<int>(parse_long(item)));
          item.clear();
        } else {
          item.push_back(ch);
        }
      }
    }
    if (cycle.empty())
      throw ParseError("empty cycle", 1, static_cast<int>(pos) + 1);
    std::vector<int> sorted = cycle;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw ParseError("repeated point in cycle", 1, static_cast<int>(pos) + 1);
    if (sorted.front() < 0)
      throw ParseError("cycle point out of range", 1, static_cast<int>(pos) + 1);
    cycles.push_back(std::move(cycle));
    pos = close + 1;
  }
  return cycles;
}

Perm perm_from_cycles(const std::vector<std::vector<int>>& cycles, int degree) {
  Perm p(degree);
  for (int i = 0; i < degree; ++i) p[i] = i;
  // rightmost cycle acts first, so apply in reverse
  for (auto it = cycles.rbegin(); it != cycles.rend(); ++it) {
    const std::vector<int>& cycle = *it;
    Perm c(degree);
    for (int i = 0; i < degree; ++i) c[i] = i;
    for (size_t i = 0; i < cycle.size(); ++i) {
      int from = cycle[i];
      if (from < 0 || from >= degree)
        throw ParseError("cycle point out of range", 1, 1);
      c[from] = cycle[(i + 1) % cycle.size()];
    }
    Perm q(degree);
    for (int i = 0; i < degree; ++i) q[i] = c[p[i]];
    p = std::move(q);
  }
  return p;
}

std::shared_ptr<const GroupProvider> parse_perm_descriptor(const std::string& body) {
  if (body.empty()) throw ParseError("perm descriptor needs generators", 1, 1);
  // generators are separated by ';' or ',' outside parentheses
  std::vector<std::string> parts;
  std::string current;
  int depth = 0;
  for (char ch : body) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (depth < 0) throw ParseError("unbalanced ')' in perm descriptor", 1, 1);
    if (depth == 0 && (ch == ';' || ch == ',')) {
      parts.push_back(current);
      current.clear();
    } else {
      current.push_back(ch);
    }
  }
  parts.push_back(current);
  std::vector<std::vector<std::vector<int>>> parsed;
  int degree = 1;
  for (const std::string& part : parts) {
    std::string trimmed = part;
    while (!trimmed.empty() && trimmed.front() == ' ') trimmed.erase(trimmed.begin());
    while (!trimmed.empty() && trimmed.back() == ' ') trimmed.pop_back();
    if (trimmed.empty())
      throw ParseError("empty generator in perm descriptor", 1, 1);
    parsed.push_back(parse_cycles(trimmed));
    for (const std::vector<int>& cycle : parsed.back())
      for (int point : cycle) degree = std::max(degree, point + 1);
  }
  std::vector<Perm> gens;
  for (const auto& cycles : parsed) gens.push_back(perm_from_cycles(cycles, degree));
  return permutation_group(std::move(gens));
}

}  // namespace

// --------------------------------------------------------------------------
// Base-class ball enumeration.

std::vector<std::string> GroupProvider::elements_up_to(long length) const {
  std::vector<std::string> words;
  for (const std::string& g : generators()) {
    words.push_back(g);
    std::string gi = inverse(g);
    if (std::find(words.begin(), words.end(), gi) == words.end()) words.push_back(gi);
  }
  std::map<std::string, long> level_of{{identity(), 0}};
  std::set<std::string> frontier{identity()};
  for (long l = 1; l <= length && !frontier.empty(); ++l) {
    std::set<std::string> next;
    for (const std::string& e : frontier)
      for (const std::string& w : words) {
        std::string m = multiply(e, w);
        if (level_of.emplace(m, l).second) next.insert(m);
      }
    if (level_of.size() > kBallCap)
      throw Error("word ball exceeds the enumeration cap");
    frontier = std::move(next);
  }
  std::vector<std::pair<long, std::string>> ordered;
  for (const auto& [g, l] : level_of) ordered.emplace_back(l, g);
  std::sort(ordered.begin(), ordered.end());
  std::vector<std::string> out;
  for (auto& [l, g] : ordered) out.push_back(std::move(g));
  return out;
}

// --------------------------------------------------------------------------
// Factories.

std::shared_ptr<const GroupProvider> permutation_group(
    std::vector<std::vector<int>> generator_perms) {
  return std::make_shared<PermGroup>(std::move(generator_perms));
}

std::shared_ptr<const GroupProvider> infinite_dihedral() {
  return std::make_shared<DinfGroup>();
}

std::shared_ptr<const GroupProvider> heisenberg_group() {
  return std::make_shared<HeisGroup>();
}

std::shared_ptr<const GroupProvider> free_group_rank2() {
  return std::make_shared<Free2Group>();
}

std::shared_ptr<const GroupProvider> integer_group() {
  return std::make_shared<IntegerGroup>();
}

std::shared_ptr<const GroupProvider> product_group(
    std::shared_ptr<const GroupProvider> a, std::shared_ptr<const GroupProvider> b) {
  return std::make_shared<ProductGroup>(std::move(a), std::move(b));
}

std::shared_ptr<const GroupProvider> parse_group(const std::string& descriptor) {
  if (descriptor == "dinf") return infinite_dihedral();
  if (descriptor == "heis") return heisenberg_group();
  if (descriptor == "free2") return free_group_rank2();
  if (descriptor == "z") return integer_group();
  if (descriptor.rfind("perm:", 0) == 0)
    return parse_perm_descriptor(descriptor.substr(5));
  if (descriptor.rfind("prod:", 0) == 0) {
    std::string body = descriptor.substr(5);
    // components may contain commas; take the first split where both parse
    for (size_t i = 0; i < body.size(); ++i) {
      if (body[i] != ',') continue;
      try {
        auto a = parse_group(body.substr(0, i));
        auto b = parse_group(body.substr(i + 1));
        return product_group(std::move(a), std::move(b));
      } catch (const Error&) {
        continue;
      }
    }
    throw ParseError("cannot split product descriptor '" + body + "'", 1, 1);
  }
  throw ParseError("unknown group descriptor '" + descriptor + "'", 1, 1);
}

// --------------------------------------------------------------------------
// FC-center operations.

FcMembership fc_center_membership(const GroupProvider& group, const std::string& g) {
  ConjugacyVerdict v = group.conjugacy(g);
  FcMembership out;
  out.finite = v.finite;
  if (v.finite) out.class_size = static_cast<long>(v.conjugates.size());
  else out.certificate = v.certificate;
  return out;
}

std::vector<std::string> fc_center_window(const GroupProvider& group, long length) {
  if (length < 0) throw PreconditionViolated("window length must be nonnegative");
  std::vector<std::string> out;
  for (const std::string& g : group.elements_up_to(length))
    if (group.conjugacy(g).finite) out.push_back(g);
  return out;
}

// --------------------------------------------------------------------------
// Bridges to modules and tables.

ComputableModule<std::string> group_ad_module(
    std::shared_ptr<const GroupProvider> group, const FieldDescriptor& field) {
  if (!group) throw PreconditionViolated("group_ad_module needs a provider");
  ComputableModule<std::string> mod;
  mod.field = field;
  mod.grouplike_generators = true;
  mod.key_str = [](const std::string& k) { return k; };
  std::vector<std::string> units;
  for (const std::string& g : group->generators()) {
    units.push_back(g);
    std::string gi = group->inverse(g);
    if (std::find(units.begin(), units.end(), gi) == units.end()) units.push_back(gi);
  }
  for (const std::string& u : units) {
    GeneratorAction<std::string> gen;
    gen.name = u;
    gen.coefficient_subalgebra = false;
    gen.act = [group, u, ui = group->inverse(u)](const std::string& k) {
      return SparseVec<std::string>::unit(group->multiply(group->multiply(u, k), ui));
    };
    mod.generators.push_back(std::move(gen));
  }
  return mod;
}

GroupTable group_table(const GroupProvider& group) {
  if (!group.is_finite())
    throw PreconditionViolated("multiplication tables need a finite group");
  std::vector<std::string> elems = group.elements_up_to(0);
  for (long length = 1;; ++length) {
    std::vector<std::string> bigger = group.elements_up_to(length);
    if (bigger.size() == elems.size()) break;
    elems = std::move(bigger);
  }
  GroupTable t;
  t.name = group.name();
  t.order = static_cast<Eigen::Index>(elems.size());
  t.element_names = elems;
  std::map<std::string, Eigen::Index> index;
  for (Eigen::Index i = 0; i < t.order; ++i) index[elems[i]] = i;
  t.product.resize(static_cast<size_t>(t.order) * t.order);
  for (Eigen::Index i = 0; i < t.order; ++i)
    for (Eigen::Index j = 0; j < t.order; ++j) {
      auto it = index.find(group.multiply(elems[i], elems[j]));
      if (it == index.end()) throw Error("group enumeration is not closed");
      t.product[static_cast<size_t>(i) * t.order + j] = it->second;
    }
  validate_group_table(t);
  return t;
}

}  // namespace hopfad
