#pragma once

// Chebotarev densities on explicit finite groups, empirical splitting
// densities of quadratic fields, and sums of 1/p over arithmetic progressions.

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "gft/arith.hpp"
#include "gft/quadfield.hpp"

namespace gft {

using Rational = mpq_class;
using Permutation = std::vector<std::uint32_t>;  // 0-based images

// Cycle notation with 1-based points: "(12)(34)", "(1 2 3)", "(10,11)", "()"
// for the identity. Multi-digit points need spaces or commas.
inline Permutation parse_cycles(const std::string& text, std::size_t degree) {
  Permutation perm(degree);
  for (std::size_t i = 0; i < degree; ++i) perm[i] = static_cast<std::uint32_t>(i);
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) { throw std::invalid_argument("parse_cycles: " + why + " in '" + text + "'"); };
  while (pos < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
      continue;
    }
    if (text[pos] != '(') fail("expected '('");
    ++pos;
    const bool separated = text.find_first_of(" ,", pos) < text.find(')', pos);
    std::vector<std::uint32_t> cycle;
    while (pos < text.size() && text[pos] != ')') {
      const char c = text[pos];
      if (c == ' ' || c == ',') {
        ++pos;
        continue;
      }
      if (!std::isdigit(static_cast<unsigned char>(c))) fail("unexpected character");
      std::size_t value = 0;
      if (separated) {
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
          value = value * 10 + static_cast<std::size_t>(text[pos] - '0');
          ++pos;
        }
      } else {
        value = static_cast<std::size_t>(c - '0');
        ++pos;
      }
      if (value == 0 || value > degree) fail("point " + std::to_string(value) + " out of range");
      cycle.push_back(static_cast<std::uint32_t>(value - 1));
    }
    if (pos >= text.size()) fail("unterminated cycle");
    ++pos;
    std::set<std::uint32_t> distinct(cycle.begin(), cycle.end());
    if (distinct.size() != cycle.size()) fail("repeated point");
    // Compose on the left: apply existing perm, then this cycle.
    Permutation c(degree);
    for (std::size_t i = 0; i < degree; ++i) c[i] = static_cast<std::uint32_t>(i);
    for (std::size_t i = 0; i < cycle.size(); ++i) c[cycle[i]] = cycle[(i + 1) % cycle.size()];
    for (auto& img : perm) img = c[img];
  }
  return perm;
}

class FiniteGroup {
 public:
  // Explicit multiplication table: table[a][b] = a * b.
  static FiniteGroup from_table(std::vector<std::vector<std::uint32_t>> table, std::string name = "") {
    FiniteGroup g;
    g.name_ = std::move(name);
    g.table_ = std::move(table);
    g.check();
    return g;
  }

  // Closure of the generators under composition; elements are sorted so the
  // identity is index 0. Products compose right to left: (a*b)(x) = a(b(x)).
  static FiniteGroup from_permutations(const std::vector<Permutation>& generators, std::size_t degree,
                                       std::string name = "", std::size_t max_order = 100000) {
    Permutation id(degree);
    for (std::size_t i = 0; i < degree; ++i) id[i] = static_cast<std::uint32_t>(i);
    for (const auto& g : generators) {
      if (g.size() != degree) throw std::domain_error("FiniteGroup: generator of wrong degree");
      std::vector<bool> hit(degree, false);
      for (auto x : g) {
        if (x >= degree || hit[x]) throw std::domain_error("FiniteGroup: generator is not a permutation");
        hit[x] = true;
      }
    }
    std::set<Permutation> seen{id};
    std::vector<Permutation> frontier{id};
    while (!frontier.empty()) {
      std::vector<Permutation> next;
      for (const auto& e : frontier) {
        for (const auto& g : generators) {
          auto p = compose(g, e);
          if (seen.insert(p).second) {
            if (seen.size() > max_order) throw std::domain_error("FiniteGroup: group exceeds maximum order");
            next.push_back(std::move(p));
          }
        }
      }
      frontier = std::move(next);
    }
    FiniteGroup out;
    out.name_ = std::move(name);
    out.perms_.assign(seen.begin(), seen.end());
    std::map<Permutation, std::uint32_t> index;
    for (std::size_t i = 0; i < out.perms_.size(); ++i) index[out.perms_[i]] = static_cast<std::uint32_t>(i);
    const std::size_t n = out.perms_.size();
    out.table_.assign(n, std::vector<std::uint32_t>(n));
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) out.table_[a][b] = index.at(compose(out.perms_[a], out.perms_[b]));
    }
    out.check();
    return out;
  }

  std::size_t order() const { return table_.size(); }
  std::uint32_t identity() const { return identity_; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return table_.at(a).at(b); }
  std::uint32_t inverse(std::uint32_t a) const { return inverse_.at(a); }
  const std::vector<std::vector<std::uint32_t>>& table() const { return table_; }
  const std::string& name() const { return name_; }
  bool has_permutations() const { return !perms_.empty(); }
  std::size_t degree() const { return perms_.empty() ? 0 : perms_.front().size(); }
  const Permutation& permutation(std::uint32_t a) const { return perms_.at(a); }

  void require_element(std::uint32_t a) const {
    if (a >= order()) throw std::domain_error("FiniteGroup: element index " + std::to_string(a) + " out of range");
  }

  // Index of a permutation given in cycle notation.
  std::uint32_t element(const std::string& cycles) const {
    if (perms_.empty()) throw std::domain_error("FiniteGroup: group has no permutation representation");
    const auto p = parse_cycles(cycles, degree());
    auto it = std::lower_bound(perms_.begin(), perms_.end(), p);
    if (it == perms_.end() || *it != p) throw std::domain_error("FiniteGroup: " + cycles + " is not in " + name_);
    return static_cast<std::uint32_t>(it - perms_.begin());
  }

  std::uint32_t conjugate(std::uint32_t x, std::uint32_t t) const { return mul(mul(inverse(t), x), t); }

 private:
  static Permutation compose(const Permutation& a, const Permutation& b) {
    Permutation c(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) c[i] = a[b[i]];
    return c;
  }

  void check() {
    const std::size_t n = table_.size();
    if (n == 0) throw std::domain_error("FiniteGroup: empty table");
    for (const auto& row : table_) {
      if (row.size() != n) throw std::domain_error("FiniteGroup: table is not square");
      for (auto x : row) {
        if (x >= n) throw std::domain_error("FiniteGroup: table entry out of range");
      }
    }
    bool found = false;
    for (std::uint32_t e = 0; e < n && !found; ++e) {
      bool ok = true;
      for (std::uint32_t a = 0; a < n && ok; ++a) ok = table_[e][a] == a && table_[a][e] == a;
      if (ok) {
        identity_ = e;
        found = true;
      }
    }
    if (!found) throw std::domain_error("FiniteGroup: no identity");
    inverse_.assign(n, 0);
    for (std::uint32_t a = 0; a < n; ++a) {
      bool ok = false;
      for (std::uint32_t b = 0; b < n; ++b) {
        if (table_[a][b] == identity_ && table_[b][a] == identity_) {
          inverse_[a] = b;
          ok = true;
          break;
        }
      }
      if (!ok) throw std::domain_error("FiniteGroup: element " + std::to_string(a) + " has no inverse");
    }
    for (std::uint32_t a = 0; a < n; ++a) {
      for (std::uint32_t b = 0; b < n; ++b) {
        for (std::uint32_t c = 0; c < n; ++c) {
          if (table_[table_[a][b]][c] != table_[a][table_[b][c]]) throw std::domain_error("FiniteGroup: not associative");
        }
      }
    }
  }

  std::string name_;
  std::vector<Permutation> perms_;
  std::vector<std::vector<std::uint32_t>> table_;
  std::vector<std::uint32_t> inverse_;
  std::uint32_t identity_ = 0;
};

namespace detail {

inline FiniteGroup quaternion_group() {
  // Elements s*u with s in {+1,-1}, u in {1,i,j,k}; index 2u + (s < 0).
  static constexpr int unit_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static constexpr int sign_mul[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  auto product = [](std::uint32_t a, std::uint32_t b) {
    const int ua = static_cast<int>(a / 2), ub = static_cast<int>(b / 2);
    const int s = (a % 2 ? -1 : 1) * (b % 2 ? -1 : 1) * sign_mul[ua][ub];
    return static_cast<std::uint32_t>(2 * unit_mul[ua][ub] + (s < 0 ? 1 : 0));
  };
  // Left-regular representation by i and j.
  std::vector<Permutation> gens;
  for (std::uint32_t g : {2u, 4u}) {
    Permutation p(8);
    for (std::uint32_t x = 0; x < 8; ++x) p[x] = product(g, x);
    gens.push_back(p);
  }
  return FiniteGroup::from_permutations(gens, 8, "q8");
}

}  // namespace detail

inline std::vector<std::string> catalog_names() {
  std::vector<std::string> names;
  for (int n = 1; n <= 12; ++n) names.push_back("c" + std::to_string(n));
  for (const char* s : {"s3", "s4", "a4", "d4", "q8"}) names.emplace_back(s);
  return names;
}

inline FiniteGroup catalog_group(const std::string& name) {
  auto perms = [&](std::initializer_list<const char*> gens, std::size_t degree) {
    std::vector<Permutation> g;
    for (const char* s : gens) g.push_back(parse_cycles(s, degree));
    return FiniteGroup::from_permutations(g, degree, name);
  };
  if (name.size() >= 2 && name[0] == 'c' && std::all_of(name.begin() + 1, name.end(), ::isdigit)) {
    const auto n = std::stoul(name.substr(1));
    if (n < 1 || n > 12) throw std::domain_error("catalog_group: cyclic groups c1..c12 only");
    Permutation p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<std::uint32_t>((i + 1) % n);
    return FiniteGroup::from_permutations({p}, n, name);
  }
  if (name == "s3") return perms({"(12)", "(123)"}, 3);
  if (name == "s4") return perms({"(12)", "(1234)"}, 4);
  if (name == "a4") return perms({"(123)", "(12)(34)"}, 4);
  if (name == "d4") return perms({"(1234)", "(13)"}, 4);
  if (name == "q8") return detail::quaternion_group();
  throw std::domain_error("catalog_group: unknown group '" + name + "'");
}

class Subgroup {
 public:
  // Validates closure; `elements` may be in any order.
  Subgroup(const FiniteGroup& parent, std::vector<std::uint32_t> elements) : parent_(&parent) {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    for (auto e : elements) parent.require_element(e);
    elements_ = std::move(elements);
    if (!contains(parent.identity())) throw std::domain_error("Subgroup: missing identity");
    for (auto a : elements_) {
      if (!contains(parent.inverse(a))) throw std::domain_error("Subgroup: not closed under inverses");
      for (auto b : elements_) {
        if (!contains(parent.mul(a, b))) throw std::domain_error("Subgroup: not closed under products");
      }
    }
  }

  static Subgroup generated(const FiniteGroup& parent, const std::vector<std::uint32_t>& generators) {
    for (auto g : generators) parent.require_element(g);
    std::set<std::uint32_t> seen{parent.identity()};
    std::vector<std::uint32_t> frontier{parent.identity()};
    while (!frontier.empty()) {
      std::vector<std::uint32_t> next;
      for (auto e : frontier) {
        for (auto g : generators) {
          const auto p = parent.mul(e, g);
          if (seen.insert(p).second) next.push_back(p);
        }
      }
      frontier = std::move(next);
    }
    return Subgroup(parent, {seen.begin(), seen.end()});
  }

  const FiniteGroup& parent() const { return *parent_; }
  const std::vector<std::uint32_t>& elements() const { return elements_; }
  std::size_t order() const { return elements_.size(); }
  std::size_t index() const { return parent_->order() / elements_.size(); }
  bool contains(std::uint32_t x) const { return std::binary_search(elements_.begin(), elements_.end(), x); }

  bool is_normal() const {
    for (std::uint32_t t = 0; t < parent_->order(); ++t) {
      for (auto h : elements_) {
        if (!contains(parent_->conjugate(h, t))) return false;
      }
    }
    return true;
  }

 private:
  const FiniteGroup* parent_;
  std::vector<std::uint32_t> elements_;
};

// All subgroups: cyclic subgroups closed under pairwise joins.
inline std::vector<Subgroup> all_subgroups(const FiniteGroup& G) {
  std::set<std::vector<std::uint32_t>> found;
  for (std::uint32_t g = 0; g < G.order(); ++g) found.insert(Subgroup::generated(G, {g}).elements());
  bool grew = true;
  while (grew) {
    grew = false;
    const std::vector<std::vector<std::uint32_t>> current(found.begin(), found.end());
    for (std::size_t i = 0; i < current.size(); ++i) {
      for (std::size_t j = i + 1; j < current.size(); ++j) {
        std::vector<std::uint32_t> gens = current[i];
        gens.insert(gens.end(), current[j].begin(), current[j].end());
        if (found.insert(Subgroup::generated(G, gens).elements()).second) grew = true;
      }
    }
  }
  std::vector<Subgroup> out;
  for (const auto& e : found) out.emplace_back(G, e);
  std::stable_sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) { return a.order() < b.order(); });
  return out;
}

inline std::vector<std::vector<std::uint32_t>> conjugacy_classes(const FiniteGroup& G) {
  std::vector<bool> done(G.order(), false);
  std::vector<std::vector<std::uint32_t>> classes;
  for (std::uint32_t x = 0; x < G.order(); ++x) {
    if (done[x]) continue;
    std::set<std::uint32_t> cls;
    for (std::uint32_t t = 0; t < G.order(); ++t) cls.insert(G.conjugate(x, t));
    for (auto c : cls) done[c] = true;
    classes.emplace_back(cls.begin(), cls.end());
  }
  return classes;
}

// Density of primes with Frobenius in the class of sigma: #<sigma> / #G.
inline Rational conjugacy_class_density(const FiniteGroup& G, std::uint32_t sigma) {
  G.require_element(sigma);
  std::set<std::uint32_t> cls;
  for (std::uint32_t t = 0; t < G.order(); ++t) cls.insert(G.conjugate(sigma, t));
  Rational r(static_cast<unsigned long>(cls.size()), static_cast<unsigned long>(G.order()));
  r.canonicalize();
  return r;
}

struct DensityReport {
  std::string context;
  Rational value;
  Rational lower_bound;
  Rational upper_bound;
  bool normal = false;
  bool lower_attained = false;
};

// Degree-one primes of L/K where Gal(N/K) = G, Gal(N/L) = H: density of the
// union of conjugates of H, between 1/[G:H] and (1 + #G - [G:H]) / #G.
inline DensityReport split_degree_one_density(const FiniteGroup& G, const Subgroup& H) {
  if (&H.parent() != &G) throw std::domain_error("split_degree_one_density: subgroup of a different group");
  std::set<std::uint32_t> un;
  for (std::uint32_t t = 0; t < G.order(); ++t) {
    for (auto h : H.elements()) un.insert(G.conjugate(h, t));
  }
  const auto order = static_cast<long>(G.order());
  const auto index = static_cast<long>(H.index());
  DensityReport rep;
  rep.context = G.name() + " / subgroup of order " + std::to_string(H.order());
  rep.value = Rational(static_cast<long>(un.size()), order);
  rep.lower_bound = Rational(1, index);
  Rational u1 = 1 - Rational(index - 1, order);
  Rational u2 = Rational(1 + order - index, order);
  rep.value.canonicalize();
  rep.lower_bound.canonicalize();
  u1.canonicalize();
  u2.canonicalize();
  rep.upper_bound = std::min(u1, u2);
  rep.normal = H.is_normal();
  rep.lower_attained = rep.value == rep.lower_bound;
  return rep;
}

// Totally split primes in N: density 1/#G, never above 1/[G:H].
inline Rational totally_split_density_bound(const FiniteGroup& G, const Subgroup& H) {
  if (&H.parent() != &G) throw std::domain_error("totally_split_density_bound: subgroup of a different group");
  Rational r(1, static_cast<long>(G.order()));
  if (r > Rational(1, static_cast<long>(H.index())))
    throw std::logic_error("totally_split_density_bound: 1/#G exceeds 1/[G:H]");
  return r;
}

struct EmpiricalDensity {
  double fraction = 0.0;       // split / unramified; 0 when no unramified prime <= x
  std::uint64_t split = 0;
  std::uint64_t unramified = 0;
};

// Natural density of split primes among unramified primes <= x.
inline EmpiricalDensity empirical_split_density(const QuadField& k, std::uint64_t x, const PrimeTable& table) {
  if (x > table.limit()) throw std::out_of_range("empirical_split_density: x beyond prime table");
  EmpiricalDensity out;
  for (auto p : table) {
    if (p > x) break;
    const auto st = detail::split_type_of_prime(k, p);
    if (st == SplitType::ramified) continue;
    ++out.unramified;
    if (st == SplitType::split) ++out.split;
  }
  if (out.unramified) out.fraction = static_cast<double>(out.split) / static_cast<double>(out.unramified);
  return out;
}

inline EmpiricalDensity empirical_split_density(const QuadField& k, std::uint64_t x) {
  if (x < 2) return {};
  return empirical_split_density(k, x, sieve(x));
}

inline EmpiricalDensity empirical_split_density(std::int64_t d, std::uint64_t x) {
  return empirical_split_density(QuadField::from_int(d), x);
}

struct NortonPoint {
  std::uint64_t x = 0;
  double partial_sum = 0.0;
  double deviation = 0.0;  // partial_sum - log log x / (q - 1)
};

namespace detail {
inline void check_progression(std::uint64_t q, std::int64_t a) {
  if (q < 3 || !is_prime(q)) throw std::domain_error("norton_deviation: q must be an odd prime");
  if (a % static_cast<std::int64_t>(q) == 0) throw std::domain_error("norton_deviation: q divides a");
}
}  // namespace detail

// Sum of 1/p over p <= x, p = a (mod q), at each x in `xs` (one pass).
inline std::vector<NortonPoint> norton_series(std::uint64_t q, std::int64_t a, std::vector<std::uint64_t> xs,
                                              const PrimeTable& table) {
  detail::check_progression(q, a);
  std::sort(xs.begin(), xs.end());
  const auto sq = static_cast<std::int64_t>(q);
  const auto residue = static_cast<std::uint64_t>(((a % sq) + sq) % sq);
  std::vector<NortonPoint> out;
  NeumaierSum sum;
  auto it = table.begin();
  for (auto x : xs) {
    if (x < 10) throw std::domain_error("norton_deviation: x must be >= 10");
    if (x > table.limit()) throw std::out_of_range("norton_deviation: x beyond prime table");
    for (; it != table.end() && *it <= x; ++it) {
      if (*it % q == residue) sum += 1.0 / static_cast<double>(*it);
    }
    NortonPoint pt;
    pt.x = x;
    pt.partial_sum = sum.value();
    pt.deviation = pt.partial_sum - std::log(std::log(static_cast<double>(x))) / static_cast<double>(q - 1);
    out.push_back(pt);
  }
  return out;
}

inline NortonPoint norton_deviation(std::uint64_t q, std::int64_t a, std::uint64_t x, const PrimeTable& table) {
  return norton_series(q, a, {x}, table).front();
}

inline NortonPoint norton_deviation(std::uint64_t q, std::int64_t a, std::uint64_t x) {
  detail::check_progression(q, a);
  if (x < 10) throw std::domain_error("norton_deviation: x must be >= 10");
  return norton_deviation(q, a, x, sieve(x));
}

}  // namespace gft
