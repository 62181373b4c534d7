#pragma once

// Quadratic fields Q(sqrt d) and the explicit construction of a real quadratic
// field K_n in which the first n odd primes split and whose unramified
// 2-class field tower is infinite.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gft/arith.hpp"
#include "gft/threshold.hpp"

namespace gft {

class construction_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class SplitType { split, inert, ramified };

inline const char* to_string(SplitType s) {
  switch (s) {
    case SplitType::split: return "split";
    case SplitType::inert: return "inert";
    case SplitType::ramified: return "ramified";
  }
  return "?";
}

class QuadField {
 public:
  // d = sign * prod(primes); primes must be distinct.
  static QuadField from_factorization(int sign, std::vector<std::uint64_t> primes) {
    if (sign != 1 && sign != -1) throw std::domain_error("QuadField: sign must be +-1");
    std::sort(primes.begin(), primes.end());
    if (std::adjacent_find(primes.begin(), primes.end()) != primes.end())
      throw std::domain_error("QuadField: d must be squarefree");
    for (auto p : primes) {
      if (!is_prime(p)) throw std::domain_error("QuadField: factor " + std::to_string(p) + " is not prime");
    }
    if (sign == 1 && primes.empty()) throw std::domain_error("QuadField: d = 1 is not a quadratic field");

    QuadField k;
    k.d_primes_ = std::move(primes);
    k.d_ = sign;
    for (auto p : k.d_primes_) k.d_ *= BigInt(std::to_string(p));
    const unsigned long d4 = mpz_fdiv_ui(k.d_.get_mpz_t(), 4);
    k.disc_ = d4 == 1 ? k.d_ : BigInt(4 * k.d_);

    NeumaierSum log_disc;
    for (auto p : k.d_primes_) log_disc += std::log(static_cast<double>(p));
    if (d4 != 1) log_disc += 2.0 * std::log(2.0);
    k.genus_ = 0.5 * log_disc.value();

    k.ramified_ = k.d_primes_;
    if (d4 != 1 && (k.ramified_.empty() || k.ramified_.front() != 2)) k.ramified_.insert(k.ramified_.begin(), 2);
    k.r1_ = sign > 0 ? 2 : 0;
    k.r2_ = sign > 0 ? 0 : 1;
    return k;
  }

  // Factors d by trial division; d must be squarefree, d != 0, 1.
  static QuadField from_int(std::int64_t d) {
    if (d == 0 || d == 1) throw std::domain_error("QuadField: d must be squarefree and not 0 or 1");
    const std::uint64_t m = d < 0 ? static_cast<std::uint64_t>(-(d + 1)) + 1 : static_cast<std::uint64_t>(d);
    std::vector<std::uint64_t> primes;
    for (auto [p, k] : factor(m)) {
      if (k > 1) throw std::domain_error("QuadField: d must be squarefree");
      primes.push_back(p);
    }
    return from_factorization(d < 0 ? -1 : 1, std::move(primes));
  }

  const BigInt& d() const { return d_; }
  const BigInt& discriminant() const { return disc_; }
  double genus() const { return genus_; }  // nats
  int r1() const { return r1_; }
  int r2() const { return r2_; }
  bool is_real() const { return r1_ == 2; }
  const std::vector<std::uint64_t>& ramified_primes() const { return ramified_; }
  const std::vector<std::uint64_t>& d_primes() const { return d_primes_; }

  bool ramifies(std::uint64_t p) const { return std::binary_search(ramified_.begin(), ramified_.end(), p); }

 private:
  QuadField() = default;

  BigInt d_;
  BigInt disc_;
  double genus_ = 0.0;
  int r1_ = 0;
  int r2_ = 0;
  std::vector<std::uint64_t> d_primes_;
  std::vector<std::uint64_t> ramified_;
};

namespace detail {
// p is trusted to be prime (sieve output).
inline SplitType split_type_of_prime(const QuadField& k, std::uint64_t p) {
  if (k.ramifies(p)) return SplitType::ramified;
  if (p == 2) return mpz_fdiv_ui(k.d().get_mpz_t(), 8) == 1 ? SplitType::split : SplitType::inert;
  const auto residue = static_cast<std::int64_t>(mpz_fdiv_ui(k.d().get_mpz_t(), p));
  return kronecker(residue, static_cast<std::int64_t>(p)) == 1 ? SplitType::split : SplitType::inert;
}
}  // namespace detail

inline SplitType split_type(const QuadField& k, std::uint64_t p) {
  if (!is_prime(p)) throw std::domain_error("split_type: " + std::to_string(p) + " is not prime");
  return detail::split_type_of_prime(k, p);
}

// r_n = 1 + floor(n + 5 + 2 sqrt(2n + 5)), evaluated in integers:
// floor(2 sqrt(m)) = isqrt(4m).
inline std::uint64_t rn_formula(std::uint64_t n) {
  if (n == 0) throw std::domain_error("rn_formula: n must be >= 1");
  return 1 + n + 5 + isqrt(4 * (2 * n + 5));
}

// Threshold parameters for a real quadratic K/Q with T = the n split primes.
inline GSParams split_prime_setup(std::uint64_t n) {
  GSParams p;
  p.ell = 2;
  p.sizeT_k = n;
  p.sizeT_K = 2 * n;
  p.t0 = n;
  p.r1 = 2;
  p.r2 = 0;
  p.rho = 0;
  p.delta_ell = 1;
  return p;
}

enum class RSize {
  compact,       // product over the earliest spanning primes; 1 when unconstrained
  near_modulus,  // as close below 2*prod(P)*prod(Q) as the greedy allows
};

struct RSolution {
  BigInt r;
  std::vector<std::uint64_t> factors;  // ascending, distinct primes
};

namespace detail {

class Gf2Vec {
 public:
  explicit Gf2Vec(std::size_t bits = 0) : words_((bits + 63) / 64, 0) {}
  void flip(std::size_t i) { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1; }
  Gf2Vec& operator^=(const Gf2Vec& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
  }
  bool any() const {
    return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
  }

 private:
  std::vector<std::uint64_t> words_;
};

// Legendre-sign vectors: bit i set iff (l / p_i) = -1.
inline Gf2Vec sign_vector(std::uint64_t l, std::span<const std::uint64_t> P) {
  Gf2Vec v(P.size());
  for (std::size_t i = 0; i < P.size(); ++i) {
    const auto p = static_cast<std::int64_t>(P[i]);
    if (kronecker(static_cast<std::int64_t>(l % P[i]), p) == -1) v.flip(i);
  }
  return v;
}

// Finds a subset of `candidates` whose sign vectors XOR to `target`.
inline std::optional<std::vector<std::size_t>> solve_gf2(const std::vector<Gf2Vec>& candidates,
                                                         const Gf2Vec& target, std::size_t bits) {
  struct Row {
    Gf2Vec v;
    Gf2Vec combo;
  };
  std::vector<std::optional<Row>> basis(bits);
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    Row row{candidates[c], Gf2Vec(candidates.size())};
    row.combo.flip(c);
    for (std::size_t b = 0; b < bits; ++b) {
      if (!row.v.test(b)) continue;
      if (basis[b]) {
        row.v ^= basis[b]->v;
        row.combo ^= basis[b]->combo;
      } else {
        basis[b] = std::move(row);
        break;
      }
    }
  }
  Gf2Vec t = target;
  Gf2Vec combo(candidates.size());
  for (std::size_t b = 0; b < bits; ++b) {
    if (!t.test(b)) continue;
    if (!basis[b]) return std::nullopt;
    t ^= basis[b]->v;
    combo ^= basis[b]->combo;
  }
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    if (combo.test(c)) out.push_back(c);
  }
  return out;
}

// Ascending primes greater than `floor`, extended on demand.
class PrimeStream {
 public:
  explicit PrimeStream(std::uint64_t floor) : floor_(floor), bound_(std::max<std::uint64_t>(2 * floor, 1000)) {
    refill();
  }
  std::uint64_t at(std::size_t i) {
    while (i >= primes_.size()) {
      bound_ *= 2;
      refill();
    }
    return primes_[i];
  }

 private:
  void refill() {
    primes_.clear();
    for (auto p : sieve(bound_)) {
      if (p > floor_) primes_.push_back(p);
    }
  }
  std::uint64_t floor_;
  std::uint64_t bound_;
  std::vector<std::uint64_t> primes_;
};

inline bool r_conditions_hold(std::uint64_t r, std::span<const std::uint64_t> P, std::span<const std::uint64_t> Q,
                              const std::vector<int>& target_symbols) {
  if (r % 2 == 0) return false;
  for (auto q : Q) {
    if (r % q == 0) return false;
  }
  for (std::size_t i = 0; i < P.size(); ++i) {
    if (kronecker(static_cast<std::int64_t>(r % P[i]), static_cast<std::int64_t>(P[i])) != target_symbols[i])
      return false;
  }
  return is_squarefree(r);
}

}  // namespace detail

// Finds an odd squarefree r, coprime to P and Q, with (r/p) = prod_q (q/p) for
// every p in P, so every p in P splits in Q(sqrt(r * prod Q)). r is built as a
// product of distinct primes above max(P u Q), so its factorization is known.
inline RSolution solve_r(std::span<const std::uint64_t> P, std::span<const std::uint64_t> Q,
                         RSize size = RSize::compact) {
  std::set<std::uint64_t> seen;
  std::uint64_t top = 2;
  for (auto list : {P, Q}) {
    for (auto p : list) {
      if (p == 2 || !is_prime(p)) throw std::domain_error("solve_r: expected odd primes, got " + std::to_string(p));
      if (!seen.insert(p).second) throw std::domain_error("solve_r: P and Q must be disjoint and duplicate-free");
      top = std::max(top, p);
    }
  }
  const std::size_t n = P.size();

  std::vector<int> target_symbols(n, 1);
  detail::Gf2Vec target(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto q : Q) target_symbols[i] *= kronecker(static_cast<std::int64_t>(q % P[i]), static_cast<std::int64_t>(P[i]));
    if (target_symbols[i] == -1) target.flip(i);
  }

  BigInt modulus = 2;
  for (auto p : P) modulus *= static_cast<unsigned long>(p);
  for (auto q : Q) modulus *= static_cast<unsigned long>(q);

  auto assemble = [&](std::vector<std::uint64_t> primes) {
    std::sort(primes.begin(), primes.end());
    RSolution s{BigInt(1), std::move(primes)};
    for (auto p : s.factors) s.r *= static_cast<unsigned long>(p);
    return s;
  };

  // Exhaustive fallback for tiny moduli, where a prime product may not fit.
  auto scan = [&](bool downward) -> RSolution {
    if (!mpz_fits_ulong_p(modulus.get_mpz_t()) || modulus.get_ui() > 100'000'000UL)
      throw construction_error("solve_r: no admissible r found below the modulus");
    const std::uint64_t m = modulus.get_ui();
    for (std::uint64_t k = 0; k < m; ++k) {
      const std::uint64_t r = downward ? m - 1 - k : k + 1;
      if (r >= 1 && r < m && detail::r_conditions_hold(r, P, Q, target_symbols)) {
        std::vector<std::uint64_t> f;
        for (auto [p, e] : factor(r)) f.push_back(p);
        return assemble(std::move(f));
      }
    }
    throw construction_error("solve_r: no admissible r exists below the modulus");
  };

  detail::PrimeStream pool(top);

  if (size == RSize::compact) {
    if (!target.any()) return RSolution{BigInt(1), {}};
    std::vector<detail::Gf2Vec> vecs;
    for (std::size_t width = n + 16;; width *= 2) {
      while (vecs.size() < width) vecs.push_back(detail::sign_vector(pool.at(vecs.size()), P));
      if (auto sol = detail::solve_gf2(vecs, target, n)) {
        std::vector<std::uint64_t> primes;
        for (auto i : *sol) primes.push_back(pool.at(i));
        auto s = assemble(std::move(primes));
        if (s.r < modulus) return s;
        return scan(false);
      }
      if (width > 64 * (n + 16)) throw construction_error("solve_r: sign vectors do not span the target");
    }
  }

  const double log_modulus = log_abs(modulus);
  auto prefix_length = [&](double limit) {
    std::size_t len = 0;
    double acc = 0.0;
    while (acc + std::log(static_cast<double>(pool.at(len))) <= limit) acc += std::log(static_cast<double>(pool.at(len++)));
    return len;
  };

  // near_modulus: a run B of consecutive primes just under log(modulus); the
  // residual sign vector is fixed by swapping tail primes of B for the primes
  // right after it, each swap moving log r only by log(a/b).
  double swap_slack = 0.0;
  for (int attempt = 0; attempt < 32; ++attempt) {
    const std::size_t width = n + 8;
    const std::size_t b_len = prefix_length(log_modulus - swap_slack);
    if (b_len < width) break;
    detail::Gf2Vec residual = target;
    for (std::size_t i = 0; i < b_len; ++i) residual ^= detail::sign_vector(pool.at(i), P);
    std::vector<detail::Gf2Vec> vecs;
    for (std::size_t k = 0; k < width; ++k) {
      auto v = detail::sign_vector(pool.at(b_len - 1 - k), P);
      v ^= detail::sign_vector(pool.at(b_len + k), P);
      vecs.push_back(std::move(v));
    }
    const auto sol = detail::solve_gf2(vecs, residual, n);
    if (!sol) break;
    std::vector<bool> chosen(b_len + width, false);
    for (std::size_t i = 0; i < b_len; ++i) chosen[i] = true;
    for (auto k : *sol) {
      chosen[b_len - 1 - k] = false;
      chosen[b_len + k] = true;
    }
    std::vector<std::uint64_t> primes;
    for (std::size_t i = 0; i < chosen.size(); ++i) {
      if (chosen[i]) primes.push_back(pool.at(i));
    }
    auto s = assemble(std::move(primes));
    if (s.r < modulus) return s;
    swap_slack += log_abs(s.r) - log_modulus + 1e-9;
  }

  // Fallback for small moduli: toggle primes on both sides of the boundary.
  double slack = 0.0;
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::size_t b_len = 0;
    double acc = 0.0;
    detail::Gf2Vec residual = target;
    std::vector<detail::Gf2Vec> prefix_vecs;
    while (true) {
      const double lp = std::log(static_cast<double>(pool.at(b_len)));
      if (acc + lp > log_modulus - slack) break;
      acc += lp;
      prefix_vecs.push_back(detail::sign_vector(pool.at(b_len), P));
      residual ^= prefix_vecs.back();
      ++b_len;
    }

    for (std::size_t width = n + 32; width <= 64 * (n + 32); width *= 2) {
      // Interleave removals (tail of B) and additions (primes after B).
      std::vector<std::size_t> idx;
      std::vector<detail::Gf2Vec> vecs;
      for (std::size_t k = 0; k < width; ++k) {
        if (k < b_len) {
          idx.push_back(b_len - 1 - k);
          vecs.push_back(prefix_vecs[b_len - 1 - k]);
        }
        idx.push_back(b_len + k);
        vecs.push_back(detail::sign_vector(pool.at(b_len + k), P));
      }
      auto sol = detail::solve_gf2(vecs, residual, n);
      if (!sol) continue;
      std::vector<bool> chosen(b_len + width, false);
      for (std::size_t i = 0; i < b_len; ++i) chosen[i] = true;
      for (auto s : *sol) chosen[idx[s]] = !chosen[idx[s]];
      std::vector<std::uint64_t> primes;
      for (std::size_t i = 0; i < chosen.size(); ++i) {
        if (chosen[i]) primes.push_back(pool.at(i));
      }
      auto s = assemble(std::move(primes));
      if (s.r < modulus) return s;
      break;
    }
    if (b_len == 0) return scan(true);
    slack += std::log(static_cast<double>(pool.at(b_len))) * (1 + attempt);
  }
  return scan(true);
}

struct ConstructionResult {
  std::uint64_t n = 0;
  std::uint64_t rn = 0;
  std::vector<std::uint64_t> P;
  std::vector<std::uint64_t> Q;
  RSolution r;
  QuadField field = QuadField::from_int(-1);
  double gs_threshold = 0.0;
  bool gs_satisfied = false;
};

// Primes needed to build K_n: index 0 is 2, P = [1, n], Q = [n+1, n+rn].
inline PrimeTable construction_primes(std::uint64_t n) { return sieve(nth_prime_upper_bound(1 + n + rn_formula(n))); }

inline ConstructionResult construct_Kn(std::uint64_t n, const PrimeTable& table) {
  if (n == 0) throw std::domain_error("construct_Kn: n must be >= 1");
  ConstructionResult out;
  out.n = n;
  out.rn = rn_formula(n);
  if (table.size() < 1 + n + out.rn) throw std::out_of_range("construct_Kn: prime table too small");
  out.P.assign(table.begin() + 1, table.begin() + 1 + static_cast<std::ptrdiff_t>(n));
  out.Q.assign(table.begin() + 1 + static_cast<std::ptrdiff_t>(n),
               table.begin() + 1 + static_cast<std::ptrdiff_t>(n + out.rn));
  out.r = solve_r(out.P, out.Q, RSize::near_modulus);

  std::vector<std::uint64_t> d_primes = out.Q;
  d_primes.insert(d_primes.end(), out.r.factors.begin(), out.r.factors.end());
  out.field = QuadField::from_factorization(+1, std::move(d_primes));

  out.gs_threshold = gs_threshold_nf(split_prime_setup(n));
  out.gs_satisfied = static_cast<double>(out.field.ramified_primes().size()) >= out.gs_threshold;

  for (auto p : out.P) {
    if (split_type(out.field, p) != SplitType::split)
      throw construction_error("construct_Kn: prime " + std::to_string(p) + " does not split");
  }
  for (auto q : out.Q) {
    if (split_type(out.field, q) != SplitType::ramified)
      throw construction_error("construct_Kn: prime " + std::to_string(q) + " does not ramify");
  }
  if (!out.gs_satisfied) throw construction_error("construct_Kn: ramified primes below the tower threshold");
  return out;
}

inline ConstructionResult construct_Kn(std::uint64_t n) {
  if (n == 0) throw std::domain_error("construct_Kn: n must be >= 1");
  return construct_Kn(n, construction_primes(n));
}

// g_n = theta(q_{r_n}) - theta(p_n)/2 + log 2.
inline double genus_upper_bound(std::uint64_t n, const PrimeTable& table) {
  if (n == 0) throw std::domain_error("genus_upper_bound: n must be >= 1");
  const std::uint64_t rn = rn_formula(n);
  const auto q_last = static_cast<double>(table[n + rn]);
  const auto p_last = static_cast<double>(table[n]);
  return theta(table, q_last) - 0.5 * theta(table, p_last) + std::log(2.0);
}

// g'_n = (1/2) sum_j log q_j.
inline double genus_lower_bound(std::uint64_t n, const PrimeTable& table) {
  if (n == 0) throw std::domain_error("genus_lower_bound: n must be >= 1");
  const std::uint64_t rn = rn_formula(n);
  NeumaierSum s;
  for (std::uint64_t i = n + 1; i <= n + rn; ++i) s += std::log(static_cast<double>(table[i]));
  return 0.5 * s.value();
}

inline double genus_upper_bound(std::uint64_t n) {
  if (n == 0) throw std::domain_error("genus_upper_bound: n must be >= 1");
  return genus_upper_bound(n, construction_primes(n));
}
inline double genus_lower_bound(std::uint64_t n) {
  if (n == 0) throw std::domain_error("genus_lower_bound: n must be >= 1");
  return genus_lower_bound(n, construction_primes(n));
}

}  // namespace gft
