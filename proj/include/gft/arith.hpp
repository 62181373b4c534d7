#pragma once

// Integer and prime-analytic primitives: sieve, Chebyshev theta, Kronecker
// symbol, CRT and squarefree reduction.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gft {

using BigInt = mpz_class;

// Neumaier's variant of Kahan summation.
class NeumaierSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  NeumaierSum& operator+=(double x) {
    add(x);
    return *this;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Primes up to `limit`, ascending.
class PrimeTable {
 public:
  PrimeTable() = default;
  PrimeTable(std::uint64_t limit, std::vector<std::uint64_t> primes)
      : limit_(limit), primes_(std::move(primes)) {}

  std::uint64_t limit() const { return limit_; }
  const std::vector<std::uint64_t>& primes() const { return primes_; }
  std::size_t size() const { return primes_.size(); }
  std::uint64_t operator[](std::size_t i) const { return primes_[i]; }
  auto begin() const { return primes_.begin(); }
  auto end() const { return primes_.end(); }

  // Number of primes <= x (x may exceed limit only if caller knows better).
  std::size_t count_upto(std::uint64_t x) const {
    return static_cast<std::size_t>(
        std::upper_bound(primes_.begin(), primes_.end(), x) - primes_.begin());
  }
  bool contains(std::uint64_t p) const {
    return std::binary_search(primes_.begin(), primes_.end(), p);
  }

 private:
  std::uint64_t limit_ = 0;
  std::vector<std::uint64_t> primes_;
};

// Sieve of Eratosthenes over odd numbers.
inline PrimeTable sieve(std::uint64_t limit) {
  if (limit < 2) throw std::domain_error("sieve: limit must be >= 2");
  // composite[i] refers to 2i+1
  const std::uint64_t half = (limit - 1) / 2 + 1;
  std::vector<bool> composite(half, false);
  composite[0] = true;  // 1
  for (std::uint64_t i = 1; (2 * i + 1) * (2 * i + 1) <= limit; ++i) {
    if (composite[i]) continue;
    const std::uint64_t p = 2 * i + 1;
    for (std::uint64_t j = (p * p) / 2; j < half; j += p) composite[j] = true;
  }
  std::vector<std::uint64_t> primes;
  primes.reserve(limit > 100 ? static_cast<std::size_t>(1.3 * limit / std::log(double(limit))) : 32);
  primes.push_back(2);
  for (std::uint64_t i = 1; i < half; ++i) {
    if (!composite[i]) primes.push_back(2 * i + 1);
  }
  return PrimeTable(limit, std::move(primes));
}

inline std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

}  // namespace detail

// Natural log of |x| for integers of any size.
inline double log_abs(const BigInt& x) {
  if (x == 0) throw std::domain_error("log_abs: zero");
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
  return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = detail::powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = detail::mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

// Deterministic below 2^64, probabilistic above.
inline bool is_prime(const BigInt& n) {
  if (n < 2) return false;
  if (mpz_fits_ulong_p(n.get_mpz_t())) return is_prime(static_cast<std::uint64_t>(n.get_ui()));
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

// Upper bound for the k-th prime (k >= 1), Rosser-Schoenfeld style.
inline std::uint64_t nth_prime_upper_bound(std::uint64_t k) {
  if (k < 6) return 13;
  const double x = static_cast<double>(k);
  return static_cast<std::uint64_t>(x * (std::log(x) + std::log(std::log(x)))) + 3;
}

// The n-th prime strictly greater than 2 (n = 1 gives 3).
inline std::uint64_t nth_odd_prime(const PrimeTable& table, std::uint64_t n) {
  if (n == 0) throw std::domain_error("nth_odd_prime: n must be >= 1");
  if (n >= table.size()) throw std::out_of_range("nth_odd_prime: prime table too small");
  return table[n];
}

inline std::uint64_t nth_odd_prime(std::uint64_t n) {
  if (n == 0) throw std::domain_error("nth_odd_prime: n must be >= 1");
  return nth_odd_prime(sieve(nth_prime_upper_bound(n + 1)), n);
}

// Chebyshev theta: sum of log p over primes p <= x.
inline double theta(const PrimeTable& table, double x) {
  if (x < 2.0) return 0.0;
  if (x > static_cast<double>(table.limit())) throw std::out_of_range("theta: x beyond prime table");
  NeumaierSum s;
  for (std::uint64_t p : table) {
    if (static_cast<double>(p) > x) break;
    s += std::log(static_cast<double>(p));
  }
  return s.value();
}

inline double theta(double x) {
  if (x < 2.0) return 0.0;
  return theta(sieve(static_cast<std::uint64_t>(std::floor(x))), x);
}

// Kronecker symbol (a/n).
inline int kronecker(std::int64_t a, std::int64_t n) {
  if (n == 0) throw std::domain_error("kronecker: n must be nonzero");
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  // factor 2 out of n
  int twos = 0;
  while ((n & 1) == 0) {
    n >>= 1;
    ++twos;
  }
  if (twos > 0) {
    if ((a & 1) == 0) return 0;
    if (twos & 1) {
      const std::int64_t a8 = ((a % 8) + 8) % 8;
      if (a8 == 3 || a8 == 5) result = -result;
    }
  }
  // now n odd and positive: Jacobi symbol
  std::int64_t m = n;
  std::int64_t b = a % m;
  if (b < 0) b += m;
  while (b != 0) {
    while ((b & 1) == 0) {
      b >>= 1;
      const std::int64_t m8 = m % 8;
      if (m8 == 3 || m8 == 5) result = -result;
    }
    std::swap(b, m);
    if (b % 4 == 3 && m % 4 == 3) result = -result;
    b %= m;
  }
  return m == 1 ? result : 0;
}

inline int kronecker(const BigInt& a, const BigInt& n) {
  if (n == 0) throw std::domain_error("kronecker: n must be nonzero");
  return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

struct Congruence {
  BigInt remainder;
  BigInt modulus;
};

// Unique solution in [0, prod moduli) of a system with pairwise coprime moduli.
inline BigInt crt(std::span<const Congruence> system) {
  BigInt x = 0;
  BigInt m = 1;
  for (const auto& [rem, mod] : system) {
    if (mod <= 0) throw std::domain_error("crt: moduli must be positive");
    BigInt g;
    mpz_gcd(g.get_mpz_t(), m.get_mpz_t(), mod.get_mpz_t());
    if (g != 1) throw std::domain_error("crt: moduli are not pairwise coprime");
    // x + m*t = rem (mod mod)  =>  t = (rem - x) * m^{-1}
    BigInt inv;
    mpz_invert(inv.get_mpz_t(), m.get_mpz_t(), mod.get_mpz_t());
    BigInt t = (rem - x) * inv;
    mpz_fdiv_r(t.get_mpz_t(), t.get_mpz_t(), mod.get_mpz_t());
    x += m * t;
    m *= mod;
  }
  return x;
}

inline BigInt crt(std::initializer_list<std::pair<long, long>> system) {
  std::vector<Congruence> v;
  for (auto [r, m] : system) v.push_back({BigInt(r), BigInt(m)});
  return crt(v);
}

// Divides out p^2 for every prime p while possible; result is squarefree and
// n / result is a perfect square. Trial division, so only for inputs whose
// square root is enumerable.
inline std::uint64_t squarefree_reduce(std::uint64_t n) {
  if (n == 0) throw std::domain_error("squarefree_reduce: n must be >= 1");
  std::uint64_t out = 1;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    int k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    if (k & 1) out *= p;
  }
  return out * n;
}

// Prime factors with multiplicity, ascending (trial division).
inline std::vector<std::pair<std::uint64_t, int>> factor(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, int>> f;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    int k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    if (k) f.emplace_back(p, k);
  }
  if (n > 1) f.emplace_back(n, 1);
  return f;
}

inline bool is_squarefree(std::uint64_t n) {
  for (auto [p, k] : factor(n)) {
    if (k > 1) return false;
  }
  return n != 0;
}

}  // namespace gft
