#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "gft/arith.hpp"
#include "oracles.hpp"

using namespace gft;

TEST(Sieve, SmallLimits) {
  EXPECT_EQ(sieve(10).primes(), (std::vector<std::uint64_t>{2, 3, 5, 7}));
  EXPECT_EQ(sieve(2).primes(), (std::vector<std::uint64_t>{2}));
  const auto t = sieve(100);
  EXPECT_EQ(t.size(), 25u);
  EXPECT_EQ(t.primes().back(), 97u);
  EXPECT_THROW(sieve(1), std::domain_error);
  EXPECT_THROW(sieve(0), std::domain_error);
}

TEST(Sieve, MatchesTrialDivision) {
  for (std::uint64_t limit : {3u, 4u, 30u, 97u, 98u, 1000u, 20000u}) {
    EXPECT_EQ(sieve(limit).primes(), oracle::primes_upto(limit)) << limit;
  }
}

TEST(Sieve, TableQueries) {
  const auto t = sieve(100);
  EXPECT_EQ(t.count_upto(10), 4u);
  EXPECT_EQ(t.count_upto(97), 25u);
  EXPECT_TRUE(t.contains(89));
  EXPECT_FALSE(t.contains(91));
}

TEST(NthOddPrime, Examples) {
  EXPECT_EQ(nth_odd_prime(1), 3u);
  EXPECT_EQ(nth_odd_prime(3), 7u);
  EXPECT_EQ(nth_odd_prime(1000), 7927u);
  EXPECT_THROW(nth_odd_prime(0), std::domain_error);
}

TEST(NthOddPrime, MatchesSieveLookup) {
  const auto primes = oracle::eratosthenes(110000);
  const auto table = sieve(nth_prime_upper_bound(10001));
  for (std::uint64_t n = 1; n <= 10000; ++n) ASSERT_EQ(nth_odd_prime(table, n), primes[n]) << n;
  for (std::uint64_t n : {1u, 2u, 5u, 6u, 7u, 100u, 9999u}) EXPECT_EQ(nth_odd_prime(n), primes[n]);
}

TEST(Theta, Examples) {
  EXPECT_EQ(theta(1.0), 0.0);
  EXPECT_EQ(theta(0.0), 0.0);
  EXPECT_NEAR(theta(10.0), std::log(210.0), 1e-14);
  const auto primes = oracle::eratosthenes(1000000);
  long double s = 0;
  for (auto p : primes) s += std::log(static_cast<long double>(p));
  const double t = theta(1e6);
  EXPECT_NEAR(t, static_cast<double>(s), 1e-15 * t * 100);
  EXPECT_LT(std::fabs(t / 1e6 - 1.0), 0.01);
}

TEST(Theta, MonotoneWithExactIncrements) {
  const auto table = sieve(20000);
  double prev = 0.0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const double p = static_cast<double>(table[i]);
    const double t = theta(table, p);
    ASSERT_GE(t, prev);
    ASSERT_NEAR(t - prev, std::log(p), 1e-12 * std::max(1.0, t)) << p;
    EXPECT_EQ(theta(table, p - 0.5), prev);
    prev = t;
  }
}

TEST(Kronecker, Examples) {
  EXPECT_EQ(kronecker(2, 7), 1);
  EXPECT_EQ(kronecker(3, 7), -1);
  EXPECT_EQ(kronecker(49, 7), 0);
  EXPECT_THROW(kronecker(3, 0), std::domain_error);
}

TEST(Kronecker, LegendreAgainstExhaustiveResidues) {
  for (std::uint64_t p = 3; p <= 200; ++p) {
    if (!oracle::is_prime(p)) continue;
    for (std::int64_t a = -200; a <= 200; ++a) {
      ASSERT_EQ(kronecker(a, static_cast<std::int64_t>(p)), oracle::legendre(a, p)) << a << "/" << p;
    }
  }
}

TEST(Kronecker, CompositeAndSignedMatchesGmp) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> dist(-1000000, 1000000);
  for (int i = 0; i < 20000; ++i) {
    const auto a = dist(rng);
    auto n = dist(rng);
    if (n == 0) n = 1;
    ASSERT_EQ(kronecker(a, n), kronecker(BigInt(static_cast<long>(a)), BigInt(static_cast<long>(n)))) << a << " " << n;
  }
  EXPECT_EQ(kronecker(5, 2), -1);
  EXPECT_EQ(kronecker(1, 2), 1);
  EXPECT_EQ(kronecker(4, 2), 0);
  EXPECT_EQ(kronecker(-1, -1), -1);
}

TEST(Crt, Examples) {
  EXPECT_EQ(crt({{1, 2}, {2, 3}}), 5);
  EXPECT_EQ(crt({{0, 5}}), 0);
  EXPECT_EQ(crt({{1, 2}, {1, 3}, {2, 5}}), 7);
  EXPECT_THROW(crt({{1, 4}, {1, 6}}), std::domain_error);
}

TEST(Crt, MatchesExhaustiveScan) {
  std::mt19937 rng(11);
  const std::vector<long> moduli{2, 3, 5, 7, 11, 13, 4, 9, 25};
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::pair<long, long>> sys;
    long used = 1;
    for (long m : moduli) {
      if (std::gcd(used, m) != 1 || rng() % 2) continue;
      used *= m;
      sys.emplace_back(static_cast<long>(rng() % static_cast<unsigned>(m)), m);
    }
    if (sys.empty()) continue;
    std::vector<Congruence> c;
    for (auto [r, m] : sys) c.push_back({BigInt(r), BigInt(m)});
    EXPECT_EQ(crt(c), oracle::crt_scan(sys));
  }
}

TEST(Crt, LargeModuli) {
  // 2 * 3 * ... * 113: beyond 64 bits
  std::vector<Congruence> sys;
  BigInt M = 1;
  for (auto p : sieve(113)) {
    sys.push_back({BigInt(static_cast<unsigned long>(p - 1)), BigInt(static_cast<unsigned long>(p))});
    M *= static_cast<unsigned long>(p);
  }
  const BigInt x = crt(sys);
  EXPECT_EQ(x, M - 1);
}

TEST(SquarefreeReduce, Examples) {
  EXPECT_EQ(squarefree_reduce(12), 3u);
  EXPECT_EQ(squarefree_reduce(1), 1u);
  // 2^3 3^2 5: dividing out squares leaves 2 * 5
  EXPECT_EQ(squarefree_reduce(360), 10u);
  EXPECT_THROW(squarefree_reduce(0), std::domain_error);
}

TEST(SquarefreeReduce, OutputSquarefreeAndQuotientSquare) {
  for (std::uint64_t n = 1; n <= 50000; ++n) {
    const auto r = squarefree_reduce(n);
    ASSERT_TRUE(oracle::squarefree(r)) << n;
    ASSERT_EQ(n % r, 0u);
    const auto q = n / r;
    const auto s = static_cast<std::uint64_t>(std::llround(std::sqrt(static_cast<double>(q))));
    ASSERT_EQ(s * s, q) << n;
  }
}

TEST(Primality, DeterministicAgreesWithTrialDivision) {
  for (std::uint64_t n = 0; n < 100000; ++n) ASSERT_EQ(is_prime(n), oracle::is_prime(n)) << n;
  EXPECT_TRUE(is_prime(std::uint64_t{18446744073709551557ULL}));
  EXPECT_FALSE(is_prime(std::uint64_t{3215031751ULL}));  // strong pseudoprime to bases 2,3,5,7
  EXPECT_TRUE(is_prime(BigInt("170141183460469231731687303715884105727")));
}

TEST(LogAbs, HugeIntegers) {
  BigInt x = 1;
  for (int i = 0; i < 2000; ++i) x *= 3;
  EXPECT_NEAR(log_abs(x), 2000 * std::log(3.0), 1e-9);
  EXPECT_NEAR(log_abs(BigInt(-8)), std::log(8.0), 1e-15);
  EXPECT_THROW(log_abs(BigInt(0)), std::domain_error);
}

TEST(Summation, NeumaierRecoversCancellation) {
  NeumaierSum s;
  s += 1.0;
  s += 1e100;
  s += 1.0;
  s += -1e100;
  EXPECT_EQ(s.value(), 2.0);
}
