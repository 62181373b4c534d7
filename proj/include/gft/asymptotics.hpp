#pragma once

// The prime sums S_n, S'_n, the tower-limit margin epsilon_n of K_n, and
// ratio reports against their asymptotic laws.

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gft/arith.hpp"
#include "gft/bounds.hpp"
#include "gft/quadfield.hpp"

namespace gft {

// Primes up to the (n+1)-th, i.e. through the n-th odd prime.
inline PrimeTable odd_prime_table(std::uint64_t n) { return sieve(nth_prime_upper_bound(n + 1)); }

namespace detail {
inline void require_odd_primes(const PrimeTable& table, std::uint64_t n, const char* who) {
  if (n == 0) throw std::domain_error(std::string(who) + ": n must be >= 1");
  if (table.size() <= n) throw std::out_of_range(std::string(who) + ": prime table too small");
}
}  // namespace detail

// S_n = sum_{i <= n} log p_i / (sqrt p_i - 1) over the first n odd primes.
inline double s_n(std::uint64_t n, const PrimeTable& table) {
  detail::require_odd_primes(table, n, "s_n");
  NeumaierSum s;
  for (std::uint64_t i = 1; i <= n; ++i) {
    const double p = static_cast<double>(table[i]);
    s += std::log(p) / (std::sqrt(p) - 1.0);
  }
  return s.value();
}

// S'_n = sum_{i <= n} log p_i / (p_i - 1).
inline double s_prime_n(std::uint64_t n, const PrimeTable& table) {
  detail::require_odd_primes(table, n, "s_prime_n");
  NeumaierSum s;
  for (std::uint64_t i = 1; i <= n; ++i) {
    const double p = static_cast<double>(table[i]);
    s += std::log(p) / (p - 1.0);
  }
  return s.value();
}

inline double s_n(std::uint64_t n) { return s_n(n, odd_prime_table(n)); }
inline double s_prime_n(std::uint64_t n) { return s_prime_n(n, odd_prime_table(n)); }

// S_n by partial summation against the odd part of theta:
//   (theta(x) - log 2) f(x) - sum_k (theta(p_k) - log 2)(f(p_{k+1}) - f(p_k)),
// with f(t) = 1/(sqrt t - 1) and x = p_n.
inline double s_n_abel(std::uint64_t n, const PrimeTable& table) {
  detail::require_odd_primes(table, n, "s_n_abel");
  auto f = [](double t) { return 1.0 / (std::sqrt(t) - 1.0); };
  NeumaierSum theta_odd;
  NeumaierSum integral;
  for (std::uint64_t i = 1; i <= n; ++i) {
    const double p = static_cast<double>(table[i]);
    theta_odd += std::log(p);
    if (i < n) integral += theta_odd.value() * (f(static_cast<double>(table[i + 1])) - f(p));
  }
  return theta_odd.value() * f(static_cast<double>(table[n])) - integral.value();
}

// epsilon = (2 S + 2 a_R) / g(K_n): the left side of the basic inequality for
// the unramified 2-tower over K_n, using the constructed genus.
inline double epsilon_n(std::uint64_t n, Variant variant, const PrimeTable& table) {
  if (variant == Variant::ff) throw std::domain_error("epsilon_n: number-field variants only");
  const auto K = construct_Kn(n, table);
  const double S = variant == Variant::nf ? s_prime_n(n, table) : s_n(n, table);
  const double a_R = ArchCoefficients::of(variant).a_R;
  return (2.0 * S + 2.0 * a_R) / K.field.genus();
}

inline double epsilon_n(std::uint64_t n, Variant variant) {
  if (n == 0) throw std::domain_error("epsilon_n: n must be >= 1");
  return epsilon_n(n, variant, construction_primes(n));
}

struct SequenceSample {
  std::uint64_t n = 0;
  double computed = 0.0;
  double asymptote = 0.0;
  double ratio = 0.0;
};

struct SequenceReport {
  std::string name;
  std::vector<SequenceSample> samples;
  std::optional<double> abel_max_rel_error;  // S_n only
};

// The laws compared against: S_n ~ 2 sqrt(n log n), S'_n ~ log(n log n),
// epsilon ~ 4/(3n) (nf) or 8/(3 sqrt(n log n)) (grh), g_n ~ (3/2) n log n,
// g'_n ~ (1/2) n log n.
inline double asymptote_of(const std::string& name, std::uint64_t n, Variant variant = Variant::nf) {
  const double x = static_cast<double>(n);
  const double nl = x * std::log(x);
  if (name == "sn") return 2.0 * std::sqrt(nl);
  if (name == "sprimen") return std::log(nl);
  if (name == "epsilon") return variant == Variant::nf ? 4.0 / (3.0 * x) : 8.0 / (3.0 * std::sqrt(nl));
  if (name == "gn") return 1.5 * nl;
  if (name == "gpn") return 0.5 * nl;
  throw std::invalid_argument("unknown sequence '" + name + "' (expected sn, sprimen, epsilon, gn or gpn)");
}

inline SequenceReport ratio_report(const std::string& name, const std::vector<std::uint64_t>& samples,
                                   Variant variant = Variant::nf) {
  asymptote_of(name, 2, variant);
  if (samples.empty()) throw std::domain_error("ratio_report: no samples");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i] < 2) throw std::domain_error("ratio_report: samples start at n = 2");
    if (i > 0 && samples[i] <= samples[i - 1]) throw std::domain_error("ratio_report: samples must be ascending");
  }
  const std::uint64_t top = samples.back();
  const bool needs_construction = name == "epsilon" || name == "gn" || name == "gpn";
  const PrimeTable table = needs_construction ? construction_primes(top) : odd_prime_table(top);

  SequenceReport rep;
  rep.name = name;
  double abel_err = 0.0;
  for (auto n : samples) {
    SequenceSample s;
    s.n = n;
    if (name == "sn") {
      s.computed = s_n(n, table);
      const double abel = s_n_abel(n, table);
      abel_err = std::max(abel_err, std::fabs(abel - s.computed) / s.computed);
    } else if (name == "sprimen") {
      s.computed = s_prime_n(n, table);
    } else if (name == "epsilon") {
      s.computed = epsilon_n(n, variant, table);
    } else if (name == "gn") {
      s.computed = genus_upper_bound(n, table);
    } else {
      s.computed = genus_lower_bound(n, table);
    }
    s.asymptote = asymptote_of(name, n, variant);
    s.ratio = s.computed / s.asymptote;
    rep.samples.push_back(s);
  }
  if (name == "sn") {
    rep.abel_max_rel_error = abel_err;
    if (abel_err > 1e-6) throw invariant_error("ratio_report: S_n disagrees with its partial-summation form");
  }
  return rep;
}

}  // namespace gft
