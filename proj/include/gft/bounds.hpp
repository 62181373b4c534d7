#pragma once

// Basic inequalities and deficiencies of infinite global fields, Ihara-type
// bounds on split places, the non-optimality lower bound alpha(K, S), and the
// two monotonicity lemmas behind "deficiency increases with the field".

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gft/arith.hpp"
#include "gft/quadfield.hpp"
#include "gft/threshold.hpp"
#include "gft/tower.hpp"

namespace gft {

inline constexpr double euler_gamma = 0.57721566490153286;

enum class Variant { grh_nf, nf, ff };

inline const char* to_string(Variant v) {
  switch (v) {
    case Variant::grh_nf: return "grh-nf";
    case Variant::nf: return "nf";
    case Variant::ff: return "ff";
  }
  return "?";
}

inline Variant parse_variant(const std::string& s) {
  if (s == "grh" || s == "grh-nf" || s == "grh_nf") return Variant::grh_nf;
  if (s == "nf") return Variant::nf;
  if (s == "ff") return Variant::ff;
  throw std::invalid_argument("unknown variant '" + s + "' (expected nf, grh or ff)");
}

inline bool is_number_field(Variant v) { return v != Variant::ff; }

// Archimedean coefficients of the basic inequalities (alpha_1, alpha_2).
struct ArchCoefficients {
  double a_R = 0.0;
  double a_C = 0.0;
  Variant variant = Variant::nf;

  static ArchCoefficients of(Variant v) {
    constexpr double pi = std::numbers::pi;
    switch (v) {
      case Variant::grh_nf:
        return {0.5 * std::log(8.0 * pi) + pi / 4.0 + euler_gamma / 2.0, std::log(8.0 * pi) + euler_gamma, v};
      case Variant::nf:
        return {euler_gamma / 2.0 + std::log(2.0 * std::sqrt(pi)), euler_gamma + std::log(2.0 * pi), v};
      case Variant::ff:
        return {0.0, 0.0, v};
    }
    return {};
  }
};

struct InequalityReport {
  Variant variant = Variant::nf;
  double lhs = 0.0;
  double deficiency = 1.0;
  double finite_term = 0.0;
  double arch_term = 0.0;
  std::vector<std::pair<Place, double>> breakdown;
};

// Weight of a finite place of norm q in the basic inequality.
inline double place_weight(std::uint64_t q, Variant variant, std::uint64_t r = 0) {
  const double x = static_cast<double>(q);
  switch (variant) {
    case Variant::grh_nf: return std::log(x) / (std::sqrt(x) - 1.0);
    case Variant::nf: return std::log(x) / (x - 1.0);
    case Variant::ff: {
      const int m = exponent_of(q, r);
      if (m == 0) throw std::domain_error("place_weight: " + std::to_string(q) + " is not a power of r");
      return m / (std::pow(static_cast<double>(r), m / 2.0) - 1.0);
    }
  }
  return 0.0;
}

inline InequalityReport basic_inequality(const PhiVector& v, Variant variant) {
  if (v.is_number_field() != is_number_field(variant))
    throw std::domain_error(std::string("basic_inequality: variant ") + to_string(variant) +
                            " does not match the field type of the vector");
  const auto arch = ArchCoefficients::of(variant);
  InequalityReport rep;
  rep.variant = variant;
  NeumaierSum finite;
  for (const auto& [place, phi] : v.entries()) {
    double c = 0.0;
    switch (place.kind) {
      case Place::Kind::real: c = arch.a_R * phi; break;
      case Place::Kind::complex: c = arch.a_C * phi; break;
      case Place::Kind::finite:
        c = phi * place_weight(place.q, variant, v.constant_field());
        finite += c;
        break;
    }
    rep.breakdown.emplace_back(place, c);
  }
  rep.finite_term = finite.value();
  rep.arch_term = arch.a_R * v.phi_real() + arch.a_C * v.phi_complex();
  rep.lhs = rep.finite_term + rep.arch_term;
  rep.deficiency = 1.0 - rep.lhs;
  return rep;
}

struct IharaReport {
  double sum = 0.0;
  double simple_bound = 0.0;   // 1 / phi_inf
  double refined_bound = 0.0;  // n0^2 / phi_inf * (1 - c phi_inf / 2)
  bool holds = true;
};

// Split-place sum over T against 1/phi_inf and its refinement; bounds are +inf
// when phi_inf = 0.
inline IharaReport ihara_split_bound(const PhiVector& v, std::span<const std::uint64_t> T_norms, std::uint64_t n0,
                                     Variant variant) {
  if (v.is_number_field() != is_number_field(variant))
    throw std::domain_error("ihara_split_bound: variant does not match the field type of the vector");
  if (n0 == 0) throw std::domain_error("ihara_split_bound: base degree must be positive");
  const std::uint64_t r = v.constant_field();
  IharaReport rep;
  NeumaierSum s;
  for (auto q : T_norms) {
    const double x = static_cast<double>(q);
    switch (variant) {
      case Variant::nf: s += std::log(x) / (x - 1.0); break;
      case Variant::grh_nf: s += std::log(x) / (std::sqrt(x) - 1.0); break;
      case Variant::ff: s += detail::log_in_base(x, r) / (std::sqrt(x) - 1.0); break;
    }
  }
  rep.sum = s.value();
  const double phi_inf = v.phi_infinity();
  if (phi_inf <= 0.0) {
    rep.simple_bound = rep.refined_bound = std::numeric_limits<double>::infinity();
    rep.holds = true;
    return rep;
  }
  const double n0sq = static_cast<double>(n0) * static_cast<double>(n0);
  constexpr double pi = std::numbers::pi;
  double correction = 0.0;
  if (variant == Variant::nf) correction = 0.5 * (std::log(2.0 * pi) + euler_gamma) * phi_inf;
  if (variant == Variant::grh_nf) correction = 0.5 * (std::log(8.0 * pi) + euler_gamma) * phi_inf;
  rep.simple_bound = 1.0 / phi_inf;
  rep.refined_bound = n0sq / phi_inf * (1.0 - correction);
  rep.holds = rep.sum <= rep.refined_bound * (1.0 + 1e-12);
  return rep;
}

// One Galois orbit of places of K in the set P.
struct OrbitPlaces {
  std::uint64_t prime = 0;  // rational prime below
  std::uint64_t norm = 0;
  std::uint64_t count = 0;  // places in the orbit
};

struct DeficiencyLowerBound {
  std::vector<OrbitPlaces> P_set;
  std::uint64_t p0 = 0;
  std::uint64_t p0_norm = 0;
  double alpha = 0.0;
  // false: P was not completed below norm_cap; alpha is then a certified
  // upper bound, p0/p0_norm describe the last place examined.
  bool exact = true;
  double target = 0.0;     // g*(K) - ell a_C / 2
  double place_sum = 0.0;  // sum over P of the place weights
  std::uint64_t norm_cap = 0;
};

// Builds P greedily by ascending norm over places of K outside S until the
// weighted sum exceeds g*(K) - ell a_C / 2, then evaluates
//   alpha = (ell log p0 / g*) (w(N p0) - w(N p0^ell)).
// The grh_nf variant uses the square-root weights (not validated).
inline DeficiencyLowerBound deficiency_lower_bound(const QuadField& K, std::span<const std::uint64_t> S,
                                                   std::uint64_t ell = 2, Variant variant = Variant::nf,
                                                   std::uint64_t norm_cap = 10'000'000) {
  if (ell != 2) throw std::domain_error("deficiency_lower_bound: quadratic fields have ell = 2");
  if (variant == Variant::ff) throw std::domain_error("deficiency_lower_bound: number-field variants only");
  const double g = K.genus();
  if (!(g > 0.0)) throw std::domain_error("deficiency_lower_bound: g*(K) must be positive");
  if (norm_cap < 4) throw std::domain_error("deficiency_lower_bound: norm cap too small");

  auto weight = [&](double N) {
    return variant == Variant::nf ? std::log(N) / (N - 1.0) : std::log(N) / (std::sqrt(N) - 1.0);
  };
  const double a_C = ArchCoefficients::of(variant).a_C;
  const double dell = static_cast<double>(ell);

  DeficiencyLowerBound out;
  out.target = g - dell * a_C / 2.0;
  out.norm_cap = norm_cap;

  const std::vector<std::uint64_t> excluded(S.begin(), S.end());
  auto in_S = [&](std::uint64_t p) { return std::find(excluded.begin(), excluded.end(), p) != excluded.end(); };

  // Inert primes contribute one place of norm p^2, queued until that norm is reached.
  std::priority_queue<std::uint64_t, std::vector<std::uint64_t>, std::greater<>> inert;
  NeumaierSum sum;
  bool done = false;

  auto add_orbit = [&](std::uint64_t p, std::uint64_t norm, std::uint64_t count) {
    out.P_set.push_back({p, norm, count});
    sum += static_cast<double>(count) * weight(static_cast<double>(norm));
    out.p0 = p;
    out.p0_norm = norm;
    done = sum.value() > out.target;
  };
  auto flush_inert = [&](std::uint64_t below) {
    while (!done && !inert.empty() && inert.top() < below) {
      const auto norm = inert.top();
      inert.pop();
      add_orbit(isqrt(norm), norm, 1);
    }
  };

  const auto table = sieve(norm_cap);
  for (auto p : table) {
    flush_inert(p);
    if (done) break;
    if (in_S(p)) continue;
    switch (detail::split_type_of_prime(K, p)) {
      case SplitType::split: add_orbit(p, p, 2); break;
      case SplitType::ramified: add_orbit(p, p, 1); break;
      case SplitType::inert:
        if (p <= norm_cap / p) inert.push(p * p);
        break;
    }
    if (done) break;
  }
  flush_inert(norm_cap + 1);
  out.place_sum = sum.value();

  if (done) {
    const double N0 = static_cast<double>(out.p0_norm);
    out.alpha = dell * std::log(static_cast<double>(out.p0)) / g * (weight(N0) / std::log(N0) -
                                                                   weight(std::pow(N0, dell)) / std::log(std::pow(N0, dell)));
    out.exact = true;
  } else {
    // p0 has norm > cap; log N / (N - 1) and log N / (sqrt N - 1) decrease for N >= 2.
    const double C = static_cast<double>(norm_cap) + 1.0;
    out.alpha = dell / g * weight(C);
    out.exact = false;
  }
  return out;
}

// A_m = sum_{k <= m} k phi_{p^k}.
inline std::vector<double> partial_moments(const PhiVector& v, std::uint64_t p, int max_k) {
  std::vector<double> A(static_cast<std::size_t>(max_k) + 1, 0.0);
  std::uint64_t q = 1;
  for (int k = 1; k <= max_k; ++k) {
    q *= p;
    A[static_cast<std::size_t>(k)] = A[static_cast<std::size_t>(k) - 1] + k * v.get(Place::finite(q));
  }
  return A;
}

inline int max_exponent(const PhiVector& v, std::uint64_t p) {
  int m = 0;
  for (const auto& [place, phi] : v.entries()) {
    if (place.is_finite()) m = std::max(m, exponent_of(place.q, p));
  }
  return m;
}

using ExponentWeight = std::function<double(int)>;

// sum_k k phi_{p^k} w(k) over the stored exponents.
inline double weighted_prime_sum(const PhiVector& v, std::uint64_t p, const ExponentWeight& w) {
  NeumaierSum s;
  std::uint64_t q = 1;
  const int m = max_exponent(v, p);
  for (int k = 1; k <= m; ++k) {
    q *= p;
    s += k * v.get(Place::finite(q)) * w(k);
  }
  return s.value();
}

// True iff A_m(u) >= A_m(v) for every m; the Abel transform then forces the
// weighted sum of v below that of u for any positive nonincreasing weight,
// which is asserted.
inline bool weighted_dominance(const PhiVector& u, const PhiVector& v, std::uint64_t p, const ExponentWeight& w,
                               double tol = 1e-12) {
  const int m = std::max(max_exponent(u, p), max_exponent(v, p));
  for (int k = 1; k <= m; ++k) {
    if (!(w(k) > 0.0)) throw std::domain_error("weighted_dominance: weight must be positive");
    if (k > 1 && w(k) > w(k - 1)) throw std::domain_error("weighted_dominance: weight must be nonincreasing");
  }
  const auto Au = partial_moments(u, p, m);
  const auto Av = partial_moments(v, p, m);
  for (int k = 1; k <= m; ++k) {
    if (Au[static_cast<std::size_t>(k)] < Av[static_cast<std::size_t>(k)] - tol) return false;
  }
  const double su = weighted_prime_sum(u, p, w);
  const double sv = weighted_prime_sum(v, p, w);
  if (sv > su + tol * std::max(1.0, std::fabs(su)))
    throw invariant_error("weighted_dominance: dominated vector has the larger weighted sum");
  return true;
}

struct ArchCounts {
  std::uint64_t real = 0;
  std::uint64_t complex = 0;
};

// base: (Phi_R(K), Phi_C(K)); rows: decomposition (Phi_{v,R}, Phi_{v,C}) of
// each real place v of K in L. Returns whether
//   a1 Phi_R(L) + a2 Phi_C(L) <= [L:K] (a1 Phi_R(K) + a2 Phi_C(K)).
inline bool archimedean_monotonicity(ArchCounts base, std::span<const ArchCounts> rows, std::uint64_t relative_degree,
                                     double alpha1, double alpha2) {
  if (!(alpha1 > 0.0) || !(alpha2 > 0.0)) throw std::domain_error("archimedean_monotonicity: coefficients must be positive");
  if (2.0 * alpha1 < alpha2) throw std::domain_error("archimedean_monotonicity: requires 2 alpha1 >= alpha2");
  if (rows.size() != base.real)
    throw std::domain_error("archimedean_monotonicity: need one decomposition row per real place");
  std::uint64_t real_L = 0;
  std::uint64_t complex_L = relative_degree * base.complex;
  for (const auto& row : rows) {
    if (row.real + 2 * row.complex != relative_degree)
      throw std::domain_error("archimedean_monotonicity: Phi_vR + 2 Phi_vC != [L:K]");
    real_L += row.real;
    complex_L += row.complex;
  }
  const double lhs = alpha1 * static_cast<double>(real_L) + alpha2 * static_cast<double>(complex_L);
  const double rhs = static_cast<double>(relative_degree) *
                     (alpha1 * static_cast<double>(base.real) + alpha2 * static_cast<double>(base.complex));
  return lhs <= rhs * (1.0 + 1e-12);
}

}  // namespace gft
