#pragma once

// Finite prefixes of infinite global fields: per-level degree, genus and place
// counts, Riemann-Hurwitz accounting, and the limit invariants phi_q,
// phi_infinity read off a stabilized prefix.

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "gft/arith.hpp"
#include "gft/quadfield.hpp"

namespace gft {

// Place classes of the parameter set A: R, C and prime powers q.
struct Place {
  enum class Kind { real, complex, finite };
  Kind kind = Kind::finite;
  std::uint64_t q = 0;

  static Place real() { return {Kind::real, 0}; }
  static Place complex() { return {Kind::complex, 0}; }
  static Place finite(std::uint64_t q) { return {Kind::finite, q}; }

  bool is_finite() const { return kind == Kind::finite; }
  std::string to_string() const {
    switch (kind) {
      case Kind::real: return "R";
      case Kind::complex: return "C";
      case Kind::finite: return std::to_string(q);
    }
    return "?";
  }
  auto operator<=>(const Place&) const = default;
};

// q = p^k for some k >= 1; returns k, or 0 when q is not a power of p.
inline int exponent_of(std::uint64_t q, std::uint64_t p) {
  if (p < 2 || q < p) return 0;
  int k = 0;
  while (q % p == 0) {
    q /= p;
    ++k;
  }
  return q == 1 ? k : 0;
}

// Smallest prime dividing q when q is a prime power, else 0.
inline std::uint64_t prime_power_base(std::uint64_t q) {
  if (q < 2) return 0;
  auto f = factor(q);
  return f.size() == 1 ? f.front().first : 0;
}

class invariant_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class PhiVector {
 public:
  static PhiVector number_field() { return PhiVector(0); }
  // Function field over F_r.
  static PhiVector function_field(std::uint64_t r) {
    if (prime_power_base(r) == 0) throw std::domain_error("PhiVector: constant field size must be a prime power");
    return PhiVector(r);
  }

  bool is_number_field() const { return r_ == 0; }
  std::uint64_t constant_field() const { return r_; }

  void set(const Place& place, double value) {
    if (value < 0.0) throw std::domain_error("PhiVector: invariants are nonnegative");
    if (!is_number_field() && !place.is_finite())
      throw std::domain_error("PhiVector: function fields have no archimedean places");
    if (place.is_finite()) {
      if (is_number_field() && prime_power_base(place.q) == 0)
        throw std::domain_error("PhiVector: " + std::to_string(place.q) + " is not a prime power");
      if (!is_number_field() && exponent_of(place.q, r_) == 0)
        throw std::domain_error("PhiVector: " + std::to_string(place.q) + " is not a power of r");
    }
    if (value == 0.0) {
      entries_.erase(place);
    } else {
      entries_[place] = value;
    }
  }
  double get(const Place& place) const {
    auto it = entries_.find(place);
    return it == entries_.end() ? 0.0 : it->second;
  }
  double phi_real() const { return get(Place::real()); }
  double phi_complex() const { return get(Place::complex()); }
  double phi_infinity() const { return phi_infinity_; }
  void set_phi_infinity(double v) {
    if (v < 0.0) throw std::domain_error("PhiVector: phi_infinity is nonnegative");
    phi_infinity_ = v;
  }
  const std::map<Place, double>& entries() const { return entries_; }

  // phi_R + 2 phi_C = phi_inf and sum_m m phi_{p^m} <= phi_inf for each p.
  void validate(double tol = 1e-12) const {
    if (!is_number_field()) return;
    if (std::fabs(phi_real() + 2.0 * phi_complex() - phi_infinity_) > tol)
      throw invariant_error("PhiVector: phi_R + 2 phi_C != phi_infinity");
    std::map<std::uint64_t, double> per_prime;
    for (const auto& [place, value] : entries_) {
      if (!place.is_finite()) continue;
      const auto p = prime_power_base(place.q);
      per_prime[p] += exponent_of(place.q, p) * value;
    }
    for (const auto& [p, total] : per_prime) {
      if (total > phi_infinity_ + tol)
        throw invariant_error("PhiVector: sum_m m phi_{p^m} exceeds phi_infinity at p = " + std::to_string(p));
    }
  }

 private:
  explicit PhiVector(std::uint64_t r) : r_(r) {}

  std::uint64_t r_ = 0;
  std::map<Place, double> entries_;
  double phi_infinity_ = 0.0;
};

// Places with phi above `tol`.
inline std::set<Place> support(const PhiVector& v, double tol = 1e-15) {
  std::set<Place> out;
  for (const auto& [place, value] : v.entries()) {
    if (value > tol) out.insert(place);
  }
  return out;
}

struct RamifiedFactor {
  std::uint64_t e = 1;
  std::uint64_t f = 1;
  std::uint64_t multiplicity = 1;
  // Exponent of the different; tame ramification gives e - 1.
  std::optional<std::uint64_t> different;

  std::uint64_t different_exponent() const { return different.value_or(e - 1); }
};

// Decomposition of one base place of norm `norm` in a relative step.
struct RamifiedPlace {
  std::uint64_t norm = 0;
  std::vector<RamifiedFactor> factors;

  bool ramified() const {
    for (const auto& f : factors) {
      if (f.e > 1) return true;
    }
    return false;
  }
};

// Ramification of K_{level+1} / K_level.
struct RamificationEvent {
  std::size_t level = 0;
  std::vector<RamifiedPlace> places;
};

struct TowerLevel {
  std::uint64_t degree = 1;  // over Q or F_r(t)
  double genus_star = 0.0;
  std::map<std::uint64_t, std::uint64_t> place_counts;  // norm -> Phi_q
  std::uint64_t r1 = 0;
  std::uint64_t r2 = 0;
};

struct Tower {
  std::uint64_t constant_field = 0;  // 0 for number fields, r for F_r(t)
  std::optional<QuadField> base;
  std::vector<TowerLevel> levels;
  std::vector<RamificationEvent> events;
  std::map<std::uint64_t, std::uint64_t> split_norms;  // norm -> base places declared split

  bool is_number_field() const { return constant_field == 0; }

  const RamificationEvent* event_at(std::size_t level) const {
    for (const auto& ev : events) {
      if (ev.level == level) return &ev;
    }
    return nullptr;
  }

  // Degrees divide, g* is nondecreasing, and unramified steps scale g*
  // exactly by the relative degree.
  void validate(double rel_tol = 1e-12) const {
    if (levels.empty()) throw invariant_error("Tower: no levels");
    for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
      const auto& a = levels[i];
      const auto& b = levels[i + 1];
      if (a.degree == 0 || b.degree % a.degree != 0)
        throw invariant_error("Tower: degree of level " + std::to_string(i) + " does not divide the next");
      if (b.genus_star < a.genus_star * (1 - rel_tol))
        throw invariant_error("Tower: g* decreases at level " + std::to_string(i + 1));
      const auto* ev = event_at(i);
      bool ramified = false;
      if (ev) {
        for (const auto& pl : ev->places) ramified = ramified || pl.ramified();
      }
      if (!ramified) {
        const double expected = a.genus_star * static_cast<double>(b.degree / a.degree);
        if (std::fabs(b.genus_star - expected) > rel_tol * std::max(1.0, std::fabs(expected)))
          throw invariant_error("Tower: unramified step " + std::to_string(i) + " does not scale g*");
      }
    }
    for (const auto& ev : events) {
      if (ev.level + 1 >= levels.size()) throw invariant_error("Tower: event beyond the last level");
    }
  }
};

struct HurwitzBounds {
  double lower = 0.0;
  double upper = 0.0;
  double exact = 0.0;
};

namespace detail {
inline double log_in_base(double x, std::uint64_t r) {
  return r == 0 ? std::log(x) : std::log(x) / std::log(static_cast<double>(r));
}
}  // namespace detail

// Two-sided Galois bounds on g*_{i+1} and the exact Riemann-Hurwitz value
//   n g*_i + 1/2 sum (different) f mult log N.
// `r` selects log base r (function fields); 0 means natural log.
inline HurwitzBounds hurwitz_genus_bounds(const TowerLevel& level, const RamificationEvent& event,
                                          std::uint64_t relative_degree, std::uint64_t r = 0) {
  if (relative_degree == 0) throw std::domain_error("hurwitz_genus_bounds: relative degree must be positive");
  const double m = static_cast<double>(relative_degree);
  NeumaierSum ram_logs;
  NeumaierSum different_sum;
  for (const auto& place : event.places) {
    if (place.norm < 2) throw std::domain_error("hurwitz_genus_bounds: place norm must be >= 2");
    std::uint64_t total = 0;
    for (const auto& f : place.factors) {
      if (f.e == 0 || f.f == 0 || f.multiplicity == 0)
        throw std::domain_error("hurwitz_genus_bounds: e, f, multiplicity must be positive");
      total += f.e * f.f * f.multiplicity;
    }
    if (total != relative_degree)
      throw std::domain_error("hurwitz_genus_bounds: sum e f over the place of norm " + std::to_string(place.norm) +
                              " is " + std::to_string(total) + ", expected " + std::to_string(relative_degree));
    const double lg = detail::log_in_base(static_cast<double>(place.norm), r);
    if (place.ramified()) ram_logs += lg;
    for (const auto& f : place.factors) {
      different_sum += static_cast<double>(f.different_exponent() * f.f * f.multiplicity) * lg;
    }
  }
  HurwitzBounds b;
  const double scaled = m * level.genus_star;
  b.lower = scaled + m / 4.0 * ram_logs.value();
  b.upper = scaled + m / 2.0 * ram_logs.value();
  b.exact = scaled + 0.5 * different_sum.value();
  return b;
}

// Ramification of Q(sqrt d)/Q as an event: e = 2, f = 1 over every ramified
// prime; the prime 2 carries its wild different exponent (2 or 3).
inline RamificationEvent quadratic_ramification_event(const QuadField& k, std::size_t level = 0) {
  RamificationEvent ev;
  ev.level = level;
  const unsigned long d4 = mpz_fdiv_ui(k.d().get_mpz_t(), 4);
  for (auto p : k.ramified_primes()) {
    RamifiedFactor f{2, 1, 1, std::nullopt};
    if (p == 2) f.different = d4 == 3 ? 2 : 3;
    ev.places.push_back({p, {f}});
  }
  return ev;
}

// Partial sum of (1/n_i) sum_{ramified in K_{i+1}/K_i} log N over i < horizon,
// checked against the induced two-sided bound on g*_h / n_h.
inline double almost_galois_sum(const Tower& tower, std::size_t horizon, double rel_tol = 1e-9) {
  if (tower.levels.size() < horizon + 1)
    throw std::domain_error("almost_galois_sum: tower has fewer than horizon + 1 levels");
  const std::uint64_t r = tower.constant_field;
  NeumaierSum sum;
  for (std::size_t i = 0; i < horizon; ++i) {
    const auto* ev = tower.event_at(i);
    if (!ev) continue;
    const double n_i = static_cast<double>(tower.levels[i].degree);
    for (const auto& place : ev->places) {
      if (place.ramified()) sum += detail::log_in_base(static_cast<double>(place.norm), r) / n_i;
    }
  }
  const double s = sum.value();
  const auto& first = tower.levels.front();
  const auto& last = tower.levels[horizon];
  const double base_ratio = first.genus_star / static_cast<double>(first.degree);
  const double ratio = last.genus_star / static_cast<double>(last.degree);
  const double lower = base_ratio + 0.25 * s;
  const double upper = base_ratio + 0.5 * s;
  const double slack = rel_tol * std::max(1.0, std::fabs(upper));
  if (ratio < lower - slack || ratio > upper + slack)
    throw invariant_error("almost_galois_sum: g*_h/n_h = " + std::to_string(ratio) + " outside [" +
                          std::to_string(lower) + ", " + std::to_string(upper) + "]");
  return s;
}

// Unramified ell-class field tower over a quadratic base in which the given
// primes split: level i has degree 2 b^i, g* = b^i g(base), 2 b^i places of
// norm p for each split p, and the signature of the base scaled by b^i.
inline Tower simulate_classfield_tower(const QuadField& base, const std::vector<std::uint64_t>& split_primes,
                                       std::size_t depth, std::uint64_t branching) {
  if (branching < 2) throw std::domain_error("simulate_classfield_tower: branching must be >= 2");
  for (auto p : split_primes) {
    if (split_type(base, p) != SplitType::split)
      throw std::domain_error("simulate_classfield_tower: " + std::to_string(p) + " does not split in the base");
  }
  std::uint64_t scale = 1;
  Tower t;
  t.base = base;
  for (std::size_t i = 0; i <= depth; ++i) {
    if (i > 0) {
      if (scale > std::numeric_limits<std::uint64_t>::max() / (2 * branching))
        throw std::domain_error("simulate_classfield_tower: degree overflows at depth " + std::to_string(i));
      scale *= branching;
    }
    TowerLevel lvl;
    lvl.degree = 2 * scale;
    lvl.genus_star = static_cast<double>(scale) * base.genus();
    lvl.r1 = static_cast<std::uint64_t>(base.r1()) * scale;
    lvl.r2 = static_cast<std::uint64_t>(base.r2()) * scale;
    for (auto p : split_primes) lvl.place_counts[p] = 2 * scale;
    t.levels.push_back(std::move(lvl));
    if (i < depth) t.events.push_back({i, {}});
  }
  for (auto p : split_primes) t.split_norms[p] = 2;
  return t;
}

// Adds Q as level 0 below a tower whose base is quadratic.
inline Tower prepend_rational_ground(const Tower& tower) {
  if (!tower.base) throw std::domain_error("prepend_rational_ground: tower has no quadratic base");
  Tower out;
  out.base = tower.base;
  TowerLevel ground;
  ground.degree = 1;
  ground.genus_star = 0.0;
  ground.r1 = 1;
  for (const auto& [q, count] : tower.split_norms) ground.place_counts[q] = 1;
  out.levels.push_back(ground);
  out.levels.insert(out.levels.end(), tower.levels.begin(), tower.levels.end());
  out.events.push_back(quadratic_ramification_event(*tower.base, 0));
  for (auto ev : tower.events) {
    ev.level += 1;
    out.events.push_back(std::move(ev));
  }
  for (const auto& [q, count] : tower.split_norms) out.split_norms[q] = 1;
  return out;
}

enum class LimitPolicy {
  require_stable,  // ratios of the last two levels must agree
  use_top,         // take the top level's ratios as the limit
};

inline PhiVector phi_limit(const Tower& tower, LimitPolicy policy = LimitPolicy::require_stable,
                           double rel_tol = 1e-12) {
  if (tower.levels.empty()) throw std::domain_error("phi_limit: empty tower");
  const auto& top = tower.levels.back();
  if (top.genus_star <= 0.0) throw std::domain_error("phi_limit: top level has g* <= 0");

  auto ratios = [](const TowerLevel& l) {
    std::map<std::string, double> r;
    r["inf"] = static_cast<double>(l.degree) / l.genus_star;
    r["R"] = static_cast<double>(l.r1) / l.genus_star;
    r["C"] = static_cast<double>(l.r2) / l.genus_star;
    for (const auto& [q, c] : l.place_counts) r[std::to_string(q)] = static_cast<double>(c) / l.genus_star;
    return r;
  };
  if (policy == LimitPolicy::require_stable && tower.levels.size() >= 2) {
    const auto a = ratios(tower.levels[tower.levels.size() - 2]);
    const auto b = ratios(top);
    for (const auto& [key, vb] : b) {
      auto it = a.find(key);
      const double va = it == a.end() ? 0.0 : it->second;
      if (std::fabs(va - vb) > rel_tol * std::max(1.0, std::fabs(vb)))
        throw invariant_error("phi_limit: ratio for " + key + " has not stabilized");
    }
  }

  PhiVector v = tower.is_number_field() ? PhiVector::number_field() : PhiVector::function_field(tower.constant_field);
  const double g = top.genus_star;
  for (const auto& [q, c] : top.place_counts) v.set(Place::finite(q), static_cast<double>(c) / g);
  if (tower.is_number_field()) {
    v.set(Place::real(), static_cast<double>(top.r1) / g);
    v.set(Place::complex(), static_cast<double>(top.r2) / g);
  }
  v.set_phi_infinity(static_cast<double>(top.degree) / g);
  return v;
}

}  // namespace gft
