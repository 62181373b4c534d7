#pragma once

// Golod-Shafarevich thresholds C(T, K/k) for a cyclic degree-ell extension
// K/k. #Q >= C guarantees an infinite unramified ell-class field tower of K in
// which the places of T(K) split.

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "gft/arith.hpp"

namespace gft {

struct GSParams {
  std::uint64_t ell = 2;
  std::uint64_t sizeT_k = 0;  // #T(k)
  std::uint64_t sizeT_K = 0;  // #T(K), places above T(k)
  std::uint64_t t0 = 0;       // principal ideals in T(k); = sizeT_k when k = Q
  std::uint64_t r1 = 0;       // real places of K
  std::uint64_t r2 = 0;       // complex places of K
  std::uint64_t rho = 0;      // real places of k becoming complex in K
  int delta_ell = 0;          // 1 iff K contains the ell-th roots of unity

  void validate() const {
    if (!is_prime(ell)) throw std::domain_error("GSParams: ell must be prime");
    if (t0 > sizeT_k) throw std::domain_error("GSParams: t0 exceeds #T(k)");
    if (delta_ell != 0 && delta_ell != 1) throw std::domain_error("GSParams: delta_ell must be 0 or 1");
    if (rho > r2) throw std::domain_error("GSParams: rho exceeds the complex places of K");
    if (ell % 2 == 1 && rho != 0) throw std::domain_error("GSParams: odd ell cannot complexify real places");
  }
};

inline double gs_threshold_nf(const GSParams& p) {
  p.validate();
  const double ell = static_cast<double>(p.ell);
  const double arch = static_cast<double>(p.r1 + p.r2);
  const double rho = static_cast<double>(p.rho);
  const double radicand = static_cast<double>(p.sizeT_K) + ell * (arch - rho / 2.0) + p.delta_ell;
  return static_cast<double>(p.sizeT_K) - static_cast<double>(p.t0) + arch + p.delta_ell + 2.0 - rho +
         2.0 * std::sqrt(radicand);
}

inline double gs_threshold_ff(const GSParams& p) {
  p.validate();
  return static_cast<double>(p.sizeT_k) + 2.0 + p.delta_ell +
         2.0 * std::sqrt(static_cast<double>(p.sizeT_K) + p.delta_ell);
}

}  // namespace gft
