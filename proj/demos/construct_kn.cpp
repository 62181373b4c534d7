// Builds K_n for a few n and prints the field data next to the genus bounds
// and the deficiency of its unramified 2-class field tower.

#include <cstdio>
#include <cstdlib>

#include "gft/gft.hpp"

int main(int argc, char** argv) {
  const unsigned long top = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 8;
  std::printf("%4s %4s %6s %12s %12s %12s %10s\n", "n", "r_n", "#ram", "g'_n", "genus", "g_n", "delta_nf");
  for (unsigned long n = 1; n <= top; ++n) {
    const auto c = gft::construct_Kn(n);
    const auto tower = gft::simulate_classfield_tower(c.field, c.P, 3, 2);
    const auto rep = gft::basic_inequality(gft::phi_limit(tower), gft::Variant::nf);
    std::printf("%4lu %4lu %6zu %12.6f %12.6f %12.6f %10.6f\n", n, static_cast<unsigned long>(c.rn),
                c.field.ramified_primes().size(), gft::genus_lower_bound(n), c.field.genus(),
                gft::genus_upper_bound(n), rep.deficiency);
  }
}
