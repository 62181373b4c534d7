// Densities of degree-one primes for every subgroup of a catalog group.

#include <cstdio>
#include <string>

#include "gft/density.hpp"

int main(int argc, char** argv) {
  const std::string name = argc > 1 ? argv[1] : "s4";
  const auto G = gft::catalog_group(name);
  std::printf("%s, order %zu\n", name.c_str(), G.order());
  for (const auto& H : gft::all_subgroups(G)) {
    const auto r = gft::split_degree_one_density(G, H);
    std::printf("  |H| = %2zu  [G:H] = %2zu  %-6s density %-6s in [%s, %s]\n", H.order(), H.index(),
                H.is_normal() ? "normal" : "", r.value.get_str().c_str(), r.lower_bound.get_str().c_str(),
                r.upper_bound.get_str().c_str());
  }
}
