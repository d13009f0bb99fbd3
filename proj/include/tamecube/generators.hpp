#pragma once

// Seeded generators of map text used by the verification suites: random
// polynomials in the map language and maps with prescribed tameness.

#include <cstdint>
#include <random>
#include <string>

#include "tamecube/cubelat.hpp"

namespace tamecube::gen {

/// A random polynomial of degree <= 2 in n coordinates plus a lambda bump,
/// as map text with input dimension n.
std::string polynomial(int n, std::mt19937_64& rng);

/// eps-tame on J^{n-1} but not on I^n: p o T^n_{eps,tau} plus a term that
/// vanishes on J^{n-1}.
std::string tame_on_j(int n, double eps, std::mt19937_64& rng);

struct ReplacementCase {
  CubicalComplex k;
  CubicalComplex l;
  std::string map;
};

/// K = dI^n, L a non-empty proper subcomplex, and a map that is
/// eps-admissible on L (eps <= 0.2) but not tame off L.
ReplacementCase replacement_case(int n, std::mt19937_64& rng);

struct HomotopyPair {
  std::string first;
  std::string second;
};

/// F(x, u) = (1 - u) p(x) + u q(x) and G(x, u) = (1 - u) q(x) + u r(x) on
/// I^n x I, so F(., 1) = G(., 0).
HomotopyPair homotopy_pair(int n, std::mt19937_64& rng);

}  // namespace tamecube::gen
