#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dmf/charpoly.hpp"

namespace dmf {

/// Frobenius cycle types of an irreducible Q(X) ∈ F_q[t][X] at random unramified places.
struct GaloisCertificate {
  int degree = 0;
  std::size_t trials = 0;
  /// cycle type (ascending parts) -> count
  std::map<std::vector<int>, std::size_t> types;
  bool saw_full_cycle = false;     // transitivity
  bool saw_transposition = false;  // one 2-cycle, other cycles odd
  bool saw_prime_cycle = false;    // a prime part p > d/2
  bool certified = false;          // Galois group is S_d
  /// 1 when certified. Otherwise 1 - max over the unmet criteria of the chance that S_d would miss
  /// it in this many samples, so values near 1 are evidence against S_d.
  double confidence = 0;
  std::string verdict;
};

/// Pre: Q monic in X and irreducible over F_q(t), degree d ≥ 1.
GaloisCertificate galois_sample(const GF& F, const BiPoly& Q, std::size_t trials, std::uint64_t seed = 0);

/// Fraction of S_d whose cycle type has the given property, for the three criteria above.
struct CycleTypeDensities {
  double full_cycle = 0, transposition = 0, prime_cycle = 0;
};
CycleTypeDensities symmetric_densities(int d);

}  // namespace dmf
