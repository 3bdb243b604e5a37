#pragma once

#include <cstdint>
#include <vector>

#include "dmf/poly.hpp"

namespace dmf {

struct FactorPow {
  Poly f;  // monic irreducible (or squarefree part, for squarefree_decomposition)
  int mult = 1;
};

/// Monic squarefree factors with multiplicities; handles f' = 0 via p-th roots.
std::vector<FactorPow> squarefree_decomposition(const GF& F, const Poly& f);

/// For squarefree monic f: pairs (product of all irreducible factors of degree d, d).
std::vector<std::pair<Poly, int>> distinct_degree(const GF& F, const Poly& f);

/// Splits a squarefree monic f whose irreducible factors all have degree d.
std::vector<Poly> equal_degree(const GF& F, const Poly& f, int d, std::mt19937_64& rng);

/// Complete factorization into monic irreducibles, sorted by (degree, coefficients).
/// The product of the factors times lc(f) equals f.
std::vector<FactorPow> univ_factor(const GF& F, const Poly& f, std::uint64_t seed = 0);

/// Degrees of the irreducible factors of a squarefree polynomial, ascending.
std::vector<int> degree_pattern(const GF& F, const Poly& f);

bool is_squarefree(const GF& F, const Poly& f);
bool is_irreducible(const GF& F, const Poly& f);

/// Distinct roots in F, ascending by packed value.
std::vector<Elt> roots(const GF& F, const Poly& f, std::uint64_t seed = 0);

/// x^{Q^k} mod f for Q = |F|.
Poly frobenius_power(const GF& F, const Poly& a, int k, const Poly& f);

}  // namespace dmf
