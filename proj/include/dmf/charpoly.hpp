#pragma once

#include <vector>

#include "dmf/linalg.hpp"

namespace dmf {

/// Polynomial in X with coefficients in F_q[t]; entry i is the coefficient of X^i.
using BiPoly = std::vector<Poly>;

/// Shared, lazily built tower F_p ⊂ F_q ⊂ F_{q^m}.
const FieldCtx& tower(std::uint32_t p, std::uint32_t e, std::uint32_t m);
/// Least m with q^m >= n.
std::uint32_t tower_degree_for(std::uint32_t q, std::uint64_t n);

/// deg_t bound for the coefficient of X^{n-j}, j = 0..n (min of row and column bounds).
std::vector<int> charpoly_degree_bounds(const Matrix<Poly>& M);

/// Charpoly of a square matrix over F_q[t] via specialization at points of F_{q^m} and
/// interpolation. deg_bound < 0 selects dim * (1 + max entry degree).
BiPoly charpoly_interp(const GF& Fq, const Matrix<Poly>& M, int deg_bound = -1);
/// Same, with a separate bound for each coefficient (indexed like charpoly_degree_bounds).
BiPoly charpoly_interp_bounds(const GF& Fq, const Matrix<Poly>& M, const std::vector<int>& bounds);

/// Berkowitz over F_q[t]; the reference implementation.
inline BiPoly charpoly_direct(const GF& Fq, const Matrix<Poly>& M) { return charpoly_berkowitz(Fq, M); }

}  // namespace dmf
