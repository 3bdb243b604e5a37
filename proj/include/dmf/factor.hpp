#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dmf/charpoly.hpp"
#include "dmf/galois.hpp"

namespace dmf {

namespace bipoly {

void trim(BiPoly& a);
int deg(const BiPoly& a);
/// t-degree: largest degree among the coefficients.
int tdeg(const BiPoly& a);
BiPoly mul(const GF& F, const BiPoly& a, const BiPoly& b);
BiPoly pow(const GF& F, const BiPoly& a, int e);
/// Division by a monic b; returns false (and leaves q, r unspecified) if b is not monic.
bool divmod(const GF& F, const BiPoly& a, const BiPoly& b, BiPoly& q, BiPoly& r);
/// a / b if b (monic) divides a exactly.
bool divides(const GF& F, const BiPoly& b, const BiPoly& a, BiPoly* quotient = nullptr);
BiPoly deriv_x(const GF& F, const BiPoly& a);
/// X - r.
BiPoly linear(const GF& F, const Poly& r);
/// Coefficients embedded in F_{q^m} and evaluated at t = c.
Poly specialize(const FieldCtx& ctx, const BiPoly& a, Elt c);
/// Lexicographic order by degree, then coefficients from the top.
bool less(const BiPoly& a, const BiPoly& b);
std::string to_string(const GF& F, const BiPoly& a, const char* x = "X", const char* t = "t");

}  // namespace bipoly

/// Monic squarefree factors with multiplicities (Yun over F_q(t), with p-th roots when ∂/∂X vanishes).
/// Throws std::domain_error for an inseparable factor (∂/∂X = 0 with coefficients outside F_q[t^p]).
std::vector<std::pair<BiPoly, int>> bi_squarefree(const GF& F, const BiPoly& P);

/// All roots of P in F_q[t], ascending by bipoly order of X - r.
std::vector<Poly> linear_roots(const GF& F, const BiPoly& P, std::uint64_t seed = 0);

struct BiFactor {
  BiPoly f;
  int mult = 1;
  GaloisCertificate galois;  // filled only when requested and degree ≥ 2
};

struct FactoredCharPoly {
  BiPoly input;
  std::vector<BiFactor> factors;
  /// Specialization point used, as (m, element of F_{q^m}).
  std::uint32_t point_degree = 0;
  Elt point = 0;
};

struct FactorOptions {
  std::uint64_t seed = 0;
  /// Galois sampling trials per factor of degree ≥ 2; 0 disables it.
  std::size_t galois_trials = 0;
};

/// Factorization into monic irreducibles over F_q(t), sorted by bipoly::less.
FactoredCharPoly bivariate_factor(const GF& F, const BiPoly& P, const FactorOptions& opt = {});

}  // namespace dmf
