#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dmf/field.hpp"

namespace dmf {

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
using Poly = std::vector<Elt>;

namespace poly {

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}
inline int deg(const Poly& a) { return static_cast<int>(a.size()) - 1; }
inline bool is_zero(const Poly& a) { return a.empty(); }
inline Elt lc(const Poly& a) { return a.empty() ? 0 : a.back(); }
inline Elt coeff(const Poly& a, std::size_t i) { return i < a.size() ? a[i] : 0; }

Poly constant(Elt c);
Poly monomial(Elt c, std::size_t d);
Poly x();

Poly add(const GF& F, const Poly& a, const Poly& b);
Poly sub(const GF& F, const Poly& a, const Poly& b);
Poly neg(const GF& F, const Poly& a);
Poly scale(const GF& F, const Poly& a, Elt c);
Poly mul(const GF& F, const Poly& a, const Poly& b);
/// Product truncated to the first n coefficients.
Poly mul_trunc(const GF& F, const Poly& a, const Poly& b, std::size_t n);
/// acc += c * t^shift * a
void axpy_shift(const GF& F, Poly& acc, const Poly& a, Elt c, std::size_t shift);

void divmod(const GF& F, const Poly& a, const Poly& b, Poly& q, Poly& r);
Poly div(const GF& F, const Poly& a, const Poly& b);
Poly mod(const GF& F, const Poly& a, const Poly& b);
/// Exact division; throws if b does not divide a.
Poly div_exact(const GF& F, const Poly& a, const Poly& b);

Poly monic(const GF& F, const Poly& a);
Poly gcd(const GF& F, Poly a, Poly b);
/// Returns g = gcd (monic) with s*a + t*b = g.
Poly xgcd(const GF& F, const Poly& a, const Poly& b, Poly& s, Poly& t);

Elt eval(const GF& F, const Poly& a, Elt x);
Poly deriv(const GF& F, const Poly& a);
Poly pow(const GF& F, const Poly& a, std::uint64_t e);
Poly mulmod(const GF& F, const Poly& a, const Poly& b, const Poly& m);
Poly powmod(const GF& F, const Poly& a, std::uint64_t e, const Poly& m);
/// a(t + c)
Poly taylor_shift(const GF& F, const Poly& a, Elt c);
/// Coefficientwise map F_q -> F_{q^m}.
Poly lift(const FieldCtx& ctx, const Poly& a);
Poly random(const GF& F, std::size_t deg, std::mt19937_64& rng, bool monic_poly = false);

std::string to_string(const GF& F, const Poly& a, const char* var = "t");

}  // namespace poly
}  // namespace dmf
