#include "dmf/ratfun.hpp"

#include <climits>
#include <stdexcept>

namespace dmf {

int RatFun::degree() const {
  if (num.empty()) return INT_MIN / 4;
  return poly::deg(num) - poly::deg(den);
}

RatFun RatField::make(Poly n, Poly d) const {
  const GF& F = *F_;
  poly::trim(n);
  poly::trim(d);
  if (d.empty()) throw std::domain_error("RatFun: zero denominator");
  if (n.empty()) return RatFun{};
  if (d.size() > 1) {
    Poly g = poly::gcd(F, n, d);
    if (g.size() > 1) {
      n = poly::div_exact(F, n, g);
      d = poly::div_exact(F, d, g);
    }
  }
  if (d.back() != 1) {
    Elt li = F.inv(d.back());
    n = poly::scale(F, n, li);
    d = poly::scale(F, d, li);
  }
  return RatFun{std::move(n), std::move(d)};
}

RatFun RatField::add(const RatFun& a, const RatFun& b) const {
  const GF& F = *F_;
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den == b.den) return make(poly::add(F, a.num, b.num), a.den);
  return make(poly::add(F, poly::mul(F, a.num, b.den), poly::mul(F, b.num, a.den)), poly::mul(F, a.den, b.den));
}

RatFun RatField::neg(const RatFun& a) const { return RatFun{poly::neg(*F_, a.num), a.den}; }

RatFun RatField::sub(const RatFun& a, const RatFun& b) const { return add(a, neg(b)); }

RatFun RatField::mul(const RatFun& a, const RatFun& b) const {
  const GF& F = *F_;
  if (a.is_zero() || b.is_zero()) return RatFun{};
  if (a.is_poly() && b.is_poly()) return RatFun{poly::mul(F, a.num, b.num), Poly{1}};
  // cross-cancel before multiplying
  Poly g1 = poly::gcd(F, a.num, b.den), g2 = poly::gcd(F, b.num, a.den);
  Poly an = poly::div_exact(F, a.num, g1), bd = poly::div_exact(F, b.den, g1);
  Poly bn = poly::div_exact(F, b.num, g2), ad = poly::div_exact(F, a.den, g2);
  return make(poly::mul(F, an, bn), poly::mul(F, ad, bd));
}

RatFun RatField::inv(const RatFun& a) const {
  if (a.is_zero()) throw std::domain_error("RatFun: inverse of zero");
  return make(a.den, a.num);
}

RatFun RatField::pow(const RatFun& a, std::int64_t e) const {
  if (e < 0) return pow(inv(a), -e);
  RatFun r = one(), b = a;
  while (e) {
    if (e & 1) r = mul(r, b);
    e >>= 1;
    if (e) b = mul(b, b);
  }
  return r;
}

Poly RatField::poly_part(const RatFun& a) const { return poly::div(*F_, a.num, a.den); }

std::string RatField::to_string(const RatFun& a) const {
  if (a.is_poly()) return poly::to_string(*F_, a.num);
  return "(" + poly::to_string(*F_, a.num) + ")/(" + poly::to_string(*F_, a.den) + ")";
}

}  // namespace dmf
