#pragma once

#include <string>

#include "dmf/poly.hpp"

namespace dmf {

/// num/den in lowest terms with den monic; zero is 0/1.
struct RatFun {
  Poly num;
  Poly den{1};

  bool is_zero() const { return num.empty(); }
  bool is_poly() const { return den.size() == 1; }
  /// deg num - deg den, i.e. minus the valuation at infinity; INT_MIN-ish for zero.
  int degree() const;
  bool operator==(const RatFun& o) const { return num == o.num && den == o.den; }
};

/// Arithmetic in F_q(t).
class RatField {
 public:
  explicit RatField(GFPtr F) : F_(std::move(F)) {}
  const GF& base() const { return *F_; }
  GFPtr base_ptr() const { return F_; }

  RatFun make(Poly n, Poly d) const;
  RatFun from_poly(Poly n) const { return make(std::move(n), Poly{1}); }
  RatFun constant(Elt c) const { return RatFun{poly::constant(c), Poly{1}}; }
  RatFun zero() const { return RatFun{}; }
  RatFun one() const { return constant(1); }
  RatFun t() const { return from_poly(poly::x()); }

  RatFun add(const RatFun& a, const RatFun& b) const;
  RatFun sub(const RatFun& a, const RatFun& b) const;
  RatFun neg(const RatFun& a) const;
  RatFun mul(const RatFun& a, const RatFun& b) const;
  RatFun inv(const RatFun& a) const;
  RatFun div(const RatFun& a, const RatFun& b) const { return mul(a, inv(b)); }
  RatFun pow(const RatFun& a, std::int64_t e) const;
  bool is_zero(const RatFun& a) const { return a.is_zero(); }

  /// Polynomial part of the expansion at infinity (quotient of num by den).
  Poly poly_part(const RatFun& a) const;
  std::string to_string(const RatFun& a) const;

 private:
  GFPtr F_;
};

}  // namespace dmf
