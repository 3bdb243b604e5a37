#include "dmf/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace dmf::poly {

Poly constant(Elt c) { return c ? Poly{c} : Poly{}; }

Poly monomial(Elt c, std::size_t d) {
  if (!c) return {};
  Poly r(d + 1, 0);
  r[d] = c;
  return r;
}

Poly x() { return Poly{0, 1}; }

Poly add(const GF& F, const Poly& a, const Poly& b) {
  const Poly& lo = a.size() < b.size() ? a : b;
  Poly r = a.size() < b.size() ? b : a;
  for (std::size_t i = 0; i < lo.size(); ++i) r[i] = F.add(r[i], lo[i]);
  trim(r);
  return r;
}

Poly neg(const GF& F, const Poly& a) {
  Poly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.neg(a[i]);
  return r;
}

Poly sub(const GF& F, const Poly& a, const Poly& b) {
  Poly r = a;
  if (r.size() < b.size()) r.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = F.sub(r[i], b[i]);
  trim(r);
  return r;
}

Poly scale(const GF& F, const Poly& a, Elt c) {
  if (!c) return {};
  Poly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], c);
  return r;
}

namespace {

// Prime fields: integer convolution with delayed reduction.
Poly mul_prime(std::uint32_t p, const Poly& a, const Poly& b, std::size_t n) {
  std::vector<std::uint64_t> acc(n, 0);
  // at most 2^64 / p^2 terms can accumulate before reduction
  const std::uint64_t lim = (~0ull) / (static_cast<std::uint64_t>(p - 1) * (p - 1) + 1);
  std::uint64_t cnt = 0;
  for (std::size_t i = 0; i < a.size() && i < n; ++i) {
    const std::uint64_t ai = a[i];
    if (!ai) continue;
    const std::size_t jm = std::min(b.size(), n - i);
    for (std::size_t j = 0; j < jm; ++j) acc[i + j] += ai * b[j];
    if (++cnt >= lim) {
      for (auto& v : acc) v %= p;
      cnt = 0;
    }
  }
  Poly r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = static_cast<Elt>(acc[i] % p);
  trim(r);
  return r;
}

Poly mul_generic(const GF& F, const Poly& a, const Poly& b, std::size_t n) {
  Poly r(n, 0);
  for (std::size_t i = 0; i < a.size() && i < n; ++i) {
    if (!a[i]) continue;
    const std::size_t jm = std::min(b.size(), n - i);
    for (std::size_t j = 0; j < jm; ++j)
      if (b[j]) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  trim(r);
  return r;
}

}  // namespace

Poly mul(const GF& F, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t n = a.size() + b.size() - 1;
  return F.is_prime() ? mul_prime(F.p(), a, b, n) : mul_generic(F, a, b, n);
}

Poly mul_trunc(const GF& F, const Poly& a, const Poly& b, std::size_t n) {
  if (a.empty() || b.empty() || n == 0) return {};
  n = std::min(n, a.size() + b.size() - 1);
  return F.is_prime() ? mul_prime(F.p(), a, b, n) : mul_generic(F, a, b, n);
}

void axpy_shift(const GF& F, Poly& acc, const Poly& a, Elt c, std::size_t shift) {
  if (!c || a.empty()) return;
  if (acc.size() < a.size() + shift) acc.resize(a.size() + shift, 0);
  if (c == 1) {
    for (std::size_t i = 0; i < a.size(); ++i) acc[i + shift] = F.add(acc[i + shift], a[i]);
  } else {
    for (std::size_t i = 0; i < a.size(); ++i) acc[i + shift] = F.add(acc[i + shift], F.mul(c, a[i]));
  }
  trim(acc);
}

void divmod(const GF& F, const Poly& a, const Poly& b, Poly& q, Poly& r) {
  if (b.empty()) throw std::domain_error("poly::divmod: division by zero");
  r = a;
  trim(r);
  if (r.size() < b.size()) {
    q.clear();
    return;
  }
  q.assign(r.size() - b.size() + 1, 0);
  const Elt li = F.inv(b.back());
  const std::size_t db = b.size() - 1;
  for (std::size_t k = r.size(); k-- > db;) {
    Elt c = r[k];
    if (!c) continue;
    c = F.mul(c, li);
    const std::size_t s = k - db;
    q[s] = c;
    const Elt nc = F.neg(c);
    for (std::size_t i = 0; i < db; ++i)
      if (b[i]) r[s + i] = F.add(r[s + i], F.mul(nc, b[i]));
    r[k] = 0;
  }
  r.resize(db);
  trim(r);
  trim(q);
}

Poly div(const GF& F, const Poly& a, const Poly& b) {
  Poly q, r;
  divmod(F, a, b, q, r);
  return q;
}

Poly mod(const GF& F, const Poly& a, const Poly& b) {
  Poly q, r;
  divmod(F, a, b, q, r);
  return r;
}

Poly div_exact(const GF& F, const Poly& a, const Poly& b) {
  Poly q, r;
  divmod(F, a, b, q, r);
  if (!r.empty()) throw std::domain_error("poly::div_exact: nonzero remainder");
  return q;
}

Poly monic(const GF& F, const Poly& a) {
  if (a.empty() || a.back() == 1) return a;
  return scale(F, a, F.inv(a.back()));
}

Poly gcd(const GF& F, Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = mod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(F, a);
}

Poly xgcd(const GF& F, const Poly& a, const Poly& b, Poly& s, Poly& t) {
  Poly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
  trim(r0);
  trim(r1);
  while (!r1.empty()) {
    Poly qq, rr;
    divmod(F, r0, r1, qq, rr);
    Poly s2 = sub(F, s0, mul(F, qq, s1));
    Poly t2 = sub(F, t0, mul(F, qq, t1));
    r0 = std::move(r1);
    r1 = std::move(rr);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.empty()) {
    s = {};
    t = {};
    return {};
  }
  const Elt li = F.inv(r0.back());
  s = scale(F, s0, li);
  t = scale(F, t0, li);
  return scale(F, r0, li);
}

Elt eval(const GF& F, const Poly& a, Elt x) {
  Elt acc = 0;
  for (std::size_t i = a.size(); i-- > 0;) acc = F.add(F.mul(acc, x), a[i]);
  return acc;
}

Poly deriv(const GF& F, const Poly& a) {
  if (a.size() <= 1) return {};
  Poly r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = F.mul(F.from_int(static_cast<std::int64_t>(i)), a[i]);
  trim(r);
  return r;
}

Poly pow(const GF& F, const Poly& a, std::uint64_t e) {
  Poly r{1}, b = a;
  while (e) {
    if (e & 1) r = mul(F, r, b);
    e >>= 1;
    if (e) b = mul(F, b, b);
  }
  return r;
}

Poly mulmod(const GF& F, const Poly& a, const Poly& b, const Poly& m) { return mod(F, mul(F, a, b), m); }

Poly powmod(const GF& F, const Poly& a, std::uint64_t e, const Poly& m) {
  Poly r = mod(F, Poly{1}, m), b = mod(F, a, m);
  while (e) {
    if (e & 1) r = mulmod(F, r, b, m);
    e >>= 1;
    if (e) b = mulmod(F, b, b, m);
  }
  return r;
}

Poly taylor_shift(const GF& F, const Poly& a, Elt c) {
  // Horner with (t + c)
  Poly r;
  for (std::size_t i = a.size(); i-- > 0;) {
    Poly nr(r.size() + 1, 0);
    for (std::size_t j = 0; j < r.size(); ++j) {
      nr[j + 1] = F.add(nr[j + 1], r[j]);
      nr[j] = F.add(nr[j], F.mul(c, r[j]));
    }
    nr[0] = F.add(nr[0], a[i]);
    trim(nr);
    r = std::move(nr);
  }
  return r;
}

Poly lift(const FieldCtx& ctx, const Poly& a) {
  Poly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = ctx.up(a[i]);
  return r;
}

Poly random(const GF& F, std::size_t d, std::mt19937_64& rng, bool monic_poly) {
  std::uniform_int_distribution<Elt> dist(0, F.size() - 1);
  Poly r(d + 1);
  for (auto& c : r) c = dist(rng);
  if (monic_poly) r[d] = 1;
  trim(r);
  return r;
}

std::string to_string(const GF& F, const Poly& a, const char* var) {
  if (a.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (!a[i]) continue;
    if (!first) os << " + ";
    first = false;
    bool one = a[i] == 1;
    if (!one || i == 0) os << F.to_string(a[i]);
    if (i > 0) {
      if (!one) os << '*';
      os << var;
      if (i > 1) os << '^' << i;
    }
  }
  return os.str();
}

}  // namespace dmf::poly
