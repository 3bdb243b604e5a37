#include "dmf/field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace dmf {

namespace {

using UPoly = std::vector<std::uint32_t>;

void fp_trim(UPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t fp_inv(std::uint32_t a, std::uint32_t p) {
  std::uint64_t r = 1, b = a % p;
  std::uint32_t e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

UPoly fp_mulmod(const UPoly& a, const UPoly& b, const UPoly& f, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) acc[i + j] += static_cast<std::uint64_t>(a[i]) * b[j];
  UPoly r(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) r[i] = static_cast<std::uint32_t>(acc[i] % p);
  fp_trim(r);
  const std::size_t n = f.size() - 1;
  std::uint32_t li = fp_inv(f.back(), p);
  while (r.size() > n) {
    std::uint32_t c = static_cast<std::uint32_t>(static_cast<std::uint64_t>(r.back()) * li % p);
    std::size_t s = r.size() - 1 - n;
    for (std::size_t i = 0; i <= n; ++i)
      r[s + i] = static_cast<std::uint32_t>((r[s + i] + static_cast<std::uint64_t>(p - c) * f[i]) % p);
    fp_trim(r);
  }
  return r;
}

UPoly fp_mod(UPoly a, const UPoly& f, std::uint32_t p) {
  fp_trim(a);
  const std::size_t n = f.size() - 1;
  std::uint32_t li = fp_inv(f.back(), p);
  while (a.size() > n) {
    std::uint32_t c = static_cast<std::uint32_t>(static_cast<std::uint64_t>(a.back()) * li % p);
    std::size_t s = a.size() - 1 - n;
    for (std::size_t i = 0; i <= n; ++i)
      a[s + i] = static_cast<std::uint32_t>((a[s + i] + static_cast<std::uint64_t>(p - c) * f[i]) % p);
    fp_trim(a);
  }
  return a;
}

UPoly fp_gcd(UPoly a, UPoly b, std::uint32_t p) {
  fp_trim(a);
  fp_trim(b);
  while (!b.empty()) {
    a = fp_mod(a, b, p);
    std::swap(a, b);
  }
  return a;
}

// x^(p^k) mod f by k-fold p-th powering
UPoly fp_frob_x(const UPoly& f, std::uint32_t p, std::uint32_t k) {
  UPoly x = fp_mod({0, 1}, f, p);
  for (std::uint32_t it = 0; it < k; ++it) {
    UPoly r{1}, b = x;
    std::uint32_t e = p;
    while (e) {
      if (e & 1) r = fp_mulmod(r, b, f, p);
      b = fp_mulmod(b, b, f, p);
      e >>= 1;
    }
    x = r;
  }
  return x;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool fp_poly_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& f0) {
  UPoly f = f0;
  fp_trim(f);
  if (f.size() < 2) return false;
  const std::uint32_t n = static_cast<std::uint32_t>(f.size() - 1);
  if (n == 1) return true;
  UPoly x = fp_mod({0, 1}, f, p);
  if (fp_frob_x(f, p, n) != x) return false;
  for (auto r : prime_factors(n)) {
    UPoly h = fp_frob_x(f, p, n / static_cast<std::uint32_t>(r));
    h.resize(std::max<std::size_t>(h.size(), 2), 0);
    h[1] = (h[1] + p - 1) % p;
    fp_trim(h);
    UPoly g = fp_gcd(f, h, p);
    if (g.size() != 1) return false;
  }
  return true;
}

GF::GF(std::uint32_t p, std::vector<std::uint32_t> modulus) : p_(p), mod_(std::move(modulus)) {
  n_ = static_cast<std::uint32_t>(mod_.size() - 1);
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < n_; ++i) q *= p;
  if (q > (1u << 26)) throw std::invalid_argument("GF: field too large for table arithmetic");
  q_ = static_cast<std::uint32_t>(q);
  ord_ = q_ - 1;
  prime_ = (n_ == 1);
  small_ = (q_ <= 256);

  std::vector<std::uint32_t> pw(n_ + 1, 1);
  for (std::uint32_t i = 1; i <= n_; ++i) pw[i] = pw[i - 1] * p;
  auto unpack = [&](Elt a) {
    UPoly d(n_);
    for (std::uint32_t i = 0; i < n_; ++i) {
      d[i] = a % p;
      a /= p;
    }
    return d;
  };
  auto pack = [&](const UPoly& d) {
    Elt a = 0;
    for (std::uint32_t i = 0; i < d.size() && i < n_; ++i) a += d[i] * pw[i];
    return a;
  };
  auto slow_mul = [&](Elt a, Elt b) {
    UPoly da = unpack(a), db = unpack(b);
    fp_trim(da);
    fp_trim(db);
    return pack(fp_mulmod(da, db, mod_, p_));
  };
  auto slow_add = [&](Elt a, Elt b) {
    UPoly da = unpack(a), db = unpack(b);
    for (std::uint32_t i = 0; i < n_; ++i) da[i] = (da[i] + db[i]) % p_;
    return pack(da);
  };

  neg_.resize(q_);
  for (Elt a = 0; a < q_; ++a) {
    UPoly d = unpack(a);
    for (auto& x : d) x = (p_ - x) % p_;
    neg_[a] = pack(d);
  }

  // least primitive element by packed value
  auto pf = prime_factors(ord_);
  Elt g = 0;
  if (q_ == 2) {
    g = 1;
  } else {
    for (Elt c = 2; c < q_; ++c) {
      auto slow_pow = [&](Elt b, std::uint64_t e) {
        Elt r = 1;
        while (e) {
          if (e & 1) r = slow_mul(r, b);
          b = slow_mul(b, b);
          e >>= 1;
        }
        return r;
      };
      bool ok = true;
      for (auto r : pf)
        if (slow_pow(c, ord_ / r) == 1) {
          ok = false;
          break;
        }
      if (ok) {
        g = c;
        break;
      }
    }
  }
  exp_.assign(2 * static_cast<std::size_t>(ord_), 0);
  log_.assign(q_, 0);
  Elt cur = 1;
  for (std::uint32_t i = 0; i < ord_; ++i) {
    exp_[i] = cur;
    log_[cur] = i;
    cur = slow_mul(cur, g);
  }
  for (std::uint32_t i = 0; i < ord_; ++i) exp_[i + ord_] = exp_[i];

  if (!prime_ && p_ != 2) {
    zech_.assign(ord_, -1);
    for (std::uint32_t d = 0; d < ord_; ++d) {
      Elt s = slow_add(1, exp_[d]);
      zech_[d] = s == 0 ? -1 : static_cast<std::int32_t>(log_[s]);
    }
    if (small_) {
      add_tab_.resize(static_cast<std::size_t>(q_) * q_);
      for (Elt a = 0; a < q_; ++a)
        for (Elt b = 0; b < q_; ++b) add_tab_[a * q_ + b] = slow_add(a, b);
    }
  }
}

GFPtr GF::make(std::uint32_t p, std::uint32_t n) {
  if (!is_prime_u64(p)) throw std::invalid_argument("GF: p = " + std::to_string(p) + " is not prime");
  if (n < 1) throw std::invalid_argument("GF: degree must be >= 1");
  std::uint64_t total = 1;
  for (std::uint32_t i = 0; i < n; ++i) total *= p;
  for (std::uint64_t v = 0; v < total; ++v) {
    UPoly f(n + 1);
    std::uint64_t w = v;
    // v enumerates (c_{n-1},...,c_0) lexicographically: c_{n-1} is the most significant digit
    for (std::uint32_t i = 0; i < n; ++i) {
      f[n - 1 - i] = static_cast<std::uint32_t>(w % p);
      w /= p;
    }
    f[n] = 1;
    if (n == 1 || fp_poly_irreducible(p, f)) return std::make_shared<const GF>(p, f);
  }
  throw std::logic_error("GF: no irreducible polynomial found");
}

GFPtr GF::make_with_modulus(std::uint32_t p, const std::vector<std::uint32_t>& modulus) {
  if (!is_prime_u64(p)) throw std::invalid_argument("GF: p = " + std::to_string(p) + " is not prime");
  UPoly f = modulus;
  for (auto& c : f) c %= p;
  fp_trim(f);
  if (f.size() < 2 || f.back() != 1) throw std::invalid_argument("GF: modulus must be monic of degree >= 1");
  if (!fp_poly_irreducible(p, f)) throw std::invalid_argument("GF: supplied modulus is reducible");
  return std::make_shared<const GF>(p, f);
}

Elt GF::pow(Elt a, std::int64_t e) const {
  if (e == 0) return 1;
  if (!a) {
    if (e < 0) throw std::domain_error("GF: negative power of zero");
    return 0;
  }
  std::int64_t o = ord_;
  std::int64_t r = ((static_cast<std::int64_t>(log_[a]) * (e % o)) % o + o) % o;
  return exp_[static_cast<std::size_t>(r)];
}

Elt GF::from_int(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<Elt>(r);
}

std::vector<std::uint32_t> GF::digits(Elt a) const {
  std::vector<std::uint32_t> d(n_);
  for (std::uint32_t i = 0; i < n_; ++i) {
    d[i] = a % p_;
    a /= p_;
  }
  return d;
}

Elt GF::from_digits(const std::vector<std::uint32_t>& d) const {
  if (d.size() > n_) throw std::invalid_argument("GF: too many digits");
  Elt a = 0, w = 1;
  for (auto x : d) {
    if (x >= p_) throw std::invalid_argument("GF: digit out of range");
    a += x * w;
    w *= p_;
  }
  return a;
}

std::vector<Elt> GF::elements() const {
  std::vector<Elt> out(q_);
  for (Elt a = 0; a < q_; ++a) out[a] = a;
  return out;
}

std::string GF::to_string(Elt a) const {
  if (prime_) return std::to_string(a);
  std::ostringstream os;
  os << '[';
  auto d = digits(a);
  for (std::size_t i = 0; i < d.size(); ++i) os << (i ? "," : "") << d[i];
  os << ']';
  return os.str();
}

bool FieldCtx::down(Elt x, Elt& out) const {
  auto it = restrict_map.find(x);
  if (it == restrict_map.end()) return false;
  out = it->second;
  return true;
}

FieldCtx field_make(std::uint32_t p, std::uint32_t e, std::uint32_t m) {
  if (e < 1 || m < 1) throw std::invalid_argument("field_make: e and m must be >= 1");
  FieldCtx ctx;
  ctx.p = p;
  ctx.e = e;
  ctx.m = m;
  ctx.base = GF::make(p, e);
  ctx.ext = m == 1 ? ctx.base : GF::make(p, e * m);
  const GF& B = *ctx.base;
  const GF& X = *ctx.ext;
  ctx.embed.assign(B.size(), 0);
  if (m == 1) {
    for (Elt a = 0; a < B.size(); ++a) ctx.embed[a] = a;
  } else {
    // least root of the F_q modulus inside F_{q^m}
    const auto& f = B.modulus();
    Elt root = 0;
    bool found = false;
    for (Elt r = 0; r < X.size() && !found; ++r) {
      Elt acc = 0;
      for (std::size_t i = f.size(); i-- > 0;) acc = X.add(X.mul(acc, r), X.from_int(f[i]));
      if (acc == 0) {
        root = r;
        found = true;
      }
    }
    if (!found) throw std::logic_error("field_make: embedding root not found");
    for (Elt a = 0; a < B.size(); ++a) {
      auto d = B.digits(a);
      Elt acc = 0;
      for (std::size_t i = d.size(); i-- > 0;) acc = X.add(X.mul(acc, root), X.from_int(d[i]));
      ctx.embed[a] = acc;
    }
  }
  for (Elt a = 0; a < B.size(); ++a) ctx.restrict_map[ctx.embed[a]] = a;
  return ctx;
}

GFPtr gf_of(std::uint32_t q) {
  static std::mutex mu;
  static std::map<std::uint32_t, GFPtr> cache;
  std::lock_guard<std::mutex> lk(mu);
  auto it = cache.find(q);
  if (it != cache.end()) return it->second;
  std::uint32_t p = 0;
  for (std::uint32_t d = 2; d <= q; ++d)
    if (q % d == 0) {
      p = d;
      break;
    }
  std::uint32_t e = 0, x = q;
  while (p && x % p == 0) {
    x /= p;
    ++e;
  }
  if (!p || x != 1) throw std::invalid_argument("gf_of: " + std::to_string(q) + " is not a prime power");
  GFPtr F = GF::make(p, e);
  cache.emplace(q, F);
  return F;
}

}  // namespace dmf
