#include "dmf/factor.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "dmf/parallel.hpp"
#include "dmf/ratfun.hpp"
#include "dmf/univ_factor.hpp"

namespace dmf {

// ---------------------------------------------------------------- bivariate helpers

namespace bipoly {

void trim(BiPoly& a) {
  while (!a.empty() && a.back().empty()) a.pop_back();
}

int deg(const BiPoly& a) { return static_cast<int>(a.size()) - 1; }

int tdeg(const BiPoly& a) {
  int d = -1;
  for (const auto& c : a) d = std::max(d, poly::deg(c));
  return d;
}

BiPoly mul(const GF& F, const BiPoly& a, const BiPoly& b) {
  if (a.empty() || b.empty()) return {};
  BiPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].empty()) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (!b[j].empty()) r[i + j] = poly::add(F, r[i + j], poly::mul(F, a[i], b[j]));
  }
  trim(r);
  return r;
}

BiPoly pow(const GF& F, const BiPoly& a, int e) {
  BiPoly r{Poly{1}};
  for (int i = 0; i < e; ++i) r = mul(F, r, a);
  return r;
}

bool divmod(const GF& F, const BiPoly& a, const BiPoly& b, BiPoly& q, BiPoly& r) {
  if (b.empty() || b.back() != Poly{1}) return false;
  r = a;
  trim(r);
  const int db = deg(b);
  q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, Poly{});
  for (int i = deg(r); i >= db; --i) {
    Poly c = r[static_cast<std::size_t>(i)];
    if (c.empty()) continue;
    q[static_cast<std::size_t>(i - db)] = c;
    for (int j = 0; j <= db; ++j) {
      const Poly& bj = b[static_cast<std::size_t>(j)];
      if (bj.empty()) continue;
      auto& x = r[static_cast<std::size_t>(i - db + j)];
      x = poly::sub(F, x, poly::mul(F, c, bj));
    }
  }
  trim(q);
  trim(r);
  return true;
}

bool divides(const GF& F, const BiPoly& b, const BiPoly& a, BiPoly* quotient) {
  BiPoly q, r;
  if (!divmod(F, a, b, q, r)) throw std::invalid_argument("bipoly::divides: divisor must be monic in X");
  if (!r.empty()) return false;
  if (quotient) *quotient = std::move(q);
  return true;
}

BiPoly deriv_x(const GF& F, const BiPoly& a) {
  BiPoly r(a.size() > 1 ? a.size() - 1 : 0);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = poly::scale(F, a[i], static_cast<Elt>(i % F.p()));
  trim(r);
  return r;
}

BiPoly linear(const GF& F, const Poly& r) { return BiPoly{poly::neg(F, r), Poly{1}}; }

Poly specialize(const FieldCtx& ctx, const BiPoly& a, Elt c) {
  const GF& E = *ctx.ext;
  Poly out(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    Elt acc = 0;
    for (std::size_t j = a[i].size(); j-- > 0;) acc = E.add(E.mul(acc, c), ctx.up(a[i][j]));
    out[i] = acc;
  }
  poly::trim(out);
  return out;
}

bool less(const BiPoly& a, const BiPoly& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i].size() != b[i].size()) return a[i].size() < b[i].size();
    for (std::size_t j = a[i].size(); j-- > 0;)
      if (a[i][j] != b[i][j]) return a[i][j] < b[i][j];
  }
  return false;
}

std::string to_string(const GF& F, const BiPoly& a, const char* x, const char* t) {
  if (a.empty()) return "0";
  std::string s;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i].empty()) continue;
    if (!s.empty()) s += " + ";
    std::string c = poly::to_string(F, a[i], t);
    const bool mono = a[i].size() == 1 || std::count_if(a[i].begin(), a[i].end(), [](Elt v) { return v != 0; }) == 1;
    if (i == 0) {
      s += c;
      continue;
    }
    if (a[i] != Poly{1}) s += mono ? c + "*" : "(" + c + ")*";
    s += x;
    if (i > 1) s += "^" + std::to_string(i);
  }
  return s;
}

}  // namespace bipoly

// ---------------------------------------------------------------- squarefree decomposition

namespace {

using RX = std::vector<RatFun>;

void rx_trim(RX& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

RX to_rx(const RatField& R, const BiPoly& a) {
  RX r;
  for (const auto& c : a) r.push_back(R.from_poly(c));
  rx_trim(r);
  return r;
}

BiPoly from_rx(const RX& a) {
  BiPoly r;
  for (const auto& c : a) {
    if (!c.is_poly()) throw std::logic_error("bi_squarefree: non-polynomial coefficient in a monic factor");
    r.push_back(c.num);
  }
  bipoly::trim(r);
  return r;
}

RX rx_monic(const RatField& R, RX a) {
  rx_trim(a);
  if (a.empty()) return a;
  RatFun l = R.inv(a.back());
  for (auto& c : a) c = R.mul(c, l);
  return a;
}

RX rx_mod(const RatField& R, RX a, const RX& b) {
  rx_trim(a);
  RatFun li = R.inv(b.back());
  while (a.size() >= b.size()) {
    RatFun c = R.mul(a.back(), li);
    const std::size_t s = a.size() - b.size();
    for (std::size_t j = 0; j < b.size(); ++j) a[s + j] = R.sub(a[s + j], R.mul(c, b[j]));
    a.pop_back();
    rx_trim(a);
  }
  return a;
}

RX rx_gcd(const RatField& R, RX a, RX b) {
  rx_trim(a);
  rx_trim(b);
  while (!b.empty()) {
    RX r = rx_mod(R, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return rx_monic(R, a);
}

// A squarefree specialization P(X, c) of the same degree proves P squarefree.
bool has_squarefree_specialization(const GF& F, const BiPoly& P, std::mt19937_64& rng) {
  for (std::uint32_t m = 1; m <= 8; ++m) {
    const FieldCtx& ctx = tower(F.p(), F.degree(), m);
    const std::uint32_t Q = ctx.ext->size();
    const std::uint32_t tries = std::min<std::uint32_t>(Q, 12);
    for (std::uint32_t i = 0; i < tries; ++i) {
      Elt c = Q <= 12 ? i : static_cast<Elt>(rng() % Q);
      Poly pc = bipoly::specialize(ctx, P, c);
      if (poly::deg(pc) == bipoly::deg(P) && is_squarefree(*ctx.ext, pc)) return true;
    }
    if (static_cast<std::uint64_t>(Q) > 4096) break;
  }
  return false;
}

BiPoly pth_root_x(const GF& F, const BiPoly& g) {
  const std::uint32_t p = F.p();
  BiPoly h((g.size() + p - 1) / p);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i].empty()) continue;
    if (i % p) throw std::logic_error("pth_root_x: nonzero X-exponent not divisible by p");
    Poly c((g[i].size() + p - 1) / p, 0);
    for (std::size_t j = 0; j < g[i].size(); ++j) {
      if (!g[i][j]) continue;
      if (j % p) throw std::domain_error("bi_squarefree: inseparable factor (coefficients not in F_q[t^p])");
      c[j / p] = F.pth_root(g[i][j]);
    }
    poly::trim(c);
    h[i / p] = std::move(c);
  }
  bipoly::trim(h);
  return h;
}

void yun(const GF& F, const RatField& R, const BiPoly& f, int scale, std::vector<std::pair<BiPoly, int>>& out) {
  if (bipoly::deg(f) <= 0) return;
  RX fr = to_rx(R, f);
  RX g = rx_gcd(R, fr, to_rx(R, bipoly::deriv_x(F, f)));
  BiPoly gb = from_rx(g), w;
  if (!bipoly::divides(F, gb, f, &w)) throw std::logic_error("bi_squarefree: gcd does not divide");
  int i = 1;
  while (bipoly::deg(w) > 0) {
    BiPoly y = from_rx(rx_gcd(R, to_rx(R, w), to_rx(R, gb)));
    BiPoly z, gq;
    bipoly::divides(F, y, w, &z);
    if (bipoly::deg(z) > 0) out.push_back({z, i * scale});
    ++i;
    w = y;
    bipoly::divides(F, y, gb, &gq);
    gb = gq;
  }
  if (bipoly::deg(gb) > 0) yun(F, R, pth_root_x(F, gb), scale * static_cast<int>(F.p()), out);
}

}  // namespace

std::vector<std::pair<BiPoly, int>> bi_squarefree(const GF& F, const BiPoly& P0) {
  BiPoly P = P0;
  bipoly::trim(P);
  if (P.empty() || P.back() != Poly{1}) throw std::invalid_argument("bi_squarefree: input must be monic in X");
  std::vector<std::pair<BiPoly, int>> out;
  if (bipoly::deg(P) == 0) return out;
  std::mt19937_64 rng(0x5f3759df);
  if (has_squarefree_specialization(F, P, rng)) {
    out.push_back({P, 1});
    return out;
  }
  RatField R(gf_of(F.size()));
  yun(F, R, P, 1, out);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return bipoly::less(a.first, b.first); });
  return out;
}

// ---------------------------------------------------------------- specialization points

namespace {

struct GoodPoint {
  const FieldCtx* ctx = nullptr;
  Elt c = 0;
  std::vector<FactorPow> local;  // factors of P(X, c) over F_{q^m}
};

// Squarefree specializations, smallest fields first; up to `want` of them.
std::vector<GoodPoint> good_points(const GF& F, const BiPoly& P, std::size_t want, std::mt19937_64& rng,
                                   bool factor_locally) {
  std::vector<GoodPoint> pts;
  for (std::uint32_t m = 1; m <= 24 && pts.size() < want; ++m) {
    const FieldCtx& ctx = tower(F.p(), F.degree(), m);
    const std::uint64_t Q = ctx.ext->size();
    const std::uint64_t tries = std::min<std::uint64_t>(Q, 4 * want + 8);
    for (std::uint64_t i = 0; i < tries && pts.size() < want; ++i) {
      Elt c = Q <= 4 * want + 8 ? static_cast<Elt>(i) : static_cast<Elt>(rng() % Q);
      Poly pc = bipoly::specialize(ctx, P, c);
      if (!is_squarefree(*ctx.ext, pc)) continue;
      GoodPoint g{&ctx, c, {}};
      if (factor_locally) g.local = univ_factor(*ctx.ext, pc, rng());
      pts.push_back(std::move(g));
    }
  }
  if (pts.empty()) throw std::runtime_error("no squarefree specialization found (input has repeated factors?)");
  return pts;
}

// P(X, s + c) as a list of X-polynomials indexed by the power of s.
std::vector<Poly> shift_to_series(const FieldCtx& ctx, const BiPoly& P, Elt c) {
  const GF& E = *ctx.ext;
  std::vector<Poly> cols;
  for (const auto& a : P) cols.push_back(poly::taylor_shift(E, poly::lift(ctx, a), c));
  std::size_t N = 0;
  for (const auto& a : cols) N = std::max(N, a.size());
  std::vector<Poly> ser(N);
  for (std::size_t i = 0; i < cols.size(); ++i)
    for (std::size_t j = 0; j < cols[i].size(); ++j)
      if (cols[i][j]) {
        if (ser[j].size() <= i) ser[j].resize(i + 1, 0);
        ser[j][i] = cols[i][j];
      }
  return ser;
}

// b(s) over F_{q^m} with s = t - c, back to F_q[t]; false if a coefficient leaves F_q.
bool series_to_poly(const FieldCtx& ctx, const Poly& b, Elt c, Poly& out) {
  const GF& E = *ctx.ext;
  Poly a = poly::taylor_shift(E, b, E.neg(c));
  out.assign(a.size(), 0);
  for (std::size_t j = 0; j < a.size(); ++j)
    if (!ctx.down(a[j], out[j])) return false;
  poly::trim(out);
  return true;
}

// [s^k] of the product of two series of X-polynomials
Poly series_coeff_product(const GF& E, const std::vector<Poly>& G, const std::vector<Poly>& H, std::size_t k) {
  Poly acc;
  for (std::size_t j = 0; j <= k; ++j) {
    if (j >= G.size() || k - j >= H.size()) continue;
    if (G[j].empty() || H[k - j].empty()) continue;
    acc = poly::add(E, acc, poly::mul(E, G[j], H[k - j]));
  }
  return acc;
}

// Lifts P ≡ G0·H0 (mod s) to precision N. G0, H0 monic and coprime.
void hensel2(const GF& E, const std::vector<Poly>& P, std::size_t N, const Poly& G0, const Poly& H0,
             std::vector<Poly>& G, std::vector<Poly>& H) {
  Poly a, b;
  Poly g = poly::xgcd(E, G0, H0, a, b);  // a·G0 + b·H0 = g
  if (poly::deg(g) != 0) throw std::logic_error("hensel2: local factors not coprime");
  Elt gi = E.inv(g[0]);
  b = poly::scale(E, b, gi);
  G.assign(1, G0);
  H.assign(1, H0);
  for (std::size_t k = 1; k < N; ++k) {
    Poly e = poly::sub(E, k < P.size() ? P[k] : Poly{}, series_coeff_product(E, G, H, k));
    if (e.empty()) {
      G.emplace_back();
      H.emplace_back();
      continue;
    }
    Poly dG = poly::mod(E, poly::mul(E, b, e), G0);
    Poly num = poly::sub(E, e, poly::mul(E, H0, dG)), dH, rem;
    poly::divmod(E, num, G0, dH, rem);
    if (!rem.empty()) throw std::logic_error("hensel2: inexact lifting step");
    G.push_back(std::move(dG));
    H.push_back(std::move(dH));
  }
}

void lift_tree(const GF& E, const std::vector<Poly>& P, std::size_t N, const std::vector<Poly>& locals, std::size_t lo,
               std::size_t hi, std::vector<std::vector<Poly>>& out) {
  if (hi - lo == 1) {
    out[lo] = P;
    out[lo].resize(N);
    return;
  }
  const std::size_t mid = (lo + hi) / 2;
  Poly G0{1}, H0{1};
  for (std::size_t i = lo; i < mid; ++i) G0 = poly::mul(E, G0, locals[i]);
  for (std::size_t i = mid; i < hi; ++i) H0 = poly::mul(E, H0, locals[i]);
  std::vector<Poly> G, H;
  hensel2(E, P, N, G0, H0, G, H);
  lift_tree(E, G, N, locals, lo, mid, out);
  lift_tree(E, H, N, locals, mid, hi, out);
}

std::vector<Poly> series_mul(const GF& E, const std::vector<Poly>& A, const std::vector<Poly>& B, std::size_t N) {
  std::vector<Poly> C(N);
  for (std::size_t k = 0; k < N; ++k) C[k] = series_coeff_product(E, A, B, k);
  return C;
}

// Converts a lifted monic candidate (series in s of X-polynomials) into F_q[t][X].
bool candidate_to_bipoly(const FieldCtx& ctx, const std::vector<Poly>& ser, Elt c, int dx, int D, BiPoly& out) {
  out.assign(static_cast<std::size_t>(dx) + 1, Poly{});
  for (int i = 0; i <= dx; ++i) {
    Poly col(ser.size(), 0);
    for (std::size_t j = 0; j < ser.size(); ++j) col[j] = poly::coeff(ser[j], static_cast<std::size_t>(i));
    poly::trim(col);
    if (!series_to_poly(ctx, col, c, out[static_cast<std::size_t>(i)])) return false;
    if (poly::deg(out[static_cast<std::size_t>(i)]) > D) return false;
  }
  return true;
}

// Factors a squarefree monic P (deg ≥ 1) into monic irreducibles over F_q(t).
std::vector<BiPoly> factor_squarefree(const GF& F, const BiPoly& P, std::mt19937_64& rng, GoodPoint* used) {
  const int n = bipoly::deg(P);
  if (n == 1) return {P};
  auto pts = good_points(F, P, 6, rng, true);
  // fewest local factors; degree sums realizable at every point prune the recombination
  std::size_t best = 0;
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (pts[i].local.size() < pts[best].local.size()) best = i;
  std::vector<char> feasible(static_cast<std::size_t>(n) + 1, 1);
  for (const auto& pt : pts) {
    std::vector<char> reach(static_cast<std::size_t>(n) + 1, 0);
    reach[0] = 1;
    for (const auto& fp : pt.local) {
      const int d = poly::deg(fp.f);
      for (int s = n; s >= d; --s)
        if (reach[static_cast<std::size_t>(s - d)]) reach[static_cast<std::size_t>(s)] = 1;
    }
    for (int s = 0; s <= n; ++s) feasible[static_cast<std::size_t>(s)] &= reach[static_cast<std::size_t>(s)];
  }
  const GoodPoint& gp = pts[best];
  if (used) *used = gp;
  const FieldCtx& ctx = *gp.ctx;
  const GF& E = *ctx.ext;
  if (gp.local.size() == 1) return {P};

  const int D = bipoly::tdeg(P);
  const std::size_t N = static_cast<std::size_t>(D) + 1;
  std::vector<Poly> locals;
  for (const auto& fp : gp.local) locals.push_back(fp.f);
  std::vector<std::vector<Poly>> lifted(locals.size());
  lift_tree(E, shift_to_series(ctx, P, gp.c), N, locals, 0, locals.size(), lifted);

  std::vector<BiPoly> found;
  std::vector<std::size_t> rem(locals.size());
  for (std::size_t i = 0; i < rem.size(); ++i) rem[i] = i;
  BiPoly cur = P;
  std::size_t size = 1;
  while (2 * size <= rem.size()) {
    bool hit = false;
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    for (;;) {
      int dx = 0;
      for (std::size_t i : idx) dx += poly::deg(locals[rem[i]]);
      bool ok = feasible[static_cast<std::size_t>(dx)] != 0;
      if (ok) {
        // sub-leading coefficient is additive over the subset
        Poly tr;
        Poly col;
        for (std::size_t i : idx) {
          const auto& L = lifted[rem[i]];
          const std::size_t dl = static_cast<std::size_t>(poly::deg(locals[rem[i]]));
          Poly c(N, 0);
          for (std::size_t j = 0; j < N; ++j) c[j] = poly::coeff(L[j], dl - 1);
          poly::trim(c);
          tr = poly::add(E, tr, c);
        }
        Poly trt;
        ok = series_to_poly(ctx, tr, gp.c, trt) && poly::deg(trt) <= D;
      }
      if (ok) {
        std::vector<Poly> prod = lifted[rem[idx[0]]];
        for (std::size_t i = 1; i < size; ++i) prod = series_mul(E, prod, lifted[rem[idx[i]]], N);
        BiPoly cand, quo;
        if (candidate_to_bipoly(ctx, prod, gp.c, dx, D, cand) && bipoly::divides(F, cand, cur, &quo)) {
          found.push_back(cand);
          cur = quo;
          std::vector<std::size_t> keep;
          for (std::size_t i = 0; i < rem.size(); ++i)
            if (std::find(idx.begin(), idx.end(), i) == idx.end()) keep.push_back(rem[i]);
          rem = keep;
          hit = true;
          break;
        }
      }
      // next combination
      std::size_t i = size;
      while (i > 0 && idx[i - 1] == rem.size() - size + (i - 1)) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!hit) ++size;
  }
  if (bipoly::deg(cur) >= 1) found.push_back(cur);
  return found;
}

// Coefficientwise t^p -> t. False if some coefficient is not in F_q[t^p].
bool t_pth_root(const GF& F, const BiPoly& h, BiPoly& out) {
  const std::uint32_t p = F.p();
  out.assign(h.size(), Poly{});
  for (std::size_t i = 0; i < h.size(); ++i) {
    Poly c((h[i].size() + p - 1) / p, 0);
    for (std::size_t j = 0; j < h[i].size(); ++j) {
      if (!h[i][j]) continue;
      if (j % p) return false;
      c[j / p] = F.pth_root(h[i][j]);
    }
    poly::trim(c);
    out[i] = std::move(c);
  }
  return true;
}

using FactorList = std::vector<std::pair<BiPoly, int>>;

void merge_into(FactorList& acc, const FactorList& more) {
  for (const auto& [f, m] : more) {
    auto it = std::find_if(acc.begin(), acc.end(), [&](const auto& e) { return e.first == f; });
    if (it == acc.end()) acc.push_back({f, m});
    else it->second += m;
  }
}

// Complete factorization over F_q(t), inseparable factors included.
FactorList full_factor(const GF& F, const BiPoly& P, std::mt19937_64& rng, GoodPoint* used) {
  FactorList out;
  if (bipoly::deg(P) <= 0) return out;
  const BiPoly dP = bipoly::deriv_x(F, P);
  const std::size_t p = F.p();
  if (dP.empty()) {
    BiPoly H((P.size() - 1) / p + 1);
    for (std::size_t i = 0; i < H.size(); ++i) H[i] = P[p * i];
    for (auto& [h, m] : full_factor(F, H, rng, used)) {
      BiPoly r;
      if (t_pth_root(F, h, r)) {
        merge_into(out, {{r, m * static_cast<int>(p)}});
      } else {
        // h irreducible and not a p-th power, so h(X^p) stays irreducible
        BiPoly e((h.size() - 1) * p + 1);
        for (std::size_t i = 0; i < h.size(); ++i) e[p * i] = h[i];
        merge_into(out, {{e, m}});
      }
    }
    return out;
  }
  if (bipoly::deg(P) >= 2 && !has_squarefree_specialization(F, P, rng)) {
    RatField R(gf_of(F.size()));
    BiPoly G = from_rx(rx_gcd(R, to_rx(R, P), to_rx(R, dP))), Q;
    if (bipoly::deg(G) > 0) {
      if (!bipoly::divides(F, G, P, &Q)) throw std::logic_error("full_factor: gcd does not divide");
      out = full_factor(F, G, rng, used);
      merge_into(out, full_factor(F, Q, rng, used));
      return out;
    }
  }
  for (auto& f : factor_squarefree(F, P, rng, used)) merge_into(out, {{f, 1}});
  return out;
}

}  // namespace

FactoredCharPoly bivariate_factor(const GF& F, const BiPoly& P0, const FactorOptions& opt) {
  FactoredCharPoly out;
  out.input = P0;
  bipoly::trim(out.input);
  std::mt19937_64 rng(opt.seed);
  if (out.input.empty() || out.input.back() != Poly{1})
    throw std::invalid_argument("bivariate_factor: input must be monic in X");
  GoodPoint gp;
  for (auto& [f, mult] : full_factor(F, out.input, rng, &gp)) out.factors.push_back({f, mult, {}});
  if (gp.ctx) {
    out.point_degree = gp.ctx->m;
    out.point = gp.c;
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const BiFactor& a, const BiFactor& b) { return bipoly::less(a.f, b.f); });
  if (opt.galois_trials > 0) {
    parallel_for(out.factors.size(), [&](std::size_t i) {
      auto& bf = out.factors[i];
      if (bipoly::deg(bf.f) < 2) return;
      if (bipoly::deriv_x(F, bf.f).empty()) {
        bf.galois.degree = bipoly::deg(bf.f);
        bf.galois.verdict = "inseparable";
        return;
      }
      bf.galois = galois_sample(F, bf.f, opt.galois_trials, opt.seed + i);
    });
  }
  return out;
}

// ---------------------------------------------------------------- linear roots

namespace {

Poly series_inverse(const GF& E, const Poly& a, std::size_t n) {
  Poly b{E.inv(a[0])};
  std::size_t prec = 1;
  while (prec < n) {
    prec = std::min(2 * prec, n);
    Poly ab = poly::mul_trunc(E, a, b, prec);
    Poly two_minus = poly::neg(E, ab);
    if (two_minus.empty()) two_minus.push_back(0);
    two_minus[0] = E.add(two_minus[0], 2 % E.p());
    poly::trim(two_minus);
    b = poly::mul_trunc(E, b, two_minus, prec);
  }
  return b;
}

}  // namespace

std::vector<Poly> linear_roots(const GF& F, const BiPoly& P0, std::uint64_t seed) {
  BiPoly P = P0;
  bipoly::trim(P);
  if (P.empty() || P.back() != Poly{1}) throw std::invalid_argument("linear_roots: input must be monic in X");
  const int n = bipoly::deg(P);
  std::vector<Poly> out;
  if (n < 1) return out;
  std::mt19937_64 rng(seed);
  // only separable linear factors matter: X - r is never inseparable
  std::vector<BiPoly> parts;
  for (auto& [f, m] : full_factor(F, P, rng, nullptr))
    if (bipoly::deg(f) == 1) parts.push_back(f);
  for (const BiPoly& Q : parts) {
    const int nq = bipoly::deg(Q);
    // root degree bound from the Newton polygon at infinity
    int Dr = 0;
    for (int i = 0; i < nq; ++i) {
      const int d = poly::deg(Q[static_cast<std::size_t>(i)]);
      if (d < 0) continue;
      Dr = std::max(Dr, (d + (nq - i) - 1) / (nq - i));
    }
    const std::size_t N = static_cast<std::size_t>(Dr) + 1;
    auto pts = good_points(F, Q, 1, rng, false);
    const FieldCtx& ctx = *pts[0].ctx;
    const GF& E = *ctx.ext;
    const Elt c = pts[0].c;
    // Q(X, s + c) with s-series coefficients per X-power
    std::vector<Poly> coef;
    for (const auto& a : Q) coef.push_back(poly::taylor_shift(E, poly::lift(ctx, a), c));
    std::vector<Poly> dcoef;
    for (std::size_t i = 1; i < coef.size(); ++i) dcoef.push_back(poly::scale(E, coef[i], static_cast<Elt>(i % E.p())));
    auto eval = [&](const std::vector<Poly>& cs, const Poly& r, std::size_t prec) {
      Poly acc;
      for (std::size_t i = cs.size(); i-- > 0;) {
        acc = poly::mul_trunc(E, acc, r, prec);
        Poly ci = cs[i];
        if (ci.size() > prec) ci.resize(prec);
        poly::trim(ci);
        acc = poly::add(E, acc, ci);
      }
      return acc;
    };
    for (Elt r0 : roots(E, bipoly::specialize(ctx, Q, c), rng())) {
      Poly r = r0 ? Poly{r0} : Poly{};
      std::size_t prec = 1;
      while (prec < N) {
        prec = std::min(2 * prec, N);
        Poly num = eval(coef, r, prec);
        Poly den = eval(dcoef, r, prec);
        r = poly::sub(E, r, poly::mul_trunc(E, num, series_inverse(E, den, prec), prec));
      }
      Poly rt;
      if (!series_to_poly(ctx, r, c, rt) || poly::deg(rt) > Dr) continue;
      if (bipoly::divides(F, bipoly::linear(F, rt), Q)) out.push_back(rt);
    }
  }
  std::sort(out.begin(), out.end(),
            [&](const Poly& a, const Poly& b) { return bipoly::less(bipoly::linear(F, a), bipoly::linear(F, b)); });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace dmf
