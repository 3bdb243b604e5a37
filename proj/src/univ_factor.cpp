#include "dmf/univ_factor.hpp"

#include <algorithm>
#include <stdexcept>

namespace dmf {

namespace {

Poly pth_root_poly(const GF& F, const Poly& f) {
  const std::uint32_t p = F.p();
  Poly r((f.size() + p - 1) / p, 0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!f[i]) continue;
    if (i % p) throw std::logic_error("pth_root_poly: not a p-th power");
    r[i / p] = F.pth_root(f[i]);
  }
  poly::trim(r);
  return r;
}

void sfd_rec(const GF& F, const Poly& f, int scale, std::vector<FactorPow>& out) {
  if (poly::deg(f) <= 0) return;
  Poly df = poly::deriv(F, f);
  if (df.empty()) {
    sfd_rec(F, pth_root_poly(F, f), scale * static_cast<int>(F.p()), out);
    return;
  }
  Poly c = poly::gcd(F, f, df);
  Poly w = poly::div_exact(F, f, c);
  int i = 1;
  while (poly::deg(w) > 0) {
    Poly y = poly::gcd(F, w, c);
    Poly z = poly::div_exact(F, w, y);
    if (poly::deg(z) > 0) out.push_back({z, i * scale});
    ++i;
    w = y;
    c = poly::div_exact(F, c, y);
  }
  if (poly::deg(c) > 0) sfd_rec(F, pth_root_poly(F, c), scale * static_cast<int>(F.p()), out);
}

bool poly_less(const Poly& a, const Poly& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

}  // namespace

Poly frobenius_power(const GF& F, const Poly& a, int k, const Poly& f) {
  Poly r = poly::mod(F, a, f);
  for (int i = 0; i < k; ++i) r = poly::powmod(F, r, F.size(), f);
  return r;
}

std::vector<FactorPow> squarefree_decomposition(const GF& F, const Poly& f0) {
  if (f0.empty()) throw std::invalid_argument("squarefree_decomposition: zero polynomial");
  Poly f = poly::monic(F, f0);
  std::vector<FactorPow> raw;
  sfd_rec(F, f, 1, raw);
  // merge equal multiplicities coming from different recursion levels
  std::vector<FactorPow> out;
  for (auto& fp : raw) {
    auto it = std::find_if(out.begin(), out.end(), [&](const FactorPow& o) { return o.mult == fp.mult; });
    if (it == out.end())
      out.push_back(fp);
    else
      it->f = poly::mul(F, it->f, fp.f);
  }
  std::sort(out.begin(), out.end(), [](const FactorPow& a, const FactorPow& b) { return a.mult < b.mult; });
  return out;
}

std::vector<std::pair<Poly, int>> distinct_degree(const GF& F, const Poly& f0) {
  std::vector<std::pair<Poly, int>> out;
  Poly f = poly::monic(F, f0);
  Poly h = poly::mod(F, poly::x(), f);
  int d = 0;
  while (2 * (d + 1) <= poly::deg(f)) {
    ++d;
    h = poly::powmod(F, h, F.size(), f);
    Poly g = poly::gcd(F, poly::sub(F, h, poly::x()), f);
    if (poly::deg(g) > 0) {
      out.emplace_back(g, d);
      f = poly::div_exact(F, f, g);
      h = poly::mod(F, h, f);
    }
  }
  if (poly::deg(f) > 0) out.emplace_back(f, poly::deg(f));
  return out;
}

std::vector<Poly> equal_degree(const GF& F, const Poly& f0, int d, std::mt19937_64& rng) {
  Poly f = poly::monic(F, f0);
  const int n = poly::deg(f);
  if (n == d) return {f};
  if (n % d) throw std::logic_error("equal_degree: degree not a multiple of d");
  const std::uint64_t Q = F.size();
  for (;;) {
    Poly a = poly::random(F, static_cast<std::size_t>(n - 1), rng);
    if (poly::deg(a) < 1) continue;
    Poly b;
    if (F.p() == 2) {
      // absolute trace of a over F_2 in F[x]/(f): sum of a^{2^i}, i < deg_F2(Q^d)
      const int steps = static_cast<int>(F.degree()) * d;
      Poly tr = poly::mod(F, a, f), cur = tr;
      for (int i = 1; i < steps; ++i) {
        cur = poly::mulmod(F, cur, cur, f);
        tr = poly::add(F, tr, cur);
      }
      b = tr;
    } else {
      // a^{(Q^d-1)/2} = (a^{1+Q+...+Q^{d-1}})^{(Q-1)/2}
      Poly norm = poly::mod(F, a, f), cur = norm;
      for (int i = 1; i < d; ++i) {
        cur = poly::powmod(F, cur, Q, f);
        norm = poly::mulmod(F, norm, cur, f);
      }
      b = poly::sub(F, poly::powmod(F, norm, (Q - 1) / 2, f), Poly{1});
    }
    Poly g = poly::gcd(F, b, f);
    if (poly::deg(g) > 0 && poly::deg(g) < n) {
      auto l = equal_degree(F, g, d, rng);
      auto r = equal_degree(F, poly::div_exact(F, f, g), d, rng);
      l.insert(l.end(), r.begin(), r.end());
      return l;
    }
  }
}

std::vector<FactorPow> univ_factor(const GF& F, const Poly& f, std::uint64_t seed) {
  if (f.empty()) throw std::invalid_argument("univ_factor: zero polynomial");
  std::mt19937_64 rng(seed);
  std::vector<FactorPow> out;
  for (const auto& sq : squarefree_decomposition(F, f)) {
    for (const auto& [g, d] : distinct_degree(F, sq.f))
      for (auto& irr : equal_degree(F, g, d, rng)) out.push_back({irr, sq.mult});
  }
  std::sort(out.begin(), out.end(), [](const FactorPow& a, const FactorPow& b) { return poly_less(a.f, b.f); });
  return out;
}

std::vector<int> degree_pattern(const GF& F, const Poly& f) {
  std::vector<int> out;
  for (const auto& [g, d] : distinct_degree(F, f))
    for (int i = 0; i < poly::deg(g) / d; ++i) out.push_back(d);
  std::sort(out.begin(), out.end());
  return out;
}

bool is_squarefree(const GF& F, const Poly& f) {
  if (poly::deg(f) <= 0) return true;
  Poly df = poly::deriv(F, f);
  if (df.empty()) return false;
  return poly::deg(poly::gcd(F, f, df)) == 0;
}

bool is_irreducible(const GF& F, const Poly& f) {
  if (poly::deg(f) <= 0) return false;
  if (!is_squarefree(F, f)) return false;
  auto dd = distinct_degree(F, f);
  return dd.size() == 1 && dd[0].second == poly::deg(f);
}

std::vector<Elt> roots(const GF& F, const Poly& f, std::uint64_t seed) {
  if (f.empty()) throw std::invalid_argument("roots: zero polynomial");
  if (poly::deg(f) <= 0) return {};
  Poly fm = poly::monic(F, f);
  Poly h = poly::powmod(F, poly::x(), F.size(), fm);
  Poly g = poly::gcd(F, poly::sub(F, h, poly::x()), fm);
  std::vector<Elt> out;
  if (poly::deg(g) <= 0) return out;
  std::mt19937_64 rng(seed);
  for (auto& lin : equal_degree(F, g, 1, rng)) out.push_back(F.neg(lin[0]));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace dmf
