#include "dmf/invariants.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <stdexcept>

namespace dmf {

// ---------------------------------------------------------------- groups

namespace {

std::vector<Elt> fp_basis(const GF& F) {
  // 1, x, ..., x^{e-1} in the polynomial basis: packed value p^i
  std::vector<Elt> b;
  Elt v = 1;
  for (std::uint32_t i = 0; i < F.degree(); ++i, v *= F.p()) b.push_back(v);
  return b;
}

bool is_diag(const Mat2F& g) { return g[1] == 0 && g[2] == 0; }

}  // namespace

FiniteGroupSpec FiniteGroupSpec::named(GroupLabel label, std::uint32_t q) {
  if (label == GroupLabel::Custom) throw std::invalid_argument("FiniteGroupSpec::named: custom has no generators");
  GFPtr F = gf_of(q);
  FiniteGroupSpec H;
  H.label = label;
  H.q = q;
  const Elt g = F->generator();
  const Elt gi = F->inv(g);
  const auto basis = fp_basis(*F);
  for (Elt b : basis) H.gens.push_back({1, b, 0, 1});
  if (label == GroupLabel::SL2 || label == GroupLabel::GL2) {
    for (Elt b : basis) H.gens.push_back({1, 0, b, 1});
    if (q > 3) H.gens.push_back({g, 0, 0, gi});
  } else {
    if (q > 2) H.gens.push_back({g, 0, 0, gi});
  }
  if ((label == GroupLabel::B2 || label == GroupLabel::GL2) && q > 2) H.gens.push_back({g, 0, 0, 1});
  return H;
}

FiniteGroupSpec FiniteGroupSpec::custom(std::uint32_t q, std::vector<Mat2F> gens) {
  FiniteGroupSpec H;
  H.label = GroupLabel::Custom;
  H.q = q;
  H.gens = std::move(gens);
  return H;
}

std::uint64_t FiniteGroupSpec::expected_order() const {
  const std::uint64_t Q = q;
  switch (label) {
    case GroupLabel::SL2: return Q * (Q - 1) * (Q + 1);
    case GroupLabel::GL2: return Q * (Q - 1) * (Q - 1) * (Q + 1);
    case GroupLabel::SB2: return Q * (Q - 1);
    case GroupLabel::B2: return Q * (Q - 1) * (Q - 1);
    case GroupLabel::Custom: return 0;
  }
  return 0;
}

std::string FiniteGroupSpec::name() const {
  switch (label) {
    case GroupLabel::SL2: return "SL2(F_" + std::to_string(q) + ")";
    case GroupLabel::GL2: return "GL2(F_" + std::to_string(q) + ")";
    case GroupLabel::SB2: return "SB2(F_" + std::to_string(q) + ")";
    case GroupLabel::B2: return "B2(F_" + std::to_string(q) + ")";
    case GroupLabel::Custom: return "custom";
  }
  return "?";
}

void validate_group(const FiniteGroupSpec& H) {
  GFPtr F = gf_of(H.q);
  for (const auto& g : H.gens) {
    for (Elt x : g)
      if (x >= F->size()) throw std::invalid_argument("validate_group: entry outside F_q");
    const Elt det = mat2_det(*F, g);
    if (!det) throw std::invalid_argument("validate_group: singular generator");
    const bool sl = det == 1, borel = g[2] == 0;
    bool ok = true;
    switch (H.label) {
      case GroupLabel::SL2: ok = sl; break;
      case GroupLabel::SB2: ok = sl && borel; break;
      case GroupLabel::B2: ok = borel; break;
      default: break;
    }
    if (!ok) throw std::invalid_argument("validate_group: generator outside " + H.name());
  }
}

std::uint64_t group_order_by_closure(const FiniteGroupSpec& H, std::uint64_t limit) {
  GFPtr F = gf_of(H.q);
  const std::uint64_t Q = F->size();
  auto key = [&](const Mat2F& g) { return ((g[0] * Q + g[1]) * Q + g[2]) * Q + g[3]; };
  std::set<std::uint64_t> seen;
  std::vector<Mat2F> frontier{{1, 0, 0, 1}};
  seen.insert(key(frontier[0]));
  while (!frontier.empty()) {
    std::vector<Mat2F> next;
    for (const auto& x : frontier)
      for (const auto& g : H.gens) {
        Mat2F y = mat2_mul(*F, x, g);
        if (seen.insert(key(y)).second) {
          if (seen.size() > limit) return 0;
          next.push_back(y);
        }
      }
    frontier = std::move(next);
  }
  return seen.size();
}

// ---------------------------------------------------------------- fixed spaces

namespace {

std::vector<std::vector<Elt>> fixed_space_sub(const RepSpace& V, const FiniteGroupSpec& H, const std::vector<int>& xs0) {
  validate_group(H);
  GFPtr F = gf_of(H.q);
  std::vector<int> xs = xs0;
  if (xs.empty())
    for (int i = 0; i <= V.k; ++i) xs.push_back(i);
  const std::size_t n = xs.size();

  // diagonal generators have order prime to p: their common fixed space is spanned by monomials
  std::vector<std::size_t> keep;
  {
    std::vector<char> ok(n, 1);
    for (const auto& g : H.gens) {
      if (!is_diag(g)) continue;
      auto D = act_restricted(*F, V, g, xs);
      for (std::size_t i = 0; i < n; ++i)
        if (D(i, i) != 1) ok[i] = 0;
    }
    for (std::size_t i = 0; i < n; ++i)
      if (ok[i]) keep.push_back(i);
  }
  std::vector<Mat2F> others;
  for (const auto& g : H.gens)
    if (!is_diag(g)) others.push_back(g);

  std::vector<std::vector<Elt>> out;
  if (keep.empty()) return out;
  FqOps o{F.get()};
  if (others.empty()) {
    for (std::size_t i : keep) {
      std::vector<Elt> v(n, 0);
      v[i] = 1;
      out.push_back(std::move(v));
    }
    return out;
  }
  Matrix<Elt> S(others.size() * n, keep.size(), 0);
  for (std::size_t gi = 0; gi < others.size(); ++gi) {
    auto A = act_restricted(*F, V, others[gi], xs);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < keep.size(); ++c) {
        Elt x = A(r, keep[c]);
        if (r == keep[c]) x = F->sub(x, 1);
        S(gi * n + r, c) = x;
      }
  }
  for (auto& kv : kernel_basis(o, S)) {
    std::vector<Elt> v(n, 0);
    for (std::size_t c = 0; c < keep.size(); ++c) v[keep[c]] = kv[c];
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

std::vector<std::vector<Elt>> fixed_space(const RepSpace& V, const FiniteGroupSpec& H, const std::vector<int>& xs0) {
  if (!xs0.empty()) return fixed_space_sub(V, H, xs0);
  // native coordinates of V run over descending X-exponents
  auto out = fixed_space_sub(V, H, {});
  for (auto& v : out) std::reverse(v.begin(), v.end());
  return out;
}

int hom_st_dim(const RepSpace& V, const std::vector<int>& xs0) {
  GFPtr F = gf_of(V.q);
  std::vector<int> xs = xs0;
  if (xs.empty())
    for (int i = 0; i <= V.k; ++i) xs.push_back(i);
  auto sb = fixed_space_sub(V, FiniteGroupSpec::named(GroupLabel::SB2, V.q), xs);
  if (sb.empty()) return 0;
  // V^{SL2} = {v in V^{SB2} : l_β v = v}
  auto SL = FiniteGroupSpec::named(GroupLabel::SL2, V.q);
  std::vector<Mat2F> lowers;
  for (const auto& g : SL.gens)
    if (g[2] != 0) lowers.push_back(g);
  const std::size_t n = xs.size();
  FqOps o{F.get()};
  Matrix<Elt> S(lowers.size() * n, sb.size(), 0);
  for (std::size_t gi = 0; gi < lowers.size(); ++gi) {
    auto A = act_restricted(*F, V, lowers[gi], xs);
    for (std::size_t c = 0; c < sb.size(); ++c) {
      auto w = mat_vec(o, A, sb[c]);
      for (std::size_t r = 0; r < n; ++r) S(gi * n + r, c) = F->sub(w[r], sb[c][r]);
    }
  }
  const std::size_t sl = sb.size() - rank(o, S);
  return static_cast<int>(sb.size() - sl);
}

int hom_st_dim_lk(std::uint32_t q, int k) {
  return hom_st_dim(RepSpace{q, k, 0, false, 0}, lk_basis(q, k).xexps);
}

// ---------------------------------------------------------------- closed formulas

std::int64_t dickson_series_dim(std::uint32_t q, int k) {
  const std::int64_t a = q + 1, b = q - 1;
  std::int64_t count = 0;
  for (std::int64_t r = k - a; r >= 0; r -= a)
    if (r % b == 0) ++count;
  return count;
}

std::int64_t dim_lk_closed(std::uint32_t q, std::int64_t k) {
  if (q != 2 && q != 3 && q != 5) throw std::invalid_argument("dim_lk_closed: q must be 2, 3 or 5");
  if (k < 0) throw std::invalid_argument("dim_lk_closed: k < 0");
  std::vector<std::int64_t> n(q, 0);
  for (int d : digits_base(static_cast<std::uint64_t>(k), q)) ++n[static_cast<std::size_t>(d)];
  const std::int64_t dim = static_cast<std::int64_t>(lk_dim(q, static_cast<std::uint64_t>(k)));
  auto sgn = [](std::int64_t e) -> std::int64_t { return (e % 2) ? -1 : 1; };
  auto zpow = [](std::int64_t e) -> std::int64_t { return e == 0 ? 1 : 0; };
  std::int64_t num, den;
  if (q == 2) {
    num = dim - sgn(n[1]);
    den = 3;
  } else if (q == 3) {
    num = (1 + sgn(n[1])) * dim - 2 * zpow(n[1]) * sgn(n[2]);
    den = 8;
  } else {
    num = 6 * zpow(n[1] + n[3]) * sgn(n[2]) + (dim - 4 * zpow(n[2]) * sgn(n[3] + n[4])) * (1 + sgn(n[1] + n[3]));
    den = 24;
  }
  if (num % den) throw std::logic_error("dim_lk_closed: non-integral value");
  return num / den;
}

// ---------------------------------------------------------------- K_0

namespace {

std::int64_t ck_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("K0Ring: integer overflow");
  return r;
}
std::int64_t ck_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("K0Ring: integer overflow");
  return r;
}
void itrim(K0Ring::IPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}
std::int64_t binom_exact(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  __int128 r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > static_cast<__int128>(INT64_MAX)) throw std::overflow_error("K0Ring: binomial overflow");
  }
  return static_cast<std::int64_t>(r);
}

K0Ring::IPoly chebyshev_like(std::uint32_t n, bool f_type) {
  // f_type: coefficient (-1)^j n/(n-j) C(n-j, j); otherwise (-1)^j C(n-j, j)
  K0Ring::IPoly r(n + 1, 0);
  for (std::uint32_t j = 0; 2 * j <= n; ++j) {
    std::int64_t c = binom_exact(n - j, j);
    if (f_type && j > 0) {
      __int128 t = static_cast<__int128>(c) * n;
      if (t % (n - j)) throw std::logic_error("K0Ring: non-integral coefficient");
      c = static_cast<std::int64_t>(t / (n - j));
    }
    r[n - 2 * j] = (j % 2) ? -c : c;
  }
  itrim(r);
  return r;
}

}  // namespace

K0Ring::IPoly K0Ring::f_poly(std::uint32_t p) { return chebyshev_like(p, true); }
K0Ring::IPoly K0Ring::f_closed(std::uint32_t q) { return chebyshev_like(q, true); }
K0Ring::IPoly K0Ring::g_poly(int k) {
  if (k < 0) throw std::invalid_argument("g_poly: k < 0");
  return chebyshev_like(static_cast<std::uint32_t>(k), false);
}

K0Ring::IPoly K0Ring::add(const IPoly& a, const IPoly& b) {
  IPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = ck_add(r[i], b[i]);
  itrim(r);
  return r;
}

K0Ring::IPoly K0Ring::mul(const IPoly& a, const IPoly& b) {
  if (a.empty() || b.empty()) return {};
  IPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = ck_add(r[i + j], ck_mul(a[i], b[j]));
  }
  itrim(r);
  return r;
}

K0Ring::IPoly K0Ring::compose(const IPoly& a, const IPoly& b) {
  IPoly r;
  for (std::size_t i = a.size(); i-- > 0;) r = add(mul(r, b), IPoly{a[i]});
  return r;
}

K0Ring::K0Ring(std::uint32_t q) : q_(q), p_(char_of(q)), e_(0) {
  for (std::uint32_t x = q; x > 1; x /= p_) ++e_;
  mod_ = add(f_iter(e_), IPoly{0, -1});
  for (std::uint32_t d = 0; d < q_; ++d) {
    IPoly c{1};
    std::uint32_t x = d;
    for (std::uint32_t r = 0; r < e_; ++r, x /= p_)
      c = reduce(mul(c, compose(g_poly(static_cast<int>(x % p_)), f_iter(r))));
    ld_.push_back(c);
  }
}

K0Ring::IPoly K0Ring::f_iter(std::uint32_t r) const {
  IPoly x{0, 1};
  const IPoly f = f_poly(p_);
  for (std::uint32_t i = 0; i < r; ++i) x = compose(f, x);
  return x;
}

K0Ring::IPoly K0Ring::reduce(IPoly a) const {
  const std::size_t n = mod_.size() - 1;  // monic of degree q
  for (std::size_t i = a.size(); i-- > n;) {
    const std::int64_t c = a[i];
    if (!c) continue;
    for (std::size_t j = 0; j <= n; ++j) a[i - n + j] = ck_add(a[i - n + j], -ck_mul(c, mod_[j]));
  }
  itrim(a);
  return a;
}

K0Ring::IPoly K0Ring::lk_class(std::int64_t k) const {
  if (k < 0) throw std::invalid_argument("lk_class: k < 0");
  IPoly c{1};
  for (int d : digits_base(static_cast<std::uint64_t>(k), q_)) c = mul_mod(c, ld_[static_cast<std::size_t>(d)]);
  return c;
}

std::vector<std::int64_t> K0Ring::in_delta_basis(const IPoly& cls) const {
  IPoly r = reduce(cls);
  std::vector<std::int64_t> lam(q_, 0);
  for (std::size_t d = q_; d-- > 0;) {
    const std::int64_t c = d < r.size() ? r[d] : 0;
    lam[d] = c;
    if (c) r = add(r, mul(IPoly{-c}, g_poly(static_cast<int>(d))));
  }
  if (!r.empty()) throw std::logic_error("K0Ring: triangular solve left a remainder");
  return lam;
}

std::int64_t dim_lk_k0(std::uint32_t q, std::int64_t k) {
  static std::mutex mu;
  static std::map<std::uint32_t, std::unique_ptr<K0Ring>> rings;
  const K0Ring* R;
  {
    std::lock_guard<std::mutex> lk(mu);
    auto& slot = rings[q];
    if (!slot) slot = std::make_unique<K0Ring>(q);
    R = slot.get();
  }
  return R->in_delta_basis(R->lk_class(k))[q - 1];
}

}  // namespace dmf
