#include "dmf/maeda.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "dmf/hecke.hpp"

namespace dmf {

namespace {

std::int64_t pow3(int n) {
  std::int64_t r = 1;
  for (int i = 0; i < n; ++i) r *= 3;
  return r;
}

int mod3(int x) { return ((x % 3) + 3) % 3; }

}  // namespace

SignSet sign_sets(int n) {
  if (n < 2) throw std::invalid_argument("sign_sets: n must be at least 2");
  if (n > 30) throw std::invalid_argument("sign_sets: n > 30 is too large to enumerate");
  SignSet S;
  S.n = n;
  for (int i = 0; i <= n; ++i)
    if (mod3(i) == mod3(1 - n)) S.minus_counts.push_back(i);
  // bit j of mask set ⇔ c_j = -1; ordering by the tuple read from c_0
  std::vector<std::uint32_t> masks;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask)
    if (mod3(__builtin_popcount(mask)) == mod3(1 - n)) masks.push_back(mask);
  auto key = [n](std::uint32_t m) {
    std::uint32_t r = 0;
    for (int j = 0; j < n; ++j) r = (r << 1) | (((m >> j) & 1u) ^ 1u);
    return r;
  };
  std::sort(masks.begin(), masks.end(), [&](std::uint32_t a, std::uint32_t b) { return key(a) < key(b); });
  for (std::uint32_t m : masks) {
    std::vector<int> t(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) t[static_cast<std::size_t>(j)] = ((m >> j) & 1u) ? -1 : 1;
    S.tuples.push_back(std::move(t));
  }
  return S;
}

std::int64_t s_n_formula(int n) { return ((std::int64_t{1} << n) - (n % 2 ? -1 : 1)) / 3; }

std::int64_t s_n_binomial_sum(int n) {
  std::int64_t sum = 0, c = 1;  // c = C(n, i)
  for (int i = 0; i <= n; ++i) {
    if (mod3(i) == mod3(1 - n)) sum += c;
    c = c * (n - i) / (i + 1);
  }
  return sum;
}

SpecialPrediction special_eigenvalues(int n) {
  if (n > 12) throw std::invalid_argument("special_eigenvalues: n > 12 not supported");
  SpecialPrediction P;
  P.n = n;
  P.k = static_cast<int>(1 + pow3(n));
  P.l = n % 2;
  P.signs = sign_sets(n).tuples;
  const std::size_t half = static_cast<std::size_t>(P.k / 2);
  for (const auto& c : P.signs) {
    Poly e(half, 0);
    for (int i = 0; i < n; ++i) e[half - static_cast<std::size_t>(pow3(i))] = c[static_cast<std::size_t>(i)] > 0 ? 1 : 2;
    poly::trim(e);
    P.eigenvalues.push_back(std::move(e));
  }
  return P;
}

namespace {

struct TypeData {
  std::size_t dim = 0;
  std::vector<Poly> linear;  // roots, X - t excluded
  bool had_single_cusp = false;
  std::vector<ResidualFactor> residual;
  std::string problems;
};

TypeData analyse(const GF& F, int k, int l, const MaedaOptions& opt) {
  TypeData T;
  CochainSpace S = cochain_space(3, k, l);
  T.dim = S.dim();
  if (T.dim == 0) return T;
  HeckeMatrix H = hecke_matrix(S);
  BiPoly cp = hecke_charpoly(F, H);
  FactorOptions fo;
  fo.seed = opt.seed;
  fo.galois_trials = opt.galois_trials;
  FactoredCharPoly fc = bivariate_factor(F, cp, fo);
  const Poly t{0, 1};
  std::vector<Poly> lin;
  for (const auto& bf : fc.factors) {
    if (bipoly::deg(bf.f) == 1) {
      Poly r = poly::neg(F, bf.f[0]);
      if (r == t && !T.had_single_cusp && bf.mult == 1) {
        T.had_single_cusp = true;
        continue;
      }
      if (bf.mult != 1) T.problems += "linear factor with multiplicity " + std::to_string(bf.mult) + "; ";
      lin.push_back(r);
    } else {
      T.residual.push_back({bipoly::deg(bf.f), bf.mult, bf.f, bf.galois});
    }
  }
  // the root finder must see the same linear factors
  auto roots = linear_roots(F, cp, opt.seed);
  std::set<Poly> a(lin.begin(), lin.end()), b(roots.begin(), roots.end());
  if (T.had_single_cusp) a.insert(t);
  if (a != b) T.problems += "linear_roots disagrees with the factorization; ";
  T.linear = lin;
  return T;
}

std::string poly_list(const GF& F, const std::vector<Poly>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + poly::to_string(F, v[i]);
  return s + "]";
}

}  // namespace

MaedaReport verify_weight(int n, const MaedaOptions& opt) {
  GFPtr F = gf_of(3);
  SpecialPrediction P = special_eigenvalues(n);
  MaedaReport R;
  R.n = n;
  R.k = P.k;
  R.l = P.l;
  R.predicted = P.eigenvalues;
  TypeData main = analyse(*F, P.k, P.l, opt);
  TypeData other = analyse(*F, P.k, 1 - P.l, opt);
  R.dim = main.dim;
  R.dim_opposite = other.dim;
  R.found_linear = main.linear;
  R.stripped_single_cusp = main.had_single_cusp;
  R.residual = main.residual;
  R.opposite_linear = other.linear;
  R.opposite_residual = other.residual;

  std::multiset<Poly> pred(P.eigenvalues.begin(), P.eigenvalues.end()), got(main.linear.begin(), main.linear.end());
  R.linear_match = pred == got && main.problems.empty();
  R.opposite_clean = other.linear.empty() && other.problems.empty();
  R.galois_all_certified = true;
  for (const auto* rs : {&R.residual, &R.opposite_residual})
    for (const auto& f : *rs) R.galois_all_certified = R.galois_all_certified && f.galois.certified;

  if (!R.linear_match) {
    std::vector<Poly> missing, extra;
    for (const auto& e : P.eigenvalues)
      if (!got.count(e)) missing.push_back(e);
    for (const auto& e : main.linear)
      if (!pred.count(e)) extra.push_back(e);
    R.diff += "type " + std::to_string(P.l) + ": missing " + poly_list(*F, missing) + ", unexpected " +
              poly_list(*F, extra) + ". " + main.problems;
  }
  if (!R.opposite_clean)
    R.diff += "type " + std::to_string(1 - P.l) + ": unexpected linear factors " + poly_list(*F, other.linear) + ". " +
              other.problems;
  return R;
}

}  // namespace dmf
