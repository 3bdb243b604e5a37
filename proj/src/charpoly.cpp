#include "dmf/charpoly.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "dmf/parallel.hpp"

namespace dmf {

const FieldCtx& tower(std::uint32_t p, std::uint32_t e, std::uint32_t m) {
  static std::mutex mu;
  static std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>, std::unique_ptr<FieldCtx>> cache;
  std::lock_guard<std::mutex> lk(mu);
  auto key = std::make_tuple(p, e, m);
  auto it = cache.find(key);
  if (it != cache.end()) return *it->second;
  auto ctx = std::make_unique<FieldCtx>(field_make(p, e, m));
  const FieldCtx& ref = *ctx;
  cache.emplace(key, std::move(ctx));
  return ref;
}

std::uint32_t tower_degree_for(std::uint32_t q, std::uint64_t n) {
  std::uint32_t m = 1;
  std::uint64_t s = q;
  while (s < n) {
    s *= q;
    ++m;
  }
  return m;
}

std::vector<int> charpoly_degree_bounds(const Matrix<Poly>& M) {
  const std::size_t n = M.rows;
  std::vector<int> rowd(n, -1), cold(n, -1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      int d = poly::deg(M(i, j));
      rowd[i] = std::max(rowd[i], d);
      cold[j] = std::max(cold[j], d);
    }
  // the diagonal also carries X, which contributes degree 0 in t
  for (std::size_t i = 0; i < n; ++i) {
    rowd[i] = std::max(rowd[i], 0);
    cold[i] = std::max(cold[i], 0);
  }
  std::sort(rowd.begin(), rowd.end(), std::greater<int>());
  std::sort(cold.begin(), cold.end(), std::greater<int>());
  std::vector<int> out(n + 1, 0);
  int sr = 0, sc = 0;
  for (std::size_t j = 1; j <= n; ++j) {
    sr += rowd[j - 1];
    sc += cold[j - 1];
    out[j] = std::min(sr, sc);
  }
  return out;
}

BiPoly charpoly_interp(const GF& Fq, const Matrix<Poly>& M, int deg_bound) {
  if (M.rows != M.cols) throw std::invalid_argument("charpoly_interp: matrix not square");
  if (deg_bound < 0) {
    int md = 0;
    for (const auto& e : M.a) md = std::max(md, poly::deg(e));
    deg_bound = static_cast<int>(M.rows) * (1 + md);
  }
  std::vector<int> b(M.rows + 1, deg_bound);
  b[0] = 0;
  return charpoly_interp_bounds(Fq, M, b);
}

BiPoly charpoly_interp_bounds(const GF& Fq, const Matrix<Poly>& M, const std::vector<int>& bounds) {
  const std::size_t n = M.rows;
  if (M.cols != n) throw std::invalid_argument("charpoly_interp: matrix not square");
  if (bounds.size() != n + 1) throw std::invalid_argument("charpoly_interp: bounds size mismatch");
  if (n == 0) return BiPoly{Poly{1}};
  int B = *std::max_element(bounds.begin(), bounds.end());
  // kExtra surplus points per coefficient certify the degree bound
  constexpr std::size_t kExtra = 3;
  const std::uint64_t npts = static_cast<std::uint64_t>(B) + 1 + kExtra;
  std::uint32_t e = Fq.degree();
  std::uint32_t m = tower_degree_for(Fq.size(), npts);
  const FieldCtx& ctx = tower(Fq.p(), e, m);
  if (ctx.base->modulus() != Fq.modulus()) throw std::invalid_argument("charpoly_interp: non-standard base field");
  const GF& X = *ctx.ext;

  Matrix<Poly> L(n, n);
  for (std::size_t i = 0; i < n * n; ++i) L.a[i] = poly::lift(ctx, M.a[i]);

  // values[k][j]: coefficient of X^{n-j} of the charpoly at point k
  std::vector<std::vector<Elt>> values(npts);
  parallel_for(npts, [&](std::size_t k) {
    const Elt c = static_cast<Elt>(k);
    Matrix<Elt> A(n, n, 0);
    for (std::size_t i = 0; i < n * n; ++i) A.a[i] = poly::eval(X, L.a[i], c);
    Poly cp = charpoly_hessenberg(X, std::move(A));
    std::vector<Elt> v(n + 1);
    for (std::size_t j = 0; j <= n; ++j) v[j] = poly::coeff(cp, n - j);
    values[k] = std::move(v);
  });

  BiPoly out(n + 1);
  out[n] = Poly{1};
  for (std::size_t j = 1; j <= n; ++j) {
    const std::size_t np = static_cast<std::size_t>(bounds[j]) + 1 + kExtra;
    // Newton divided differences at points 0..np-1
    std::vector<Elt> a(np);
    for (std::size_t k = 0; k < np; ++k) a[k] = values[k][j];
    for (std::size_t lvl = 1; lvl < np; ++lvl)
      for (std::size_t k = np - 1; k >= lvl; --k) {
        Elt num = X.sub(a[k], a[k - 1]);
        Elt den = X.sub(static_cast<Elt>(k), static_cast<Elt>(k - lvl));
        a[k] = X.div(num, den);
      }
    if (std::any_of(a.end() - kExtra, a.end(), [](Elt x) { return x != 0; }))
      throw std::runtime_error("charpoly_interp: interpolation inconsistent with degree bound " +
                               std::to_string(bounds[j]));
    // Newton -> monomial
    Poly r;
    for (std::size_t k = np - kExtra; k-- > 0;) {
      Poly nr(r.size() + 1, 0);
      const Elt xk = X.neg(static_cast<Elt>(k));
      for (std::size_t i = 0; i < r.size(); ++i) {
        nr[i + 1] = X.add(nr[i + 1], r[i]);
        nr[i] = X.add(nr[i], X.mul(xk, r[i]));
      }
      nr[0] = X.add(nr[0], a[k]);
      poly::trim(nr);
      r = std::move(nr);
    }
    Poly down(r.size());
    for (std::size_t i = 0; i < r.size(); ++i)
      if (!ctx.down(r[i], down[i]))
        throw std::runtime_error("charpoly_interp: interpolated coefficient outside F_q");
    out[n - j] = std::move(down);
  }
  return out;
}

}  // namespace dmf
