#include "dmf/tree.hpp"

#include <algorithm>
#include <climits>
#include <random>
#include <stdexcept>

#include "dmf/invariants.hpp"
#include "dmf/linalg.hpp"

namespace dmf {

// ---------------------------------------------------------------- matrices over F_q(t)

Mat2R mat2_identity(const RatField& R) { return {R.one(), R.zero(), R.zero(), R.one()}; }

Mat2R mat2_from_polys(const RatField& R, const std::array<Poly, 4>& m) {
  return {R.from_poly(m[0]), R.from_poly(m[1]), R.from_poly(m[2]), R.from_poly(m[3])};
}

std::array<Poly, 4> mat2_to_polys(const Mat2R& m) {
  std::array<Poly, 4> out;
  for (int i = 0; i < 4; ++i) {
    if (!m[i].is_poly()) throw std::invalid_argument("mat2_to_polys: non-polynomial entry");
    out[i] = m[i].num;
  }
  return out;
}

Mat2R half_line(const RatField& R, int n) { return {R.one(), R.zero(), R.zero(), R.pow(R.t(), -n)}; }

namespace {

Mat2R upper(const RatField& R, const RatFun& b) { return {R.one(), b, R.zero(), R.one()}; }
Mat2R swap_w(const RatField& R) { return {R.zero(), R.one(), R.one(), R.zero()}; }

int max_degree(const Mat2R& m) {
  int d = INT32_MIN;
  for (const auto& e : m)
    if (!e.is_zero()) d = std::max(d, e.degree());
  return d;
}

// Column operations over O_∞ bring G to [[a,b],[0,d]]; returns deg(a/d) and b/d.
std::pair<int, RatFun> triangularize(const RatField& R, Mat2R G) {
  RatFun a = G[0], b = G[1], c = G[2], d = G[3];
  if (!c.is_zero()) {
    if (d.is_zero() || c.degree() >= d.degree()) {
      std::swap(a, b);
      std::swap(c, d);
    }
    RatFun f = R.div(c, d);
    a = R.sub(a, R.mul(b, f));
  }
  return {R.div(a, d).degree(), R.div(b, d)};
}

}  // namespace

bool vertex_equal(const RatField& R, const Mat2R& g, const Mat2R& h) {
  Mat2R M = mat2_mul(R, mat2_inv(R, h), g);
  return mat2_det(R, M).degree() == 2 * max_degree(M);
}

bool lattice_equal(const RatField& R, const Mat2R& g, const Mat2R& h) {
  Mat2R d1 = half_line(R, 1);
  return vertex_equal(R, g, h) && vertex_equal(R, mat2_mul(R, g, d1), mat2_mul(R, h, d1));
}

Mat2R edge_origin(const RatField& R, const TreeEdge& e) {
  return e.sign > 0 ? e.g : mat2_mul(R, e.g, half_line(R, 1));
}

Mat2R edge_terminus(const RatField& R, const TreeEdge& e) {
  return e.sign > 0 ? mat2_mul(R, e.g, half_line(R, 1)) : e.g;
}

bool edge_equal(const RatField& R, const TreeEdge& a, const TreeEdge& b) {
  return vertex_equal(R, edge_origin(R, a), edge_origin(R, b)) &&
         vertex_equal(R, edge_terminus(R, a), edge_terminus(R, b));
}

std::pair<Mat2R, int> reduce_vertex(const RatField& R, const Mat2R& g) {
  if (mat2_det(R, g).is_zero()) throw std::invalid_argument("reduce_vertex: singular matrix");
  Mat2R gam = mat2_identity(R);
  const Mat2R w = swap_w(R);
  for (int it = 0; it < 100000; ++it) {
    auto [m, x] = triangularize(R, mat2_mul(R, gam, g));
    Poly y = R.poly_part(x);
    if (!y.empty()) {
      gam = mat2_mul(R, upper(R, R.from_poly(poly::neg(R.base(), y))), gam);
      std::tie(m, x) = triangularize(R, mat2_mul(R, gam, g));
    }
    if (m >= 0) return {gam, m};
    gam = mat2_mul(R, w, gam);
    if (x.is_zero() || x.degree() <= m) return {gam, -m};
  }
  throw std::logic_error("reduce_vertex: no convergence");
}

EdgeReduction reduce_edge(const RatField& R, const Mat2R& g) {
  auto [gam, n] = reduce_vertex(R, g);
  const Mat2R d1 = half_line(R, 1);
  const Mat2R tg = mat2_mul(R, mat2_mul(R, gam, g), d1);
  const GF& F = R.base();
  if (n >= 1) {
    if (vertex_equal(R, tg, half_line(R, n + 1))) return {gam, n, 1};
    for (Elt lam : F.elements()) {
      Mat2R u = upper(R, R.from_poly(poly::monomial(lam, static_cast<std::size_t>(n))));
      if (vertex_equal(R, tg, mat2_mul(R, u, half_line(R, n - 1)))) return {mat2_mul(R, mat2_inv(R, u), gam), n - 1, -1};
    }
  } else {
    for (const Mat2R& k : star_cosets(R, 0))
      if (vertex_equal(R, tg, mat2_mul(R, k, d1))) return {mat2_mul(R, mat2_inv(R, k), gam), 0, 1};
  }
  throw std::logic_error("reduce_edge: terminus is not adjacent to the reduced origin");
}

EdgeReduction reduce_edge(const RatField& R, const TreeEdge& e) {
  EdgeReduction r = reduce_edge(R, e.g);
  r.sign *= e.sign;
  return r;
}

// ---------------------------------------------------------------- stabilizers

namespace {

std::vector<Elt> fp_basis_of(const GF& F) {
  std::vector<Elt> out;
  Elt x = 1;
  for (std::uint32_t i = 0; i < F.degree(); ++i, x *= F.p()) out.push_back(x);
  return out;
}

std::uint64_t upow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

Stabilizer stabilizer_vertex(const RatField& R, int n) {
  const GF& F = R.base();
  const std::uint64_t q = F.size();
  Stabilizer S;
  const Elt g = F.generator();
  if (q > 2) {
    S.gens.push_back({R.constant(g), R.zero(), R.zero(), R.one()});
    S.gens.push_back({R.one(), R.zero(), R.zero(), R.constant(g)});
  }
  for (int j = 0; j <= n; ++j)
    for (Elt b : fp_basis_of(F)) S.gens.push_back(upper(R, R.from_poly(poly::monomial(b, static_cast<std::size_t>(j)))));
  if (n == 0) {
    S.gens.push_back(swap_w(R));
    S.order = q * (q - 1) * (q - 1) * (q + 1);
  } else {
    S.order = (q - 1) * (q - 1) * upow(q, n + 1);
  }
  return S;
}

Stabilizer stabilizer_edge(const RatField& R, int n) {
  if (n >= 1) return stabilizer_vertex(R, n);
  Stabilizer S = stabilizer_vertex(R, 0);
  S.gens.pop_back();  // drop w
  const std::uint64_t q = R.base().size();
  S.order = q * (q - 1) * (q - 1);
  return S;
}

std::vector<Mat2R> star_cosets(const RatField& R, int n) {
  std::vector<Mat2R> out;
  const GF& F = R.base();
  if (n == 0) {
    for (Elt lam : F.elements()) out.push_back({R.one(), R.zero(), R.constant(lam), R.one()});
    out.push_back(swap_w(R));
  } else {
    for (Elt lam : F.elements()) out.push_back(upper(R, R.from_poly(poly::monomial(lam, static_cast<std::size_t>(n)))));
  }
  return out;
}

// ---------------------------------------------------------------- dual action over F_q[t]

PolyVec apply_mt_matrix(const GF& F, const BinomTable& B, int K, const std::array<Poly, 4>& h, const PolyVec& v) {
  return apply_mt_word(F, B, K, elementary_word(F, h), v);
}

PolyVec act_dual_poly(const GF& F, const BinomTable& B, int k, int l, const std::array<Poly, 4>& h, const PolyVec& v) {
  Poly det = poly::sub(F, poly::mul(F, h[0], h[3]), poly::mul(F, h[1], h[2]));
  if (poly::deg(det) != 0) throw std::invalid_argument("act_dual_poly: determinant is not a unit");
  PolyVec out = apply_mt_matrix(F, B, k - 2, h, v);
  const std::int64_t qm1 = F.size() - 1;
  const Elt s = F.pow(det[0], (((1 - l) % qm1) + qm1) % qm1);
  if (s != 1)
    for (auto& x : out) x = poly::scale(F, x, s);
  return out;
}

PolyVec propagate_step(const GF& F, const BinomTable& B, int K, int n, const PolyVec& v) {
  // Σ_λ λ^m is -1 when m > 0 and (q-1) | m, else 0
  const std::size_t N = v.size();
  const int qm1 = static_cast<int>(F.size()) - 1;
  PolyVec out(N);
  for (int i = 1; i <= K; ++i) {
    Poly& o = out[static_cast<std::size_t>(K - i)];
    for (int r = i - qm1; r >= 0; r -= qm1) {
      const Poly& x = v[static_cast<std::size_t>(K - r)];
      if (x.empty()) continue;
      const Elt c = B(i, r);
      if (!c) continue;
      poly::axpy_shift(F, o, x, F.neg(c), static_cast<std::size_t>(n) * static_cast<std::size_t>(i - r));
    }
  }
  return out;
}

// ---------------------------------------------------------------- cochain space

namespace {

bool all_zero(const PolyVec& v) {
  for (const auto& x : v)
    if (!x.empty()) return false;
  return true;
}

// Replaces the basis (and its propagations) by the combinations given as rows of `comb`.
void recombine(const GF& F, CochainSpace& S, const std::vector<std::vector<Elt>>& comb) {
  const std::size_t d = S.basis.size();
  std::vector<std::vector<Elt>> nb;
  for (const auto& w : comb) {
    std::vector<Elt> v(S.basis.empty() ? 0 : S.basis[0].size(), 0);
    for (std::size_t b = 0; b < d; ++b)
      if (w[b])
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = F.add(v[i], F.mul(w[b], S.basis[b][i]));
    nb.push_back(std::move(v));
  }
  for (auto& level : S.prop) {
    std::vector<PolyVec> nl;
    for (const auto& w : comb) {
      PolyVec v(level.empty() ? 0 : level[0].size());
      for (std::size_t b = 0; b < d; ++b)
        if (w[b])
          for (std::size_t i = 0; i < v.size(); ++i) poly::axpy_shift(F, v[i], level[b][i], w[b], 0);
      nl.push_back(std::move(v));
    }
    level = std::move(nl);
  }
  S.basis = std::move(nb);
}

// Rows of an F_q-matrix expressing "w_b = 0 for the combination", one row per (coordinate, t-power).
Matrix<Elt> coefficient_rows(const std::vector<PolyVec>& ws) {
  const std::size_t d = ws.size();
  std::vector<std::vector<Elt>> rows;
  if (d == 0) return Matrix<Elt>(0, 0, 0);
  for (std::size_t i = 0; i < ws[0].size(); ++i) {
    std::size_t len = 0;
    for (const auto& w : ws) len = std::max(len, w[i].size());
    for (std::size_t e = 0; e < len; ++e) {
      std::vector<Elt> row(d, 0);
      bool nz = false;
      for (std::size_t b = 0; b < d; ++b) {
        row[b] = poly::coeff(ws[b][i], e);
        nz = nz || row[b];
      }
      if (nz) rows.push_back(std::move(row));
    }
  }
  Matrix<Elt> M(rows.size(), d, 0);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < d; ++c) M(r, c) = rows[r][c];
  return M;
}

Mat2F to_const(const Mat2R& m) {
  Mat2F out{};
  for (int i = 0; i < 4; ++i) {
    if (!m[i].is_poly() || poly::deg(m[i].num) > 0) throw std::logic_error("to_const: non-constant entry");
    out[i] = m[i].num.empty() ? 0 : m[i].num[0];
  }
  return out;
}

}  // namespace

CochainSpace cochain_space(std::uint32_t q, int k, int l, const CochainOptions& opt) {
  GFPtr Fp = gf_of(q);
  const GF& F = *Fp;
  RatField R(Fp);
  FqOps o{Fp.get()};
  CochainSpace S;
  S.q = q;
  S.k = k;
  S.l = l;
  if (k < 2) return S;
  S.rep = v_kl(q, k, l);
  const int qm1 = static_cast<int>(q) - 1;
  if (((k - 2 * l) % qm1 + qm1) % qm1 != 0) return S;
  const int K = k - 2;
  const std::size_t n = static_cast<std::size_t>(K) + 1;
  std::mt19937_64 rng(opt.coset_seed);

  // S₀ = V^{B₂(F_q)} ∩ ker Σ_{γ ∈ GL₂(F_q)/B₂(F_q)} ρ(γ)
  auto inv = fixed_space(S.rep, FiniteGroupSpec::named(GroupLabel::B2, q));
  if (inv.empty()) return S;
  Matrix<Elt> H(n, n, 0);
  auto B2 = FiniteGroupSpec::named(GroupLabel::B2, q);
  for (const Mat2R& cr : star_cosets(R, 0)) {
    Mat2F g = to_const(cr);
    if (opt.coset_seed) {
      // right factor from B₂(F_q)
      std::uniform_int_distribution<Elt> U(1, q - 1), A(0, q - 1);
      Mat2F b{U(rng), A(rng), 0, U(rng)};
      g = mat2_mul(F, g, b);
    }
    auto A = act(F, S.rep, g);
    for (std::size_t i = 0; i < A.a.size(); ++i) H.a[i] = F.add(H.a[i], A.a[i]);
  }
  Matrix<Elt> HS(n, inv.size(), 0);
  for (std::size_t c = 0; c < inv.size(); ++c) {
    auto w = mat_vec(o, H, inv[c]);
    for (std::size_t r = 0; r < n; ++r) HS(r, c) = w[r];
  }
  for (const auto& kv : kernel_basis(o, HS)) {
    std::vector<Elt> v(n, 0);
    for (std::size_t c = 0; c < inv.size(); ++c)
      if (kv[c])
        for (std::size_t i = 0; i < n; ++i) v[i] = F.add(v[i], F.mul(kv[c], inv[c][i]));
    S.basis.push_back(std::move(v));
  }
  if (S.basis.empty()) return S;

  // propagation c_n = Σ_λ ρ(u_{λtⁿ}) c_{n-1}, keeping c_n ∈ V^{Stab(e_n)}
  BinomTable Bt(F.p(), K);
  std::vector<PolyVec> cur;
  for (const auto& v : S.basis) {
    PolyVec pv(n);
    for (std::size_t i = 0; i < n; ++i)
      if (v[i]) pv[i] = Poly{v[i]};
    cur.push_back(std::move(pv));
  }
  S.prop.push_back(cur);
  const int nmax = opt.max_support > 0 ? opt.max_support : 4 * k;
  for (int step = 1;; ++step) {
    if (step > nmax)
      throw std::runtime_error("cochain_space: propagation did not vanish by n = " + std::to_string(nmax) +
                               " for q=" + std::to_string(q) + " k=" + std::to_string(k) + " l=" + std::to_string(l) +
                               " (dim " + std::to_string(S.basis.size()) + ")");
    std::vector<PolyVec> next(cur.size());
    for (std::size_t b = 0; b < cur.size(); ++b) {
      if (!opt.coset_seed) {
        next[b] = propagate_step(F, Bt, K, step, cur[b]);
        continue;
      }
      // alternative transversal u_{λtⁿ}·s with s ∈ Stab(e_{n-1})
      auto stab = stabilizer_edge(R, step - 1);
      PolyVec acc(n);
      for (const Mat2R& cr : star_cosets(R, step)) {
        Mat2R g = cr;
        for (int r = 0; r < 3; ++r) g = mat2_mul(R, g, stab.gens[rng() % stab.gens.size()]);
        PolyVec w = act_dual_poly(F, Bt, k, l, mat2_to_polys(g), cur[b]);
        for (std::size_t i = 0; i < n; ++i) acc[i] = poly::add(F, acc[i], w[i]);
      }
      next[b] = std::move(acc);
    }
    bool zero = true;
    for (const auto& v : next) zero = zero && all_zero(v);
    if (zero) {
      S.support_bound = step;
      break;
    }
    // Stab(e_n) is generated by Stab(e_{n-1}) and u_{βtⁿ}; the former fixes c_n by commutation,
    // so only the new unipotents are tested.
    std::vector<PolyVec> defect;
    std::vector<Matrix<Elt>> blocks;
    for (Elt beta : fp_basis_of(F)) {
      std::array<Poly, 4> u{Poly{1}, poly::monomial(beta, static_cast<std::size_t>(step)), Poly{}, Poly{1}};
      std::vector<PolyVec> ws;
      for (const auto& v : next) {
        PolyVec w = apply_mt_matrix(F, Bt, K, u, v);
        for (std::size_t i = 0; i < n; ++i) w[i] = poly::sub(F, w[i], v[i]);
        ws.push_back(std::move(w));
      }
      blocks.push_back(coefficient_rows(ws));
    }
    std::size_t total = 0;
    for (const auto& m : blocks) total += m.rows;
    if (total > 0) {
      Matrix<Elt> C(total, next.size(), 0);
      std::size_t r0 = 0;
      for (const auto& m : blocks) {
        std::copy(m.a.begin(), m.a.end(), C.a.begin() + static_cast<std::ptrdiff_t>(r0 * next.size()));
        r0 += m.rows;
      }
      auto comb = kernel_basis(o, C);
      S.prop.push_back(next);
      recombine(F, S, comb);
      next = S.prop.back();
      S.prop.pop_back();
      if (S.basis.empty()) {
        S.prop.clear();
        return S;
      }
    }
    S.prop.push_back(next);
    cur = std::move(next);
  }

  // reduced echelon basis
  Matrix<Elt> Bm(S.basis.size(), n, 0);
  for (std::size_t b = 0; b < S.basis.size(); ++b)
    for (std::size_t i = 0; i < n; ++i) Bm(b, i) = S.basis[b][i];
  // T with T·basis = rref(basis): run rref on [basis | I]
  const std::size_t d = S.basis.size();
  Matrix<Elt> Aug(d, n + d, 0);
  for (std::size_t b = 0; b < d; ++b) {
    for (std::size_t i = 0; i < n; ++i) Aug(b, i) = Bm(b, i);
    Aug(b, n + b) = 1;
  }
  auto piv = rref(o, Aug);
  std::vector<std::vector<Elt>> comb(d, std::vector<Elt>(d));
  for (std::size_t b = 0; b < d; ++b)
    for (std::size_t c = 0; c < d; ++c) comb[b][c] = Aug(b, n + c);
  recombine(F, S, comb);
  S.pivots.assign(piv.begin(), piv.begin() + static_cast<std::ptrdiff_t>(d));
  return S;
}

PolyVec propagated(const GF& F, const CochainSpace& S, const std::vector<Poly>& coeffs, int n) {
  const std::size_t dim = S.rep.dim();
  PolyVec out(dim);
  if (n < 0 || n >= S.support_bound) return out;
  const auto& level = S.prop[static_cast<std::size_t>(n)];
  for (std::size_t b = 0; b < level.size() && b < coeffs.size(); ++b) {
    if (coeffs[b].empty()) continue;
    for (std::size_t i = 0; i < dim; ++i)
      if (!level[b][i].empty()) out[i] = poly::add(F, out[i], poly::mul(F, coeffs[b], level[b][i]));
  }
  return out;
}

PolyVec evaluate_cochain(const CochainSpace& S, const std::vector<Poly>& coeffs, const TreeEdge& e) {
  GFPtr Fp = gf_of(S.q);
  RatField R(Fp);
  EdgeReduction red = reduce_edge(R, e);
  PolyVec c = propagated(*Fp, S, coeffs, red.n);
  if (S.dim() == 0) return c;
  BinomTable Bt(Fp->p(), S.k - 2);
  PolyVec v = act_dual_poly(*Fp, Bt, S.k, S.l, mat2_to_polys(mat2_inv(R, red.gamma)), c);
  if (red.sign < 0)
    for (auto& x : v) x = poly::neg(*Fp, x);
  return v;
}

std::vector<Poly> solve_in_basis(const GF& F, const CochainSpace& S, const PolyVec& v) {
  std::vector<Poly> coeffs(S.dim());
  PolyVec rest = v;
  for (std::size_t b = 0; b < S.dim(); ++b) {
    coeffs[b] = v[S.pivots[b]];
    if (coeffs[b].empty()) continue;
    for (std::size_t i = 0; i < rest.size(); ++i)
      if (S.basis[b][i]) rest[i] = poly::sub(F, rest[i], poly::scale(F, coeffs[b], S.basis[b][i]));
  }
  if (!all_zero(rest)) throw std::runtime_error("solve_in_basis: vector is not in the cochain space");
  return coeffs;
}

}  // namespace dmf
