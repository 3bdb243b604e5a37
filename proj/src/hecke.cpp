#include "dmf/hecke.hpp"

#include <algorithm>
#include <stdexcept>

#include "dmf/parallel.hpp"

namespace dmf {

namespace {

struct HeckeTerm {
  std::array<Poly, 4> h;  // g_i γ_i^{-1}
  Elt unit_factor;        // u_i^{1-l} with det h_i = u_i·𝔭
  int n;
  int sign;
};

}  // namespace

Matrix<Poly> poly_mat_mul(const GF& F, const Matrix<Poly>& A, const Matrix<Poly>& B) {
  if (A.cols != B.rows) throw std::invalid_argument("poly_mat_mul: shape mismatch");
  Matrix<Poly> C(A.rows, B.cols);
  for (std::size_t i = 0; i < A.rows; ++i)
    for (std::size_t j = 0; j < B.cols; ++j)
      for (std::size_t r = 0; r < A.cols; ++r)
        if (!A(i, r).empty() && !B(r, j).empty()) C(i, j) = poly::add(F, C(i, j), poly::mul(F, A(i, r), B(r, j)));
  return C;
}

HeckeMatrix hecke_matrix(const CochainSpace& S, Elt c, const HeckeOptions& opt) {
  GFPtr Fp = gf_of(S.q);
  const GF& F = *Fp;
  RatField R(Fp);
  HeckeMatrix H;
  H.q = S.q;
  H.k = S.k;
  H.l = S.l;
  H.c = c;
  H.alpha = hecke_alpha(S.k, S.l);
  const std::size_t d = S.dim();
  H.matrix = Matrix<Poly>(d, d);
  if (d == 0) return H;

  const Poly P{F.neg(c), 1};
  std::vector<Poly> bs = opt.b_reps;
  if (bs.empty())
    for (Elt b : F.elements()) bs.push_back(b ? Poly{b} : Poly{});
  if (bs.size() != F.size()) throw std::invalid_argument("hecke_matrix: need q representatives mod the prime");
  {
    std::vector<char> seen(F.size(), 0);
    for (const auto& b : bs) {
      Elt r = poly::eval(F, b, c);
      if (seen[r]) throw std::invalid_argument("hecke_matrix: representatives are not distinct mod the prime");
      seen[r] = 1;
    }
  }
  std::vector<std::array<Poly, 4>> gs;
  for (const auto& b : bs) gs.push_back({P, b, Poly{}, Poly{1}});
  gs.push_back({Poly{1}, Poly{}, Poly{}, P});

  const std::int64_t qm1 = F.size() - 1;
  const std::int64_t ex = (((1 - S.l) % qm1) + qm1) % qm1;
  std::vector<HeckeTerm> terms;
  for (const auto& g : gs) {
    Mat2R gr = mat2_from_polys(R, g);
    EdgeReduction red = reduce_edge(R, mat2_inv(R, gr));
    auto h = mat2_to_polys(mat2_mul(R, gr, mat2_inv(R, red.gamma)));
    Poly det = poly::sub(F, poly::mul(F, h[0], h[3]), poly::mul(F, h[1], h[2]));
    Poly u, rem;
    poly::divmod(F, det, P, u, rem);
    if (!rem.empty() || poly::deg(u) != 0) throw std::logic_error("hecke_matrix: unexpected determinant");
    terms.push_back({h, F.pow(u[0], ex), red.n, red.sign});
  }

  BinomTable Bt(F.p(), S.k - 2);
  std::vector<std::vector<Poly>> cols(d);
  parallel_for(d, [&](std::size_t b) {
    std::vector<Poly> e(d);
    e[b] = Poly{1};
    PolyVec tot(S.rep.dim());
    for (const auto& T : terms) {
      PolyVec cn = propagated(F, S, e, T.n);
      PolyVec w = apply_mt_matrix(F, Bt, S.k - 2, T.h, cn);
      Elt s = T.sign > 0 ? T.unit_factor : F.neg(T.unit_factor);
      for (std::size_t i = 0; i < tot.size(); ++i)
        if (!w[i].empty()) poly::axpy_shift(F, tot[i], w[i], s, 0);
    }
    for (auto& x : tot) x = poly::mul(F, x, P);
    cols[b] = solve_in_basis(F, S, tot);
  });
  for (std::size_t b = 0; b < d; ++b)
    for (std::size_t r = 0; r < d; ++r) H.matrix(r, b) = cols[b][r];
  return H;
}

HeckeMatrix substitute(const GF& F, const HeckeMatrix& H, Elt c) {
  HeckeMatrix out = H;
  out.c = F.add(H.c, c);
  for (auto& x : out.matrix.a) x = poly::taylor_shift(F, x, F.neg(c));
  return out;
}

BiPoly hecke_charpoly(const GF& F, const HeckeMatrix& H) {
  if (H.dim() == 0) return BiPoly{Poly{1}};
  return charpoly_interp_bounds(F, H.matrix, charpoly_degree_bounds(H.matrix));
}

// ---------------------------------------------------------------- intertwining checks

namespace {

Poly frob_poly(const GF& F, const Poly& a) {
  // a(t)^p: Frobenius on coefficients and t ↦ t^p
  if (a.empty()) return {};
  Poly r((a.size() - 1) * F.p() + 1, 0);
  for (std::size_t j = 0; j < a.size(); ++j) r[j * F.p()] = F.frob(a[j]);
  return r;
}

BiPoly frob_bipoly(const GF& F, const BiPoly& f) {
  BiPoly r;
  for (const auto& c : f) r.push_back(frob_poly(F, c));
  return r;
}

// t^{s·d} f(X / t^s)
BiPoly scale_roots(const BiPoly& f, int s) {
  const int d = bipoly::deg(f);
  BiPoly r(f.size());
  for (int i = 0; i <= d; ++i) {
    const Poly& c = f[static_cast<std::size_t>(i)];
    if (c.empty()) continue;
    Poly x(static_cast<std::size_t>(s * (d - i)), 0);
    x.insert(x.end(), c.begin(), c.end());
    r[static_cast<std::size_t>(i)] = std::move(x);
  }
  return r;
}

Matrix<Poly> eval_at_matrix(const GF& F, const BiPoly& f, const Matrix<Poly>& T) {
  const std::size_t n = T.rows;
  Matrix<Poly> acc(n, n);
  for (std::size_t i = f.size(); i-- > 0;) {
    acc = poly_mat_mul(F, acc, T);
    if (!f[i].empty())
      for (std::size_t r = 0; r < n; ++r) acc(r, r) = poly::add(F, acc(r, r), f[i]);
  }
  return acc;
}

// Cochain map given by a constant matrix A on c₀ (optionally followed by coordinatewise Frobenius),
// as a dim_tgt × dim_src matrix over F_q in the echelon bases.
bool cochain_map(const GF& F, const CochainSpace& src, const CochainSpace& tgt, const Matrix<Elt>& A, bool frob,
                 Matrix<Elt>& Phi) {
  FqOps o{&F};
  Phi = Matrix<Elt>(tgt.dim(), src.dim(), 0);
  for (std::size_t b = 0; b < src.dim(); ++b) {
    auto w = mat_vec(o, A, src.basis[b]);
    if (frob)
      for (auto& x : w) x = F.frob(x);
    PolyVec pv(w.size());
    for (std::size_t i = 0; i < w.size(); ++i)
      if (w[i]) pv[i] = Poly{w[i]};
    try {
      auto c = solve_in_basis(F, tgt, pv);
      for (std::size_t r = 0; r < tgt.dim(); ++r) Phi(r, b) = c[r].empty() ? 0 : c[r][0];
    } catch (const std::runtime_error&) {
      return false;
    }
  }
  return true;
}

Matrix<Poly> const_to_poly(const Matrix<Elt>& A) {
  Matrix<Poly> M(A.rows, A.cols);
  for (std::size_t i = 0; i < A.a.size(); ++i)
    if (A.a[i]) M.a[i] = Poly{A.a[i]};
  return M;
}

void compare_factors(const GF& F, const HeckeMatrix& Hs, const HeckeMatrix& Ht, const Matrix<Elt>& Phi, bool frob,
                     int s, IntertwineReport& rep) {
  BiPoly cps = hecke_charpoly(F, Hs), cpt = hecke_charpoly(F, Ht);
  RatField R(gf_of(F.size()));
  RatOps ro{&R};
  for (const auto& bf : bivariate_factor(F, cps).factors) {
    FactorCorrespondence fc;
    fc.source = bf.f;
    fc.mult = bf.mult;
    fc.target = frob ? frob_bipoly(F, bf.f) : scale_roots(bf.f, s);
    fc.divides = bipoly::divides(F, fc.target, cpt);
    // primary part: kernel of f(T_src)^mult over F_q(t)
    Matrix<Poly> fT = eval_at_matrix(F, bf.f, Hs.matrix), P = fT;
    for (int e = 1; e < bf.mult; ++e) P = poly_mat_mul(F, P, fT);
    Matrix<RatFun> PR(P.rows, P.cols);
    for (std::size_t i = 0; i < P.a.size(); ++i) PR.a[i] = R.from_poly(P.a[i]);
    for (const auto& v : kernel_basis(ro, PR)) {
      for (std::size_t r = 0; r < Phi.rows && !fc.map_nonzero; ++r) {
        RatFun acc = R.zero();
        for (std::size_t c = 0; c < Phi.cols; ++c) {
          if (!Phi(r, c)) continue;
          RatFun x = v[c];
          if (frob) x = R.make(frob_poly(F, x.num), frob_poly(F, x.den));
          acc = R.add(acc, R.mul(R.constant(Phi(r, c)), x));
        }
        if (!acc.is_zero()) fc.map_nonzero = true;
      }
      if (fc.map_nonzero) break;
    }
    rep.pairs.push_back(std::move(fc));
  }
}

}  // namespace

bool IntertwineReport::ok() const {
  if (dim_src == 0) return true;
  if (!image_in_space || !commutes) return false;
  for (const auto& p : pairs)
    if (p.map_nonzero && !p.divides) return false;
  return true;
}

IntertwineReport check_ds_intertwine(std::uint32_t q, int k, int l, int s) {
  GFPtr F = gf_of(q);
  IntertwinerMap D = hyperderivative(q, k, s, l - 1);
  IntertwineReport rep;
  rep.kind = "ds";
  rep.q = q;
  rep.k_src = k;
  rep.l_src = l;
  rep.k_tgt = k + 2 * s;
  const int qm1 = static_cast<int>(q) - 1;
  rep.l_tgt = ((l + s) % qm1 + qm1) % qm1;
  rep.s = s;
  CochainSpace Ss = cochain_space(q, k, l), St = cochain_space(q, k + 2 * s, rep.l_tgt);
  rep.dim_src = Ss.dim();
  rep.dim_tgt = St.dim();
  if (Ss.dim() == 0) {
    rep.zero_map = true;
    rep.image_in_space = rep.commutes = true;
    rep.detail = "zero source space";
    return rep;
  }
  Matrix<Elt> DT(D.matrix.cols, D.matrix.rows, 0);
  for (std::size_t i = 0; i < D.matrix.rows; ++i)
    for (std::size_t j = 0; j < D.matrix.cols; ++j) DT(j, i) = D.matrix(i, j);
  Matrix<Elt> Phi;
  rep.image_in_space = cochain_map(*F, Ss, St, DT, false, Phi);
  if (!rep.image_in_space) {
    rep.detail = "image of D_s^* leaves the target cochain space";
    return rep;
  }
  rep.zero_map = std::all_of(Phi.a.begin(), Phi.a.end(), [](Elt x) { return x == 0; });
  HeckeMatrix Hs = hecke_matrix(Ss), Ht = hecke_matrix(St);
  Matrix<Poly> P = const_to_poly(Phi);
  Matrix<Poly> lhs = poly_mat_mul(*F, Ht.matrix, P), rhs = poly_mat_mul(*F, P, Hs.matrix);
  for (auto& x : rhs.a)
    if (!x.empty()) x.insert(x.begin(), static_cast<std::size_t>(s), 0);
  rep.commutes = lhs.a == rhs.a;
  if (!rep.zero_map) compare_factors(*F, Hs, Ht, Phi, false, s, rep);
  rep.detail = rep.zero_map ? "zero map" : "";
  return rep;
}

IntertwineReport check_frobenius(std::uint32_t q, int k, int l) {
  GFPtr F = gf_of(q);
  const int p = static_cast<int>(F->p());
  const int qm1 = static_cast<int>(q) - 1;
  IntertwineReport rep;
  rep.kind = "frobenius";
  rep.q = q;
  rep.k_src = k;
  rep.l_src = l;
  rep.k_tgt = p * k;
  rep.l_tgt = ((p * l) % qm1 + qm1) % qm1;
  CochainSpace Ss = cochain_space(q, k, l), St = cochain_space(q, p * k, rep.l_tgt);
  rep.dim_src = Ss.dim();
  rep.dim_tgt = St.dim();
  if (Ss.dim() == 0) {
    rep.zero_map = true;
    rep.image_in_space = rep.commutes = true;
    rep.detail = "zero source space";
    return rep;
  }
  IntertwinerMap C = cartier(q, k, l);
  Matrix<Elt> CT(C.matrix.cols, C.matrix.rows, 0);
  for (std::size_t i = 0; i < C.matrix.rows; ++i)
    for (std::size_t j = 0; j < C.matrix.cols; ++j) CT(j, i) = C.matrix(i, j);
  Matrix<Elt> Phi;
  rep.image_in_space = cochain_map(*F, Ss, St, CT, true, Phi);
  if (!rep.image_in_space) {
    rep.detail = "image of the Cartier dual leaves the target cochain space";
    return rep;
  }
  rep.zero_map = std::all_of(Phi.a.begin(), Phi.a.end(), [](Elt x) { return x == 0; });
  HeckeMatrix Hs = hecke_matrix(Ss), Ht = hecke_matrix(St);
  Matrix<Poly> P = const_to_poly(Phi), Tf = Hs.matrix;
  for (auto& x : Tf.a) x = frob_poly(*F, x);
  rep.commutes = poly_mat_mul(*F, Ht.matrix, P).a == poly_mat_mul(*F, P, Tf).a;
  if (!rep.zero_map) compare_factors(*F, Hs, Ht, Phi, true, 0, rep);
  rep.detail = rep.zero_map ? "zero map" : "";
  return rep;
}

}  // namespace dmf
