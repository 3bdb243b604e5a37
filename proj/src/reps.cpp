#include "dmf/reps.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <stdexcept>

namespace dmf {

std::string RepSpace::to_string() const {
  std::ostringstream os;
  if (dual) os << "(";
  os << "Sym^" << k << " (x) det^" << m;
  if (dual) os << ")^*";
  if (frob) os << " [frob " << frob << "]";
  return os.str();
}

RepSpace v_kl(std::uint32_t q, int k, int l) {
  if (k < 2) throw std::invalid_argument("v_kl: weight must be >= 2");
  return RepSpace{q, k - 2, l - 1, true, 0};
}

std::uint32_t char_of(std::uint32_t q) {
  if (q < 2) throw std::invalid_argument("char_of: q < 2");
  for (std::uint32_t p = 2; p * p <= q; ++p)
    if (q % p == 0) return p;
  return q;
}

std::vector<int> digits_base(std::uint64_t n, std::uint64_t b) {
  std::vector<int> d;
  while (n) {
    d.push_back(static_cast<int>(n % b));
    n /= b;
  }
  return d;
}

std::uint32_t binom_mod(std::int64_t n, std::int64_t k, std::uint32_t p) {
  if (k < 0 || n < 0 || k > n) return 0;
  std::uint64_t r = 1;
  while (n || k) {
    std::int64_t ni = n % p, ki = k % p;
    if (ki > ni) return 0;
    // small binomial C(ni, ki) mod p
    std::uint64_t num = 1, den = 1;
    for (std::int64_t i = 0; i < ki; ++i) {
      num = num * static_cast<std::uint64_t>(ni - i) % p;
      den = den * static_cast<std::uint64_t>(i + 1) % p;
    }
    // den^{-1} mod p via Fermat
    std::uint64_t inv = 1, b = den, e = p - 2;
    while (e) {
      if (e & 1) inv = inv * b % p;
      b = b * b % p;
      e >>= 1;
    }
    r = r * num % p * inv % p;
    n /= p;
    k /= p;
  }
  return static_cast<std::uint32_t>(r);
}

BinomTable::BinomTable(std::uint32_t p, int K) : K_(K), rows_(tri(K + 1)) {
  for (int n = 0; n <= K; ++n) {
    rows_[tri(n)] = 1;
    rows_[tri(n) + n] = 1;
    for (int r = 1; r < n; ++r) {
      unsigned v = rows_[tri(n - 1) + r - 1] + rows_[tri(n - 1) + r];
      rows_[tri(n) + r] = static_cast<std::uint8_t>(v % p);
    }
  }
}

// ---------------------------------------------------------------- 2x2 matrices

Mat2R mat2_mul(const RatField& R, const Mat2R& x, const Mat2R& y) {
  return {R.add(R.mul(x[0], y[0]), R.mul(x[1], y[2])), R.add(R.mul(x[0], y[1]), R.mul(x[1], y[3])),
          R.add(R.mul(x[2], y[0]), R.mul(x[3], y[2])), R.add(R.mul(x[2], y[1]), R.mul(x[3], y[3]))};
}
RatFun mat2_det(const RatField& R, const Mat2R& x) { return R.sub(R.mul(x[0], x[3]), R.mul(x[1], x[2])); }
Mat2R mat2_inv(const RatField& R, const Mat2R& x) {
  RatFun d = mat2_det(R, x);
  if (d.is_zero()) throw std::invalid_argument("singular matrix");
  RatFun di = R.inv(d);
  return {R.mul(x[3], di), R.neg(R.mul(x[1], di)), R.neg(R.mul(x[2], di)), R.mul(x[0], di)};
}
Mat2F mat2_mul(const GF& F, const Mat2F& x, const Mat2F& y) {
  return {F.add(F.mul(x[0], y[0]), F.mul(x[1], y[2])), F.add(F.mul(x[0], y[1]), F.mul(x[1], y[3])),
          F.add(F.mul(x[2], y[0]), F.mul(x[3], y[2])), F.add(F.mul(x[2], y[1]), F.mul(x[3], y[3]))};
}
Elt mat2_det(const GF& F, const Mat2F& x) { return F.sub(F.mul(x[0], x[3]), F.mul(x[1], x[2])); }
Mat2F mat2_inv(const GF& F, const Mat2F& x) {
  Elt d = mat2_det(F, x);
  if (!d) throw std::invalid_argument("singular matrix");
  Elt di = F.inv(d);
  return {F.mul(x[3], di), F.neg(F.mul(x[1], di)), F.neg(F.mul(x[2], di)), F.mul(x[0], di)};
}

namespace {

RatFun rat_frob(const RatField& R, const RatFun& x) {
  const GF& F = R.base();
  auto fp = [&](const Poly& a) {
    Poly r(a.empty() ? 0 : (a.size() - 1) * F.p() + 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i * F.p()] = F.frob(a[i]);
    return r;
  };
  return R.make(fp(x.num), fp(x.den));
}

// Natural action det^{-K}(dX-bY)^i(-cX+aY)^j times `scale`, over a generic field.
template <class Ops, class FromInt>
Matrix<typename Ops::value_type> natural_matrix(const Ops& o, FromInt from_int, std::uint32_t p, int K,
                                                const typename Ops::value_type& a,
                                                const typename Ops::value_type& b,
                                                const typename Ops::value_type& c,
                                                const typename Ops::value_type& d,
                                                const typename Ops::value_type& scale) {
  using T = typename Ops::value_type;
  const std::size_t n = static_cast<std::size_t>(K) + 1;
  auto powers = [&](const T& x) {
    std::vector<T> pw(n);
    pw[0] = o.one();
    for (std::size_t i = 1; i < n; ++i) pw[i] = o.mul(pw[i - 1], x);
    return pw;
  };
  const auto pd = powers(d), pnb = powers(o.neg(b)), pnc = powers(o.neg(c)), pa = powers(a);
  BinomTable B(p, K);
  Matrix<T> M(n, n, o.zero());
  std::vector<T> u, v;
  for (int i = 0; i <= K; ++i) {
    const int j = K - i;
    // (dX - bY)^i: coefficient of X^r
    u.assign(i + 1, o.zero());
    for (int r = 0; r <= i; ++r)
      if (B(i, r)) u[r] = o.mul(from_int(B(i, r)), o.mul(pd[r], pnb[i - r]));
    v.assign(j + 1, o.zero());
    for (int s = 0; s <= j; ++s)
      if (B(j, s)) v[s] = o.mul(from_int(B(j, s)), o.mul(pnc[s], pa[j - s]));
    const std::size_t col = static_cast<std::size_t>(K - i);
    for (int r = 0; r <= i; ++r) {
      if (o.is_zero(u[r])) continue;
      for (int s = 0; s <= j; ++s) {
        if (o.is_zero(v[s])) continue;
        T& e = M(static_cast<std::size_t>(K - r - s), col);
        e = o.add(e, o.mul(u[r], v[s]));
      }
    }
  }
  if (!(scale == o.one()))
    for (auto& e : M.a)
      if (!o.is_zero(e)) e = o.mul(e, scale);
  return M;
}

Mat2F frob_mat(const GF& F, Mat2F g, int r) {
  for (int i = 0; i < r; ++i)
    for (auto& x : g) x = F.frob(x);
  return g;
}

Matrix<Elt> primal_const(const GF& F, int K, int m, const Mat2F& g) {
  const Elt det = mat2_det(F, g);
  if (!det) throw std::invalid_argument("act: singular matrix");
  FqOps o{&F};
  return natural_matrix(o, [&](std::uint32_t v) { return F.from_int(v); }, F.p(), K, g[0], g[1], g[2], g[3],
                        F.pow(det, static_cast<std::int64_t>(m) - K));
}

}  // namespace

Matrix<RatFun> act(const RatField& R, const RepSpace& V, const Mat2R& g0) {
  Mat2R g = g0;
  for (int i = 0; i < V.frob; ++i)
    for (auto& x : g) x = rat_frob(R, x);
  RatFun det = mat2_det(R, g);
  if (det.is_zero()) throw std::invalid_argument("act: singular matrix");
  const GF& F = R.base();
  RatOps o{&R};
  auto from_int = [&](std::uint32_t v) { return R.constant(F.from_int(v)); };
  if (!V.dual)
    return natural_matrix(o, from_int, F.p(), V.k, g[0], g[1], g[2], g[3],
                          R.pow(det, static_cast<std::int64_t>(V.m) - V.k));
  Mat2R gi = mat2_inv(R, g);
  RatFun di = R.inv(det);
  return transpose(natural_matrix(o, from_int, F.p(), V.k, gi[0], gi[1], gi[2], gi[3],
                                  R.pow(di, static_cast<std::int64_t>(V.m) - V.k)));
}

Matrix<Elt> act(const GF& F, const RepSpace& V, const Mat2F& g0) {
  Mat2F g = frob_mat(F, g0, V.frob);
  if (!V.dual) return primal_const(F, V.k, V.m, g);
  return transpose(primal_const(F, V.k, V.m, mat2_inv(F, g)));
}

Matrix<Elt> act_restricted(const GF& F, const RepSpace& V, const Mat2F& g0, const std::vector<int>& xs) {
  Mat2F g = frob_mat(F, g0, V.frob);
  const Elt det = mat2_det(F, g);
  if (!det) throw std::invalid_argument("act: singular matrix");
  const std::size_t n = xs.size();
  const int K = V.k;
  const std::uint32_t p = F.p();
  Matrix<Elt> M(n, n, 0);
  const bool diag = g[1] == 0 && g[2] == 0;
  const bool upper = g[0] == 1 && g[3] == 1 && g[2] == 0;
  const bool lower = g[0] == 1 && g[3] == 1 && g[1] == 0;
  if (diag) {
    // the dual of a diagonal action is the primal action of the inverse
    Mat2F h = V.dual ? mat2_inv(F, g) : g;
    const Elt dh = mat2_det(F, h);
    const Elt sc = F.pow(dh, static_cast<std::int64_t>(V.m) - K);
    for (std::size_t r = 0; r < n; ++r) {
      const int i = xs[r];
      M(r, r) = F.mul(sc, F.mul(F.pow(h[3], i), F.pow(h[0], K - i)));
    }
    return M;
  }
  if (upper || lower) {
    // primal entry (row X^r, col X^i)
    const Elt x = upper ? g[1] : g[2];
    const Elt xs_sign = V.dual ? x : F.neg(x);  // the dual uses the inverse, which negates x
    for (std::size_t ci = 0; ci < n; ++ci)
      for (std::size_t ri = 0; ri < n; ++ri) {
        // for the dual, entry (row, col) is the primal-of-inverse entry (col, row)
        const int row = V.dual ? xs[ci] : xs[ri];
        const int col = V.dual ? xs[ri] : xs[ci];
        std::uint32_t bc;
        int e;
        if (upper) {
          e = col - row;
          bc = binom_mod(col, row, p);
        } else {
          e = row - col;
          bc = binom_mod(K - col, e, p);
        }
        if (e < 0 || !bc) continue;
        M(ri, ci) = F.mul(F.from_int(bc), F.pow(xs_sign, e));
      }
    return M;
  }
  Matrix<Elt> full = act(F, V, g0);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) M(r, c) = full(V.pos(xs[r]), V.pos(xs[c]));
  return M;
}

// ---------------------------------------------------------------- L_k and E(k)

std::uint64_t lk_dim(std::uint32_t p, std::uint64_t k) {
  std::uint64_t d = 1;
  for (int di : digits_base(k, p)) d *= static_cast<std::uint64_t>(di) + 1;
  return d;
}

SubspaceMarker lk_basis(std::uint32_t q, int k) {
  if (k < 0) throw std::invalid_argument("lk_basis: k < 0");
  const std::uint32_t p = char_of(q);
  SubspaceMarker S;
  S.parent = RepSpace{q, k, 0, false, 0};
  for (int i = 0; i <= k; ++i)
    if (binom_mod(k, i, p)) S.xexps.push_back(i);
  return S;
}

std::vector<int> e_set(std::uint32_t p, int k) {
  if (k < 0) throw std::invalid_argument("e_set: k < 0");
  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, int>, std::vector<int>> memo;
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = memo.find({p, k});
    if (it != memo.end()) return it->second;
  }
  std::vector<int> out;
  const int ip = static_cast<int>(p);
  if (k <= ip - 1) {
    out = {0};
  } else {
    const int k0 = k % ip;
    for (int e : e_set(p, (k - k0) / ip)) out.push_back(ip * e);
    if (k0 <= ip - 2)
      for (int e : e_set(p, (k - k0 - ip) / ip)) out.push_back(k0 + 1 + ip * e);
    std::sort(out.begin(), out.end());
  }
  std::lock_guard<std::mutex> lk(mu);
  memo.emplace(std::make_pair(p, k), out);
  return out;
}

std::vector<Constituent> decompose_delta(std::uint32_t q, int k, int m) {
  std::vector<Constituent> out;
  for (int e : e_set(char_of(q), k)) out.push_back({k - 2 * e, m - e});
  return out;
}

// ---------------------------------------------------------------- D_s and C_p

int hyperderivative_obstruction(std::uint32_t p, int k, int s) {
  for (int i = 1; i <= s; ++i)
    if (binom_mod(k + s - 1, i, p)) return i;
  return 0;
}

std::vector<int> admissible_s(std::uint32_t p, int K) {
  std::vector<int> out;
  for (int s = 1; K - 2 * s >= 2; ++s)
    if (!hyperderivative_obstruction(p, K - 2 * s, s)) out.push_back(s);
  return out;
}

IntertwinerMap hyperderivative(std::uint32_t q, int k, int s, int m) {
  if (k < 2 || s < 1) throw std::invalid_argument("hyperderivative: need k >= 2 and s >= 1");
  const std::uint32_t p = char_of(q);
  if (int i = hyperderivative_obstruction(p, k, s))
    throw std::invalid_argument("hyperderivative: C(" + std::to_string(k + s - 1) + ", " + std::to_string(i) +
                                ") is nonzero mod " + std::to_string(p));
  IntertwinerMap f;
  f.source = RepSpace{q, k - 2 + 2 * s, m + s, false, 0};
  f.target = RepSpace{q, k - 2, m, false, 0};
  f.matrix = Matrix<Elt>(f.target.dim(), f.source.dim(), 0);
  const int Ks = f.source.k;
  const std::uint32_t sign = (s % 2) ? p - 1 : 1;
  for (int i = s; i <= Ks - s; ++i) {
    std::uint32_t b = binom_mod(i, s, p);
    if (!b) continue;
    f.matrix(f.target.pos(i - s), f.source.pos(i)) = static_cast<Elt>(b * sign % p);
  }
  return f;
}

std::vector<int> hyperderivative_kernel_monomials(std::uint32_t q, int k, int s) {
  const std::uint32_t p = char_of(q);
  std::vector<int> out;
  for (int i = 0; i <= k - 2 + 2 * s; ++i)
    if (!binom_mod(i, s, p)) out.push_back(i);
  return out;
}

IntertwinerMap cartier(std::uint32_t q, int k, int m) {
  if (k < 2) throw std::invalid_argument("cartier: need k >= 2");
  const std::uint32_t p = char_of(q);
  const int ip = static_cast<int>(p);
  IntertwinerMap f;
  f.source = RepSpace{q, ip * k - 2, ip * m - 1, false, 0};
  f.target = RepSpace{q, k - 2, m - 1, false, 0};
  f.semilinearity = 1;
  f.matrix = Matrix<Elt>(f.target.dim(), f.source.dim(), 0);
  // source monomial X^{i-1}Y^{j-1}, i + j = pk
  for (int i = ip; i < ip * k; i += ip) f.matrix(f.target.pos(i / ip - 1), f.source.pos(i - 1)) = 1;
  return f;
}

std::vector<Elt> apply_map(const GF& F, const IntertwinerMap& f, const std::vector<Elt>& v0) {
  if (v0.size() != f.source.dim()) throw std::invalid_argument("apply_map: dimension mismatch");
  std::vector<Elt> v = v0;
  for (auto& x : v)
    for (int i = 0; i < f.semilinearity; ++i) x = F.pth_root(x);
  FqOps o{&F};
  return mat_vec(o, f.matrix, v);
}

// ---------------------------------------------------------------- Steinberg tensor product

SteinbergReport steinberg_tensor_check(std::uint32_t q, int k, int trials, std::uint64_t seed) {
  SteinbergReport rep;
  const std::uint32_t p = char_of(q);
  std::uint32_t e = 0;
  for (std::uint32_t x = q; x > 1; x /= p) ++e;
  GFPtr F = GF::make(p, e);
  std::vector<int> dg = digits_base(static_cast<std::uint64_t>(k), p);
  if (dg.empty()) dg = {0};
  // enumerate tensor basis: tuples a_i in [0, k_i]; lexicographic with a_0 fastest
  std::size_t total = 1;
  for (int d : dg) total *= static_cast<std::size_t>(d) + 1;
  std::vector<int> image(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t r = idx;
    int x = 0, pw = 1;
    for (int d : dg) {
      x += static_cast<int>(r % (d + 1)) * pw;
      r /= d + 1;
      pw *= static_cast<int>(p);
    }
    image[idx] = x;
  }
  std::vector<int> sorted = image;
  std::sort(sorted.begin(), sorted.end());
  rep.image_matches = sorted == lk_basis(q, k).xexps;

  // Φ as a (k+1) x total matrix
  const RepSpace Vk{q, k, 0, false, 0};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Elt> U(0, F->size() - 1);
  rep.equivariant = true;
  for (int t = 0; t < trials; ++t) {
    Mat2F g;
    do {
      for (auto& x : g) x = U(rng);
    } while (!mat2_det(*F, g));
    // tensor product action: Kronecker of the twisted factors, index a_0 fastest
    Matrix<Elt> T(1, 1, 1);
    for (std::size_t i = 0; i < dg.size(); ++i) {
      Matrix<Elt> A = act(*F, RepSpace{q, dg[i], 0, false, static_cast<int>(i)}, g);
      // new index = a_0 + (d_0+1)*(...) so the new factor is the slow index
      Matrix<Elt> N(T.rows * A.rows, T.cols * A.cols, 0);
      for (std::size_t ar = 0; ar < A.rows; ++ar)
        for (std::size_t ac = 0; ac < A.cols; ++ac) {
          if (!A(ar, ac)) continue;
          for (std::size_t tr = 0; tr < T.rows; ++tr)
            for (std::size_t tc = 0; tc < T.cols; ++tc)
              if (T(tr, tc)) N(ar * T.rows + tr, ac * T.cols + tc) = F->mul(A(ar, ac), T(tr, tc));
        }
      T = std::move(N);
    }
    // A factor's position r corresponds to X-exponent d_i - r; convert the tensor index
    auto tensor_xexp = [&](std::size_t idx) {
      int x = 0, pw = 1;
      for (int d : dg) {
        int r = static_cast<int>(idx % (d + 1));
        idx /= d + 1;
        x += (d - r) * pw;
        pw *= static_cast<int>(p);
      }
      return x;
    };
    Matrix<Elt> Ak = act(*F, Vk, g);
    // compare Ak·Φ with Φ·T columnwise
    for (std::size_t c = 0; c < total && rep.equivariant; ++c) {
      const int xc = tensor_xexp(c);
      for (std::size_t r = 0; r < total; ++r) {
        const int xr = tensor_xexp(r);
        if (Ak(Vk.pos(xr), Vk.pos(xc)) != T(r, c)) {
          rep.equivariant = false;
          rep.detail = "action mismatch at trial " + std::to_string(t);
          break;
        }
      }
      // rows outside the image must vanish
      std::vector<char> in(static_cast<std::size_t>(k) + 1, 0);
      for (int x : image) in[static_cast<std::size_t>(x)] = 1;
      for (int x = 0; x <= k && rep.equivariant; ++x)
        if (!in[static_cast<std::size_t>(x)] && Ak(Vk.pos(x), Vk.pos(xc))) {
          rep.equivariant = false;
          rep.detail = "image not stable at trial " + std::to_string(t);
        }
    }
    ++rep.trials;
    if (!rep.equivariant) break;
  }
  if (!rep.image_matches && rep.detail.empty()) rep.detail = "image differs from L_k";
  return rep;
}

// ---------------------------------------------------------------- elementary dual action

std::vector<Elementary> elementary_word(const GF& F, const std::array<Poly, 4>& h) {
  Poly a = h[0], b = h[1], c = h[2], d = h[3];
  std::vector<Elementary> word;
  while (!c.empty()) {
    if (a.empty() || poly::deg(a) < poly::deg(c)) {
      std::swap(a, c);
      std::swap(b, d);
      word.push_back({ElemKind::Swap, {}});
      continue;
    }
    Poly qq, rr;
    poly::divmod(F, a, c, qq, rr);
    a = std::move(rr);
    b = poly::sub(F, b, poly::mul(F, qq, d));
    word.push_back({ElemKind::Upper, qq});
  }
  if (a.empty() || d.empty()) throw std::invalid_argument("elementary_word: singular matrix");
  word.push_back({ElemKind::DiagY, d});
  if (!b.empty()) word.push_back({ElemKind::Upper, b});
  word.push_back({ElemKind::DiagX, a});
  return word;
}

namespace {

// out[xi] += c * t^shift * v[xr]   (vectors indexed by X-exponent)
inline void acc(const GF& F, Poly& out, const Poly& v, Elt c, std::size_t shift) {
  if (v.empty() || !c) return;
  poly::axpy_shift(F, out, v, c, shift);
}

}  // namespace

PolyVec apply_mt(const GF& F, const BinomTable& B, int K, const Elementary& E, const PolyVec& v0) {
  if (static_cast<int>(v0.size()) != K + 1) throw std::invalid_argument("apply_mt: dimension mismatch");
  if (B.max_n() < K) throw std::invalid_argument("apply_mt: binomial table too small");
  const std::size_t n = v0.size();
  // switch to X-exponent indexing: x[i] = v0[K - i]
  PolyVec x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = v0[n - 1 - i];
  PolyVec out(n);
  switch (E.kind) {
    case ElemKind::Swap:
      for (std::size_t i = 0; i < n; ++i) out[i] = x[n - 1 - i];
      break;
    case ElemKind::DiagX:
    case ElemKind::DiagY: {
      Poly pw{1};
      // exponent of b at X-exponent i: i for DiagX, K - i for DiagY
      std::vector<Poly> pows(n);
      for (std::size_t e = 0; e < n; ++e) {
        pows[e] = pw;
        if (e + 1 < n) pw = poly::mul(F, pw, E.b);
      }
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t e = E.kind == ElemKind::DiagX ? i : n - 1 - i;
        out[i] = x[i].empty() ? Poly{} : poly::mul(F, pows[e], x[i]);
      }
      break;
    }
    case ElemKind::Upper:
    case ElemKind::Lower: {
      out = x;
      // commuting monomial factors β t^e, applied one at a time
      for (std::size_t e = 0; e < E.b.size(); ++e) {
        const Elt beta = E.b[e];
        if (!beta) continue;
        PolyVec cur = out;
        std::vector<Elt> bp(n, 1);
        for (std::size_t i = 1; i < n; ++i) bp[i] = F.mul(bp[i - 1], beta);
        for (std::size_t i = 0; i < n; ++i) {
          Poly o;
          if (E.kind == ElemKind::Upper) {
            // out_i = Σ_{r ≤ i} C(i, r) β^{i-r} t^{e(i-r)} v_r
            for (std::size_t r = 0; r <= i; ++r) {
              std::uint32_t bc = B(static_cast<int>(i), static_cast<int>(r));
              if (bc) acc(F, o, cur[r], F.mul(F.from_int(bc), bp[i - r]), e * (i - r));
            }
          } else {
            // out_i = Σ_s C(K-i, s) β^s t^{es} v_{i+s}
            for (std::size_t s = 0; i + s < n; ++s) {
              std::uint32_t bc = B(K - static_cast<int>(i), static_cast<int>(s));
              if (bc) acc(F, o, cur[i + s], F.mul(F.from_int(bc), bp[s]), e * s);
            }
          }
          out[i] = std::move(o);
        }
      }
      break;
    }
  }
  PolyVec res(n);
  for (std::size_t i = 0; i < n; ++i) res[i] = std::move(out[n - 1 - i]);
  return res;
}

PolyVec apply_mt_word(const GF& F, const BinomTable& B, int K, const std::vector<Elementary>& word, PolyVec v) {
  for (std::size_t i = word.size(); i-- > 0;) v = apply_mt(F, B, K, word[i], v);
  return v;
}

}  // namespace dmf
