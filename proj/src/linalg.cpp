#include "dmf/linalg.hpp"

namespace dmf {

Poly charpoly_hessenberg(const GF& F, Matrix<Elt> A) {
  const std::size_t n = A.rows;
  if (A.cols != n) throw std::invalid_argument("charpoly: matrix not square");
  // reduce to upper Hessenberg form by similarity
  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t piv = n;
    for (std::size_t i = m; i < n; ++i)
      if (A(i, m - 1)) {
        piv = i;
        break;
      }
    if (piv == n) continue;
    if (piv != m) {
      for (std::size_t j = 0; j < n; ++j) std::swap(A(piv, j), A(m, j));
      for (std::size_t i = 0; i < n; ++i) std::swap(A(i, piv), A(i, m));
    }
    const Elt inv = F.inv(A(m, m - 1));
    for (std::size_t i = m + 1; i < n; ++i) {
      Elt u = A(i, m - 1);
      if (!u) continue;
      u = F.mul(u, inv);
      const Elt nu = F.neg(u);
      for (std::size_t j = 0; j < n; ++j)
        if (A(m, j)) A(i, j) = F.add(A(i, j), F.mul(nu, A(m, j)));
      for (std::size_t r = 0; r < n; ++r)
        if (A(r, i)) A(r, m) = F.add(A(r, m), F.mul(u, A(r, i)));
    }
  }
  // p_k = charpoly of leading k x k block
  std::vector<Poly> p(n + 1);
  p[0] = Poly{1};
  for (std::size_t k = 1; k <= n; ++k) {
    // p_k = (X - a_kk) p_{k-1} - sum_{i<k} a_ik * prod_{j=i+1}^{k} h_{j,j-1} * p_{i-1}
    Poly xp(p[k - 1].size() + 1, 0);
    for (std::size_t i = 0; i < p[k - 1].size(); ++i) xp[i + 1] = p[k - 1][i];
    Poly cur = poly::sub(F, xp, poly::scale(F, p[k - 1], A(k - 1, k - 1)));
    Elt prod = 1;
    for (std::size_t i = k - 1; i-- > 0;) {
      prod = F.mul(prod, A(i + 1, i));
      if (!prod) break;
      Elt c = F.mul(prod, A(i, k - 1));
      if (c) cur = poly::sub(F, cur, poly::scale(F, p[i], c));
    }
    p[k] = std::move(cur);
  }
  return p[n];
}

std::vector<Poly> charpoly_berkowitz(const GF& F, const Matrix<Poly>& A) {
  const std::size_t n = A.rows;
  if (A.cols != n) throw std::invalid_argument("charpoly: matrix not square");
  PolyOps ops{&F};
  // coefficient vector, highest degree first: C = [1, c_1, ..., c_n] for X^n + c_1 X^{n-1} + ...
  std::vector<Poly> C{Poly{1}, poly::neg(F, A(0, 0))};
  for (std::size_t r = 1; r < n; ++r) {
    // leading r x r block is A[0..r), new row/col index r
    std::vector<Poly> R(r), S(r);
    for (std::size_t j = 0; j < r; ++j) {
      R[j] = A(r, j);
      S[j] = A(j, r);
    }
    // Toeplitz column: [1, -a_rr, -R S, -R A S, -R A^2 S, ...]
    std::vector<Poly> col(r + 2);
    col[0] = Poly{1};
    col[1] = poly::neg(F, A(r, r));
    std::vector<Poly> v = S;
    for (std::size_t k = 2; k < r + 2; ++k) {
      Poly dot;
      for (std::size_t j = 0; j < r; ++j)
        if (!R[j].empty() && !v[j].empty()) dot = poly::add(F, dot, poly::mul(F, R[j], v[j]));
      col[k] = poly::neg(F, dot);
      if (k + 1 < r + 2) {
        std::vector<Poly> nv(r);
        for (std::size_t i = 0; i < r; ++i) {
          Poly acc;
          for (std::size_t j = 0; j < r; ++j)
            if (!A(i, j).empty() && !v[j].empty()) acc = poly::add(F, acc, poly::mul(F, A(i, j), v[j]));
          nv[i] = std::move(acc);
        }
        v = std::move(nv);
      }
    }
    // new C = T * C where T is (r+2) x (r+1) lower-triangular Toeplitz built from col
    std::vector<Poly> NC(r + 2);
    for (std::size_t i = 0; i < r + 2; ++i) {
      Poly acc;
      for (std::size_t j = 0; j <= std::min(i, r); ++j)
        if (!col[i - j].empty() && !C[j].empty()) acc = poly::add(F, acc, poly::mul(F, col[i - j], C[j]));
      NC[i] = std::move(acc);
    }
    C = std::move(NC);
  }
  (void)ops;
  std::vector<Poly> out(n + 1);
  for (std::size_t i = 0; i <= n; ++i) out[n - i] = C[i];
  return out;
}

std::vector<std::vector<Elt>> span_basis(const GF& F, const std::vector<std::vector<Elt>>& vecs, std::size_t dim) {
  Matrix<Elt> M(vecs.size(), dim, 0);
  for (std::size_t i = 0; i < vecs.size(); ++i)
    for (std::size_t j = 0; j < dim; ++j) M(i, j) = vecs[i][j];
  FqOps ops{&F};
  auto piv = rref(ops, M);
  std::vector<std::vector<Elt>> out(piv.size(), std::vector<Elt>(dim));
  for (std::size_t i = 0; i < piv.size(); ++i)
    for (std::size_t j = 0; j < dim; ++j) out[i][j] = M(i, j);
  return out;
}

namespace {

// Row operations with a compile-time modulus when P > 0 so the inner loop vectorizes.
template <std::uint32_t P>
std::vector<std::size_t> rref_prime_impl(std::uint32_t p_rt, Matrix<Elt>& M) {
  const std::uint32_t p = P ? P : p_rt;
  auto inv_mod = [&](std::uint32_t a) {
    std::uint64_t r = 1, b = a, e = p - 2;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
  };
  const std::size_t R = M.rows, C = M.cols;
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < C && r < R; ++c) {
    std::size_t pr = R;
    for (std::size_t i = r; i < R; ++i)
      if (M(i, c)) {
        pr = i;
        break;
      }
    if (pr == R) continue;
    Elt* rowr = &M.a[r * C];
    if (pr != r) std::swap_ranges(rowr, rowr + C, &M.a[pr * C]);
    const std::uint32_t inv = inv_mod(rowr[c]);
    if (inv != 1)
      for (std::size_t j = c; j < C; ++j) rowr[j] = static_cast<Elt>(static_cast<std::uint64_t>(rowr[j]) * inv % p);
    for (std::size_t i = 0; i < R; ++i) {
      if (i == r) continue;
      Elt* rowi = &M.a[i * C];
      if (!rowi[c]) continue;
      const std::uint32_t f = p - rowi[c];
      if constexpr (P == 2) {
        for (std::size_t j = c; j < C; ++j) rowi[j] ^= rowr[j];
      } else if constexpr (P != 0) {
        for (std::size_t j = c; j < C; ++j) rowi[j] = (rowi[j] + f * rowr[j]) % P;
      } else {
        for (std::size_t j = c; j < C; ++j)
          rowi[j] = static_cast<Elt>((rowi[j] + static_cast<std::uint64_t>(f) * rowr[j]) % p);
      }
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

}  // namespace

std::vector<std::size_t> rref_prime(std::uint32_t p, Matrix<Elt>& M) {
  switch (p) {
    case 2: return rref_prime_impl<2>(p, M);
    case 3: return rref_prime_impl<3>(p, M);
    case 5: return rref_prime_impl<5>(p, M);
    case 7: return rref_prime_impl<7>(p, M);
    default: return rref_prime_impl<0>(p, M);
  }
}

}  // namespace dmf
