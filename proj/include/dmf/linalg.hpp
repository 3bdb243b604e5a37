#pragma once

#include <cstddef>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "dmf/poly.hpp"
#include "dmf/ratfun.hpp"

namespace dmf {

template <class T>
struct Matrix {
  std::size_t rows = 0, cols = 0;
  std::vector<T> a;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, const T& fill = T{}) : rows(r), cols(c), a(r * c, fill) {}
  T& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
  bool operator==(const Matrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

// Field adaptors used by the generic elimination routines.
struct FqOps {
  const GF* F;
  using value_type = Elt;
  Elt zero() const { return 0; }
  Elt one() const { return 1; }
  bool is_zero(Elt x) const { return x == 0; }
  Elt add(Elt x, Elt y) const { return F->add(x, y); }
  Elt sub(Elt x, Elt y) const { return F->sub(x, y); }
  Elt neg(Elt x) const { return F->neg(x); }
  Elt mul(Elt x, Elt y) const { return F->mul(x, y); }
  Elt div(Elt x, Elt y) const { return F->div(x, y); }
};

struct RatOps {
  const RatField* R;
  using value_type = RatFun;
  RatFun zero() const { return R->zero(); }
  RatFun one() const { return R->one(); }
  bool is_zero(const RatFun& x) const { return x.is_zero(); }
  RatFun add(const RatFun& x, const RatFun& y) const { return R->add(x, y); }
  RatFun sub(const RatFun& x, const RatFun& y) const { return R->sub(x, y); }
  RatFun neg(const RatFun& x) const { return R->neg(x); }
  RatFun mul(const RatFun& x, const RatFun& y) const { return R->mul(x, y); }
  RatFun div(const RatFun& x, const RatFun& y) const { return R->div(x, y); }
};

/// Ring adaptor for F_q[t] (no division).
struct PolyOps {
  const GF* F;
  using value_type = Poly;
  Poly zero() const { return {}; }
  Poly one() const { return Poly{1}; }
  bool is_zero(const Poly& x) const { return x.empty(); }
  Poly add(const Poly& x, const Poly& y) const { return poly::add(*F, x, y); }
  Poly sub(const Poly& x, const Poly& y) const { return poly::sub(*F, x, y); }
  Poly neg(const Poly& x) const { return poly::neg(*F, x); }
  Poly mul(const Poly& x, const Poly& y) const { return poly::mul(*F, x, y); }
};

template <class Ops>
Matrix<typename Ops::value_type> identity(const Ops& ops, std::size_t n) {
  Matrix<typename Ops::value_type> I(n, n, ops.zero());
  for (std::size_t i = 0; i < n; ++i) I(i, i) = ops.one();
  return I;
}

template <class Ops>
Matrix<typename Ops::value_type> mat_mul(const Ops& ops, const Matrix<typename Ops::value_type>& A,
                                         const Matrix<typename Ops::value_type>& B) {
  if (A.cols != B.rows) throw std::invalid_argument("mat_mul: dimension mismatch");
  Matrix<typename Ops::value_type> C(A.rows, B.cols, ops.zero());
  for (std::size_t i = 0; i < A.rows; ++i)
    for (std::size_t k = 0; k < A.cols; ++k) {
      const auto& aik = A(i, k);
      if (ops.is_zero(aik)) continue;
      for (std::size_t j = 0; j < B.cols; ++j)
        if (!ops.is_zero(B(k, j))) C(i, j) = ops.add(C(i, j), ops.mul(aik, B(k, j)));
    }
  return C;
}

template <class Ops>
std::vector<typename Ops::value_type> mat_vec(const Ops& ops, const Matrix<typename Ops::value_type>& A,
                                              const std::vector<typename Ops::value_type>& v) {
  if (A.cols != v.size()) throw std::invalid_argument("mat_vec: dimension mismatch");
  std::vector<typename Ops::value_type> r(A.rows, ops.zero());
  for (std::size_t i = 0; i < A.rows; ++i)
    for (std::size_t j = 0; j < A.cols; ++j)
      if (!ops.is_zero(A(i, j)) && !ops.is_zero(v[j])) r[i] = ops.add(r[i], ops.mul(A(i, j), v[j]));
  return r;
}

template <class T>
Matrix<T> transpose(const Matrix<T>& A) {
  Matrix<T> B(A.cols, A.rows);
  for (std::size_t i = 0; i < A.rows; ++i)
    for (std::size_t j = 0; j < A.cols; ++j) B(j, i) = A(i, j);
  return B;
}

/// RREF over a prime field F_p with entries in [0, p); returns pivot columns.
std::vector<std::size_t> rref_prime(std::uint32_t p, Matrix<Elt>& M);

/// In-place reduced row echelon form; returns pivot columns (lowest index first).
template <class Ops>
std::vector<std::size_t> rref(const Ops& ops, Matrix<typename Ops::value_type>& M) {
  if constexpr (std::is_same_v<Ops, FqOps>)
    if (ops.F->is_prime()) return rref_prime(ops.F->p(), M);
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < M.cols && r < M.rows; ++c) {
    std::size_t pr = M.rows;
    for (std::size_t i = r; i < M.rows; ++i)
      if (!ops.is_zero(M(i, c))) {
        pr = i;
        break;
      }
    if (pr == M.rows) continue;
    if (pr != r)
      for (std::size_t j = 0; j < M.cols; ++j) std::swap(M(pr, j), M(r, j));
    auto inv = ops.div(ops.one(), M(r, c));
    for (std::size_t j = c; j < M.cols; ++j)
      if (!ops.is_zero(M(r, j))) M(r, j) = ops.mul(M(r, j), inv);
    for (std::size_t i = 0; i < M.rows; ++i) {
      if (i == r || ops.is_zero(M(i, c))) continue;
      auto f = M(i, c);
      for (std::size_t j = c; j < M.cols; ++j)
        if (!ops.is_zero(M(r, j))) M(i, j) = ops.sub(M(i, j), ops.mul(f, M(r, j)));
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

template <class Ops>
std::size_t rank(const Ops& ops, Matrix<typename Ops::value_type> M) {
  return rref(ops, M).size();
}

/// Echelonized kernel basis: one vector per free column f, with entry 1 at f and
/// zeros at the other free columns.
template <class Ops>
std::vector<std::vector<typename Ops::value_type>> kernel_basis(const Ops& ops, Matrix<typename Ops::value_type> M) {
  auto piv = rref(ops, M);
  std::vector<char> is_piv(M.cols, 0);
  for (auto c : piv) is_piv[c] = 1;
  std::vector<std::vector<typename Ops::value_type>> out;
  for (std::size_t f = 0; f < M.cols; ++f) {
    if (is_piv[f]) continue;
    std::vector<typename Ops::value_type> v(M.cols, ops.zero());
    v[f] = ops.one();
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = ops.neg(M(i, f));
    out.push_back(std::move(v));
  }
  return out;
}

/// Hessenberg characteristic polynomial over a finite field, coefficients low degree first, monic.
Poly charpoly_hessenberg(const GF& F, Matrix<Elt> A);

/// Division-free (Berkowitz) characteristic polynomial over F_q[t]: entry i of the result is the
/// coefficient of X^i.
std::vector<Poly> charpoly_berkowitz(const GF& F, const Matrix<Poly>& A);

/// Row-reduce a list of vectors over F_q; returns a basis of their span in RREF.
std::vector<std::vector<Elt>> span_basis(const GF& F, const std::vector<std::vector<Elt>>& vecs, std::size_t dim);

}  // namespace dmf
