#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "dmf/linalg.hpp"

namespace dmf {

/// Δ_k ⊗ det^m, or its dual when dual = true. Coordinate j of a vector is the
/// coefficient of X^{k-j} Y^j (X-exponent descending); for the dual it is the
/// coefficient of the dual basis vector ξ_{k-j}.
///
/// The action on Δ_k is γ·X^iY^j = det^{-i-j}(dX-bY)^i(-cX+aY)^j and the twist
/// multiplies by det(γ)^m, so a·Id acts as a^{2m-k}. The dual acts by the
/// inverse transpose. frob = r means γ acts through its entrywise p^r-th power.
struct RepSpace {
  std::uint32_t q = 0;
  int k = 0;
  int m = 0;
  bool dual = false;
  int frob = 0;

  std::size_t dim() const { return static_cast<std::size_t>(k) + 1; }
  /// Position of the monomial with X-exponent i.
  std::size_t pos(int xexp) const { return static_cast<std::size_t>(k - xexp); }
  std::string to_string() const;
};

/// V_{k,l} = (Δ_{k-2} ⊗ det^{l-1})^*.
RepSpace v_kl(std::uint32_t q, int k, int l);

/// Entries (a, b, c, d) of [[a, b], [c, d]].
using Mat2R = std::array<RatFun, 4>;
using Mat2F = std::array<Elt, 4>;

Matrix<RatFun> act(const RatField& R, const RepSpace& V, const Mat2R& g);
Matrix<Elt> act(const GF& F, const RepSpace& V, const Mat2F& g);

/// Action restricted to the monomials with the given X-exponents (rows and columns).
/// Fast when g is unipotent upper/lower or diagonal; otherwise computed in full.
Matrix<Elt> act_restricted(const GF& F, const RepSpace& V, const Mat2F& g, const std::vector<int>& xexps);

Mat2R mat2_mul(const RatField& R, const Mat2R& x, const Mat2R& y);
Mat2R mat2_inv(const RatField& R, const Mat2R& x);
RatFun mat2_det(const RatField& R, const Mat2R& x);
Mat2F mat2_mul(const GF& F, const Mat2F& x, const Mat2F& y);
Mat2F mat2_inv(const GF& F, const Mat2F& x);
Elt mat2_det(const GF& F, const Mat2F& x);

/// Smallest prime dividing q (q a prime power).
std::uint32_t char_of(std::uint32_t q);
/// Base-b digits, least significant first; empty for 0.
std::vector<int> digits_base(std::uint64_t n, std::uint64_t b);
/// C(n, k) mod p by Lucas' theorem; 0 if k < 0 or k > n.
std::uint32_t binom_mod(std::int64_t n, std::int64_t k, std::uint32_t p);

struct SubspaceMarker {
  RepSpace parent;
  std::vector<int> xexps;       // monomial subspace (ascending X-exponents), or
  Matrix<Elt> basis;            // explicit basis as columns when xexps is empty
  std::size_t dim() const { return xexps.empty() ? basis.cols : xexps.size(); }
};

/// L_k ⊂ Δ_k: monomials X^iY^{k-i} with C(k, i) ≢ 0 mod p.
SubspaceMarker lk_basis(std::uint32_t q, int k);
/// ∏ (k_i + 1) over base-p digits.
std::uint64_t lk_dim(std::uint32_t p, std::uint64_t k);

/// The set E(k) with Δ_k = ⊕_{k' ∈ k - 2E(k)} L_{k'} in K_0. Memoized.
std::vector<int> e_set(std::uint32_t p, int k);

struct Constituent {
  int k;
  int m;
  bool operator==(const Constituent& o) const { return k == o.k && m == o.m; }
};
/// Composition factors L_{k'} ⊗ det^{m'} of Δ_k ⊗ det^m (each with multiplicity one),
/// k' descending.
std::vector<Constituent> decompose_delta(std::uint32_t q, int k, int m);

struct IntertwinerMap {
  RepSpace source, target;
  Matrix<Elt> matrix;  // target.dim() x source.dim(), constant entries
  int semilinearity = 0;
};

/// Smallest i in 1..s with C(k+s-1, i) ≢ 0 mod p, or 0 if (k, s) is admissible.
int hyperderivative_obstruction(std::uint32_t p, int k, int s);
/// The s with D_s defined into weight k (target Δ_{k-2}).
std::vector<int> admissible_s(std::uint32_t p, int k);
/// D_s: Δ_{k-2+2s} ⊗ det^{m+s} → Δ_{k-2} ⊗ det^m, X^iY^j ↦ (-1)^s C(i, s) X^{i-s}Y^{j-s}.
/// Throws std::invalid_argument naming the failing binomial index if inadmissible.
IntertwinerMap hyperderivative(std::uint32_t q, int k, int s, int m);
/// X-exponents of the source monomials killed by D_s.
std::vector<int> hyperderivative_kernel_monomials(std::uint32_t q, int k, int s);

/// C_p: Δ_{pk-2} ⊗ det^{pm-1} → Δ_{k-2} ⊗ det^{m-1}, semilinear with respect to a ↦ a^{1/p}:
/// a·X^{i-1}Y^{j-1} ↦ a^{1/p} X^{i/p-1}Y^{j/p-1} when p | i, else 0.
IntertwinerMap cartier(std::uint32_t q, int k, int m);
/// Applies a semilinear map: matrix · (coordinatewise p^{-s}-th root of v).
std::vector<Elt> apply_map(const GF& F, const IntertwinerMap& f, const std::vector<Elt>& v);

struct SteinbergReport {
  bool image_matches = false;
  bool equivariant = false;
  std::size_t trials = 0;
  std::string detail;
  bool ok() const { return image_matches && equivariant; }
};
/// Checks ⊗_i Δ_{k_i}^{(i)} → Δ_k, ⊗ f_i ↦ ∏ f_i(X^{p^i}, Y^{p^i}): image equals L_k and
/// the map intertwines the actions for random elements of GL_2(F_q).
SteinbergReport steinberg_tensor_check(std::uint32_t q, int k, int trials = 8, std::uint64_t seed = 0);

// ---- dual action over F_q[t] by elementary matrices (used by the tree and Hecke code) ----

/// Coordinates as in RepSpace (position j ↔ dual of X^{K-j}Y^j), polynomial entries.
using PolyVec = std::vector<Poly>;

enum class ElemKind { Upper, Lower, DiagX, DiagY, Swap };
/// Upper: [[1,b],[0,1]]; Lower: [[1,0],[b,1]]; DiagX: diag(b,1); DiagY: diag(1,b); Swap: [[0,1],[1,0]].
struct Elementary {
  ElemKind kind;
  Poly b;
};

/// Writes h ∈ M_2(F_q[t]) with det h ≠ 0 as a product E_1 E_2 ... E_r of elementary matrices.
std::vector<Elementary> elementary_word(const GF& F, const std::array<Poly, 4>& h);

/// Pascal triangle mod p up to row K, shared and cached.
class BinomTable {
 public:
  BinomTable(std::uint32_t p, int K);
  std::uint32_t operator()(int n, int r) const { return (r < 0 || r > n) ? 0 : rows_[tri(n) + r]; }
  int max_n() const { return K_; }

 private:
  static std::size_t tri(int n) { return static_cast<std::size_t>(n) * (n + 1) / 2; }
  int K_;
  std::vector<std::uint8_t> rows_;
};

/// v ↦ M(E)^T v, where M(γ) is the matrix of f(X,Y) ↦ f(aX+bY, cX+dY) on Δ_K.
/// M(·)^T is multiplicative, so a word is applied right to left.
PolyVec apply_mt(const GF& F, const BinomTable& B, int K, const Elementary& E, const PolyVec& v);
PolyVec apply_mt_word(const GF& F, const BinomTable& B, int K, const std::vector<Elementary>& word, PolyVec v);

}  // namespace dmf
