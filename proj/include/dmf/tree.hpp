#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "dmf/ratfun.hpp"
#include "dmf/reps.hpp"

namespace dmf {

/// Oriented edge g·e₀ (sign +1) or its reverse (sign -1). e₀ runs from v₀ = [O²] to v₁ = diag(1, 1/t)·v₀.
struct TreeEdge {
  Mat2R g;
  int sign = 1;
};

/// γ·(g·e₀) = e_n (sign +1) or e_n* (sign -1), with γ ∈ GL₂(F_q[t]).
struct EdgeReduction {
  Mat2R gamma;
  int n = 0;
  int sign = 1;
};

Mat2R mat2_identity(const RatField& R);
Mat2R mat2_from_polys(const RatField& R, const std::array<Poly, 4>& m);
/// Throws std::invalid_argument if some entry is not a polynomial.
std::array<Poly, 4> mat2_to_polys(const Mat2R& m);

/// diag(1, t^{-n}); represents both v_n and e_n.
Mat2R half_line(const RatField& R, int n);

/// g·v₀ = h·v₀.
bool vertex_equal(const RatField& R, const Mat2R& g, const Mat2R& h);
/// g·e₀ = h·e₀ as oriented edges.
bool lattice_equal(const RatField& R, const Mat2R& g, const Mat2R& h);
/// The same test for edges carrying orientation signs.
bool edge_equal(const RatField& R, const TreeEdge& a, const TreeEdge& b);
/// Origin and terminus representatives of an oriented edge.
Mat2R edge_origin(const RatField& R, const TreeEdge& e);
Mat2R edge_terminus(const RatField& R, const TreeEdge& e);

/// γ ∈ GL₂(F_q[t]) and m ≥ 0 with γ·g·v₀ = v_m.
std::pair<Mat2R, int> reduce_vertex(const RatField& R, const Mat2R& g);
/// Throws std::invalid_argument on singular input.
EdgeReduction reduce_edge(const RatField& R, const Mat2R& g);
EdgeReduction reduce_edge(const RatField& R, const TreeEdge& e);

/// Generators and order of Stab_Γ(v_n) and Stab_Γ(e_n), Γ = GL₂(F_q[t]).
struct Stabilizer {
  std::vector<Mat2R> gens;
  std::uint64_t order = 0;
};
Stabilizer stabilizer_vertex(const RatField& R, int n);
Stabilizer stabilizer_edge(const RatField& R, int n);
/// Coset representatives of Stab(v_n)/Stab(e_{n-1}) for n ≥ 1, and of GL₂(F_q)/B₂(F_q) for n = 0.
std::vector<Mat2R> star_cosets(const RatField& R, int n);

/// ρ(h)v = det(h)^{1-l}·M(h)^T v on V_{k,l}, for h ∈ GL₂(F_q[t]) with constant determinant.
PolyVec act_dual_poly(const GF& F, const BinomTable& B, int k, int l, const std::array<Poly, 4>& h, const PolyVec& v);
/// M(h)^T v without the determinant factor; h may have any nonzero determinant.
PolyVec apply_mt_matrix(const GF& F, const BinomTable& B, int K, const std::array<Poly, 4>& h, const PolyVec& v);

struct CochainOptions {
  /// Nonzero: right-multiply every coset representative by a random element of the edge stabilizer.
  std::uint64_t coset_seed = 0;
  /// Safeguard on the support bound; 0 means 4k.
  int max_support = 0;
};

/// Γ-invariant harmonic cochains with values in V_{k,l}, determined by c₀ = c(e₀).
struct CochainSpace {
  std::uint32_t q = 0;
  int k = 0, l = 0;
  RepSpace rep;
  /// c₀ vectors in reduced echelon form over F_q; pivots[b] is the pivot coordinate of basis[b].
  std::vector<std::vector<Elt>> basis;
  std::vector<std::size_t> pivots;
  /// prop[n][b] = c_n for c₀ = basis[b], n < support_bound; c_n = 0 for n ≥ support_bound.
  std::vector<std::vector<PolyVec>> prop;
  int support_bound = 0;

  std::size_t dim() const { return basis.size(); }
};

/// Zero space when k < 2 or k ≢ 2l mod (q-1). Throws std::runtime_error if the support
/// exceeds the safeguard.
CochainSpace cochain_space(std::uint32_t q, int k, int l, const CochainOptions& opt = {});

/// c_n for c₀ = Σ coeffs[b]·basis[b] (coefficients in F_q[t]).
PolyVec propagated(const GF& F, const CochainSpace& S, const std::vector<Poly>& coeffs, int n);
/// Value of the cochain Σ coeffs[b]·c^{(b)} on an edge.
PolyVec evaluate_cochain(const CochainSpace& S, const std::vector<Poly>& coeffs, const TreeEdge& e);
/// Coordinates of v in the basis, read off at the pivots; throws std::runtime_error if v is
/// not in the F_q[t]-span of the basis.
std::vector<Poly> solve_in_basis(const GF& F, const CochainSpace& S, const PolyVec& v);

/// One harmonicity step: Σ_{λ ∈ F_q} M(u_{λtⁿ})^T v.
PolyVec propagate_step(const GF& F, const BinomTable& B, int K, int n, const PolyVec& v);

}  // namespace dmf
