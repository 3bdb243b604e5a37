#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dmf/charpoly.hpp"
#include "dmf/factor.hpp"
#include "dmf/tree.hpp"

namespace dmf {

/// Matrix of T_𝔭, 𝔭 = t - c, on a cochain space, in its echelon basis (column b = image of basis b).
struct HeckeMatrix {
  std::uint32_t q = 0;
  int k = 0, l = 0;
  Elt c = 0;
  /// Emitted matrix = 𝔭^alpha · (raw double-coset action).
  int alpha = 0;
  Matrix<Poly> matrix;

  std::size_t dim() const { return matrix.rows; }
};

struct HeckeOptions {
  /// Representatives b of F_q[t]/𝔭 for the matrices [[𝔭, b], [0, 1]]; empty means the elements of F_q.
  std::vector<Poly> b_reps;
};

/// Calibration exponent: the emitted matrix is 𝔭^l times the raw action.
inline int hecke_alpha(int /*k*/, int l) { return l; }

/// Throws std::runtime_error if a raw image leaves the cochain space.
HeckeMatrix hecke_matrix(const CochainSpace& S, Elt c = 0, const HeckeOptions& opt = {});
/// Matrix at t - c obtained from the one at t by t ↦ t - c.
HeckeMatrix substitute(const GF& F, const HeckeMatrix& H, Elt c);
/// det(X - T).
BiPoly hecke_charpoly(const GF& F, const HeckeMatrix& H);

Matrix<Poly> poly_mat_mul(const GF& F, const Matrix<Poly>& A, const Matrix<Poly>& B);

/// An irreducible factor of the source charpoly and its predicted image on the target.
struct FactorCorrespondence {
  BiPoly source, target;
  int mult = 1;
  bool map_nonzero = false;  // the cochain map is nonzero on the source factor's primary part
  bool divides = false;      // target factor divides the target charpoly
};

/// Compares Hecke data on two spaces linked by an equivariant map of coefficient modules.
struct IntertwineReport {
  std::string kind;  // "ds" or "frobenius"
  std::uint32_t q = 0;
  int k_src = 0, l_src = 0, k_tgt = 0, l_tgt = 0, s = 0;
  std::size_t dim_src = 0, dim_tgt = 0;
  bool zero_map = false;
  bool image_in_space = false;
  bool commutes = false;  // T_tgt Φ = t^s Φ T_src, resp. T_tgt Φ = Φ T_src^(p)
  std::vector<FactorCorrespondence> pairs;
  std::string detail;
  bool ok() const;
};

/// D_s^*: V_{k,l} → V_{k+2s,l+s} on cochains at the prime t. Throws std::invalid_argument if
/// D_s into weight k is not defined.
IntertwineReport check_ds_intertwine(std::uint32_t q, int k, int l, int s);
/// The Cartier dual V_{k,l} → V_{pk,pl}: eigenvalues a ↦ a^p.
IntertwineReport check_frobenius(std::uint32_t q, int k, int l);

}  // namespace dmf
