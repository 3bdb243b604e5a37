#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dmf/reps.hpp"

namespace dmf {

enum class GroupLabel { SL2, GL2, SB2, B2, Custom };

/// A subgroup of GL_2(F_q) given by generators.
struct FiniteGroupSpec {
  GroupLabel label = GroupLabel::Custom;
  std::uint32_t q = 0;
  std::vector<Mat2F> gens;

  /// Fixed generating sets:
  ///   SL2: [[1,β],[0,1]], [[1,0],[β,1]] for β in an F_p-basis of F_q, plus diag(g, g^{-1}) when q > 3
  ///   SB2: [[1,β],[0,1]] and diag(g, g^{-1});  B2: SB2 plus diag(g, 1);  GL2: SL2 plus diag(g, 1)
  /// with g the least primitive element.
  static FiniteGroupSpec named(GroupLabel label, std::uint32_t q);
  static FiniteGroupSpec custom(std::uint32_t q, std::vector<Mat2F> gens);
  /// |SL2| = q(q-1)(q+1), |GL2| = q(q-1)^2(q+1), |SB2| = q(q-1), |B2| = q(q-1)^2; 0 for custom.
  std::uint64_t expected_order() const;
  std::string name() const;
};

/// Throws std::invalid_argument if a generator lies outside the named group (or is singular).
void validate_group(const FiniteGroupSpec& H);
/// Order of the generated group by closure; stops and returns 0 once it exceeds `limit`.
std::uint64_t group_order_by_closure(const FiniteGroupSpec& H, std::uint64_t limit = 1u << 22);

/// Basis of V^H. With `xexps` empty, vectors are in the native coordinates of V. Otherwise they are
/// in the coordinates of the H-stable monomial subspace `xexps` (listed by ascending X-exponent).
std::vector<std::vector<Elt>> fixed_space(const RepSpace& V, const FiniteGroupSpec& H,
                                          const std::vector<int>& xexps = {});

/// dim V^{SB2(F_q)} - dim V^{SL2(F_q)} for the monomial subspace `xexps` of V (all of V if empty).
int hom_st_dim(const RepSpace& V, const std::vector<int>& xexps = {});
/// hom_st_dim on L_k ⊂ Δ_k.
int hom_st_dim_lk(std::uint32_t q, int k);

/// Coefficient of U^k in U^{q+1} / ((1 - U^{q+1})(1 - U^{q-1})).
std::int64_t dickson_series_dim(std::uint32_t q, int k);

/// Closed formulas for q in {2, 3, 5}; throws std::invalid_argument otherwise.
std::int64_t dim_lk_closed(std::uint32_t q, std::int64_t k);

/// Z[T]/(f^[e](T) - T) for q = p^e, the Grothendieck ring of SL_2(F_q) (Reduzzi).
/// Elements are integer residues of degree < q. Arithmetic is exact and overflow-checked.
class K0Ring {
 public:
  using IPoly = std::vector<std::int64_t>;  // low degree first

  explicit K0Ring(std::uint32_t q);
  std::uint32_t q() const { return q_; }
  std::uint32_t p() const { return p_; }

  /// f(T) = Σ_j (-1)^j p/(p-j) C(p-j, j) T^{p-2j}.
  static IPoly f_poly(std::uint32_t p);
  /// Σ_j (-1)^j q/(q-j) C(q-j, j) T^{q-2j}.
  static IPoly f_closed(std::uint32_t q);
  /// g_k(T) = Σ_j (-1)^j C(k-j, j) T^{k-2j}.
  static IPoly g_poly(int k);
  static IPoly mul(const IPoly& a, const IPoly& b);
  static IPoly add(const IPoly& a, const IPoly& b);
  /// a(b(T)).
  static IPoly compose(const IPoly& a, const IPoly& b);

  /// f^[r], the r-fold composite (f^[0] = T).
  IPoly f_iter(std::uint32_t r) const;
  /// f^[e](T) - T.
  const IPoly& modulus() const { return mod_; }
  IPoly reduce(IPoly a) const;
  IPoly mul_mod(const IPoly& a, const IPoly& b) const { return reduce(mul(a, b)); }

  /// Class of L̄_k: ∏_d (∏_{r<e} g_{d_r} ∘ f^[r])^{n_k(d)}, reduced.
  IPoly lk_class(std::int64_t k) const;
  /// Coordinates λ(0..q-1) of a reduced class in the basis g_0, ..., g_{q-1}.
  std::vector<std::int64_t> in_delta_basis(const IPoly& cls) const;

 private:
  std::uint32_t q_, p_, e_;
  IPoly mod_;
  std::vector<IPoly> ld_;  // class of L̄_d for d < q
};

/// λ_k(q-1): multiplicity of the Steinberg module in L̄_k, via K0Ring.
std::int64_t dim_lk_k0(std::uint32_t q, std::int64_t k);

}  // namespace dmf
