#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dmf/factor.hpp"

namespace dmf {

/// Tuples (c_0, ..., c_{n-1}) ∈ {±1}^n whose number i of -1 entries satisfies i ≡ 1 - n (mod 3).
struct SignSet {
  int n = 0;
  std::vector<std::vector<int>> tuples;  // entries +1 / -1, lexicographic with -1 before +1
  std::vector<int> minus_counts;         // the admissible i, ascending
  std::size_t size() const { return tuples.size(); }
};

SignSet sign_sets(int n);
/// (2^n - (-1)^n) / 3.
std::int64_t s_n_formula(int n);
/// Σ_{0 ≤ i ≤ n, i ≡ 1-n (3)} C(n, i).
std::int64_t s_n_binomial_sum(int n);

/// Weight k_n = 1 + 3^n, type n mod 2, over F_3.
struct SpecialPrediction {
  int n = 0, k = 0, l = 0;
  std::vector<std::vector<int>> signs;
  std::vector<Poly> eigenvalues;  // t^{k/2} Σ c_i t^{-3^i}, in the order of `signs`
};

SpecialPrediction special_eigenvalues(int n);

struct ResidualFactor {
  int degree = 0;
  int mult = 1;
  BiPoly f;
  GaloisCertificate galois;
};

struct MaedaReport {
  int n = 0, k = 0, l = 0;
  std::size_t dim = 0, dim_opposite = 0;
  std::vector<Poly> predicted;
  std::vector<Poly> found_linear;  // after stripping X - t
  bool stripped_single_cusp = false;
  std::vector<ResidualFactor> residual;
  std::vector<Poly> opposite_linear;  // linear roots in the other type, X - t excluded
  std::vector<ResidualFactor> opposite_residual;
  bool linear_match = false;
  bool opposite_clean = false;
  bool galois_all_certified = false;
  bool pass() const { return linear_match && opposite_clean; }
  std::string diff;  // human-readable mismatch description; empty on success
};

struct MaedaOptions {
  std::size_t galois_trials = 200;
  std::uint64_t seed = 0;
};

MaedaReport verify_weight(int n, const MaedaOptions& opt = {});

}  // namespace dmf
