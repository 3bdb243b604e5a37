#include <random>

#include "doctest.h"
#include "dmf/hecke.hpp"
#include "oracles.hpp"

using namespace dmf;

namespace {

BiPoly product(const GF& F, const std::vector<BiPoly>& fs) {
  BiPoly r{Poly{1}};
  for (const auto& f : fs) r = bipoly::mul(F, r, f);
  return r;
}

struct Case {
  std::uint32_t q;
  int k, l;
};

const std::vector<Case> kSpaces{{3, 10, 0}, {3, 22, 0}, {3, 28, 1}, {3, 34, 0}, {2, 9, 0},
                                {2, 14, 0}, {4, 14, 1}, {4, 17, 1}, {5, 20, 2}, {5, 26, 1}};

}  // namespace

TEST_CASE("small weights reproduce the reference charpolys exactly") {
  GFPtr F = gf_of(3);
  for (const auto& w : oracle::kSmall) {
    CAPTURE(w.k);
    CAPTURE(w.l);
    auto S = cochain_space(3, w.k, w.l);
    REQUIRE(S.dim() == w.dim);
    auto H = hecke_matrix(S);
    CHECK(H.alpha == hecke_alpha(w.k, w.l));
    BiPoly cp = hecke_charpoly(*F, H);
    if (w.other_degrees.empty()) {
      std::vector<BiPoly> fs;
      for (const auto& l : w.linear) fs.push_back(oracle::linear(l));
      CHECK(cp == product(*F, fs));
    } else {
      auto fc = bivariate_factor(*F, cp);
      CHECK(oracle::matches(fc, w));
    }
  }
}

TEST_CASE("Hecke matrix is independent of the coset representatives") {
  for (const auto& c : kSpaces) {
    GFPtr F = gf_of(c.q);
    auto S = cochain_space(c.q, c.k, c.l);
    REQUIRE(S.dim() > 0);
    std::mt19937_64 rng(c.k);
    for (Elt at : {Elt{0}, Elt{1}}) {
      auto ref = hecke_matrix(S, at);
      const Poly P{F->neg(at), 1};
      for (int trial = 0; trial < 3; ++trial) {
        HeckeOptions opt;
        for (Elt b = 0; b < c.q; ++b)
          opt.b_reps.push_back(poly::add(*F, Poly{b}, poly::mul(*F, P, poly::random(*F, 2, rng))));
        std::shuffle(opt.b_reps.begin(), opt.b_reps.end(), rng);
        CHECK(hecke_matrix(S, at, opt).matrix.a == ref.matrix.a);
      }
    }
    HeckeOptions dup;
    dup.b_reps.assign(c.q, Poly{1});
    CHECK_THROWS_AS(hecke_matrix(S, 0, dup), std::invalid_argument);
  }
}

TEST_CASE("T_t commutes with T_{t-c}") {
  for (const auto& c : kSpaces) {
    GFPtr F = gf_of(c.q);
    auto S = cochain_space(c.q, c.k, c.l);
    auto T0 = hecke_matrix(S, 0);
    for (Elt a = 1; a < std::min<std::uint32_t>(c.q, 3); ++a) {
      auto Ta = hecke_matrix(S, a);
      CAPTURE(c.k);
      CHECK(poly_mat_mul(*F, T0.matrix, Ta.matrix).a == poly_mat_mul(*F, Ta.matrix, T0.matrix).a);
    }
  }
}

TEST_CASE("substitution t -> t - c gives T_{t-c}") {
  for (const auto& c : kSpaces) {
    GFPtr F = gf_of(c.q);
    auto S = cochain_space(c.q, c.k, c.l);
    auto T0 = hecke_matrix(S, 0);
    for (Elt a = 1; a < c.q; ++a) {
      CAPTURE(c.k);
      CAPTURE(a);
      auto sub = substitute(*F, T0, a);
      auto direct = hecke_matrix(S, a);
      CHECK(sub.c == a);
      CHECK(hecke_charpoly(*F, sub) == hecke_charpoly(*F, direct));
    }
  }
}

TEST_CASE("charpoly is monic of the right degree") {
  for (const auto& c : kSpaces) {
    GFPtr F = gf_of(c.q);
    auto H = hecke_matrix(cochain_space(c.q, c.k, c.l));
    BiPoly cp = hecke_charpoly(*F, H);
    CHECK(bipoly::deg(cp) == static_cast<int>(H.dim()));
    CHECK(cp.back() == Poly{1});
  }
  GFPtr F3 = gf_of(3);
  CHECK(hecke_charpoly(*F3, hecke_matrix(cochain_space(3, 4, 0))) == BiPoly{Poly{1}});
}

TEST_CASE("eigenvalues follow D_s and Frobenius maps") {
  auto fr = check_frobenius(3, 22, 0);
  CHECK(fr.ok());
  CHECK_FALSE(fr.zero_map);
  GFPtr F = gf_of(3);
  // t^4 -> t^12 and -t^10 - t^2 -> -t^30 - t^6
  bool saw = false;
  for (const auto& p : fr.pairs)
    if (p.source == oracle::linear({{10, 1}, {2, 1}})) {
      CHECK(p.target == oracle::linear({{30, 1}, {6, 1}}));
      CHECK(p.divides);
      saw = true;
    }
  CHECK(saw);
  auto ds = check_ds_intertwine(3, 62, 0, 2);
  CHECK(ds.ok());
  CHECK(ds.commutes);
  CHECK_THROWS_AS(check_ds_intertwine(3, 10, 0, 1), std::invalid_argument);
}
