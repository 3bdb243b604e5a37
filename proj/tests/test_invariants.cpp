#include <stdexcept>

#include "doctest.h"
#include "dmf/invariants.hpp"
#include "dmf/reps.hpp"

using namespace dmf;

TEST_CASE("fixed_space examples") {
  // the trivial representation
  RepSpace triv{3, 0, 0, false, 0};
  CHECK(fixed_space(triv, FiniteGroupSpec::named(GroupLabel::SL2, 3)).size() == 1);
  CHECK(fixed_space(triv, FiniteGroupSpec::named(GroupLabel::GL2, 3)).size() == 1);
  // Δ_2 over F_3: Y^2 spans the SB2-invariants, no SL2-invariants
  RepSpace d2{3, 2, 0, false, 0};
  auto sb = fixed_space(d2, FiniteGroupSpec::named(GroupLabel::SB2, 3));
  REQUIRE(sb.size() == 1);
  CHECK(fixed_space(d2, FiniteGroupSpec::named(GroupLabel::SL2, 3)).empty());
  CHECK(hom_st_dim(d2) == 1);
  // Dickson invariant X^3Y - XY^3 spans Δ_4^{SL2} over F_3
  RepSpace d4{3, 4, 0, false, 0};
  auto sl = fixed_space(d4, FiniteGroupSpec::named(GroupLabel::SL2, 3));
  REQUIRE(sl.size() == 1);
  const auto& v = sl[0];
  CHECK(v[d4.pos(4)] == 0);
  CHECK(v[d4.pos(0)] == 0);
  CHECK(v[d4.pos(3)] != 0);
  CHECK(v[d4.pos(1)] == (3 - v[d4.pos(3)]) % 3);
}

TEST_CASE("fixed vectors are fixed by every generator") {
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 9u})
    for (auto lab : {GroupLabel::SL2, GroupLabel::SB2, GroupLabel::B2, GroupLabel::GL2})
      for (int k = 0; k <= 24; ++k) {
        RepSpace V{q, k, k % 3, k % 2 == 1, 0};
        auto H = FiniteGroupSpec::named(lab, q);
        GFPtr F = gf_of(q);
        FqOps o{F.get()};
        for (const auto& v : fixed_space(V, H))
          for (const auto& g : H.gens) CHECK(mat_vec(o, act(*F, V, g), v) == v);
      }
}

TEST_CASE("named groups have the expected order") {
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u})
    for (auto lab : {GroupLabel::SL2, GroupLabel::SB2, GroupLabel::B2, GroupLabel::GL2}) {
      auto H = FiniteGroupSpec::named(lab, q);
      CAPTURE(H.name());
      CHECK(group_order_by_closure(H) == H.expected_order());
    }
}

TEST_CASE("validate_group rejects bad generators") {
  Mat2F diag2{2, 0, 0, 1};  // det 2 over F_3
  CHECK_THROWS_AS(validate_group(FiniteGroupSpec{GroupLabel::SL2, 3, {diag2}}), std::invalid_argument);
  CHECK_THROWS_AS(validate_group(FiniteGroupSpec{GroupLabel::SB2, 3, {Mat2F{1, 0, 1, 1}}}), std::invalid_argument);
  CHECK_THROWS_AS(validate_group(FiniteGroupSpec::custom(3, {Mat2F{1, 1, 1, 1}})), std::invalid_argument);
  CHECK_NOTHROW(validate_group(FiniteGroupSpec::custom(3, {diag2})));
}

TEST_CASE("Dickson series examples") {
  CHECK(dickson_series_dim(3, 4) == 1);
  CHECK(dickson_series_dim(3, 10) == 2);
  CHECK(dickson_series_dim(3, 3) == 0);
  CHECK(dickson_series_dim(2, 3) == 1);
}

TEST_CASE("closed formula examples") {
  CHECK(dim_lk_closed(3, 0) == 0);
  CHECK(dim_lk_closed(3, 2) == 1);
  CHECK(dim_lk_closed(2, 1) == 1);
  CHECK_THROWS_AS(dim_lk_closed(7, 4), std::invalid_argument);
  CHECK_THROWS_AS(dim_lk_closed(4, 4), std::invalid_argument);
}

TEST_CASE("K0 ring basics") {
  CHECK(K0Ring::f_poly(3) == K0Ring::IPoly{0, -3, 0, 1});
  CHECK(K0Ring::g_poly(2) == K0Ring::IPoly{-1, 0, 1});
  CHECK(K0Ring::g_poly(0) == K0Ring::IPoly{1});
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 25u, 27u}) {
    K0Ring R(q);
    const std::uint32_t p = R.p();
    std::uint32_t e = 0;
    for (std::uint32_t x = 1; x < q; x *= p) ++e;
    CHECK(R.f_iter(e) == K0Ring::f_closed(q));
    // f^[e] - T ≡ T^q - T mod p
    auto m = R.modulus();
    REQUIRE(m.size() == q + 1);
    for (std::size_t i = 0; i <= q; ++i) {
      std::int64_t want = i == q ? 1 : (i == 1 ? -1 : 0);
      CHECK(((m[i] - want) % static_cast<std::int64_t>(p)) == 0);
    }
    // g_k for k < q reduce to themselves; the trivial class is g_0
    CHECK(R.in_delta_basis(K0Ring::IPoly{1}) == [&] {
      std::vector<std::int64_t> v(q, 0);
      v[0] = 1;
      return v;
    }());
  }
}

TEST_CASE("three dimension engines agree") {
  for (auto [q, K] : {std::pair{3u, 1000}, {2u, 1000}, {5u, 120}, {4u, 200}, {9u, 120}, {7u, 100}}) {
    int bad = 0;
    for (int k = 0; k <= K; ++k) {
      const std::int64_t a = hom_st_dim_lk(q, k), b = dim_lk_k0(q, k);
      if (a != b) ++bad;
      if (q == 2 || q == 3 || q == 5)
        if (dim_lk_closed(q, k) != b) ++bad;
    }
    CAPTURE(q);
    CHECK(bad == 0);
  }
  // closed formula and K0 far beyond what linear algebra reaches
  for (std::int64_t k = 0; k <= 800; ++k) CHECK(dim_lk_closed(5, k) == dim_lk_k0(5, k));
  for (std::int64_t k : {3280, 3281, 6561, 59048, 59050}) CHECK(dim_lk_closed(3, k) == dim_lk_k0(3, k));
}

TEST_CASE("Steinberg multiplicity is additive over the decomposition of Δ_k") {
  for (std::uint32_t q : {2u, 3u, 4u, 5u})
    for (int k = 0; k <= 300; ++k) {
      std::int64_t sum = 0;
      for (const auto& c : decompose_delta(q, k, 0)) sum += dim_lk_k0(q, c.k);
      CHECK(sum == hom_st_dim(RepSpace{q, k, 0, false, 0}));
    }
}

TEST_CASE("V_{k,l} Steinberg multiplicity matches the Dickson series") {
  for (std::uint32_t q : {2u, 3u, 5u})
    for (int k = 2; k <= 120; ++k)
      for (int l = 0; l < static_cast<int>(q) - 1 || l == 0; ++l) {
        if ((k - 2 * l) % static_cast<int>(q - 1) != 0) continue;
        CAPTURE(q);
        CAPTURE(k);
        CHECK(hom_st_dim(v_kl(q, k, l)) == dickson_series_dim(q, k));
      }
}
