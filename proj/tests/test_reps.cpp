#include <algorithm>
#include <random>

#include "doctest.h"
#include "dmf/charpoly.hpp"
#include "dmf/reps.hpp"

using namespace dmf;

namespace {

Mat2F random_gl2(const GF& F, std::mt19937_64& rng) {
  std::uniform_int_distribution<Elt> U(0, F.size() - 1);
  Mat2F g;
  do {
    for (auto& x : g) x = U(rng);
  } while (!mat2_det(F, g));
  return g;
}

Mat2R random_gl2_rat(const RatField& R, std::mt19937_64& rng, int maxdeg) {
  const GF& F = R.base();
  Mat2R g;
  do {
    for (auto& x : g) x = R.from_poly(poly::random(F, rng() % (maxdeg + 1), rng));
  } while (mat2_det(R, g).is_zero());
  return g;
}

Matrix<Elt> mul(const GF& F, const Matrix<Elt>& A, const Matrix<Elt>& B) { return mat_mul(FqOps{&F}, A, B); }

Matrix<Elt> twist_frob(const GF& F, Matrix<Elt> A) {
  for (auto& x : A.a) x = F.frob(x);
  return A;
}

// D_s formula without the admissibility check, for composition identities
Matrix<Elt> raw_ds(std::uint32_t p, int src_k, int s) {
  RepSpace S{p, src_k, 0, false, 0}, T{p, src_k - 2 * s, 0, false, 0};
  Matrix<Elt> M(T.dim(), S.dim(), 0);
  for (int i = s; i <= src_k - s; ++i) {
    std::uint32_t b = binom_mod(i, s, p);
    if (b) M(T.pos(i - s), S.pos(i)) = (s % 2) ? (p - b) % p : b;
  }
  return M;
}

}  // namespace

TEST_CASE("act: identity and explicit examples") {
  auto F = GF::make(3, 1);
  RatField R(F);
  Mat2R id{R.one(), R.zero(), R.zero(), R.one()};
  for (bool dual : {false, true})
    for (int k : {0, 1, 4, 7}) {
      auto A = act(R, RepSpace{3, k, 2, dual, 0}, id);
      CHECK(A == identity(RatOps{&R}, static_cast<std::size_t>(k) + 1));
    }

  // diag(a,1) on Δ_k ⊗ det^m: X^iY^j ↦ a^{m-i} X^iY^j
  auto F9 = GF::make(3, 2);
  const Elt a = F9->generator();
  for (int k : {0, 3, 6})
    for (int m : {-2, 0, 1}) {
      RepSpace V{9, k, m, false, 0};
      auto A = act(*F9, V, Mat2F{a, 0, 0, 1});
      for (int i = 0; i <= k; ++i) CHECK(A(V.pos(i), V.pos(i)) == F9->pow(a, m - i));
    }

  // [[1,b],[0,1]] on Δ_2: X^2 ↦ X^2 - 2bXY + b^2Y^2
  const Poly b{0, 1};
  auto U = act(R, RepSpace{3, 2, 0, false, 0}, Mat2R{R.one(), R.from_poly(b), R.zero(), R.one()});
  CHECK(U(0, 0) == R.one());
  CHECK(U(1, 0) == R.from_poly(poly::scale(*F, b, F->from_int(-2))));
  CHECK(U(2, 0) == R.from_poly(poly::mul(*F, b, b)));

  CHECK_THROWS(act(R, RepSpace{3, 2, 0, false, 0}, Mat2R{R.one(), R.one(), R.one(), R.one()}));
}

TEST_CASE("act: central character") {
  for (std::uint32_t q : {3u, 5u, 9u}) {
    std::uint32_t p = char_of(q), e = q == 9 ? 2 : 1;
    auto F = GF::make(p, e);
    for (Elt a : F->elements()) {
      if (!a) continue;
      for (int k : {0, 2, 5})
        for (int m : {-1, 0, 3}) {
          auto A = act(*F, RepSpace{q, k, m, false, 0}, Mat2F{a, 0, 0, a});
          auto D = act(*F, RepSpace{q, k, m, true, 0}, Mat2F{a, 0, 0, a});
          for (std::size_t i = 0; i <= static_cast<std::size_t>(k); ++i) {
            CHECK(A(i, i) == F->pow(a, 2 * m - k));
            CHECK(D(i, i) == F->pow(a, k - 2 * m));
          }
        }
    }
  }
}

TEST_CASE("act is a homomorphism over F_q(t)") {
  std::mt19937_64 rng(11);
  for (std::uint32_t q : {2u, 3u}) {
    auto F = GF::make(q, 1);
    RatField R(F);
    RatOps o{&R};
    for (int it = 0; it < 100; ++it) {
      const int k = it % 21;
      const bool dual = it % 2;
      RepSpace V{q, k, static_cast<int>(rng() % 5) - 2, dual, 0};
      Mat2R g1 = random_gl2_rat(R, rng, 3), g2 = random_gl2_rat(R, rng, 3);
      CHECK(act(R, V, mat2_mul(R, g1, g2)) == mat_mul(o, act(R, V, g1), act(R, V, g2)));
    }
  }
}

TEST_CASE("act is a homomorphism over F_q, including Frobenius twists") {
  std::mt19937_64 rng(12);
  for (std::uint32_t q : {4u, 5u, 9u}) {
    std::uint32_t p = char_of(q);
    auto F = GF::make(p, q == p ? 1 : 2);
    for (int it = 0; it < 60; ++it) {
      RepSpace V{q, static_cast<int>(rng() % 25), static_cast<int>(rng() % 7) - 3, it % 2 == 0,
                 static_cast<int>(rng() % 3)};
      Mat2F g1 = random_gl2(*F, rng), g2 = random_gl2(*F, rng);
      CHECK(act(*F, V, mat2_mul(*F, g1, g2)) == mul(*F, act(*F, V, g1), act(*F, V, g2)));
    }
  }
}

TEST_CASE("act_restricted matches the full action on elementary generators") {
  std::mt19937_64 rng(13);
  auto F = GF::make(3, 2);
  for (int it = 0; it < 60; ++it) {
    const int k = static_cast<int>(rng() % 30);
    RepSpace V{9, k, static_cast<int>(rng() % 5) - 2, it % 2 == 1, static_cast<int>(rng() % 2)};
    std::vector<int> xs;
    for (int i = 0; i <= k; ++i)
      if (rng() % 2) xs.push_back(i);
    Elt x = F->exp(rng());
    for (Mat2F g : {Mat2F{1, x, 0, 1}, Mat2F{1, 0, x, 1}, Mat2F{x, 0, 0, F->exp(rng())}, random_gl2(*F, rng)}) {
      auto full = act(*F, V, g);
      auto res = act_restricted(*F, V, g, xs);
      for (std::size_t r = 0; r < xs.size(); ++r)
        for (std::size_t c = 0; c < xs.size(); ++c) CHECK(res(r, c) == full(V.pos(xs[r]), V.pos(xs[c])));
    }
  }
}

TEST_CASE("lk_basis examples and dimension") {
  CHECK(lk_basis(3, 2).xexps == std::vector<int>{0, 1, 2});
  CHECK(lk_basis(3, 10).xexps == std::vector<int>{0, 1, 9, 10});
  CHECK(lk_basis(3, 8).dim() == 9);
  for (std::uint32_t p : {2u, 3u, 5u, 7u})
    for (int k = 0; k <= 300; ++k) CHECK(lk_basis(p, k).dim() == lk_dim(p, static_cast<std::uint64_t>(k)));
}

TEST_CASE("L_k is stable under the action") {
  std::mt19937_64 rng(14);
  for (std::uint32_t q : {3u, 4u, 5u}) {
    std::uint32_t p = char_of(q);
    auto F = GF::make(p, q == p ? 1 : 2);
    RatField R(F);
    for (int k = 0; k <= 40; ++k) {
      auto L = lk_basis(q, k);
      std::vector<char> in(static_cast<std::size_t>(k) + 1, 0);
      for (int x : L.xexps) in[static_cast<std::size_t>(x)] = 1;
      RepSpace V{q, k, 0, false, 0};
      auto A = act(*F, V, random_gl2(*F, rng));
      for (int c : L.xexps)
        for (int r = 0; r <= k; ++r)
          if (!in[static_cast<std::size_t>(r)]) CHECK(A(V.pos(r), V.pos(c)) == 0);
      if (k <= 12) {
        auto B = act(R, V, random_gl2_rat(R, rng, 2));
        for (int c : L.xexps)
          for (int r = 0; r <= k; ++r)
            if (!in[static_cast<std::size_t>(r)]) CHECK(B(V.pos(r), V.pos(c)).is_zero());
      }
    }
  }
}

TEST_CASE("L_k^* (x) det^{-k} has the characteristic polynomials of L_k for k <= q-1") {
  std::mt19937_64 rng(15);
  for (std::uint32_t q : {3u, 5u, 7u, 9u}) {
    std::uint32_t p = char_of(q);
    auto F = GF::make(p, q == p ? 1 : 2);
    for (int k = 0; k <= static_cast<int>(q) - 1; ++k)
      for (int it = 0; it < 10; ++it) {
        Mat2F g = random_gl2(*F, rng);
        // (Δ_k ⊗ det^k)^* = Δ_k^* ⊗ det^{-k}
        auto A = act(*F, RepSpace{q, k, k, true, 0}, g);
        auto B = act(*F, RepSpace{q, k, 0, false, 0}, g);
        CHECK(charpoly_hessenberg(*F, A) == charpoly_hessenberg(*F, B));
      }
  }
}

TEST_CASE("e_set and decompose_delta") {
  CHECK(e_set(3, 0) == std::vector<int>{0});
  CHECK(e_set(3, 2) == std::vector<int>{0});
  CHECK(e_set(3, 4) == std::vector<int>{0, 2});
  CHECK(e_set(3, 5) == std::vector<int>{0});
  CHECK(decompose_delta(3, 2, 0) == std::vector<Constituent>{{2, 0}});
  CHECK(decompose_delta(3, 4, 0) == std::vector<Constituent>{{4, 0}, {0, -2}});
  for (std::uint32_t p : {2u, 3u, 5u, 7u})
    for (int k = 0; k <= 500; ++k) {
      std::uint64_t total = 0;
      for (auto [kk, mm] : decompose_delta(p, k, 3)) {
        total += lk_dim(p, static_cast<std::uint64_t>(kk));
        // constituents share the central character a^{2m-k}
        CHECK(2 * mm - kk == 2 * 3 - k);
      }
      CHECK(total == static_cast<std::uint64_t>(k) + 1);
    }
}

TEST_CASE("decompose_delta: the top of Δ_4 over F_3 is det^{-2}") {
  // Δ_4 / L_4 is spanned by the image of X^2Y^2; the torus acts there by det^{-2}
  auto F = GF::make(3, 1);
  RepSpace V{3, 4, 0, false, 0};
  for (Elt x : {1u, 2u})
    for (Elt y : {1u, 2u}) {
      auto A = act(*F, V, Mat2F{x, 0, 0, y});
      CHECK(A(V.pos(2), V.pos(2)) == F->pow(F->mul(x, y), -2));
    }
  CHECK(decompose_delta(3, 4, 0)[1].m == -2);
}

TEST_CASE("hyperderivative examples") {
  auto D = hyperderivative(3, 2, 2, 0);
  CHECK(D.source.k == 4);
  CHECK(D.source.m == 2);
  CHECK(D.target.k == 0);
  CHECK(D.matrix(0, D.source.pos(2)) == 1);
  CHECK(D.matrix(0, D.source.pos(4)) == 0);
  try {
    hyperderivative(3, 4, 1, 0);
    CHECK(false);
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("C(4, 1)") != std::string::npos);
  }
  auto s66 = admissible_s(3, 66);
  CHECK(std::find(s66.begin(), s66.end(), 2) != s66.end());
  auto s98 = admissible_s(3, 98);
  CHECK(std::find(s98.begin(), s98.end(), 16) != s98.end());
}

TEST_CASE("admissible s are the partial digit sums of k-1") {
  for (std::uint32_t p : {2u, 3u, 5u})
    for (int K = 3; K <= 300; ++K) {
      auto dg = digits_base(static_cast<std::uint64_t>(K - 1), p);
      std::vector<int> expect;
      int s = 0, pw = 1;
      for (std::size_t j = 0; j + 1 < dg.size(); ++j) {
        s += dg[j] * pw;
        pw *= static_cast<int>(p);
        if (s >= 1 && K - 2 * s >= 2) expect.push_back(s);
      }
      std::sort(expect.begin(), expect.end());
      expect.erase(std::unique(expect.begin(), expect.end()), expect.end());
      CHECK(admissible_s(p, K) == expect);
    }
}

TEST_CASE("hyperderivatives are equivariant with the stated kernel") {
  std::mt19937_64 rng(16);
  int cases = 0;
  for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
    std::uint32_t p = char_of(q);
    auto F = GF::make(p, q == p ? 1 : 2);
    RatField R(F);
    for (int K = 4; K <= 62; ++K)
      for (int s : admissible_s(p, K)) {
        const int k = K - 2 * s;
        const int m = static_cast<int>(rng() % 5) - 2;
        auto D = hyperderivative(q, k, s, m);
        ++cases;
        for (int it = 0; it < 100; ++it) {
          Mat2F g = random_gl2(*F, rng);
          CHECK(mul(*F, D.matrix, act(*F, D.source, g)) == mul(*F, act(*F, D.target, g), D.matrix));
        }
        if (D.source.k <= 14) {
          Matrix<RatFun> Dr(D.matrix.rows, D.matrix.cols, R.zero());
          for (std::size_t i = 0; i < Dr.a.size(); ++i) Dr.a[i] = R.constant(D.matrix.a[i]);
          RatOps o{&R};
          for (int it = 0; it < 5; ++it) {
            Mat2R g = random_gl2_rat(R, rng, 2);
            CHECK(mat_mul(o, Dr, act(R, D.source, g)) == mat_mul(o, act(R, D.target, g), Dr));
          }
        }
        // kernel = span of the monomials X^iY^j with C(i,s) = 0 mod p
        auto ker = kernel_basis(FqOps{F.get()}, D.matrix);
        auto B = hyperderivative_kernel_monomials(q, k, s);
        CHECK(ker.size() == B.size());
        std::vector<char> inB(D.source.dim(), 0);
        for (int i : B) inB[D.source.pos(i)] = 1;
        for (auto& v : ker)
          for (std::size_t j = 0; j < v.size(); ++j)
            if (v[j]) CHECK(inB[j]);
      }
  }
  CHECK(cases > 20);
}

TEST_CASE("D_2 D_16 = D_16 D_2 = C(18,2) D_18 = 0 for q = 3") {
  // D_16 : Δ_96 → Δ_64 (target weight 66), D_2 : Δ_64 → Δ_60 (target weight 62)
  auto D16 = hyperderivative(3, 66, 16, 0);
  auto D2 = hyperderivative(3, 62, 2, 16);
  CHECK(D16.source.k == 96);
  CHECK(D2.source.k == D16.target.k);
  auto F = GF::make(3, 1);
  auto P = mul(*F, D2.matrix, D16.matrix);
  CHECK(std::all_of(P.a.begin(), P.a.end(), [](Elt x) { return x == 0; }));
  auto Q = mul(*F, raw_ds(3, 92, 16), raw_ds(3, 96, 2));
  CHECK(std::all_of(Q.a.begin(), Q.a.end(), [](Elt x) { return x == 0; }));
  CHECK(binom_mod(18, 2, 3) == 0);
}

TEST_CASE("cartier: example, semilinearity and equivariance") {
  auto C = cartier(3, 2, 1);
  CHECK(C.source.k == 4);
  CHECK(C.source.m == 2);
  CHECK(C.target.k == 0);
  CHECK(C.target.m == 0);
  // X^{i-1}Y^{j-1} with i = 3 is X^2Y^2
  CHECK(C.matrix(0, C.source.pos(2)) == 1);
  for (int x : {0, 1, 3, 4}) CHECK(C.matrix(0, C.source.pos(x)) == 0);

  auto F9 = GF::make(3, 2);
  auto C9 = cartier(9, 3, 0);
  std::mt19937_64 rng(17);
  for (int it = 0; it < 20; ++it) {
    std::vector<Elt> v(C9.source.dim());
    for (auto& x : v) x = static_cast<Elt>(rng() % 9);
    Elt a = static_cast<Elt>(1 + rng() % 8);
    std::vector<Elt> av = v;
    for (auto& x : av) x = F9->mul(a, x);
    auto lhs = apply_map(*F9, C9, av);
    auto rhs = apply_map(*F9, C9, v);
    for (std::size_t i = 0; i < lhs.size(); ++i) CHECK(lhs[i] == F9->mul(F9->pth_root(a), rhs[i]));
  }

  for (std::uint32_t q : {2u, 3u, 9u}) {
    std::uint32_t p = char_of(q);
    auto F = GF::make(p, q == p ? 1 : 2);
    for (int k = 2; k <= 10; ++k)
      for (int m : {-1, 0, 1, 2}) {
        auto Cp = cartier(q, k, m);
        for (int it = 0; it < 10; ++it) {
          Mat2F g = random_gl2(*F, rng);
          // C_p ∘ A_src(γ) = A_tgt(γ)^{(p)} ∘ C_p
          CHECK(mul(*F, Cp.matrix, act(*F, Cp.source, g)) ==
                mul(*F, twist_frob(*F, act(*F, Cp.target, g)), Cp.matrix));
        }
      }
  }
}

TEST_CASE("cartier kills the image of L_{pk-2}") {
  for (std::uint32_t q : {2u, 3u, 5u})
    for (int k = 2; k <= 10; ++k) {
      auto Cp = cartier(q, k, 0);
      for (int x : lk_basis(q, Cp.source.k).xexps)
        for (std::size_t r = 0; r < Cp.matrix.rows; ++r) CHECK(Cp.matrix(r, Cp.source.pos(x)) == 0);
    }
}

TEST_CASE("Steinberg tensor product") {
  for (std::uint32_t q : {2u, 3u, 4u, 5u})
    for (int k = 0; k <= 200; ++k) {
      auto r = steinberg_tensor_check(q, k, k <= 40 ? 4 : 0, static_cast<std::uint64_t>(k));
      CHECK_MESSAGE(r.image_matches, "q=", q, " k=", k);
      CHECK_MESSAGE(r.equivariant, "q=", q, " k=", k, " ", r.detail);
    }
}

TEST_CASE("elementary words reproduce the matrix and its dual action") {
  std::mt19937_64 rng(18);
  for (std::uint32_t q : {2u, 3u, 4u}) {
    std::uint32_t p = char_of(q);
    auto F = GF::make(p, q == p ? 1 : 2);
    RatField R(F);
    for (int it = 0; it < 40; ++it) {
      std::array<Poly, 4> h;
      do {
        for (auto& x : h) x = poly::random(*F, rng() % 4, rng);
      } while (poly::sub(*F, poly::mul(*F, h[0], h[3]), poly::mul(*F, h[1], h[2])).empty());
      auto word = elementary_word(*F, h);
      Mat2R prod{R.one(), R.zero(), R.zero(), R.one()};
      for (auto& E : word) {
        Mat2R e;
        switch (E.kind) {
          case ElemKind::Upper: e = {R.one(), R.from_poly(E.b), R.zero(), R.one()}; break;
          case ElemKind::Lower: e = {R.one(), R.zero(), R.from_poly(E.b), R.one()}; break;
          case ElemKind::DiagX: e = {R.from_poly(E.b), R.zero(), R.zero(), R.one()}; break;
          case ElemKind::DiagY: e = {R.one(), R.zero(), R.zero(), R.from_poly(E.b)}; break;
          case ElemKind::Swap: e = {R.zero(), R.one(), R.one(), R.zero()}; break;
        }
        prod = mat2_mul(R, prod, e);
      }
      Mat2R hr{R.from_poly(h[0]), R.from_poly(h[1]), R.from_poly(h[2]), R.from_poly(h[3])};
      CHECK(prod == hr);

      // with m = 0 the dual action is M(γ)^T
      const int K = static_cast<int>(rng() % 9);
      BinomTable B(p, K);
      auto A = act(R, RepSpace{q, K, 0, true, 0}, hr);
      for (int j = 0; j <= K; ++j) {
        PolyVec v(static_cast<std::size_t>(K) + 1);
        v[static_cast<std::size_t>(j)] = Poly{1};
        auto w = apply_mt_word(*F, B, K, word, v);
        for (int i = 0; i <= K; ++i) CHECK(R.from_poly(w[static_cast<std::size_t>(i)]) == A(i, j));
      }
      // lower unipotents are also exercised directly
      Poly c = poly::random(*F, rng() % 3, rng);
      auto Al = act(R, RepSpace{q, K, 0, true, 0}, Mat2R{R.one(), R.zero(), R.from_poly(c), R.one()});
      for (int j = 0; j <= K; ++j) {
        PolyVec v(static_cast<std::size_t>(K) + 1);
        v[static_cast<std::size_t>(j)] = Poly{1};
        auto w = apply_mt(*F, B, K, Elementary{ElemKind::Lower, c}, v);
        for (int i = 0; i <= K; ++i) CHECK(R.from_poly(w[static_cast<std::size_t>(i)]) == Al(i, j));
      }
    }
  }
}
