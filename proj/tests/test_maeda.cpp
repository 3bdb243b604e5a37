#include <set>

#include "doctest.h"
#include "dmf/maeda.hpp"
#include "oracles.hpp"

using namespace dmf;

TEST_CASE("sign sets match the reference table") {
  for (const auto& row : oracle::kSigns) {
    auto S = sign_sets(row.n);
    CAPTURE(row.n);
    CHECK(S.size() == row.count);
    CHECK(S.minus_counts == row.minus_counts);
    std::set<std::vector<int>> seen;
    for (const auto& t : S.tuples) {
      REQUIRE(t.size() == static_cast<std::size_t>(row.n));
      int minus = 0;
      for (int c : t) {
        CHECK((c == 1 || c == -1));
        minus += c < 0;
      }
      CHECK(std::count(row.minus_counts.begin(), row.minus_counts.end(), minus) == 1);
      CHECK(seen.insert(t).second);
    }
    // -1 sorts before +1
    for (std::size_t i = 1; i < S.tuples.size(); ++i) CHECK(S.tuples[i - 1] < S.tuples[i]);
  }
  CHECK_THROWS_AS(sign_sets(1), std::invalid_argument);
}

TEST_CASE("s_n closed form") {
  for (int n = 2; n <= 30; ++n) {
    CAPTURE(n);
    CHECK(s_n_formula(n) == s_n_binomial_sum(n));
    if (n <= 18) CHECK(static_cast<std::int64_t>(sign_sets(n).size()) == s_n_formula(n));
  }
  CHECK(s_n_formula(2) == 1);
  CHECK(s_n_formula(6) == 21);
}

TEST_CASE("special eigenvalue predictions") {
  auto p2 = special_eigenvalues(2);
  CHECK(p2.k == 10);
  CHECK(p2.l == 0);
  REQUIRE(p2.eigenvalues.size() == 1);
  CHECK(p2.eigenvalues[0] == Poly{0, 0, 2, 0, 2});  // -t^4 - t^2
  auto p3 = special_eigenvalues(3);
  CHECK(p3.l == 1);
  REQUIRE(p3.eigenvalues.size() == 3);
  Poly first(14, 0);  // -t^13 + t^11 + t^5
  first[13] = 2;
  first[11] = 1;
  first[5] = 1;
  CHECK(p3.eigenvalues[0] == first);
  // exponents are k/2 - 3^i
  for (int n = 2; n <= 7; ++n) {
    auto p = special_eigenvalues(n);
    for (const auto& e : p.eigenvalues) {
      int nonzero = 0;
      for (std::size_t j = 0; j < e.size(); ++j)
        if (e[j]) {
          ++nonzero;
          bool ok = false;
          for (int i = 0, pw = 1; i < n; ++i, pw *= 3) ok = ok || static_cast<int>(j) == p.k / 2 - pw;
          CHECK(ok);
        }
      CHECK(nonzero == n);
    }
  }
}

TEST_CASE("predictions agree with the reference weight 82 and 244 factors") {
  GFPtr F = gf_of(3);
  auto check = [&](int n, const oracle::WeightData& w) {
    std::multiset<Poly> pred, pub;
    for (const auto& e : special_eigenvalues(n).eigenvalues) pred.insert(e);
    for (const auto& l : w.linear) {
      if (l.size() == 1 && l[0].exp == 1) continue;  // X - t
      pub.insert(poly::neg(*F, oracle::linear(l)[0]));
    }
    CHECK(pred == pub);
  };
  check(4, oracle::k82_0);
  check(5, oracle::k244_1);
}

TEST_CASE("verify_weight passes for n = 2, 3, 4") {
  for (int n = 2; n <= 4; ++n) {
    CAPTURE(n);
    auto R = verify_weight(n);
    CHECK(R.pass());
    CHECK(R.diff.empty());
    CHECK(R.galois_all_certified);
    CHECK(R.found_linear.size() == static_cast<std::size_t>(s_n_formula(n)));
    CHECK(R.stripped_single_cusp == (n % 2 == 1));
  }
  auto R4 = verify_weight(4);
  CHECK(R4.dim == 10);
  CHECK(R4.dim_opposite == 10);
  REQUIRE(R4.residual.size() == 1);
  CHECK(R4.residual[0].degree == 5);
}
