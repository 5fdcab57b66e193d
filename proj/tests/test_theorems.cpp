#include "doctest.h"

#include "affsp/errors.hpp"
#include "affsp/theorems.hpp"

using namespace affsp;

TEST_SUITE("theorem_suite") {
  TEST_CASE("sp homology prediction") {
    CHECK(predict_sp_homology(1) == GradedPrediction{{0, 1}, {3, 1}});
    CHECK(predict_sp_homology(2) == GradedPrediction{{0, 1}, {3, 1}, {7, 1}, {10, 1}});
    for (unsigned n = 1; n <= 4; ++n) {
      auto p = predict_sp_homology(n);
      Index total = 0;
      for (const auto& [d, v] : p) total += v;
      CHECK(total == (Index{1} << n));
      CHECK(p.rbegin()->first == 2 * n * n + n);
      CHECK(p.rbegin()->second == 1);
    }
  }

  TEST_CASE("g_n predictions") {
    auto g1 = predict_g_homology(1);
    const Index expect[] = {1, 0, 1, 1, 0, 1};
    for (unsigned k = 0; k < 6; ++k) CHECK(value_at(g1, k) == expect[k]);
    auto a1 = predict_g_adjoint_homology(1);
    const Index adj[] = {0, 1, 0, 0, 1, 0};
    for (unsigned k = 0; k < 6; ++k) CHECK(value_at(a1, k) == adj[k]);
    CHECK(predict_lambda_omega(2) == GradedPrediction{{0, 1}, {2, 1}, {4, 1}});
    CHECK(predict_lambda_bar_omega(2) == GradedPrediction{{2, 1}, {4, 1}});
    CHECK(shift(GradedPrediction{{0, 1}, {3, 2}}, -1) == GradedPrediction{{2, 2}});
  }

  TEST_CASE("adjoint prediction is the reduced trivial one shifted down by one") {
    for (unsigned n = 1; n <= 3; ++n) {
      auto g = predict_g_homology(n), sp = predict_sp_homology(n), ad = predict_g_adjoint_homology(n);
      const unsigned top = 2 * n * n + 3 * n + 1;
      for (unsigned k = 0; k + 1 <= top; ++k) CHECK(value_at(ad, k) == value_at(g, k + 1) - value_at(sp, k + 1));
    }
  }

  TEST_CASE("every claim passes at n = 1") {
    for (const auto& id : claim_ids()) {
      CAPTURE(id);
      VerificationReport r = run_claim(id, 1, std::nullopt);
      CHECK(r.pass());
      CHECK_FALSE(r.rows.empty());
      auto j = r.to_json();
      CHECK(j["claim"] == id);
      CHECK(r.to_csv().rfind("claim,quantity,degree,expected,computed,pass\n", 0) == 0);
    }
    CHECK_THROWS(run_claim("no-such-claim", 1, std::nullopt));
  }

  TEST_CASE("a mismatching row fails the report") {
    VerificationReport r;
    r.claim = "x";
    r.add("q", 0, 1, 1);
    CHECK(r.pass());
    r.add("q", 1, 1, 0);
    CHECK_FALSE(r.pass());
  }
}
