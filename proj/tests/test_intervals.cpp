#include <doctest.h>

#include <cmath>

#include "lsc/error.hpp"
#include "lsc/hermite.hpp"
#include "lsc/intervals.hpp"

using namespace lsc;

TEST_CASE("n = 0 is the whole line") {
  auto d = build_interval_decomposition(0, 0.1);
  auto iv = d.intervals(50);
  REQUIRE(iv.size() == 1);
  CHECK(iv[0].lo == -50);
  CHECK(iv[0].hi == 50);
  CHECK(d.excluded.empty());
  CHECK(verify_cover(d, 50));
}

TEST_CASE("cover identity and beta anchoring") {
  for (int n = 1; n <= 6; ++n)
    for (double kappa : {0.1, 0.05, 0.02}) {
      auto d = build_interval_decomposition(n, kappa);
      long M = interval_box_cap(d);
      std::string why;
      CHECK_MESSAGE(verify_cover(d, M, &why), why);
      CHECK(verify_cover(d, M + 17));
      for (int j = 0; j < d.k(); ++j) {
        if (d.zeros[j] == 0.0) continue;
        CHECK(std::abs(d.beta[j] * kappa * static_cast<double>(d.a[j] - 1) - d.zeros[j]) <= 1e-13);
        CHECK(d.beta[j] >= 1.0);
      }
      // the zero of Ψ_n(β_jκx) sits exactly on the excluded point a_j - 1
      for (int j = 0; j < d.k(); ++j)
        CHECK(std::abs(hermite::weighted_eval(n, d.beta[j] * kappa * static_cast<double>(d.a[j] - 1))) <= 1e-12 * (1 << n));
    }
}

TEST_CASE("odd degree excludes only the origin at the centre") {
  auto d = build_interval_decomposition(3, 0.1);
  CHECK_FALSE(d.has_center);
  CHECK(d.a.front() == 1);
  CHECK(d.excluded.size() == 3);
  CHECK(d.excluded[1] == 0);
}

TEST_CASE("even degree has a central interval") {
  auto d = build_interval_decomposition(2, 0.1);
  CHECK(d.has_center);
  CHECK(d.center_half_width() == d.a.front() - 2);
  auto pieces = d.intervals(interval_box_cap(d));
  CHECK(pieces.size() == 3);
  CHECK(pieces.front().unbounded);
  CHECK(pieces.back().unbounded);
  CHECK(pieces[1].index == 0);
}

TEST_CASE("beta - 1 = O(κ)") {
  for (int n = 1; n <= 4; ++n) {
    // C from the worst-case recursion at κ = 0.1
    double c = 0.0;
    for (double b : beta_upper_bounds(build_interval_decomposition(n, 0.1))) c = std::max(c, (b - 1.0) / 0.1);
    for (double kappa : {0.1, 0.05, 0.02, 0.01}) {
      auto d = build_interval_decomposition(n, kappa);
      auto bound = beta_upper_bounds(d);
      for (int j = 0; j < d.k(); ++j) {
        CHECK(d.beta[j] <= bound[j] * (1 + 1e-15));
        CHECK(d.beta[j] - 1.0 <= c * kappa + 1e-15);
      }
    }
  }
}

TEST_CASE("too large κ is degenerate") {
  CHECK_THROWS_AS(build_interval_decomposition(4, 2.0), Error);
  try {
    build_interval_decomposition(5, 1.5);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateDecomposition);
  }
}

TEST_CASE("cover verification detects a short box") {
  auto d = build_interval_decomposition(4, 0.1);
  std::string why;
  CHECK_FALSE(verify_cover(d, d.min_box() - 1, &why));
  CHECK_FALSE(why.empty());
}
