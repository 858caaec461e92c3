#include "doctest.h"

#include "ctpotts/transfer.hpp"
#include "ctpotts/triangulation.hpp"

#include <cmath>
#include <map>

using namespace ctpotts;

TEST_CASE("transfer entries against exact binomials") {
  double mu = 0.7;
  CHECK(u_entry(1, 1, mu) == doctest::Approx(std::exp(-2 * mu)).epsilon(1e-15));
  CHECK(u_entry(2, 2, mu) == doctest::Approx(3 * std::exp(-4 * mu)).epsilon(1e-15));
  CHECK(u_entry(3, 2, mu) == doctest::Approx(6 * std::exp(-5 * mu)).epsilon(1e-15));
  // The kernel is not symmetric: C(2,0) = 1 vs C(2,1) = 2.
  CHECK(u_entry(1, 2, mu) == doctest::Approx(std::exp(-3 * mu)).epsilon(1e-15));
  CHECK(u_entry(2, 1, mu) == doctest::Approx(2 * std::exp(-3 * mu)).epsilon(1e-15));
  auto U = build_transfer(mu, 6);
  for (int n = 1; n <= 6; ++n)
    for (int np = 1; np <= 6; ++np) CHECK(U.at(n, np) > 0.0L);
}

TEST_CASE("closed-form leading eigenvalue") {
  CHECK(lambda_closed_form(std::log(2.0)) == 1.0);
  CHECK_THROWS_AS(lambda_closed_form(0.5), std::domain_error);

  // Monotone decreasing toward 0.
  double prev = lambda_closed_form(std::log(2.0));
  for (double mu = 0.8; mu < 6.0; mu += 0.4) {
    double v = lambda_closed_form(mu);
    CHECK(v < prev);
    prev = v;
  }
  CHECK(lambda_closed_form(30.0) < 1e-12);

  for (double mu : {0.8, 1.0, 1.5}) {
    double lam = leading_eigenvalue(build_transfer(mu, 200));
    CHECK(std::abs(lam - lambda_closed_form(mu)) / lambda_closed_form(mu) < 1e-8);
  }
}

TEST_CASE("truncated partition function") {
  // N=1, K=1: the single term u(1,1) = e^{-2 mu}.
  double ln2 = std::log(2.0);
  CHECK(z_n_truncated(1, ln2, 1) == doctest::Approx(std::log(0.25)).epsilon(1e-15));

  // Agreement with the weighted enumeration sum, 1e-12 relative.
  for (int N = 1; N <= 3; ++N)
    for (int K = 1; K <= 3; ++K)
      for (double mu : {0.4, 1.0, 2.3}) {
        double ln_enum = static_cast<double>(std::log(weighted_volume_sum(N, K, mu)));
        double ln_tr = z_n_truncated(N, mu, K);
        CHECK(std::abs(ln_enum - ln_tr) <= 1e-12 * std::abs(ln_enum));
      }

  // Nondecreasing in K.
  for (double mu : {0.5, 1.0})
    for (int N : {1, 2, 4}) {
      double prev = -1e300;
      for (int K = 1; K <= 24; ++K) {
        double v = z_n_truncated(N, mu, K);
        CHECK(v >= prev);
        prev = v;
      }
    }

  CHECK_THROWS_AS(z_n_truncated(2, std::nan(""), 4), std::domain_error);

  // Free-energy gap to ln Lambda shrinks with N at mu = 1, large K.
  double ll = std::log(lambda_closed_form(1.0));
  double g4 = std::abs(z_n_truncated(4, 1.0, 200) / 4 - ll);
  double g8 = std::abs(z_n_truncated(8, 1.0, 200) / 8 - ll);
  double g16 = std::abs(z_n_truncated(16, 1.0, 200) / 16 - ll);
  CHECK(g8 < g4);
  CHECK(g16 < g8);
}

TEST_CASE("divergence diagnostic") {
  CHECK_THROWS_AS(divergence_diagnostic(3, 1.0, 7), std::domain_error);

  auto below = divergence_diagnostic(3, 0.2, 64);
  CHECK(below.verdict == DivergenceReport::Verdict::Diverging);
  CHECK(below.threshold == doctest::Approx(std::log(std::sqrt(2.0))).epsilon(1e-12));

  auto above = divergence_diagnostic(3, 1.0, 64);
  CHECK(above.verdict == DivergenceReport::Verdict::Converging);
  CHECK(above.measured_ratio < 1.0);

  // The report always carries the increment table.
  CHECK(above.rows.size() == 64);
  CHECK(above.rows.back().K == 64);
}

TEST_CASE("width sampling: degenerate support") {
  auto law = make_width_law(3, 1.0, 1);
  Rng rng(1);
  for (int i = 0; i < 10; ++i) {
    auto w = sample_widths(law, rng);
    CHECK(w.widths == std::vector<int>{1, 1, 1});
  }
}

TEST_CASE("width sampling matches the exact law (N=2, K=2, mu=1)") {
  auto law = make_width_law(2, 1.0, 2);

  // Law probabilities sum to 1.
  double total = 0;
  std::map<std::vector<int>, double> prob;
  for (int a = 1; a <= 2; ++a)
    for (int b = 1; b <= 2; ++b) {
      prob[{a, b}] = std::exp(law.log_probability({a, b}));
      total += prob[{a, b}];
    }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

  // Cells proportional to u(a,b) u(b,a), checked directly.
  double z = 0;
  for (int a = 1; a <= 2; ++a)
    for (int b = 1; b <= 2; ++b)
      z += static_cast<double>(u_entry(a, b, 1.0) * u_entry(b, a, 1.0));
  for (int a = 1; a <= 2; ++a)
    for (int b = 1; b <= 2; ++b) {
      double direct = static_cast<double>(u_entry(a, b, 1.0) * u_entry(b, a, 1.0)) / z;
      CHECK(prob[{a, b}] == doctest::Approx(direct).epsilon(1e-12));
    }

  // Empirical frequencies over 1e5 draws within 4 standard errors.
  const int draws = 100000;
  std::map<std::vector<int>, int> count;
  Rng rng(20240817);
  for (int i = 0; i < draws; ++i) count[sample_widths(law, rng).widths]++;
  for (auto& [w, p] : prob) {
    if (p <= 0.01) continue;
    double se = std::sqrt(p * (1 - p) / draws);
    CHECK(std::abs(count[w] / double(draws) - p) <= 4 * se);
  }

  // Fixed seed reproduces the sequence.
  Rng r1(7), r2(7);
  for (int i = 0; i < 50; ++i) CHECK(sample_widths(law, r1).widths == sample_widths(law, r2).widths);
}
