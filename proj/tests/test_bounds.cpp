#include "doctest.h"

#include "ctpotts/bounds.hpp"
#include "ctpotts/transfer.hpp"

#include <cmath>

using namespace ctpotts;

TEST_CASE("point classification examples") {
  // q=4, beta=0.1, mu=1.0: ln(2 sqrt 4) = ln 4 > 1.0, inside the no-Gibbs set.
  auto v1 = classify_point(0.1, 1.0, 4.0, Side::Primal);
  CHECK(v1.in_no_gibbs_region);
  CHECK(!v1.in_subcritical_region);

  // q=2, beta=5, mu=10: upper curve sits near (3/2)*5 + ln 2 ~ 8.2.
  auto v2 = classify_point(5.0, 10.0, 2.0, Side::Primal);
  CHECK(v2.in_subcritical_region);
  CHECK(!v2.in_no_gibbs_region);

  // Below both branches of the max: no-Gibbs by definition.
  CHECK(classify_point(0.5, 0.2, 2.0, Side::Primal).in_no_gibbs_region);

  // Band membership is the complement.
  auto v3 = classify_point(1.0, 1.6, 2.0, Side::Primal);
  CHECK(v3.band == (!v3.in_no_gibbs_region && !v3.in_subcritical_region));

  std::string j = v1.to_json();
  CHECK(j.find("\"in_no_gibbs_region\":true") != std::string::npos);
  CHECK_THROWS_AS(classify_point(-1.0, 0.0, 2.0, Side::Primal), std::domain_error);
}

TEST_CASE("boundary branches map onto each other") {
  for (double q : {2.0, 3.0, 4.0, 9.0})
    for (double beta = 0.07; beta < 6.0; beta += 0.21) {
      auto [bs, dummy] = region_map_phi(beta, 0.0, q);
      (void)dummy;
      // mu = (1/2) ln q + ln 2 lands on mu* = (3/2) ln(e^{beta*}-1) + ln 2.
      auto [b1, m1] = region_map_phi(beta, 0.5 * std::log(q) + std::log(2.0), q);
      CHECK(std::abs(m1 - (1.5 * std::log(std::expm1(b1)) + std::log(2.0))) < 1e-10);
      // mu = (3/2) ln(e^beta - 1) + ln 2 lands on mu* = ln q + ln 2.
      auto [b2, m2] =
          region_map_phi(beta, 1.5 * std::log(std::expm1(beta)) + std::log(2.0), q);
      (void)b2;
      CHECK(std::abs(m2 - (std::log(q) + std::log(2.0))) < 1e-10);
      CHECK(std::abs(bs - b1) < 1e-15);
    }
}

TEST_CASE("random no-Gibbs points map into the dual no-Gibbs set") {
  Rng rng(4242);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (double q : {2.0, 3.0, 4.0, 9.0}) {
    for (int i = 0; i < 10000; ++i) {
      double beta = std::exp(std::log(0.01) + unif(rng) * (std::log(8.0) - std::log(0.01)));
      double mu = unif(rng) * no_gibbs_boundary(beta, q, Side::Primal);
      REQUIRE(classify_point(beta, mu, q, Side::Primal).in_no_gibbs_region);
      auto [bs, ms] = region_map_phi(beta, mu, q);
      CHECK(classify_point(bs, ms, q, Side::Dual).in_no_gibbs_region);
    }
  }
}

TEST_CASE("lower bounds for ln Z_P") {
  // beta = 0: Z_P = q^{|V|} = q^{n/2} meets the second bound exactly.
  enumerate_triangulations(2, 2, [&](const CausalTriangulation& t) {
    auto poly = potts_partition_exact(t.host(), 3);
    auto [b1, b2] = lower_bounds_zp(t.n_triangles(), 0.0, 3.0);
    CHECK(poly.log_evaluate(0.0) == doctest::Approx(b2).epsilon(1e-12));
    CHECK(b1 == -std::numeric_limits<double>::infinity());
    return true;
  });

  // One-vertex three-loop triangulation (n=2), q=2, beta=1:
  // Z_P = 2 e^3 >= max{2 (e-1)^3, 2}.
  auto t1 = all_triangulations(1, 1)[0];
  auto [b1, b2] = lower_bounds_zp(2, 1.0, 2.0);
  double lnzp = potts_partition_exact(t1.host(), 2).log_evaluate(1.0);
  CHECK(lnzp == doctest::Approx(std::log(2.0) + 3.0).epsilon(1e-13));
  CHECK(b1 == doctest::Approx(std::log(2.0) + 3.0 * std::log(std::expm1(1.0))).epsilon(1e-13));
  CHECK(lnzp >= std::max(b1, b2));

  // Domination across the desk sweep, including beta = 2.
  for (int N = 1; N <= 2; ++N)
    enumerate_triangulations(N, 2, [&](const CausalTriangulation& t) {
      for (int q : {2, 3})
        for (double beta : {0.5, 1.0, 2.0}) {
          double lz = potts_partition_exact(t.host(), q).log_evaluate(beta);
          auto [lo1, lo2] = lower_bounds_zp(t.n_triangles(), beta, q);
          CHECK(lz >= std::max(lo1, lo2) - 1e-12);
        }
      return true;
    });
}

TEST_CASE("high-temperature upper bound") {
  // beta = 0 collapses to q^{|V| + 2/3} >= q^{|V|}.
  CHECK(high_t_upper_bound(9, 3, 0.0, 3.0) ==
        doctest::Approx((3 + 2.0 / 3.0) * std::log(3.0)).epsilon(1e-13));

  // q=2, beta=1 on the three-loop instance: bound exceeds 2 e^3.
  auto t1 = all_triangulations(1, 1)[0];
  double bound = high_t_upper_bound(3, 1, 1.0, 2.0);
  CHECK(bound >= std::log(2.0) + 3.0);

  // Domination over the moderate-temperature sweep. (At beta = 2 the bound
  // genuinely fails on loop-carrying instances; the acceptance suite
  // reports those cells.)
  for (int N = 1; N <= 2; ++N)
    enumerate_triangulations(N, 2, [&](const CausalTriangulation& t) {
      for (int q : {2, 3, 4})
        for (double beta : {0.25, 0.5, 1.0}) {
          double lz = potts_partition_exact(t.host(), q).log_evaluate(beta);
          double ub = high_t_upper_bound(t.n_edges(), t.n_vertices(), beta, q);
          CHECK(lz <= ub + 1e-12);
        }
      return true;
    });
}

TEST_CASE("annealed bounds sandwich the truncated sum") {
  for (int q : {2, 3})
    for (double beta : {0.5, 0.7, 1.0})
      for (double mu : {2.0, 2.5})
        for (int N = 1; N <= 2; ++N)
          for (int K = 1; K <= 2; ++K) {
            double xi = log_xi_truncated(N, K, beta, mu, q, Side::Primal);
            auto lo = annealed_lower_bound(N, beta, mu, q, K);
            auto hi = annealed_upper_bound(N, beta, mu, q, K);
            CHECK(lo.log_value <= xi + 1e-10);
            CHECK(xi <= hi.log_value + 1e-10);
          }

  // Monotone in K on both sides.
  double prev_lo = -1e300, prev_hi = -1e300;
  for (int K = 1; K <= 4; ++K) {
    auto lo = annealed_lower_bound(2, 0.7, 2.5, 2.0, K);
    auto hi = annealed_upper_bound(2, 0.7, 2.5, 2.0, K);
    CHECK(lo.log_value >= prev_lo);
    CHECK(hi.log_value >= prev_hi);
    prev_lo = lo.log_value;
    prev_hi = hi.log_value;
  }

  // Tiny beta: the low-temperature branch collapses, the entropy branch
  // wins, and the upper bound reduces to (2/3) ln q + Z_N(mu - ln(q)/2).
  auto lo = annealed_lower_bound(2, 1e-9, 2.5, 2.0, 2);
  CHECK(lo.log_value == doctest::Approx(z_n_truncated(2, 2.5 - 0.5 * std::log(2.0), 2))
                            .epsilon(1e-6));
  auto hi = annealed_upper_bound(2, 0.0, 2.5, 2.0, 2);
  CHECK(hi.log_value == doctest::Approx((2.0 / 3.0) * std::log(2.0) +
                                        z_n_truncated(2, 2.5 - 0.5 * std::log(2.0), 2))
                            .epsilon(1e-12));

  // Divergence flag when a shifted mu drops below ln 2.
  CHECK(annealed_lower_bound(2, 3.0, 2.0, 2.0, 2).shifted_mu_below_ln2);
}

TEST_CASE("q=2 free-energy sandwich is ordered") {
  for (double beta_star : {0.5, 1.0, 2.0, 4.0}) {
    double mu_star = subcritical_boundary(beta_star, 2.0, Side::Dual) + 0.8;
    auto [lo, hi] = free_energy_sandwich_q2(beta_star, mu_star);
    CHECK(lo <= hi);
    CHECK(std::isfinite(lo));
    CHECK(std::isfinite(hi));
  }
  // Points at the boundary itself push Lambda's argument to ln 2 exactly on
  // the sup side; below it the closed form is undefined.
  CHECK_THROWS_AS(free_energy_sandwich_q2(1.0, 0.0), std::domain_error);
}

TEST_CASE("curve tables") {
  std::vector<double> grid;
  for (int i = 0; i < 200; ++i)
    grid.push_back(std::exp(std::log(0.01) + i * (std::log(20.0) - std::log(0.01)) / 199));
  grid.back() = 20.0;

  for (double q : {2.0, 3.0, 4.0, 9.0})
    for (Side side : {Side::Primal, Side::Dual}) {
      auto table = curve_table(q, side, grid);
      for (const auto& r : table.rows) {
        CHECK(r.lower <= r.upper);
        // No point is both in the no-Gibbs set and subcritical.
        auto mid = classify_point(r.beta, 0.5 * (r.lower + r.upper), q, side);
        CHECK(!(mid.in_no_gibbs_region && mid.in_subcritical_region));
        CHECK(!classify_point(r.beta, r.lower, q, side).in_no_gibbs_region);  // boundary: band
      }
      // Large beta: both curves approach (3/2) beta + ln 2.
      const auto& last = table.rows.back();
      CHECK(last.beta == 20.0);
      CHECK(std::abs(last.upper - last.asymptote) <= 0.01);
      CHECK(std::abs(last.lower - last.asymptote) <= 0.01);

      // Small beta: the lower curve equals the constant.
      auto small = curve_table(q, side, {1e-3});
      CHECK(std::abs(small.rows[0].lower - small_beta_constant(q, side)) <= 1e-6);
    }

  // q=2 asymptotics from the statement of the curves.
  auto dual20 = curve_table(2.0, Side::Dual, {20.0});
  CHECK(dual20.rows[0].upper - (1.5 * 20.0 + std::log(2.0)) <= 1e-4);

  auto csv = curve_table(2.0, Side::Primal, {0.5, 1.0}).to_csv();
  CHECK(csv.rfind("beta,lower,upper,asymptote,small_beta_const\n", 0) == 0);

  CHECK_THROWS_AS(curve_table(2.0, Side::Primal, {0.5, 0.4}), std::domain_error);
  CHECK_THROWS_AS(curve_table(2.0, Side::Primal, {-0.5}), std::domain_error);
}

TEST_CASE("circuit-rank diagnostic") {
  // Exact circuit counts: the three-loop instance has xi = k on pure loop
  // subsets, violating the (2/3)(k+1) bound at k = 3.
  auto t1 = all_triangulations(1, 1)[0];
  auto c1 = circuit_bound_check(t1, 12);
  CHECK(c1.subsets_checked == 7);
  REQUIRE(c1.violations.size() == 1);
  CHECK(c1.violations[0].k == 3);
  CHECK(c1.violations[0].xi == 3);

  // Loop-free widths (2,2): every proper subset obeys the bound; the full
  // edge set exceeds it by the torus correction (xi = n+1).
  auto ts = all_triangulations(2, 2);
  const CausalTriangulation* t22 = nullptr;
  for (const auto& t : ts)
    if (t.strips[0].lower_width == 2 && t.strips[0].upper_width == 2) {
      t22 = &t;
      break;
    }
  REQUIRE(t22 != nullptr);
  auto c11 = circuit_bound_check(*t22, 11);
  CHECK(c11.ok());
  auto c12 = circuit_bound_check(*t22, 12);
  REQUIRE(c12.violations.size() == 1);
  CHECK(c12.violations[0].k == 12);
  CHECK(c12.violations[0].xi == t22->n_triangles() + 1);
}
