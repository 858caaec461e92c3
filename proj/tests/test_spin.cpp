#include "doctest.h"

#include "ctpotts/spin.hpp"

#include <cmath>
#include <map>

using namespace ctpotts;

namespace {

HostGraph one_vertex_three_loops() {
  return all_triangulations(1, 1)[0].host();
}

HostGraph two_vertices_one_edge() {
  HostGraph g;
  g.n_vertices = 2;
  g.edges.push_back({0, 1, 0, 0});
  return g;
}

}  // namespace

TEST_CASE("exact Potts polynomial on hand-checkable graphs") {
  // One vertex, three self-loops: every edge always satisfied.
  auto p1 = potts_partition_exact(one_vertex_three_loops(), 2);
  CHECK(p1.coeffs.size() == 1);
  CHECK(p1.coeffs.at(3) == 2);
  CHECK(p1.log_evaluate(0.9) == doctest::Approx(std::log(2.0) + 2.7).epsilon(1e-14));

  // Two vertices joined by one edge, q = 3.
  auto p2 = potts_partition_exact(two_vertices_one_edge(), 3);
  CHECK(p2.coeffs.at(1) == 3);
  CHECK(p2.coeffs.at(0) == 6);

  // Coefficients sum to q^{|V|}; beta = 0 evaluates to q^{|V|}.
  enumerate_triangulations(2, 2, [&](const CausalTriangulation& t) {
    for (int q : {2, 3}) {
      auto poly = potts_partition_exact(t.host(), q);
      BigInt expect = 1;
      for (int i = 0; i < t.n_vertices(); ++i) expect *= q;
      CHECK(poly.coefficient_sum() == expect);
      CHECK(poly.log_evaluate(0.0) ==
            doctest::Approx(t.n_vertices() * std::log(double(q))).epsilon(1e-12));
    }
    return true;
  });
}

TEST_CASE("polynomial JSON round-trip") {
  auto t = all_triangulations(2, 1)[0];
  auto poly = potts_partition_exact(t.host(), 3);
  auto back = PartitionPolynomial::from_json(poly.to_json());
  CHECK(back.q == poly.q);
  CHECK(back.n_edges == poly.n_edges);
  CHECK(back.n_vertices == poly.n_vertices);
  CHECK(back.coeffs == poly.coeffs);
}

TEST_CASE("exact FK values") {
  auto loops = one_vertex_three_loops();
  for (double p : {0.0, 0.3, 0.8, 1.0})
    for (double q : {2.0, 3.5}) {
      // Loops never change the cluster count: Z_FK = q for any p.
      CHECK(fk_partition_exact(loops, p, q) == doctest::Approx(std::log(q)).epsilon(1e-12));
    }

  enumerate_triangulations(2, 2, [&](const CausalTriangulation& t) {
    auto table = fk_cluster_table(t.host());
    // p = 0: all edges closed, every vertex isolated.
    CHECK(table.log_z_fk(0.0, 3.0) ==
          doctest::Approx(t.n_vertices() * std::log(3.0)).epsilon(1e-12));
    // p = 1: single all-open term.
    ClusterScratch scratch;
    std::uint64_t full = (1ull << t.n_edges()) - 1;
    int k_all = count_clusters(t.host(), full, scratch);
    CHECK(table.log_z_fk(1.0, 3.0) == doctest::Approx(k_all * std::log(3.0)).epsilon(1e-12));
    return true;
  });
}

TEST_CASE("FK budget produces a resource error") {
  // N=3 at widths (3,3,3) has 27 edges, past the default 2^24 budget.
  std::vector<Strip> strips(3, enumerate_strips(3, 3)[0]);
  auto t = build_graph(strips);
  CHECK(t.n_edges() == 27);
  CHECK_THROWS_AS(fk_cluster_table(t.host()), ResourceError);
  Budget big;
  big.max_spin_configs = 10;
  CHECK_THROWS_AS(potts_partition_exact(t.host(), 2, big), ResourceError);
}

TEST_CASE("Edwards-Sokal identity") {
  // Loop graph: e^{-3 beta} * q e^{3 beta} = q = Z_FK, exactly.
  CHECK(edwards_sokal_check(one_vertex_three_loops(), 2, {0.2, 0.7, 1.5}) < 1e-12);

  // Hand algebra on the single-edge graph at q = 2, beta = 1:
  // Z_FK = 4(1-p) + 2p = 2 + 2/e and e^{-beta} Z_P = e^{-1}(2e + 2).
  auto g = two_vertices_one_edge();
  double lhs = fk_partition_exact(g, 1.0 - std::exp(-1.0), 2.0);
  CHECK(lhs == doctest::Approx(std::log(2.0 + 2.0 * std::exp(-1.0))).epsilon(1e-14));
  CHECK(edwards_sokal_check(g, 2, {1.0}) < 1e-14);

  for (int N = 1; N <= 2; ++N)
    enumerate_triangulations(N, 2, [&](const CausalTriangulation& t) {
      for (int q : {2, 3, 4})
        CHECK(edwards_sokal_check(t.host(), q, {0.2, 0.7, 1.5}) <= 1e-9);
      return true;
    });
}

TEST_CASE("coupled sampling marginals") {
  Rng rng(99);

  // beta = 0: bonds all closed, spins i.i.d. uniform.
  auto g = two_vertices_one_edge();
  std::map<int, int> spin_count;
  for (int i = 0; i < 20000; ++i) {
    auto [s, w] = sample_es_coupled(g, 2, 0.0, rng);
    CHECK(w.open == 0);
    spin_count[s.values[0]]++;
  }
  CHECK(std::abs(spin_count[1] / 20000.0 - 0.5) < 4 * std::sqrt(0.25 / 20000));

  // Bond marginal against the exact FK measure on a real triangulation.
  auto t = all_triangulations(2, 1)[0];
  HostGraph h = t.host();
  double beta = 0.8, q = 2;
  double p = 1.0 - std::exp(-beta);
  auto table = fk_cluster_table(h);
  double log_zfk = table.log_z_fk(p, q);
  ClusterScratch scratch;
  std::vector<double> exact(1ull << h.n_edges());
  for (std::uint64_t w = 0; w < exact.size(); ++w) {
    int o = __builtin_popcountll(w);
    int k = count_clusters(h, w, scratch);
    exact[w] = std::exp(o * std::log(p) + (h.n_edges() - o) * std::log1p(-p) +
                        k * std::log(q) - log_zfk);
  }
  const int draws = 200000;
  std::vector<int> hits(exact.size(), 0);
  for (int i = 0; i < draws; ++i) hits[sample_es_coupled(h, 2, beta, rng).second.open]++;
  double chi2 = 0;
  int dof = 0;
  for (std::uint64_t w = 0; w < exact.size(); ++w) {
    double expect = exact[w] * draws;
    if (expect < 5) continue;
    chi2 += (hits[w] - expect) * (hits[w] - expect) / expect;
    ++dof;
  }
  // dof ~ 50; 3-sigma band for chi-square.
  CHECK(chi2 < dof + 3 * std::sqrt(2.0 * dof));

  // Large beta on a connected graph: one cluster dominates.
  int single = 0;
  for (int i = 0; i < 2000; ++i) {
    auto [s, w] = sample_es_coupled(h, 2, 3.0, rng);
    int k, delta;
    cluster_core(h, w.open, scratch, k, delta, nullptr);
    if (k == 1) ++single;
  }
  CHECK(single > 1600);

  // Fixed seed reproducibility.
  Rng a(5), b(5);
  for (int i = 0; i < 20; ++i) {
    auto ra = sample_es_coupled(h, 3, 0.9, a);
    auto rb = sample_es_coupled(h, 3, 0.9, b);
    CHECK(ra.first.values == rb.first.values);
    CHECK(ra.second.open == rb.second.open);
  }
}
