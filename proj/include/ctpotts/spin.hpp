#pragma once

#include "ctpotts/cluster.hpp"

#include <cstdint>
#include <map>
#include <utility>

namespace ctpotts {

/// Potts spin assignment, values in {1, ..., q}.
struct SpinConfig {
  int q = 2;
  std::vector<std::uint8_t> values;

  void validate() const;
};

/// Satisfied-edge count: self-loops always count, parallel edges count with
/// multiplicity. The Hamiltonian is minus this.
int satisfied_edges(const HostGraph& g, const SpinConfig& s);

/// Exact integer-coefficient representation of the Potts partition function
/// as a polynomial in e^beta: Z_P(beta) = sum_m C_m e^{beta m} where m is
/// the number of satisfied edges.
struct PartitionPolynomial {
  int q = 0;
  int n_edges = 0;
  int n_vertices = 0;
  std::map<int, BigInt> coeffs;

  /// Evaluates ln Z_P(beta).
  double log_evaluate(double beta) const;
  BigInt coefficient_sum() const;

  std::string to_json() const;
  static PartitionPolynomial from_json(const std::string& text);
};

struct Budget {
  std::int64_t max_spin_configs = 100000000;  // q^{|V|} cap
  int max_fk_edges = 24;                      // 2^{|E|} cap
};

/// Exact Z_P by enumeration over q^{|V|} spin configurations.
PartitionPolynomial potts_partition_exact(const HostGraph& g, int q, const Budget& budget = {});

/// Joint tally A[o][k] of bond configurations by open-edge count and cluster
/// count, from one 2^{|E|} sweep. Z_FK for any (p, q) follows by evaluation.
struct FkTable {
  int n_edges = 0;
  int n_vertices = 0;
  std::vector<std::vector<std::uint64_t>> count;  // [o][k]

  double log_z_fk(double p, double q) const;
};

FkTable fk_cluster_table(const HostGraph& g, const Budget& budget = {});

/// Exact FK partition function (log), direct 2^{|E|} enumeration.
double fk_partition_exact(const HostGraph& g, double p, double q, const Budget& budget = {});

/// Max over the beta grid of |Z_FK - e^{-beta |E|} Z_P| / Z_FK with
/// p = 1 - e^{-beta}.
double edwards_sokal_check(const HostGraph& g, int q, const std::vector<double>& beta_grid,
                           const Budget& budget = {});

/// One exact draw from the coupled spin-bond measure: spins from the exact
/// Potts measure (enumerated), then bonds opened on satisfied edges with
/// probability p = 1 - e^{-beta}.
std::pair<SpinConfig, BondConfig> sample_es_coupled(const HostGraph& g, int q, double beta,
                                                    Rng& rng, const Budget& budget = {});

}  // namespace ctpotts
