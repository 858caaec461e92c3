#pragma once

#include "ctpotts/dual.hpp"

#include <cstdint>

namespace ctpotts {

/// FK bond configuration on a host graph (primal or dual). Edge i open iff
/// bit i of `open` is set. Only hosts with at most 64 edges are supported by
/// the exhaustive machinery; larger graphs go through the Monte Carlo paths.
struct BondConfig {
  std::uint64_t open = 0;
  int n_edges = 0;

  bool is_open(int e) const { return (open >> e) & 1u; }
};

/// Topology-aware cluster statistics of a bond configuration on a
/// torus-embedded host. f is the face count delimited by the open edges,
/// computed as the cluster count of the complementary configuration on the
/// co-host (the dual partner under the edge bijection).
struct ClusterStats {
  int o = 0;      // open edges
  int c = 0;      // closed edges
  int k = 0;      // clusters, isolated vertices included
  int f = 0;      // faces delimited by the configuration
  int delta = 0;  // 2 net, 1 cycle, 0 neither
  std::vector<int> cluster_ranks;  // homology rank per cluster, rank > 0 only
};

/// Scratch buffers so exhaustive sweeps do not allocate per configuration.
struct ClusterScratch {
  std::vector<int> parent;
  std::vector<int> wind_a;  // potential relative to the cluster root
  std::vector<int> wind_b;
};

/// Cluster count only (union-find).
int count_clusters(const HostGraph& g, std::uint64_t open, ClusterScratch& scratch);

/// Cluster count, per-cluster homology ranks and delta for one host.
/// Ranks come from the crossing-vector classes of the fundamental cycles of
/// a spanning forest; rank over the rationals decides net (2) vs cycle (>=1).
void cluster_core(const HostGraph& g, std::uint64_t open, ClusterScratch& scratch,
                  int& k_out, int& delta_out, std::vector<int>* ranks_out);

/// Full statistics: k, delta from `host`, f as k of the complement on
/// `co_host` (same edge indexing, back-map is the identity).
ClusterStats cluster_stats(const HostGraph& host, const HostGraph& co_host, std::uint64_t open);
ClusterStats cluster_stats(const HostGraph& host, const HostGraph& co_host, const BondConfig& w);

/// w*(e*) = 1 - w(e) under the edge bijection.
BondConfig dual_config(const BondConfig& w);

}  // namespace ctpotts
