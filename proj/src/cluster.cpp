#include "ctpotts/cluster.hpp"

#include <cstdlib>

namespace ctpotts {

namespace {

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

// Find with path-summed winding: returns root, accumulates the crossing
// vector of the tree path x -> root into (wa, wb).
int find_wind(ClusterScratch& s, int x, int& wa, int& wb) {
  wa = 0;
  wb = 0;
  while (s.parent[x] != x) {
    wa += s.wind_a[x];
    wb += s.wind_b[x];
    x = s.parent[x];
  }
  return x;
}

// Exact rank over Q of a set of integer 2-vectors, maintained incrementally:
// 0, 1 (all collinear), or 2 (some pair has nonzero cross product).
struct RankTracker {
  int rank = 0;
  long long ba = 0, bb = 0;  // basis vector once rank == 1

  void add(long long a, long long b) {
    if (rank == 2 || (a == 0 && b == 0)) return;
    if (rank == 0) {
      ba = a;
      bb = b;
      rank = 1;
      return;
    }
    if (ba * b - bb * a != 0) rank = 2;
  }
};

}  // namespace

int count_clusters(const HostGraph& g, std::uint64_t open, ClusterScratch& scratch) {
  auto& parent = scratch.parent;
  parent.resize(g.n_vertices);
  for (int v = 0; v < g.n_vertices; ++v) parent[v] = v;
  int k = g.n_vertices;
  for (int e = 0; e < g.n_edges(); ++e) {
    if (!((open >> e) & 1u)) continue;
    int ru = find_root(parent, g.edges[e].tail);
    int rv = find_root(parent, g.edges[e].head);
    if (ru != rv) {
      parent[ru] = rv;
      --k;
    }
  }
  return k;
}

void cluster_core(const HostGraph& g, std::uint64_t open, ClusterScratch& scratch,
                  int& k_out, int& delta_out, std::vector<int>* ranks_out) {
  if (g.n_edges() > 64) throw ResourceError("cluster_core: host exceeds 64 edges");
  auto& parent = scratch.parent;
  auto& wa = scratch.wind_a;
  auto& wb = scratch.wind_b;
  parent.resize(g.n_vertices);
  wa.assign(g.n_vertices, 0);
  wb.assign(g.n_vertices, 0);
  for (int v = 0; v < g.n_vertices; ++v) parent[v] = v;

  // Union-find with crossing-vector potentials: wind[x] is the class of the
  // tree edge x -> parent[x]. A closing edge whose endpoints already share a
  // root contributes the fundamental-cycle class pot(u) + wind(e) - pot(v).
  static thread_local std::vector<RankTracker> rank_of;
  rank_of.assign(g.n_vertices, RankTracker{});

  int k = g.n_vertices;
  for (int e = 0; e < g.n_edges(); ++e) {
    if (!((open >> e) & 1u)) continue;
    const auto& ed = g.edges[e];
    int ua, ub, va, vb;
    int ru = find_wind(scratch, ed.tail, ua, ub);
    int rv = find_wind(scratch, ed.head, va, vb);
    if (ru != rv) {
      // Attach ru under rv keeping pot(tail) + wind(e) - pot(head) = 0, so
      // the merging edge carries a null fundamental class.
      parent[ru] = rv;
      wa[ru] = va - ua - ed.wind_time;
      wb[ru] = vb - ub - ed.wind_space;
      if (rank_of[ru].rank > 0) {
        RankTracker moved = rank_of[ru];
        rank_of[rv].add(moved.ba, moved.bb);
        if (moved.rank == 2) rank_of[rv].rank = 2;
      }
      --k;
    } else {
      long long ca = static_cast<long long>(ua) + ed.wind_time - va;
      long long cb = static_cast<long long>(ub) + ed.wind_space - vb;
      rank_of[ru].add(ca, cb);
    }
  }

  int delta = 0;
  if (ranks_out) ranks_out->clear();
  for (int v = 0; v < g.n_vertices; ++v) {
    if (parent[v] != v) continue;
    int r = rank_of[v].rank;
    if (r > 0 && ranks_out) ranks_out->push_back(r);
    if (r == 2)
      delta = 2;
    else if (r == 1 && delta == 0)
      delta = 1;
  }
  k_out = k;
  delta_out = delta;
}

ClusterStats cluster_stats(const HostGraph& host, const HostGraph& co_host, std::uint64_t open) {
  const int E = host.n_edges();
  if (E != co_host.n_edges()) throw StructureError("host/co-host edge counts differ");
  if (E > 64) throw ResourceError("cluster_stats: host exceeds 64 edges");
  ClusterStats st;
  st.o = static_cast<int>(__builtin_popcountll(open & ((E == 64) ? ~0ull : ((1ull << E) - 1))));
  st.c = E - st.o;
  ClusterScratch scratch;
  cluster_core(host, open, scratch, st.k, st.delta, &st.cluster_ranks);
  std::uint64_t complement = ~open & ((E == 64) ? ~0ull : ((1ull << E) - 1));
  st.f = count_clusters(co_host, complement, scratch);
  return st;
}

ClusterStats cluster_stats(const HostGraph& host, const HostGraph& co_host, const BondConfig& w) {
  if (w.n_edges != host.n_edges()) throw StructureError("bond config size mismatch");
  return cluster_stats(host, co_host, w.open);
}

BondConfig dual_config(const BondConfig& w) {
  BondConfig d;
  d.n_edges = w.n_edges;
  std::uint64_t mask = (w.n_edges == 64) ? ~0ull : ((1ull << w.n_edges) - 1);
  d.open = ~w.open & mask;
  return d;
}

}  // namespace ctpotts
