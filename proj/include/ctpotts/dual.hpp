#pragma once

#include "ctpotts/triangulation.hpp"

namespace ctpotts {

/// Torus dual of a causal triangulation: one vertex per primal face, one
/// edge per primal edge (back_map is the index bijection). Dual edges carry
/// their own crossing vectors, valid for homology-rank computations on the
/// dual host. Dual faces correspond one-to-one to primal vertices.
struct DualGraph {
  struct DualEdge {
    int tail = 0;  // primal face left of the primal edge
    int head = 0;  // primal face right of the primal edge
    int wind_time = 0;
    int wind_space = 0;
  };
  struct DualFace {
    int primal_vertex = 0;
    std::vector<int> edges;  // crossed dual edges in rotation order
    std::vector<int> dirs;   // +1 = traversed tail -> head
  };

  int n_vertices = 0;
  std::vector<DualEdge> edges;
  std::vector<int> back_map;  // dual edge -> primal edge (identity here)
  std::vector<DualFace> faces;

  int n_edges() const { return static_cast<int>(edges.size()); }
  HostGraph host() const;
};

DualGraph dualize(const CausalTriangulation& t);

}  // namespace ctpotts
