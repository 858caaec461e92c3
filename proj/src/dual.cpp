#include "ctpotts/dual.hpp"

#include <array>
#include <queue>

namespace ctpotts {

HostGraph DualGraph::host() const {
  HostGraph g;
  g.n_vertices = n_vertices;
  g.edges.reserve(edges.size());
  for (const DualEdge& e : edges)
    g.edges.push_back({e.tail, e.head, e.wind_time, e.wind_space});
  return g;
}

DualGraph dualize(const CausalTriangulation& t) {
  const int E = t.n_edges();
  const int F = t.n_triangles();

  // Side faces of each primal edge, read off the two boundary traversals.
  // Counterclockwise face walks put the +1-traversing face on the left.
  std::vector<int> face_left(E, -1), face_right(E, -1);
  for (int f = 0; f < F; ++f) {
    for (int s = 0; s < 3; ++s) {
      int e = t.faces[f].edges[s];
      if (t.faces[f].dirs[s] > 0) {
        if (face_left[e] != -1) throw StructureError("edge traversed forward twice");
        face_left[e] = f;
      } else {
        if (face_right[e] != -1) throw StructureError("edge traversed backward twice");
        face_right[e] = f;
      }
    }
  }
  for (int e = 0; e < E; ++e)
    if (face_left[e] < 0 || face_right[e] < 0)
      throw StructureError("edge missing a side face");

  DualGraph d;
  d.n_vertices = F;
  d.edges.resize(E);
  d.back_map.resize(E);
  for (int e = 0; e < E; ++e) {
    d.edges[e].tail = face_left[e];
    d.edges[e].head = face_right[e];
    d.back_map[e] = e;
  }

  // Crossing vectors by cocycle completion. phi accumulates, along a BFS
  // tree of the dual, the crossings of two primal reference cycles: the
  // slice-0 circle (class (0,1)) and the chain of first diagonals through
  // all strips (class (1,0)). A dual cycle's crossing sums then equal its
  // intersection numbers with those cycles, which pin its homology class.
  std::vector<std::uint8_t> in_a(E, 0), in_b(E, 0);
  for (int p = 0; p < t.width(0); ++p) in_a[p] = 1;  // slice-0 horizontals
  for (int i = 0; i < t.n_strips(); ++i) in_b[t.diag_start[i]] = 1;

  std::vector<std::array<int, 2>> phi(F, {0, 0});
  std::vector<std::vector<std::pair<int, int>>> adj(F);  // (dual edge, dir)
  for (int e = 0; e < E; ++e) {
    adj[face_left[e]].push_back({e, +1});
    adj[face_right[e]].push_back({e, -1});
  }
  std::vector<std::uint8_t> seen(F, 0);
  std::queue<int> bfs;
  bfs.push(0);
  seen[0] = 1;
  while (!bfs.empty()) {
    int u = bfs.front();
    bfs.pop();
    for (auto [e, dir] : adj[u]) {
      int v = dir > 0 ? face_right[e] : face_left[e];
      if (seen[v]) continue;
      seen[v] = 1;
      phi[v][0] = phi[u][0] + dir * in_a[e];
      phi[v][1] = phi[u][1] + dir * in_b[e];
      bfs.push(v);
    }
  }
  for (int e = 0; e < E; ++e) {
    d.edges[e].wind_time = in_a[e] + phi[face_left[e]][0] - phi[face_right[e]][0];
    d.edges[e].wind_space = in_b[e] + phi[face_left[e]][1] - phi[face_right[e]][1];
  }

  // Dual faces from the corner permutation. A dart is an edge end
  // (2e = tail end, 2e+1 = head end); each face corner maps the departing
  // dart to the arriving one, and the orbits are the rotations around the
  // primal vertices. Crossing a head-end dart goes left -> right (+1).
  const auto dart_vertex = [&](int dart) {
    const TriEdge& e = t.edges[dart >> 1];
    return (dart & 1) ? e.head : e.tail;
  };
  std::vector<int> next_dart(static_cast<std::size_t>(2 * E), -1);
  std::vector<int> dart_face(static_cast<std::size_t>(2 * E), -1);
  for (int f = 0; f < F; ++f) {
    for (int s = 0; s < 3; ++s) {
      int e_in = t.faces[f].edges[s], d_in = t.faces[f].dirs[s];
      int e_out = t.faces[f].edges[(s + 1) % 3], d_out = t.faces[f].dirs[(s + 1) % 3];
      int arrive = 2 * e_in + (d_in > 0 ? 1 : 0);
      int depart = 2 * e_out + (d_out > 0 ? 0 : 1);
      if (dart_vertex(arrive) != dart_vertex(depart))
        throw StructureError("face walk corner endpoints disagree");
      next_dart[depart] = arrive;
      dart_face[arrive] = f;
    }
  }

  std::vector<std::uint8_t> used(static_cast<std::size_t>(2 * E), 0);
  for (int start = 0; start < 2 * E; ++start) {
    if (used[start]) continue;
    DualGraph::DualFace df;
    df.primal_vertex = dart_vertex(start);
    int dart = start;
    do {
      used[dart] = 1;
      if (dart_vertex(dart) != df.primal_vertex)
        throw StructureError("corner orbit strays from its vertex");
      df.edges.push_back(dart >> 1);
      df.dirs.push_back((dart & 1) ? +1 : -1);
      dart = next_dart[dart];
      if (dart < 0) throw StructureError("corner permutation incomplete");
    } while (dart != start);
    d.faces.push_back(df);
  }
  if (static_cast<int>(d.faces.size()) != t.n_vertices())
    throw StructureError("dual face count != primal vertex count");

  for (const auto& df : d.faces) {
    int sa = 0, sb = 0;
    for (std::size_t i = 0; i < df.edges.size(); ++i) {
      sa += df.dirs[i] * d.edges[df.edges[i]].wind_time;
      sb += df.dirs[i] * d.edges[df.edges[i]].wind_space;
    }
    if (sa != 0 || sb != 0) throw StructureError("dual face crossing sum != 0");
  }
  return d;
}

}  // namespace ctpotts
