#pragma once

#include "ctpotts/strip.hpp"

#include <array>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ctpotts {

enum class EdgeKind : std::uint8_t { SliceHorizontal, StripDiagonal };

/// Plain graph view shared by the spin/bond machinery. Edges carry the
/// homology crossing vector (wind_time, wind_space) picked up when the edge
/// is traversed tail -> head: wind_time counts signed crossings of the
/// temporal cut (between slice N-1 and slice 0), wind_space of the spatial
/// cut (a vertical non-contractible path). Loops and parallel edges allowed;
/// edges are identified by index.
struct HostGraph {
  struct Edge {
    int tail = 0;
    int head = 0;
    int wind_time = 0;
    int wind_space = 0;
  };
  int n_vertices = 0;
  std::vector<Edge> edges;

  int n_edges() const { return static_cast<int>(edges.size()); }
};

struct Vertex {
  int slice = 0;
  int pos = 0;
};

struct TriEdge {
  int tail = 0;
  int head = 0;
  EdgeKind kind = EdgeKind::SliceHorizontal;
  int wind_time = 0;   // tail -> head crossing of the temporal cut
  int wind_space = 0;  // tail -> head crossing of the spatial cut
  int layer = 0;       // slice index (horizontal) or strip index (diagonal)
};

/// Triangular face: boundary edges in counterclockwise order with traversal
/// direction (+1 = tail -> head).
struct Face {
  std::array<int, 3> edges{};
  std::array<int, 3> dirs{};
  Tri orientation = Tri::Up;
  int strip = 0;
  int walk_index = 0;  // position of the triangle in its strip's cyclic word
};

/// Rooted causal triangulation of the N-strip cylinder with periodic
/// boundary, realized as a torus-embedded multigraph.
struct CausalTriangulation {
  std::vector<Strip> strips;
  std::vector<Vertex> vertices;
  std::vector<TriEdge> edges;
  std::vector<Face> faces;
  std::vector<int> vertex_offset;  // vertex id of (slice i, pos 0)
  std::vector<int> face_offset;    // face id of (strip i, walk 0)
  std::vector<int> diag_start;     // edge id of strip i's first diagonal

  int n_strips() const { return static_cast<int>(strips.size()); }
  int width(int slice) const;
  int n_triangles() const { return static_cast<int>(faces.size()); }
  int n_vertices() const { return static_cast<int>(vertices.size()); }
  int n_edges() const { return static_cast<int>(edges.size()); }
  int vertex_id(int slice, int pos) const;

  HostGraph host() const;
};

/// Glues a compatible cyclic sequence of strips into the torus multigraph.
/// Throws StructureError naming the first incompatible strip.
CausalTriangulation build_graph(const std::vector<Strip>& strips);

/// Streams every rooted CT with N strips and all widths <= max_width,
/// lexicographic in width sequence then in strip words. Returns the number
/// visited. If visit returns false the stream stops early.
BigInt enumerate_triangulations(int n_strips, int max_width,
                                const std::function<bool(const CausalTriangulation&)>& visit);

/// Exact count of the stream above: sum over width sequences of the product
/// of per-strip counts.
BigInt count_triangulations(int n_strips, int max_width);

/// Convenience: materialize the whole stream.
std::vector<CausalTriangulation> all_triangulations(int n_strips, int max_width);

/// Sum of e^{-mu n(t)} over the stream, in long double.
long double weighted_volume_sum(int n_strips, int max_width, double mu);

/// Line-based text format: header "N K", then one line per strip:
/// "n n' word mark" with the word over {U,D}.
std::string serialize_triangulation(const CausalTriangulation& t, int max_width);
CausalTriangulation parse_triangulation(std::istream& in);
CausalTriangulation parse_triangulation(const std::string& text);

}  // namespace ctpotts
