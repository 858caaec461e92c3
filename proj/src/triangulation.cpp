#include "ctpotts/triangulation.hpp"

#include <cassert>
#include <cmath>
#include <sstream>

namespace ctpotts {

int CausalTriangulation::width(int slice) const {
  int n = n_strips();
  return strips[((slice % n) + n) % n].lower_width;
}

int CausalTriangulation::vertex_id(int slice, int pos) const {
  int n = n_strips();
  int s = ((slice % n) + n) % n;
  return vertex_offset[s] + pos % width(s);
}

HostGraph CausalTriangulation::host() const {
  HostGraph g;
  g.n_vertices = n_vertices();
  g.edges.reserve(edges.size());
  for (const TriEdge& e : edges)
    g.edges.push_back({e.tail, e.head, e.wind_time, e.wind_space});
  return g;
}

namespace {

// Face boundary crossing sums must vanish: the crossing vectors form a
// cocycle on the torus. Checked on every build; a failure means the
// homology convention is broken.
void check_cocycle(const CausalTriangulation& t) {
  for (const Face& f : t.faces) {
    int sa = 0, sb = 0, horizontals = 0;
    for (int i = 0; i < 3; ++i) {
      const TriEdge& e = t.edges[f.edges[i]];
      sa += f.dirs[i] * e.wind_time;
      sb += f.dirs[i] * e.wind_space;
      if (e.kind == EdgeKind::SliceHorizontal) ++horizontals;
    }
    if (sa != 0 || sb != 0) throw StructureError("face crossing sum != 0");
    if (horizontals != 1) throw StructureError("face must have exactly one slice edge");
  }
}

}  // namespace

CausalTriangulation build_graph(const std::vector<Strip>& strips) {
  const int N = static_cast<int>(strips.size());
  if (N < 1) throw StructureError("need at least one strip");
  for (int i = 0; i < N; ++i) {
    strips[i].validate();
    if (strips[i].upper_width != strips[(i + 1) % N].lower_width)
      throw StructureError("strip " + std::to_string(i) +
                           " upper width does not match next strip");
  }

  CausalTriangulation t;
  t.strips = strips;
  t.vertex_offset.resize(N);
  int vid = 0;
  for (int i = 0; i < N; ++i) {
    t.vertex_offset[i] = vid;
    for (int p = 0; p < strips[i].lower_width; ++p) t.vertices.push_back({i, p});
    vid += strips[i].lower_width;
  }

  // Horizontal slice edges first: edge p on slice i runs (i,p) -> (i,p+1);
  // the wrap edge p = n-1 crosses the spatial cut (+1). Width 1 gives a loop.
  std::vector<int> h_start(N);
  for (int i = 0; i < N; ++i) {
    h_start[i] = t.n_edges();
    int n = strips[i].lower_width;
    for (int p = 0; p < n; ++p) {
      TriEdge e;
      e.tail = t.vertex_offset[i] + p;
      e.head = t.vertex_offset[i] + (p + 1) % n;
      e.kind = EdgeKind::SliceHorizontal;
      e.wind_space = (p + 1 == n) ? 1 : 0;
      e.layer = i;
      t.edges.push_back(e);
    }
  }

  // Walk each strip's cyclic word from the mark. Unreduced coordinates
  // (a, b) count consumed lower/upper edges; the diagonal reached at (a, b)
  // joins (i, a mod n) to (i+1, b mod n'). Crossing vectors from the lifts:
  // a diagonal crosses the spatial cut when exactly one endpoint sits on the
  // wrapped copy, and the temporal cut when the strip closes the cylinder.
  t.face_offset.resize(N);
  t.diag_start.resize(N);
  for (int i = 0; i < N; ++i) {
    const Strip& s = strips[i];
    const int n = s.lower_width, np = s.upper_width, m = n + np;
    const int up_slice = (i + 1) % N;
    const int wind_t = (i == N - 1) ? 1 : 0;
    t.face_offset[i] = static_cast<int>(t.faces.size());
    t.diag_start[i] = t.n_edges();

    auto make_diagonal = [&](int a, int b) {
      TriEdge e;
      e.tail = t.vertex_offset[i] + a % n;
      e.head = t.vertex_offset[up_slice] + b % np;
      e.kind = EdgeKind::StripDiagonal;
      e.wind_time = wind_t;
      e.wind_space = (b == np ? 1 : 0) - (a == n ? 1 : 0);
      e.layer = i;
      t.edges.push_back(e);
      return t.n_edges() - 1;
    };

    const int d0 = make_diagonal(0, 0);
    int a = 0, b = 0;
    int left = d0;
    for (int j = 0; j < m; ++j) {
      Tri kind = s.word[(s.mark + j) % m];
      Face f;
      f.orientation = kind;
      f.strip = i;
      f.walk_index = j;
      int base, right;
      if (kind == Tri::Up) {
        base = h_start[i] + a;
        ++a;
      } else {
        base = h_start[up_slice] + b;
        ++b;
      }
      right = (j + 1 == m) ? d0 : make_diagonal(a, b);
      if (kind == Tri::Up) {
        // CCW: base left->right, right diagonal up, left diagonal down.
        f.edges = {base, right, left};
        f.dirs = {+1, +1, -1};
      } else {
        // CCW: right diagonal up, base right->left, left diagonal down.
        f.edges = {right, base, left};
        f.dirs = {+1, -1, -1};
      }
      t.faces.push_back(f);
      left = right;
    }
  }

  check_cocycle(t);
  assert(2 * t.n_vertices() == t.n_triangles());
  assert(2 * t.n_edges() == 3 * t.n_triangles());
  return t;
}

BigInt count_triangulations(int n_strips, int max_width) {
  if (n_strips < 1 || max_width < 1)
    throw std::domain_error("need n_strips >= 1 and max_width >= 1");
  BigInt total = 0;
  std::vector<int> w(static_cast<std::size_t>(n_strips), 1);
  for (;;) {
    BigInt prod = 1;
    for (int i = 0; i < n_strips; ++i)
      prod *= count_strips(w[i], w[(i + 1) % n_strips]);
    total += prod;
    int i = n_strips - 1;
    while (i >= 0 && w[i] == max_width) w[i--] = 1;
    if (i < 0) break;
    ++w[i];
  }
  return total;
}

BigInt enumerate_triangulations(int n_strips, int max_width,
                                const std::function<bool(const CausalTriangulation&)>& visit) {
  if (n_strips < 1 || max_width < 1)
    throw std::domain_error("need n_strips >= 1 and max_width >= 1");
  const int N = n_strips;
  BigInt visited = 0;
  bool stop = false;

  std::vector<int> w(static_cast<std::size_t>(N), 1);
  std::vector<Strip> chosen(static_cast<std::size_t>(N));
  for (;;) {
    // Per width sequence: product over strips of the per-strip lists.
    std::vector<std::vector<Strip>> options(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) options[i] = enumerate_strips(w[i], w[(i + 1) % N]);
    std::vector<std::size_t> idx(static_cast<std::size_t>(N), 0);
    for (;;) {
      for (int i = 0; i < N; ++i) chosen[i] = options[i][idx[i]];
      ++visited;
      if (!visit(build_graph(chosen))) {
        stop = true;
        break;
      }
      int i = N - 1;
      while (i >= 0 && idx[i] + 1 == options[i].size()) idx[i--] = 0;
      if (i < 0) break;
      ++idx[i];
    }
    if (stop) break;
    int i = N - 1;
    while (i >= 0 && w[i] == max_width) w[i--] = 1;
    if (i < 0) break;
    ++w[i];
  }
  return visited;
}

std::vector<CausalTriangulation> all_triangulations(int n_strips, int max_width) {
  std::vector<CausalTriangulation> out;
  enumerate_triangulations(n_strips, max_width, [&](const CausalTriangulation& t) {
    out.push_back(t);
    return true;
  });
  return out;
}

long double weighted_volume_sum(int n_strips, int max_width, double mu) {
  long double sum = 0;
  enumerate_triangulations(n_strips, max_width, [&](const CausalTriangulation& t) {
    sum += std::exp(static_cast<long double>(-mu) * t.n_triangles());
    return true;
  });
  return sum;
}

std::string serialize_triangulation(const CausalTriangulation& t, int max_width) {
  std::ostringstream os;
  os << t.n_strips() << ' ' << max_width << '\n';
  for (const Strip& s : t.strips)
    os << s.lower_width << ' ' << s.upper_width << ' ' << word_to_string(s.word) << ' '
       << s.mark << '\n';
  return os.str();
}

CausalTriangulation parse_triangulation(std::istream& in) {
  int n = 0, k = 0;
  if (!(in >> n >> k)) throw StructureError("triangulation header: expected 'N K'");
  if (n < 1) throw StructureError("triangulation header: N must be >= 1");
  std::vector<Strip> strips;
  for (int i = 0; i < n; ++i) {
    Strip s;
    std::string word;
    if (!(in >> s.lower_width >> s.upper_width >> word >> s.mark))
      throw StructureError("strip line " + std::to_string(i) + ": expected \"n n' word mark\"");
    s.word = word_from_string(word);
    strips.push_back(s);
  }
  return build_graph(strips);
}

CausalTriangulation parse_triangulation(const std::string& text) {
  std::istringstream is(text);
  return parse_triangulation(is);
}

}  // namespace ctpotts
