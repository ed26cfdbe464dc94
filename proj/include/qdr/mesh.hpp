// Quadrilateral and triangle mesh topology, midpoint bisection refinement,
// and the benchmark partitions.
#pragma once

#include <array>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qdr/errors.hpp"
#include "qdr/geometry.hpp"

namespace qdr {

struct MeshEdge {
  int v0 = -1, v1 = -1;        // endpoint vertex ids, v0 < v1 (global orientation)
  int cell0 = -1, cell1 = -1;  // adjacent cells; cell1 = -1 on the boundary
  int local0 = -1, local1 = -1;
  bool boundary = false;
};

struct QuadMesh {
  std::vector<Point2> vertices;
  std::vector<std::array<int, 4>> cells;  // counterclockwise vertex ids
  std::vector<MeshEdge> edges;
  std::vector<std::array<int, 4>> cell_edges;       // edge id of local edge i
  std::vector<std::array<int, 4>> cell_edge_signs;  // +1 if local tangent matches v0->v1
  std::vector<bool> vertex_on_boundary;
  int level = 0;

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_cells() const { return static_cast<int>(cells.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }

  QuadFrame frame(int c) const {
    const auto& k = cells[static_cast<std::size_t>(c)];
    return frame_from_vertices(vertices[k[0]], vertices[k[1]], vertices[k[2]], vertices[k[3]]);
  }

  double edge_length(int e) const {
    const MeshEdge& ed = edges[static_cast<std::size_t>(e)];
    return distance(vertices[ed.v0], vertices[ed.v1]);
  }

  /// Unit tangent along the global orientation (from v0 to v1).
  Vec2 edge_tangent(int e) const {
    const MeshEdge& ed = edges[static_cast<std::size_t>(e)];
    const Vec2 d = vertices[ed.v1] - vertices[ed.v0];
    return d / norm(d);
  }

  double total_area() const {
    double area = 0.0;
    for (int c = 0; c < num_cells(); ++c) area += frame(c).area();
    return area;
  }
};

struct TriMesh {
  std::vector<Point2> vertices;
  std::vector<std::array<int, 3>> cells;  // counterclockwise
  std::vector<MeshEdge> edges;
  std::vector<std::array<int, 3>> cell_edges;
  std::vector<bool> vertex_on_boundary;

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_cells() const { return static_cast<int>(cells.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }
};

namespace detail {

// Rebuild the edge table from the cell list; n is the cell arity.
template <int N, class Mesh>
inline void build_edges(Mesh& mesh) {
  mesh.edges.clear();
  mesh.cell_edges.assign(mesh.cells.size(), {});
  std::map<std::pair<int, int>, int> index;
  for (int c = 0; c < static_cast<int>(mesh.cells.size()); ++c) {
    for (int i = 0; i < N; ++i) {
      const int a = mesh.cells[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)];
      const int b = mesh.cells[static_cast<std::size_t>(c)][static_cast<std::size_t>((i + 1) % N)];
      const std::pair<int, int> key{std::min(a, b), std::max(a, b)};
      auto it = index.find(key);
      if (it == index.end()) {
        MeshEdge e;
        e.v0 = key.first;
        e.v1 = key.second;
        e.cell0 = c;
        e.local0 = i;
        index.emplace(key, static_cast<int>(mesh.edges.size()));
        mesh.cell_edges[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)] =
            static_cast<int>(mesh.edges.size());
        mesh.edges.push_back(e);
      } else {
        MeshEdge& e = mesh.edges[static_cast<std::size_t>(it->second)];
        if (e.cell1 != -1) throw IoError("edge shared by more than two cells");
        e.cell1 = c;
        e.local1 = i;
        mesh.cell_edges[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)] = it->second;
      }
    }
  }
  mesh.vertex_on_boundary.assign(mesh.vertices.size(), false);
  for (auto& e : mesh.edges) {
    e.boundary = (e.cell1 == -1);
    if (e.boundary) {
      mesh.vertex_on_boundary[static_cast<std::size_t>(e.v0)] = true;
      mesh.vertex_on_boundary[static_cast<std::size_t>(e.v1)] = true;
    }
  }
}

inline void finalize(QuadMesh& mesh) {
  build_edges<4>(mesh);
  mesh.cell_edge_signs.assign(mesh.cells.size(), {});
  for (int c = 0; c < mesh.num_cells(); ++c) {
    for (int i = 0; i < 4; ++i) {
      const int a = mesh.cells[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)];
      const int b = mesh.cells[static_cast<std::size_t>(c)][static_cast<std::size_t>((i + 1) % 4)];
      mesh.cell_edge_signs[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)] =
          (a < b) ? 1 : -1;
    }
  }
  // Every cell must carry a valid frame.
  for (int c = 0; c < mesh.num_cells(); ++c) (void)mesh.frame(c);
}

inline void finalize(TriMesh& mesh) {
  build_edges<3>(mesh);
  for (const auto& t : mesh.cells) {
    const Vec2 u = mesh.vertices[static_cast<std::size_t>(t[1])] -
                   mesh.vertices[static_cast<std::size_t>(t[0])];
    const Vec2 w = mesh.vertices[static_cast<std::size_t>(t[2])] -
                   mesh.vertices[static_cast<std::size_t>(t[0])];
    if (cross(u, w) <= 0.0) throw NonConvexError("triangle is not positively oriented");
  }
}

}  // namespace detail

/// Single-cell mesh over a convex counterclockwise quadrilateral.
inline QuadMesh initial_quad_domain(Point2 a1, Point2 a2, Point2 a3, Point2 a4) {
  (void)frame_from_vertices(a1, a2, a3, a4);
  QuadMesh mesh;
  mesh.vertices = {a1, a2, a3, a4};
  mesh.cells = {{0, 1, 2, 3}};
  detail::finalize(mesh);
  return mesh;
}

/// Unit square split into four quadrilaterals by joining the boundary-edge
/// midpoints to the interior point (0.5 + offset, 0.5).  Any offset > 0 makes
/// the cells genuinely non-parallelogram.
inline QuadMesh four_trapezoid_square(double offset) {
  if (!(offset >= 0.0 && offset < 0.5))
    throw NonConvexError("four_trapezoid_square offset must lie in [0, 0.5)");
  QuadMesh mesh;
  mesh.vertices = {
      {0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0},          // corners
      {0.5, 0.0}, {1.0, 0.5}, {0.5, 1.0}, {0.0, 0.5},          // edge midpoints
      {0.5 + offset, 0.5},                                     // interior joint
  };
  mesh.cells = {
      {0, 4, 8, 7},
      {1, 5, 8, 4},
      {2, 6, 8, 5},
      {3, 7, 8, 6},
  };
  detail::finalize(mesh);
  return mesh;
}

/// Unit square tiled with tiles_per_side^2 scaled copies of the four-trapezoid
/// pattern.  Unlike bisection refinement, the cells keep the shape parameters
/// of the pattern at every size, so the family is uniformly skewed rather than
/// asymptotically parallelogram.
inline QuadMesh tiled_trapezoid_square(int tiles_per_side, double offset) {
  if (tiles_per_side < 1) throw NonConvexError("tiled_trapezoid_square needs at least one tile");
  if (!(offset >= 0.0 && offset < 0.5))
    throw NonConvexError("tiled_trapezoid_square offset must lie in [0, 0.5)");
  const int n = tiles_per_side;
  const double step = 1.0 / n;
  QuadMesh mesh;
  std::map<std::pair<long long, long long>, int> vertex_id;
  // Vertices keyed on the half-integer lattice of the tiling (corners and edge
  // midpoints sit on it; the interior joints get odd keys shifted by the
  // offset but remain unique per tile).
  auto vertex = [&](double x, double y) {
    const std::pair<long long, long long> key{std::llround(x * 4 * n * 1024.0),
                                              std::llround(y * 4 * n * 1024.0)};
    auto it = vertex_id.find(key);
    if (it != vertex_id.end()) return it->second;
    const int id = static_cast<int>(mesh.vertices.size());
    mesh.vertices.push_back({x, y});
    vertex_id.emplace(key, id);
    return id;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double x0 = i * step, y0 = j * step;
      const int c00 = vertex(x0, y0);
      const int c10 = vertex(x0 + step, y0);
      const int c11 = vertex(x0 + step, y0 + step);
      const int c01 = vertex(x0, y0 + step);
      const int m_bottom = vertex(x0 + 0.5 * step, y0);
      const int m_right = vertex(x0 + step, y0 + 0.5 * step);
      const int m_top = vertex(x0 + 0.5 * step, y0 + step);
      const int m_left = vertex(x0, y0 + 0.5 * step);
      const int joint = vertex(x0 + (0.5 + offset) * step, y0 + 0.5 * step);
      mesh.cells.push_back({c00, m_bottom, joint, m_left});
      mesh.cells.push_back({c10, m_right, joint, m_bottom});
      mesh.cells.push_back({c11, m_top, joint, m_right});
      mesh.cells.push_back({c01, m_left, joint, m_top});
    }
  }
  detail::finalize(mesh);
  return mesh;
}

/// Midpoint bisection: each cell is split into four children by joining the
/// midpoints of opposite edges through their cross point.  Children inherit
/// counterclockwise order starting from the parent vertex they contain.
inline QuadMesh bisection_refine(const QuadMesh& mesh) {
  QuadMesh fine;
  fine.level = mesh.level + 1;
  fine.vertices = mesh.vertices;

  // Midpoint ids keyed by the sorted parent vertex pair, never by coordinates.
  std::map<std::pair<int, int>, int> midpoint_id;
  auto midpoint_of = [&](int a, int b) {
    const std::pair<int, int> key{std::min(a, b), std::max(a, b)};
    auto it = midpoint_id.find(key);
    if (it != midpoint_id.end()) return it->second;
    const int id = static_cast<int>(fine.vertices.size());
    fine.vertices.push_back(midpoint(mesh.vertices[static_cast<std::size_t>(a)],
                                     mesh.vertices[static_cast<std::size_t>(b)]));
    midpoint_id.emplace(key, id);
    return id;
  };

  fine.cells.reserve(mesh.cells.size() * 4);
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const auto& k = mesh.cells[static_cast<std::size_t>(c)];
    std::array<int, 4> m;  // m[i] = midpoint of edge (k[i], k[i+1])
    for (int i = 0; i < 4; ++i) m[static_cast<std::size_t>(i)] = midpoint_of(k[i], k[(i + 1) % 4]);
    const int center = static_cast<int>(fine.vertices.size());
    fine.vertices.push_back(mesh.frame(c).center);
    for (int i = 0; i < 4; ++i) {
      fine.cells.push_back({k[i], m[static_cast<std::size_t>(i)], center,
                            m[static_cast<std::size_t>((i + 3) % 4)]});
    }
  }
  detail::finalize(fine);
  return fine;
}

/// Splits every quadrilateral into two triangles along the diagonal A1A3.
inline TriMesh split_to_triangles(const QuadMesh& mesh) {
  TriMesh tri;
  tri.vertices = mesh.vertices;
  tri.cells.reserve(mesh.cells.size() * 2);
  for (const auto& k : mesh.cells) {
    tri.cells.push_back({k[0], k[1], k[2]});
    tri.cells.push_back({k[0], k[2], k[3]});
  }
  detail::finalize(tri);
  return tri;
}

struct MeshStats {
  double h = 0.0;             // max cell diameter
  double max_alpha = 0.0;     // max |alpha|
  double max_beta = 0.0;      // max |beta|
  double max_regularity = 0.0;
  double max_gap_ratio = 0.0; // max d_K / h_K^2
};

inline MeshStats mesh_stats(const QuadMesh& mesh) {
  MeshStats st;
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const QuadFrame f = mesh.frame(c);
    const RegularityReport rep = regularity_report(f);
    st.h = std::max(st.h, f.diameter);
    st.max_alpha = std::max(st.max_alpha, std::abs(f.alpha));
    st.max_beta = std::max(st.max_beta, std::abs(f.beta));
    st.max_regularity = std::max(st.max_regularity, rep.regularity);
    st.max_gap_ratio = std::max(st.max_gap_ratio, rep.midpoint_gap / (f.diameter * f.diameter));
  }
  return st;
}

//---------------------------------------------------------------------------
// Text format: "nv ne nc", nv lines "x y", nc lines "v1 v2 v3 v4" (0-based,
// counterclockwise).  The edge table is rebuilt on load.
//---------------------------------------------------------------------------

inline void save_qmesh(const QuadMesh& mesh, std::ostream& out) {
  out << mesh.num_vertices() << ' ' << mesh.num_edges() << ' ' << mesh.num_cells() << '\n';
  char buf[64];
  for (const Point2& p : mesh.vertices) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", p.x, p.y);
    out << buf;
  }
  for (const auto& k : mesh.cells)
    out << k[0] << ' ' << k[1] << ' ' << k[2] << ' ' << k[3] << '\n';
}

inline void save_qmesh(const QuadMesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  save_qmesh(mesh, out);
  if (!out.good()) throw IoError("write failure on " + path);
}

inline QuadMesh load_qmesh(std::istream& in) {
  QuadMesh mesh;
  int nv = 0, ne = 0, nc = 0;
  if (!(in >> nv >> ne >> nc) || nv < 3 || nc < 1) throw IoError("malformed qmesh header");
  mesh.vertices.resize(static_cast<std::size_t>(nv));
  for (auto& p : mesh.vertices)
    if (!(in >> p.x >> p.y)) throw IoError("malformed qmesh vertex line");
  mesh.cells.resize(static_cast<std::size_t>(nc));
  for (auto& k : mesh.cells) {
    if (!(in >> k[0] >> k[1] >> k[2] >> k[3])) throw IoError("malformed qmesh cell line");
    for (int v : k)
      if (v < 0 || v >= nv) throw IoError("qmesh cell references a missing vertex");
  }
  detail::finalize(mesh);
  if (mesh.num_edges() != ne) throw IoError("qmesh edge count does not match the cell list");
  return mesh;
}

inline QuadMesh load_qmesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return load_qmesh(in);
}

}  // namespace qdr
