// Bilinear-form assembly for the H1 and H(rot) model problems with symmetric
// elimination of the Dirichlet dofs, mass matrices, error norms, and the
// linear triangle element used for comparison runs.
#pragma once

#include <vector>

#include "qdr/interpolation.hpp"
#include "qdr/sparse.hpp"

namespace qdr {

struct SparseSystem {
  SparseMatrix matrix;               // on free dofs; symmetric positive definite
  std::vector<double> rhs;
  std::vector<int> free_to_global;
  std::vector<int> global_to_free;   // -1 for constrained dofs
  int n_global = 0;

  int num_free() const { return static_cast<int>(free_to_global.size()); }

  /// Scatter a free-dof vector to the full dof vector; constrained dofs are
  /// homogeneous.
  std::vector<double> expand(const std::vector<double>& x_free) const {
    std::vector<double> full(static_cast<std::size_t>(n_global), 0.0);
    for (std::size_t i = 0; i < free_to_global.size(); ++i)
      full[static_cast<std::size_t>(free_to_global[i])] = x_free[i];
    return full;
  }
};

namespace detail {

inline std::vector<int> free_map(const std::vector<bool>& constrained, std::vector<int>& keep) {
  std::vector<int> map(constrained.size(), -1);
  keep.clear();
  for (std::size_t i = 0; i < constrained.size(); ++i) {
    if (!constrained[i]) {
      map[i] = static_cast<int>(keep.size());
      keep.push_back(static_cast<int>(i));
    }
  }
  return map;
}

}  // namespace detail

/// Submatrix of a square matrix on the free dofs of a system.
inline SparseMatrix restrict_to_free(const SparseMatrix& full, const SparseSystem& system) {
  std::vector<Triplet> triplets;
  for (int r = 0; r < full.rows(); ++r) {
    const int fr = system.global_to_free[static_cast<std::size_t>(r)];
    if (fr < 0) continue;
    for (int k = full.row_ptr()[static_cast<std::size_t>(r)];
         k < full.row_ptr()[static_cast<std::size_t>(r) + 1]; ++k) {
      const int fc = system.global_to_free[static_cast<std::size_t>(full.col_idx()[static_cast<std::size_t>(k)])];
      if (fc >= 0) triplets.push_back({fr, fc, full.values()[static_cast<std::size_t>(k)]});
    }
  }
  SparseMatrix sub =
      SparseMatrix::from_triplets(system.num_free(), system.num_free(), std::move(triplets));
  sub.symmetric = full.symmetric;
  return sub;
}

/// Broken stiffness of the vertex-dof element with homogeneous Dirichlet
/// values at the boundary vertices.  The stiffness integrand is a degree-2
/// polynomial in the frame coordinates, so the cell rule is exact.
inline SparseSystem assemble_poisson(const QuadMesh& mesh, const ScalarField& f,
                                     int load_degree = 10) {
  SparseSystem system;
  system.n_global = mesh.num_vertices();
  system.global_to_free = detail::free_map(mesh.vertex_on_boundary, system.free_to_global);
  if (system.free_to_global.empty())
    throw EmptyInteriorError("no interior vertices to solve for");

  std::vector<Triplet> triplets;
  system.rhs.assign(system.free_to_global.size(), 0.0);
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const QuadFrame frame = mesh.frame(c);
    const QblBasis basis = qbl_basis(frame);
    const QuadratureRule stiff_rule = quadrature_on_quad(frame, 2);
    double element[4][4] = {};
    for (std::size_t q = 0; q < stiff_rule.points.size(); ++q) {
      const auto grads = qbl_gradients(basis, frame, stiff_rule.points[q]);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          element[i][j] += stiff_rule.weights[q] * dot(grads[static_cast<std::size_t>(i)],
                                                       grads[static_cast<std::size_t>(j)]);
    }
    double load[4] = {};
    const QuadratureRule load_rule = quadrature_on_quad(frame, load_degree);
    for (std::size_t q = 0; q < load_rule.points.size(); ++q) {
      const auto values = qbl_values(basis, frame, load_rule.points[q]);
      const double wf = load_rule.weights[q] * f(load_rule.points[q]);
      for (int i = 0; i < 4; ++i) load[i] += wf * values[static_cast<std::size_t>(i)];
    }
    for (int i = 0; i < 4; ++i) {
      const int gi = system.global_to_free[static_cast<std::size_t>(
          mesh.cells[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)])];
      if (gi < 0) continue;
      system.rhs[static_cast<std::size_t>(gi)] += load[i];
      for (int j = 0; j < 4; ++j) {
        const int gj = system.global_to_free[static_cast<std::size_t>(
            mesh.cells[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)])];
        if (gj >= 0) triplets.push_back({gi, gj, element[i][j]});
      }
    }
  }
  system.matrix =
      SparseMatrix::from_triplets(system.num_free(), system.num_free(), std::move(triplets));
  system.matrix.symmetric = true;
  return system;
}

/// Mass matrix of the vertex-dof element on all vertices; products of the
/// basis functions have total degree four in the frame coordinates.
inline SparseMatrix assemble_mass_qbl(const QuadMesh& mesh) {
  std::vector<Triplet> triplets;
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const QuadFrame frame = mesh.frame(c);
    const QblBasis basis = qbl_basis(frame);
    const QuadratureRule rule = quadrature_on_quad(frame, 4);
    double element[4][4] = {};
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const auto values = qbl_values(basis, frame, rule.points[q]);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          element[i][j] += rule.weights[q] * values[static_cast<std::size_t>(i)] *
                           values[static_cast<std::size_t>(j)];
    }
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        triplets.push_back({mesh.cells[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)],
                            mesh.cells[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)],
                            element[i][j]});
  }
  SparseMatrix mass =
      SparseMatrix::from_triplets(mesh.num_vertices(), mesh.num_vertices(), std::move(triplets));
  mass.symmetric = true;
  return mass;
}

/// rot-rot plus vector mass form of the edge element with homogeneous
/// tangential values on the boundary edges.  rot is cellwise constant, so the
/// rot-rot block is rank one per cell; the mass integrand has degree two.
inline SparseSystem assemble_hrot(const QuadMesh& mesh, const VectorField& f,
                                  int load_degree = 10) {
  SparseSystem system;
  system.n_global = mesh.num_edges();
  std::vector<bool> constrained(static_cast<std::size_t>(mesh.num_edges()));
  for (int e = 0; e < mesh.num_edges(); ++e)
    constrained[static_cast<std::size_t>(e)] = mesh.edges[static_cast<std::size_t>(e)].boundary;
  system.global_to_free = detail::free_map(constrained, system.free_to_global);
  if (system.free_to_global.empty())
    throw EmptyInteriorError("no interior edges to solve for");

  std::vector<Triplet> triplets;
  system.rhs.assign(system.free_to_global.size(), 0.0);
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const QuadFrame frame = mesh.frame(c);
    const QrtBasis basis = qrt_basis(frame);
    const auto rots = qrt_rot(basis, frame);
    const double area = frame.area();
    double element[4][4] = {};
    const QuadratureRule mass_rule = quadrature_on_quad(frame, 2);
    for (std::size_t q = 0; q < mass_rule.points.size(); ++q) {
      const auto values = qrt_values(basis, frame, mass_rule.points[q]);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          element[i][j] += mass_rule.weights[q] * dot(values[static_cast<std::size_t>(i)],
                                                      values[static_cast<std::size_t>(j)]);
    }
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        element[i][j] += rots[static_cast<std::size_t>(i)] * rots[static_cast<std::size_t>(j)] * area;

    double load[4] = {};
    const QuadratureRule load_rule = quadrature_on_quad(frame, load_degree);
    for (std::size_t q = 0; q < load_rule.points.size(); ++q) {
      const auto values = qrt_values(basis, frame, load_rule.points[q]);
      const Vec2 fv = f(load_rule.points[q]);
      for (int i = 0; i < 4; ++i)
        load[i] += load_rule.weights[q] * dot(fv, values[static_cast<std::size_t>(i)]);
    }

    const auto& cell_edges = mesh.cell_edges[static_cast<std::size_t>(c)];
    const auto& signs = mesh.cell_edge_signs[static_cast<std::size_t>(c)];
    for (int i = 0; i < 4; ++i) {
      const int gi = system.global_to_free[static_cast<std::size_t>(cell_edges[static_cast<std::size_t>(i)])];
      if (gi < 0) continue;
      system.rhs[static_cast<std::size_t>(gi)] += signs[static_cast<std::size_t>(i)] * load[i];
      for (int j = 0; j < 4; ++j) {
        const int gj = system.global_to_free[static_cast<std::size_t>(cell_edges[static_cast<std::size_t>(j)])];
        if (gj >= 0)
          triplets.push_back({gi, gj,
                              signs[static_cast<std::size_t>(i)] *
                                  signs[static_cast<std::size_t>(j)] * element[i][j]});
      }
    }
  }
  system.matrix =
      SparseMatrix::from_triplets(system.num_free(), system.num_free(), std::move(triplets));
  system.matrix.symmetric = true;
  return system;
}

//---------------------------------------------------------------------------
// Linear triangles (comparison element)
//---------------------------------------------------------------------------

namespace detail {

struct TriGeometry {
  std::array<Point2, 3> p;
  std::array<Vec2, 3> grad;  // gradients of the barycentric functions
  double area = 0.0;
};

inline TriGeometry tri_geometry(const TriMesh& mesh, int c) {
  TriGeometry g;
  for (int i = 0; i < 3; ++i)
    g.p[static_cast<std::size_t>(i)] = mesh.vertices[static_cast<std::size_t>(
        mesh.cells[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)])];
  const double twice = cross(g.p[1] - g.p[0], g.p[2] - g.p[0]);
  g.area = 0.5 * twice;
  // grad of the barycentric of vertex i is the inward normal of the opposite
  // edge scaled by its length over twice the area.
  for (int i = 0; i < 3; ++i) {
    const Vec2 opposite = g.p[static_cast<std::size_t>((i + 2) % 3)] -
                          g.p[static_cast<std::size_t>((i + 1) % 3)];
    g.grad[static_cast<std::size_t>(i)] = Vec2{-opposite.y, opposite.x} / twice;
  }
  return g;
}

}  // namespace detail

/// Linear-triangle stiffness and load with homogeneous Dirichlet values.
inline SparseSystem assemble_courant(const TriMesh& mesh, const ScalarField& f,
                                     int load_degree = 10) {
  SparseSystem system;
  system.n_global = mesh.num_vertices();
  system.global_to_free = detail::free_map(mesh.vertex_on_boundary, system.free_to_global);
  if (system.free_to_global.empty())
    throw EmptyInteriorError("no interior vertices to solve for");

  std::vector<Triplet> triplets;
  system.rhs.assign(system.free_to_global.size(), 0.0);
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const detail::TriGeometry g = detail::tri_geometry(mesh, c);
    const QuadratureRule rule = triangle_rule(g.p[0], g.p[1], g.p[2], load_degree);
    double load[3] = {};
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const Point2 p = rule.points[q];
      const double wf = rule.weights[q] * f(p);
      // Barycentric values from the affine expansion around vertex 0.
      const double l1 = dot(g.grad[1], p - g.p[0]);
      const double l2 = dot(g.grad[2], p - g.p[0]);
      load[0] += wf * (1.0 - l1 - l2);
      load[1] += wf * l1;
      load[2] += wf * l2;
    }
    for (int i = 0; i < 3; ++i) {
      const int gi = system.global_to_free[static_cast<std::size_t>(
          mesh.cells[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)])];
      if (gi < 0) continue;
      system.rhs[static_cast<std::size_t>(gi)] += load[i];
      for (int j = 0; j < 3; ++j) {
        const int gj = system.global_to_free[static_cast<std::size_t>(
            mesh.cells[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)])];
        if (gj >= 0)
          triplets.push_back({gi, gj,
                              g.area * dot(g.grad[static_cast<std::size_t>(i)],
                                           g.grad[static_cast<std::size_t>(j)])});
      }
    }
  }
  system.matrix =
      SparseMatrix::from_triplets(system.num_free(), system.num_free(), std::move(triplets));
  system.matrix.symmetric = true;
  return system;
}

/// Consistent mass matrix of the linear triangles on all vertices.
inline SparseMatrix assemble_mass_courant(const TriMesh& mesh) {
  std::vector<Triplet> triplets;
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const detail::TriGeometry g = detail::tri_geometry(mesh, c);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        triplets.push_back({mesh.cells[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)],
                            mesh.cells[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)],
                            g.area / (i == j ? 6.0 : 12.0)});
  }
  SparseMatrix mass =
      SparseMatrix::from_triplets(mesh.num_vertices(), mesh.num_vertices(), std::move(triplets));
  mass.symmetric = true;
  return mass;
}

//---------------------------------------------------------------------------
// Error norms
//---------------------------------------------------------------------------

struct ErrorNorms {
  double l2 = 0.0;
  double h1_broken = 0.0;
  double rot_semi = 0.0;
  double rot_full = 0.0;
};

/// Broken norms of (exact - u_h) for a vertex-dof function.
inline ErrorNorms error_norms(const FeFunction& u_h, const ScalarField& u,
                              const VectorField& grad_u, int degree = 10) {
  const QuadMesh& mesh = *u_h.mesh;
  double l2 = 0.0, h1 = 0.0;
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const QblLocal local = qbl_local(u_h, c);
    const QuadratureRule rule = quadrature_on_quad(local.frame, degree);
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const Point2 p = rule.points[q];
      const double du = u(p) - local.value(p);
      const Vec2 dg = grad_u(p) - local.gradient(p);
      l2 += rule.weights[q] * du * du;
      h1 += rule.weights[q] * dot(dg, dg);
    }
  }
  ErrorNorms norms;
  norms.l2 = std::sqrt(l2);
  norms.h1_broken = std::sqrt(h1);
  return norms;
}

/// Broken norms of (exact - sigma_h) for an edge-dof function.
inline ErrorNorms error_norms(const FeFunction& sigma_h, const VectorField& sigma,
                              const ScalarField& rot_sigma, int degree = 10) {
  const QuadMesh& mesh = *sigma_h.mesh;
  double l2 = 0.0, rot = 0.0, full = 0.0;
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const QrtLocal local = qrt_local(sigma_h, c);
    const double rot_h = local.rot();
    const QuadratureRule rule = quadrature_on_quad(local.frame, degree);
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const Point2 p = rule.points[q];
      const Vec2 ds = sigma(p) - local.value(p);
      const double dr = rot_sigma(p) - rot_h;
      l2 += rule.weights[q] * dot(ds, ds);
      rot += rule.weights[q] * dr * dr;
      full += rule.weights[q] * (dot(ds, ds) + dr * dr);
    }
  }
  ErrorNorms norms;
  norms.l2 = std::sqrt(l2);
  norms.rot_semi = std::sqrt(rot);
  norms.rot_full = std::sqrt(full);
  return norms;
}

/// L2 and H1 errors of a linear-triangle function given by vertex dofs.
inline ErrorNorms error_norms_courant(const TriMesh& mesh, const std::vector<double>& dofs,
                                      const ScalarField& u, const VectorField& grad_u,
                                      int degree = 10) {
  double l2 = 0.0, h1 = 0.0;
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const detail::TriGeometry g = detail::tri_geometry(mesh, c);
    const double d0 = dofs[static_cast<std::size_t>(mesh.cells[static_cast<std::size_t>(c)][0])];
    const double d1 = dofs[static_cast<std::size_t>(mesh.cells[static_cast<std::size_t>(c)][1])];
    const double d2 = dofs[static_cast<std::size_t>(mesh.cells[static_cast<std::size_t>(c)][2])];
    const Vec2 grad_h = d0 * g.grad[0] + d1 * g.grad[1] + d2 * g.grad[2];
    const QuadratureRule rule = triangle_rule(g.p[0], g.p[1], g.p[2], degree);
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const Point2 p = rule.points[q];
      const double l1 = dot(g.grad[1], p - g.p[0]);
      const double l2c = dot(g.grad[2], p - g.p[0]);
      const double value = d0 * (1.0 - l1 - l2c) + d1 * l1 + d2 * l2c;
      const double du = u(p) - value;
      const Vec2 dg = grad_u(p) - grad_h;
      l2 += rule.weights[q] * du * du;
      h1 += rule.weights[q] * dot(dg, dg);
    }
  }
  ErrorNorms norms;
  norms.l2 = std::sqrt(l2);
  norms.h1_broken = std::sqrt(h1);
  return norms;
}

}  // namespace qdr
