// Global finite element functions on a quadrilateral mesh and the three
// interpolation operators (vertex values, edge tangential averages, cell
// averages), plus residuals of the interpolation/differentiation exchange.
#pragma once

#include <cassert>
#include <cmath>
#include <vector>

#include "qdr/elements.hpp"
#include "qdr/mesh.hpp"

namespace qdr {

enum class Space { QBL, QRT, W };

/// Piecewise polynomial function identified by its global dof vector.
/// QBL: one dof per vertex; QRT: one dof per edge (tangential average along
/// the global low-to-high orientation); W: one dof per cell (the average).
/// The mesh must outlive the function.
struct FeFunction {
  Space space;
  std::vector<double> dofs;
  const QuadMesh* mesh = nullptr;
};

inline FeFunction interp_qbl(const QuadMesh& mesh, const ScalarField& u) {
  FeFunction f{Space::QBL, {}, &mesh};
  f.dofs.resize(static_cast<std::size_t>(mesh.num_vertices()));
  for (int v = 0; v < mesh.num_vertices(); ++v)
    f.dofs[static_cast<std::size_t>(v)] = u(mesh.vertices[static_cast<std::size_t>(v)]);
  return f;
}

inline FeFunction interp_qrt(const QuadMesh& mesh, const VectorField& sigma, int degree = 10) {
  FeFunction f{Space::QRT, {}, &mesh};
  f.dofs.resize(static_cast<std::size_t>(mesh.num_edges()));
  const auto gauss = gauss_legendre((degree + 2) / 2);
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const MeshEdge& ed = mesh.edges[static_cast<std::size_t>(e)];
    const Point2 a = mesh.vertices[static_cast<std::size_t>(ed.v0)];
    const Point2 b = mesh.vertices[static_cast<std::size_t>(ed.v1)];
    const Vec2 tangent = (b - a) / distance(a, b);
    double avg = 0.0;
    for (const auto& g : gauss) {
      const double t = 0.5 * (g.x + 1.0);
      avg += 0.5 * g.w * dot(sigma(a + t * (b - a)), tangent);
    }
    f.dofs[static_cast<std::size_t>(e)] = avg;
  }
  return f;
}

inline FeFunction interp_const(const QuadMesh& mesh, const ScalarField& q, int degree = 10) {
  FeFunction f{Space::W, {}, &mesh};
  f.dofs.resize(static_cast<std::size_t>(mesh.num_cells()));
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const QuadFrame frame = mesh.frame(c);
    f.dofs[static_cast<std::size_t>(c)] =
        quadrature_on_quad(frame, degree).integrate(q) / frame.area();
  }
  return f;
}

//---------------------------------------------------------------------------
// Cell-local views
//---------------------------------------------------------------------------

struct QblLocal {
  QuadFrame frame;
  QblBasis basis;
  std::array<double, 4> dof;

  double value(Point2 p) const {
    const auto v = qbl_values(basis, frame, p);
    return dof[0] * v[0] + dof[1] * v[1] + dof[2] * v[2] + dof[3] * v[3];
  }
  Vec2 gradient(Point2 p) const {
    const auto g = qbl_gradients(basis, frame, p);
    return dof[0] * g[0] + dof[1] * g[1] + dof[2] * g[2] + dof[3] * g[3];
  }
};

inline QblLocal qbl_local(const FeFunction& f, int c) {
  assert(f.space == Space::QBL);
  const QuadMesh& mesh = *f.mesh;
  QblLocal local{mesh.frame(c), {}, {}};
  local.basis = qbl_basis(local.frame);
  for (int i = 0; i < 4; ++i)
    local.dof[static_cast<std::size_t>(i)] = f.dofs[static_cast<std::size_t>(
        mesh.cells[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)])];
  return local;
}

struct QrtLocal {
  QuadFrame frame;
  QrtBasis basis;
  std::array<double, 4> dof;  // local counterclockwise orientation

  Vec2 value(Point2 p) const {
    const auto v = qrt_values(basis, frame, p);
    return dof[0] * v[0] + dof[1] * v[1] + dof[2] * v[2] + dof[3] * v[3];
  }
  double rot() const {
    double d3 = 0.0, d4 = 0.0;
    for (int i = 0; i < 4; ++i) {
      d3 += dof[static_cast<std::size_t>(i)] * basis.coeff[static_cast<std::size_t>(i)][2];
      d4 += dof[static_cast<std::size_t>(i)] * basis.coeff[static_cast<std::size_t>(i)][3];
    }
    return (d3 - d4) / frame.cross_rs;
  }
};

inline QrtLocal qrt_local(const FeFunction& f, int c) {
  assert(f.space == Space::QRT);
  const QuadMesh& mesh = *f.mesh;
  QrtLocal local{mesh.frame(c), {}, {}};
  local.basis = qrt_basis(local.frame);
  for (int i = 0; i < 4; ++i) {
    const int e = mesh.cell_edges[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)];
    const int sign = mesh.cell_edge_signs[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)];
    local.dof[static_cast<std::size_t>(i)] = sign * f.dofs[static_cast<std::size_t>(e)];
  }
  return local;
}

//---------------------------------------------------------------------------
// Interpolation/differentiation exchange residuals
//---------------------------------------------------------------------------

struct CommutativityResidual {
  double grad_pointwise = 0.0;  // max |grad(interpolated u) - interpolated grad u|
  double rot_cellwise = 0.0;    // max |rot(interpolated grad u)|, zero in exact arithmetic
  double grad_scale = 0.0;      // max |grad u| over the sample points
};

/// Measures how far the broken gradient of the vertex interpolant is from the
/// edge interpolant of the gradient, pointwise at quadrature points, and the
/// cellwise rot left over in the latter.
inline CommutativityResidual commutativity_residual(const QuadMesh& mesh, const ScalarField& u,
                                                    const VectorField& grad_u, int degree = 10) {
  CommutativityResidual res;
  const FeFunction vertex_interp = interp_qbl(mesh, u);
  const FeFunction edge_interp = interp_qrt(mesh, grad_u, degree);
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const QblLocal lu = qbl_local(vertex_interp, c);
    const QrtLocal ls = qrt_local(edge_interp, c);
    for (const Point2& p : quadrature_on_quad(lu.frame, 4).points) {
      res.grad_pointwise = std::max(res.grad_pointwise, norm(lu.gradient(p) - ls.value(p)));
      res.grad_scale = std::max(res.grad_scale, norm(grad_u(p)));
    }
    res.rot_cellwise = std::max(res.rot_cellwise, std::abs(ls.rot()));
  }
  return res;
}

/// Max cellwise difference between rot of the edge interpolant and the cell
/// averages of rot, relative to the largest cell average.
inline double rot_commutativity_residual(const QuadMesh& mesh, const VectorField& sigma,
                                         const ScalarField& rot_sigma, int degree = 10) {
  const FeFunction edge_interp = interp_qrt(mesh, sigma, degree);
  const FeFunction averages = interp_const(mesh, rot_sigma, degree);
  double max_diff = 0.0, scale = 0.0;
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const QrtLocal ls = qrt_local(edge_interp, c);
    const double avg = averages.dofs[static_cast<std::size_t>(c)];
    max_diff = std::max(max_diff, std::abs(ls.rot() - avg));
    scale = std::max(scale, std::abs(avg));
  }
  return max_diff / (scale > 0.0 ? scale : 1.0);
}

/// Max relative disagreement between the edge dofs of the broken gradient of
/// the vertex interpolant (endpoint differences over edge lengths) and the
/// edge dofs of the interpolated gradient.
inline double grad_commutativity_dof_residual(const QuadMesh& mesh, const ScalarField& u,
                                              const VectorField& grad_u, int degree = 10) {
  const FeFunction edge_interp = interp_qrt(mesh, grad_u, degree);
  double max_diff = 0.0, scale = 0.0;
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const MeshEdge& ed = mesh.edges[static_cast<std::size_t>(e)];
    const Point2 a = mesh.vertices[static_cast<std::size_t>(ed.v0)];
    const Point2 b = mesh.vertices[static_cast<std::size_t>(ed.v1)];
    const double grad_dof = (u(b) - u(a)) / distance(a, b);
    max_diff = std::max(max_diff, std::abs(grad_dof - edge_interp.dofs[static_cast<std::size_t>(e)]));
    scale = std::max(scale, std::abs(edge_interp.dofs[static_cast<std::size_t>(e)]));
  }
  return max_diff / (scale > 0.0 ? scale : 1.0);
}

}  // namespace qdr
