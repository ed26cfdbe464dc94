// Local bases of the two quadrilateral elements and their degree-of-freedom
// functionals.
//
// QBL: shape functions span{1, xi, eta, xi*eta} with vertex values as degrees
// of freedom.  QRT: shape functions span{grad xi, grad eta, xi grad eta,
// eta grad xi} with edge-average tangential components as degrees of freedom,
// the tangent running counterclockwise along the cell boundary.
#pragma once

#include <array>
#include <functional>

#include "qdr/geometry.hpp"

namespace qdr {

using ScalarField = std::function<double(Point2)>;
using VectorField = std::function<Vec2(Point2)>;

/// Coefficients of the nodal basis: row i holds (c1, c2, c3, c4) with
/// phi_i = c1*xi*eta + c2*xi + c3*eta + c4, and phi_i(A_j) = delta_ij.
struct QblBasis {
  std::array<std::array<double, 4>, 4> coeff{};
};

inline QblBasis qbl_basis(const QuadFrame& f) {
  const double a = f.alpha, b = f.beta;
  // |a| + |b| < 1 keeps the common denominator away from zero (it equals -4
  // for parallelograms).
  const double den = 4.0 * (a * a + b * b - 1.0);
  QblBasis basis;
  basis.coeff[0] = {(a + b - 1.0) / den,
                    (b - 1.0) * (-a + b + 1.0) / den,
                    (a - 1.0) * (a - b + 1.0) / den,
                    -(a - 1.0) * (b - 1.0) * (a + b + 1.0) / den};
  basis.coeff[1] = {(-a + b + 1.0) / den,
                    -(b + 1.0) * (a + b - 1.0) / den,
                    (a - 1.0) * (a + b + 1.0) / den,
                    (a - 1.0) * (b + 1.0) * (a - b + 1.0) / den};
  basis.coeff[2] = {-(a + b + 1.0) / den,
                    (b + 1.0) * (a - b + 1.0) / den,
                    (a + 1.0) * (-a + b + 1.0) / den,
                    (a + 1.0) * (b + 1.0) * (a + b - 1.0) / den};
  basis.coeff[3] = {(a - b + 1.0) / den,
                    (b - 1.0) * (a + b + 1.0) / den,
                    -(a + 1.0) * (a + b - 1.0) / den,
                    (a + 1.0) * (b - 1.0) * (-a + b + 1.0) / den};
  return basis;
}

inline std::array<double, 4> qbl_values_ref(const QblBasis& basis, double xi, double eta) {
  std::array<double, 4> out;
  for (int i = 0; i < 4; ++i) {
    const auto& c = basis.coeff[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(i)] = c[0] * xi * eta + c[1] * xi + c[2] * eta + c[3];
  }
  return out;
}

inline std::array<double, 4> qbl_values(const QblBasis& basis, const QuadFrame& f, Point2 p) {
  auto [xi, eta] = f.xi_eta(p);
  return qbl_values_ref(basis, xi, eta);
}

/// grad phi_i = (c1*eta + c2) grad xi + (c1*xi + c3) grad eta.
inline std::array<Vec2, 4> qbl_gradients(const QblBasis& basis, const QuadFrame& f, Point2 p) {
  auto [xi, eta] = f.xi_eta(p);
  const Vec2 gx = f.grad_xi(), ge = f.grad_eta();
  std::array<Vec2, 4> out;
  for (int i = 0; i < 4; ++i) {
    const auto& c = basis.coeff[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(i)] = (c[0] * eta + c[1]) * gx + (c[0] * xi + c[2]) * ge;
  }
  return out;
}

/// Coefficients of the edge basis: row i holds (d1, d2, d3, d4) with
/// phi_i = d1 grad xi + d2 grad eta + d3 xi grad eta + d4 eta grad xi,
/// dual to the edge-average tangential functionals.  The edge lengths are
/// baked in so duality holds without renormalization.
struct QrtBasis {
  std::array<std::array<double, 4>, 4> coeff{};
};

inline QrtBasis qrt_basis(const QuadFrame& f) {
  const double a = f.alpha, b = f.beta;
  const double den = 4.0 * (a * a + b * b - 1.0);
  const auto& L = f.edge_length;
  QrtBasis basis;
  basis.coeff[0] = {(1.0 - a) * (1.0 - b * b) * L[0] / den,
                    a * (1.0 - a) * b * L[0] / den,
                    -a * (1.0 - a) * L[0] / den,
                    (1.0 - a - b * b) * L[0] / den};
  basis.coeff[1] = {a * b * (1.0 + b) * L[1] / den,
                    (1.0 - a * a) * (1.0 + b) * L[1] / den,
                    -(1.0 - a * a + b) * L[1] / den,
                    -b * (1.0 + b) * L[1] / den};
  basis.coeff[2] = {-(1.0 + a) * (1.0 - b * b) * L[2] / den,
                    -a * (1.0 + a) * b * L[2] / den,
                    a * (1.0 + a) * L[2] / den,
                    (1.0 + a - b * b) * L[2] / den};
  basis.coeff[3] = {-a * b * (1.0 - b) * L[3] / den,
                    -(1.0 - a * a) * (1.0 - b) * L[3] / den,
                    -(1.0 - a * a - b) * L[3] / den,
                    b * (1.0 - b) * L[3] / den};
  return basis;
}

inline std::array<Vec2, 4> qrt_values(const QrtBasis& basis, const QuadFrame& f, Point2 p) {
  auto [xi, eta] = f.xi_eta(p);
  const Vec2 gx = f.grad_xi(), ge = f.grad_eta();
  std::array<Vec2, 4> out;
  for (int i = 0; i < 4; ++i) {
    const auto& d = basis.coeff[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(i)] = (d[0] + d[3] * eta) * gx + (d[1] + d[2] * xi) * ge;
  }
  return out;
}

/// rot phi_i is constant on the cell: (d3 - d4) / cross(r, s).
inline std::array<double, 4> qrt_rot(const QrtBasis& basis, const QuadFrame& f) {
  std::array<double, 4> out;
  for (int i = 0; i < 4; ++i) {
    const auto& d = basis.coeff[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(i)] = (d[2] - d[3]) / f.cross_rs;
  }
  return out;
}

//---------------------------------------------------------------------------
// Degree-of-freedom functionals
//---------------------------------------------------------------------------

enum class DofKind { VertexValue, EdgeTangentialAverage, CellAverage };

struct DofFunctional {
  DofKind kind;
  int site = 0;  // vertex index, edge index, or ignored for the cell average
};

/// Vertex-value and cell-average functionals applied to a scalar field.
inline double apply_dof(const DofFunctional& dof, const QuadFrame& f, const ScalarField& u,
                        int degree = 10) {
  switch (dof.kind) {
    case DofKind::VertexValue:
      return u(f.vertex[static_cast<std::size_t>(dof.site)]);
    case DofKind::CellAverage:
      return quadrature_on_quad(f, degree).integrate(u) / f.area();
    case DofKind::EdgeTangentialAverage:
      throw DegreeTooHighError("edge tangential dof requires a vector field");
  }
  return 0.0;
}

/// Edge-average tangential functional applied to a vector field, with the
/// counterclockwise tangent.  Default 4-point Gauss (exact to degree 7).
inline double apply_dof(const DofFunctional& dof, const QuadFrame& f, const VectorField& sigma,
                        int degree = 7) {
  if (dof.kind != DofKind::EdgeTangentialAverage)
    throw DegreeTooHighError("vector fields feed only edge tangential dofs");
  const int i = dof.site;
  const Vec2 t = f.unit_tangent(i);
  const double integral =
      edge_rule(f, i, degree).integrate([&](Point2 p) { return dot(sigma(p), t); });
  return integral / f.edge_length[static_cast<std::size_t>(i)];
}

}  // namespace qdr
