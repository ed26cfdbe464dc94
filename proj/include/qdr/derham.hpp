// Matrix form of the discrete complex (vertex dofs -> edge dofs -> cell dofs),
// dense exactness diagnostics, consistency functionals of the two
// nonconforming spaces, and the interior trace-jump witness.
#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <vector>

#include "qdr/interpolation.hpp"
#include "qdr/sparse.hpp"

namespace qdr {

/// Edge-average tangential derivative: row e has -1/|e| at the tail vertex and
/// +1/|e| at the head vertex of the global orientation.  Restricted to an edge
/// a QBL function is a polynomial matching the endpoint values, so its average
/// tangential derivative telescopes to the endpoint difference.
inline SparseMatrix gradient_matrix(const QuadMesh& mesh) {
  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(2 * mesh.num_edges()));
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const MeshEdge& ed = mesh.edges[static_cast<std::size_t>(e)];
    const double inv_len = 1.0 / mesh.edge_length(e);
    triplets.push_back({e, ed.v0, -inv_len});
    triplets.push_back({e, ed.v1, inv_len});
  }
  return SparseMatrix::from_triplets(mesh.num_edges(), mesh.num_vertices(), std::move(triplets));
}

/// Cell average of rot: row K holds sign * |e| / (4 cross(r, s)) for each of
/// its edges, i.e. the boundary circulation divided by the cell area.
inline SparseMatrix rot_matrix(const QuadMesh& mesh) {
  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(4 * mesh.num_cells()));
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const QuadFrame f = mesh.frame(c);
    for (int i = 0; i < 4; ++i) {
      const int e = mesh.cell_edges[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)];
      const int sign = mesh.cell_edge_signs[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)];
      triplets.push_back({c, e, sign * f.edge_length[static_cast<std::size_t>(i)] /
                                    (4.0 * f.cross_rs)});
    }
  }
  return SparseMatrix::from_triplets(mesh.num_cells(), mesh.num_edges(), std::move(triplets));
}

struct ComplexReport {
  bool with_boundary_conditions = false;
  int dim_qbl = 0;  // vertex dofs (interior only under boundary conditions)
  int dim_qrt = 0;  // edge dofs (interior only under boundary conditions)
  int dim_w = 0;    // cell dofs (mean-free constraint counted under b.c.)
  int rank_grad = 0;
  int rank_rot = 0;
  int ker_grad_dim = 0;
  int ker_rot_dim = 0;
  double composition_max_abs = 0.0;  // max entry of rot * grad
  double composition_scale = 0.0;    // max|rot| * max|grad|
  bool grad_kernel_ok = false;  // constants only (or trivial under b.c.)
  bool rot_onto_ok = false;     // rot maps onto the cell-dof space
  bool exact_at_qrt = false;    // ker(rot) and image(grad) have equal dimension
  bool euler_ok = false;        // alternating dimension count
  bool exact() const { return grad_kernel_ok && rot_onto_ok && exact_at_qrt && euler_ok; }
};

constexpr int kDenseDofLimit = 2000;

/// Dense kernel/rank verification of the two-step sequence.  Ranks use
/// singular value thresholding at 1e-9 times the largest singular value.
inline ComplexReport exactness_check(const QuadMesh& mesh, bool with_boundary_conditions) {
  const int nv = mesh.num_vertices(), ne = mesh.num_edges(), nc = mesh.num_cells();
  if (nv + ne + nc > 3 * kDenseDofLimit || std::max({nv, ne, nc}) > kDenseDofLimit)
    throw TooLargeForDenseError("mesh too large for dense rank checks");

  const SparseMatrix grad = gradient_matrix(mesh);
  const SparseMatrix rot = rot_matrix(mesh);
  const SparseMatrix comp = rot.multiply(grad);

  std::vector<int> vkeep, ekeep;
  for (int v = 0; v < nv; ++v)
    if (!with_boundary_conditions || !mesh.vertex_on_boundary[static_cast<std::size_t>(v)])
      vkeep.push_back(v);
  for (int e = 0; e < ne; ++e)
    if (!with_boundary_conditions || !mesh.edges[static_cast<std::size_t>(e)].boundary)
      ekeep.push_back(e);

  auto to_dense = [](const SparseMatrix& m, const std::vector<int>& rows,
                     const std::vector<int>& cols) {
    Eigen::MatrixXd d(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j)
        d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            m.coeff(rows[i], cols[j]);
    return d;
  };
  auto rank_of = [](const Eigen::MatrixXd& m) {
    if (m.size() == 0) return 0;
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const double tol = 1e-9 * svd.singularValues()(0);
    int rank = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()(i) > tol) ++rank;
    return rank;
  };

  std::vector<int> all_cells(static_cast<std::size_t>(nc));
  for (int c = 0; c < nc; ++c) all_cells[static_cast<std::size_t>(c)] = c;

  ComplexReport rep;
  rep.with_boundary_conditions = with_boundary_conditions;
  rep.dim_qbl = static_cast<int>(vkeep.size());
  rep.dim_qrt = static_cast<int>(ekeep.size());
  rep.dim_w = with_boundary_conditions ? nc - 1 : nc;
  rep.rank_grad = rank_of(to_dense(grad, ekeep, vkeep));
  rep.rank_rot = rank_of(to_dense(rot, all_cells, ekeep));
  rep.ker_grad_dim = rep.dim_qbl - rep.rank_grad;
  rep.ker_rot_dim = rep.dim_qrt - rep.rank_rot;
  rep.composition_max_abs = comp.max_abs();
  rep.composition_scale = rot.max_abs() * grad.max_abs();

  if (with_boundary_conditions) {
    rep.grad_kernel_ok = (rep.ker_grad_dim == 0);
    rep.rot_onto_ok = (rep.rank_rot == nc - 1);  // onto the mean-free cell dofs
    rep.euler_ok = (rep.dim_qbl - rep.dim_qrt + rep.dim_w == 0);
  } else {
    rep.grad_kernel_ok = (rep.ker_grad_dim == 1);
    rep.rot_onto_ok = (rep.rank_rot == nc);
    rep.euler_ok = (rep.dim_qrt == rep.dim_qbl + rep.dim_w - 1);
  }
  rep.exact_at_qrt = (rep.ker_rot_dim == rep.rank_grad);
  return rep;
}

//---------------------------------------------------------------------------
// Consistency functionals
//---------------------------------------------------------------------------

/// Integration-by-parts residual (zeta, grad_h v_h) + (div zeta, v_h) in its
/// edge form: sum over cells and their edges of the outward flux of zeta
/// weighted by the deviation of the trace of v_h from its linear endpoint
/// interpolant.  Vanishes on parallelogram cells, where the traces are linear.
inline double consistency_h1(const QuadMesh& mesh, const VectorField& zeta,
                             const FeFunction& v_h, int degree = 10) {
  double total = 0.0;
  const auto gauss = gauss_legendre((degree + 2) / 2);
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const QblLocal local = qbl_local(v_h, c);
    for (int i = 0; i < 4; ++i) {
      const Point2 a = local.frame.vertex[static_cast<std::size_t>(i)];
      const Vec2 edge = local.frame.edge[static_cast<std::size_t>(i)];
      const double len = local.frame.edge_length[static_cast<std::size_t>(i)];
      const Vec2 n = local.frame.outward_normal(i);
      const double va = local.dof[static_cast<std::size_t>(i)];
      const double vb = local.dof[static_cast<std::size_t>((i + 1) % 4)];
      double integral = 0.0;
      for (const auto& g : gauss) {
        const double t = 0.5 * (g.x + 1.0);
        const Point2 p = a + t * edge;
        const double linear = (1.0 - t) * va + t * vb;
        integral += 0.5 * g.w * len * dot(zeta(p), n) * (local.value(p) - linear);
      }
      total += integral;
    }
  }
  return total;
}

/// Same functional assembled from its volume definition.
inline double consistency_h1_volume(const QuadMesh& mesh, const VectorField& zeta,
                                    const ScalarField& div_zeta, const FeFunction& v_h,
                                    int degree = 10) {
  double total = 0.0;
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const QblLocal local = qbl_local(v_h, c);
    total += quadrature_on_quad(local.frame, degree).integrate([&](Point2 p) {
      return dot(zeta(p), local.gradient(p)) + div_zeta(p) * local.value(p);
    });
  }
  return total;
}

/// Integration-by-parts residual (w, rot_h tau_h) - (curl w, tau_h) in its
/// edge form: the tangential trace of tau_h minus its edge average, weighted
/// by w minus its boundary average on each cell.
inline double consistency_rot(const QuadMesh& mesh, const ScalarField& w,
                              const FeFunction& tau_h, int degree = 10) {
  double total = 0.0;
  const auto gauss = gauss_legendre((degree + 2) / 2);
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const QrtLocal local = qrt_local(tau_h, c);
    // Boundary average of w over the four edges.
    double w_integral = 0.0, perimeter = 0.0;
    for (int i = 0; i < 4; ++i) {
      const double len = local.frame.edge_length[static_cast<std::size_t>(i)];
      for (const auto& g : gauss) {
        const double t = 0.5 * (g.x + 1.0);
        w_integral += 0.5 * g.w * len *
                      w(local.frame.vertex[static_cast<std::size_t>(i)] +
                        t * local.frame.edge[static_cast<std::size_t>(i)]);
      }
      perimeter += len;
    }
    const double c_k = w_integral / perimeter;

    for (int i = 0; i < 4; ++i) {
      const Point2 a = local.frame.vertex[static_cast<std::size_t>(i)];
      const Vec2 edge = local.frame.edge[static_cast<std::size_t>(i)];
      const double len = local.frame.edge_length[static_cast<std::size_t>(i)];
      const Vec2 t_unit = local.frame.unit_tangent(i);
      const double edge_avg = local.dof[static_cast<std::size_t>(i)];
      double integral = 0.0;
      for (const auto& g : gauss) {
        const double t = 0.5 * (g.x + 1.0);
        const Point2 p = a + t * edge;
        integral += 0.5 * g.w * len * (w(p) - c_k) * (dot(local.value(p), t_unit) - edge_avg);
      }
      total += integral;
    }
  }
  return total;
}

/// Same functional assembled from its volume definition.
inline double consistency_rot_volume(const QuadMesh& mesh, const ScalarField& w,
                                     const VectorField& curl_w, const FeFunction& tau_h,
                                     int degree = 10) {
  double total = 0.0;
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const QrtLocal local = qrt_local(tau_h, c);
    const double rot = local.rot();
    total += quadrature_on_quad(local.frame, degree).integrate(
        [&](Point2 p) { return w(p) * rot - dot(curl_w(p), local.value(p)); });
  }
  return total;
}

/// Vector representation of the functional: component v equals the functional
/// applied to the global hat function of vertex v, so that the functional of
/// any dof vector is the plain dot product.
inline std::vector<double> consistency_h1_vector(const QuadMesh& mesh, const VectorField& zeta,
                                                 int degree = 10) {
  std::vector<double> out(static_cast<std::size_t>(mesh.num_vertices()), 0.0);
  const auto gauss = gauss_legendre((degree + 2) / 2);
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const QuadFrame frame = mesh.frame(c);
    const QblBasis basis = qbl_basis(frame);
    for (int j = 0; j < 4; ++j) {
      const Point2 a = frame.vertex[static_cast<std::size_t>(j)];
      const Vec2 edge = frame.edge[static_cast<std::size_t>(j)];
      const double len = frame.edge_length[static_cast<std::size_t>(j)];
      const Vec2 n = frame.outward_normal(j);
      for (const auto& g : gauss) {
        const double t = 0.5 * (g.x + 1.0);
        const Point2 p = a + t * edge;
        const auto values = qbl_values(basis, frame, p);
        const double flux = 0.5 * g.w * len * dot(zeta(p), n);
        for (int i = 0; i < 4; ++i) {
          // Linear endpoint interpolant of the i-th local basis on this edge.
          double linear = 0.0;
          if (i == j) linear = 1.0 - t;
          if (i == (j + 1) % 4) linear = t;
          out[static_cast<std::size_t>(
              mesh.cells[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)])] +=
              flux * (values[static_cast<std::size_t>(i)] - linear);
        }
      }
    }
  }
  return out;
}

/// Vector representation of the rot functional over the edge dofs.
inline std::vector<double> consistency_rot_vector(const QuadMesh& mesh, const ScalarField& w,
                                                  int degree = 10) {
  std::vector<double> out(static_cast<std::size_t>(mesh.num_edges()), 0.0);
  const auto gauss = gauss_legendre((degree + 2) / 2);
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const QuadFrame frame = mesh.frame(c);
    const QrtBasis basis = qrt_basis(frame);
    double w_integral = 0.0, perimeter = 0.0;
    for (int j = 0; j < 4; ++j) {
      const double len = frame.edge_length[static_cast<std::size_t>(j)];
      for (const auto& g : gauss) {
        const double t = 0.5 * (g.x + 1.0);
        w_integral += 0.5 * g.w * len *
                      w(frame.vertex[static_cast<std::size_t>(j)] +
                        t * frame.edge[static_cast<std::size_t>(j)]);
      }
      perimeter += len;
    }
    const double c_k = w_integral / perimeter;
    for (int j = 0; j < 4; ++j) {
      const Point2 a = frame.vertex[static_cast<std::size_t>(j)];
      const Vec2 edge = frame.edge[static_cast<std::size_t>(j)];
      const double len = frame.edge_length[static_cast<std::size_t>(j)];
      const Vec2 t_unit = frame.unit_tangent(j);
      for (const auto& g : gauss) {
        const double t = 0.5 * (g.x + 1.0);
        const Point2 p = a + t * edge;
        const auto values = qrt_values(basis, frame, p);
        const double weight = 0.5 * g.w * len * (w(p) - c_k);
        for (int i = 0; i < 4; ++i) {
          // Edge average of the i-th local basis on edge j is delta_ij.
          const double deviation = dot(values[static_cast<std::size_t>(i)], t_unit) -
                                   (i == j ? 1.0 : 0.0);
          const int e = mesh.cell_edges[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)];
          const int sign =
              mesh.cell_edge_signs[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)];
          out[static_cast<std::size_t>(e)] += sign * weight * deviation;
        }
      }
    }
  }
  return out;
}

/// Largest absolute trace jump of a vertex-dof function across the interior
/// edges, sampled at Gauss points.  Nonzero jumps witness the nonconformity of
/// the space on non-parallelogram cells.
inline double max_interior_trace_jump(const QuadMesh& mesh, const FeFunction& v_h,
                                      int samples = 8) {
  const auto gauss = gauss_legendre(samples);
  double max_jump = 0.0;
  for (const MeshEdge& ed : mesh.edges) {
    if (ed.boundary) continue;
    const QblLocal left = qbl_local(v_h, ed.cell0);
    const QblLocal right = qbl_local(v_h, ed.cell1);
    const Point2 a = mesh.vertices[static_cast<std::size_t>(ed.v0)];
    const Point2 b = mesh.vertices[static_cast<std::size_t>(ed.v1)];
    for (const auto& g : gauss) {
      const double t = 0.5 * (g.x + 1.0);
      const Point2 p = a + t * (b - a);
      max_jump = std::max(max_jump, std::abs(left.value(p) - right.value(p)));
    }
  }
  return max_jump;
}

}  // namespace qdr
