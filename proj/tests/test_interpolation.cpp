#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "helpers.hpp"
#include "qdr/interpolation.hpp"

using namespace qdr;

namespace {

QuadMesh skewed_domain(int refinements) {
  QuadMesh mesh = initial_quad_domain({0.0, 0.0}, {1.0, 0.0}, {2.0, 2.0}, {-1.0, 1.0});
  for (int i = 0; i < refinements; ++i) mesh = bisection_refine(mesh);
  return mesh;
}

// Broken norms of interpolation errors, accumulated by direct quadrature.
struct InterpErrors {
  double l2_vertex = 0.0, h1_vertex = 0.0;
  double rot_full_edge = 0.0;
  double l2_cell = 0.0;
};

InterpErrors interp_errors(const QuadMesh& mesh, const ScalarField& u, const VectorField& grad_u,
                           const VectorField& sigma, const ScalarField& rot_sigma,
                           const ScalarField& q) {
  const FeFunction ju = interp_qbl(mesh, u);
  const FeFunction ps = interp_qrt(mesh, sigma);
  const FeFunction pq = interp_const(mesh, q);
  double l2 = 0, h1 = 0, sl2 = 0, srot = 0, ql2 = 0;
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const QblLocal lu = qbl_local(ju, c);
    const QrtLocal ls = qrt_local(ps, c);
    const double qc = pq.dofs[c];
    const QuadratureRule rule = quadrature_on_quad(lu.frame, 10);
    for (std::size_t k = 0; k < rule.points.size(); ++k) {
      const Point2 p = rule.points[k];
      const double w = rule.weights[k];
      const double du = u(p) - lu.value(p);
      l2 += w * du * du;
      const Vec2 dg = grad_u(p) - lu.gradient(p);
      h1 += w * dot(dg, dg);
      const Vec2 ds = sigma(p) - ls.value(p);
      sl2 += w * dot(ds, ds);
      const double dr = rot_sigma(p) - ls.rot();
      srot += w * dr * dr;
      const double dq = q(p) - qc;
      ql2 += w * dq * dq;
    }
  }
  return {std::sqrt(l2), std::sqrt(h1), std::sqrt(sl2 + srot), std::sqrt(ql2)};
}

}  // namespace

TEST_CASE("constant and affine reproduction") {
  QuadMesh mesh = four_trapezoid_square(0.125);
  mesh = bisection_refine(mesh);

  const FeFunction ones = interp_qbl(mesh, [](Point2) { return 1.0; });
  for (double d : ones.dofs) CHECK(d == 1.0);
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const QblLocal local = qbl_local(ones, c);
    CHECK(local.value(local.frame.center) == Catch::Approx(1.0).margin(1e-13));
  }

  auto affine = [](Point2 p) { return 2.0 * p.x - 0.7 * p.y + 0.3; };
  const FeFunction ja = interp_qbl(mesh, affine);
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const QblLocal local = qbl_local(ja, c);
    for (const Point2& p : quadrature_on_quad(local.frame, 4).points)
      CHECK(local.value(p) == Catch::Approx(affine(p)).margin(1e-12));
  }

  const Vec2 cvec{0.8, -0.4};
  const FeFunction pc = interp_qrt(mesh, [&](Point2) { return cvec; });
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const QrtLocal local = qrt_local(pc, c);
    for (const Point2& p : quadrature_on_quad(local.frame, 2).points)
      CHECK(norm(local.value(p) - cvec) < 1e-12);
    CHECK(std::abs(local.rot()) < 1e-12);
  }

  const FeFunction qc = interp_const(mesh, [](Point2) { return -3.5; });
  for (double d : qc.dofs) CHECK(d == Catch::Approx(-3.5).margin(1e-13));
}

TEST_CASE("cell averages in frame coordinates") {
  const QuadMesh one = initial_quad_domain({3.0, 2.0}, {0.0, 1.0}, {0.0, 0.0}, {2.0, 0.0});
  const QuadFrame f = one.frame(0);
  const FeFunction avg = interp_const(one, [&](Point2 p) { return f.xi_eta(p).first; });
  CHECK(avg.dofs[0] == Catch::Approx(f.beta / 3.0).margin(1e-13));
}

TEST_CASE("interpolation commutes with differentiation") {
  std::vector<QuadMesh> meshes;
  meshes.push_back(bisection_refine(four_trapezoid_square(0.125)));
  meshes.push_back(skewed_domain(2));
  {
    QuadMesh square = initial_quad_domain({0, 0}, {1, 0}, {1, 1}, {0, 1});
    meshes.push_back(bisection_refine(bisection_refine(square)));
  }

  for (const QuadMesh& mesh : meshes) {
    // Affine functions: both residuals are pure roundoff.
    const CommutativityResidual affine = commutativity_residual(
        mesh, [](Point2 p) { return 1.5 * p.x - 2.0 * p.y + 0.25; },
        [](Point2) { return Vec2{1.5, -2.0}; });
    CHECK(affine.grad_pointwise < 1e-12);
    CHECK(affine.rot_cellwise < 1e-12);

    const CommutativityResidual smooth = commutativity_residual(
        mesh, [](Point2 p) { return p.x * p.x * p.y; },
        [](Point2 p) { return Vec2{2.0 * p.x * p.y, p.x * p.x}; });
    CHECK(smooth.grad_pointwise < 1e-10 * (1 + smooth.grad_scale));
    CHECK(smooth.rot_cellwise < 1e-10 * (1 + smooth.grad_scale));

    CHECK(grad_commutativity_dof_residual(mesh, [](Point2 p) { return std::sin(p.x) * p.y; },
                                          [](Point2 p) {
                                            return Vec2{std::cos(p.x) * p.y, std::sin(p.x)};
                                          }) < 1e-11);

    CHECK(rot_commutativity_residual(
              mesh, [](Point2 p) { return Vec2{std::sin(p.y), std::cos(p.x)}; },
              [](Point2 p) { return -std::sin(p.x) - std::cos(p.y); }) < 1e-10);
  }
}

TEST_CASE("interpolation error convergence orders") {
  auto u = [](Point2 p) {
    const double x = p.x, y = p.y;
    return y * (x + y) * (x - 3 * y + 4) * (2 * x - y - 2);
  };
  auto grad_u = [](Point2 p) {
    const double x = p.x, y = p.y;
    return Vec2{6 * x * x * y - 10 * x * y * y + 12 * x * y - 4 * y * y * y + 8 * y * y - 8 * y,
                2 * x * x * x - 10 * x * x * y + 6 * x * x - 12 * x * y * y + 16 * x * y - 8 * x +
                    12 * y * y * y + 6 * y * y - 16 * y};
  };
  auto sigma = [](Point2 p) {
    return Vec2{p.x * p.y * p.y - p.x * p.y, p.x * p.x * p.y - p.x * p.y};
  };
  auto rot_sigma = [](Point2 p) { return p.x - p.y; };
  auto q = [](Point2 p) { return std::sin(p.x + 2.0 * p.y); };

  std::vector<InterpErrors> errors;
  for (int level = 2; level <= 5; ++level)
    errors.push_back(interp_errors(skewed_domain(level), u, grad_u, sigma, rot_sigma, q));

  const auto last = errors.size() - 1;
  const double order_l2 = std::log2(errors[last - 1].l2_vertex / errors[last].l2_vertex);
  const double order_h1 = std::log2(errors[last - 1].h1_vertex / errors[last].h1_vertex);
  const double order_rot = std::log2(errors[last - 1].rot_full_edge / errors[last].rot_full_edge);
  const double order_cell = std::log2(errors[last - 1].l2_cell / errors[last].l2_cell);
  CHECK(order_l2 > 1.85);
  CHECK(order_l2 < 2.15);
  CHECK(order_h1 > 0.85);
  CHECK(order_h1 < 1.15);
  CHECK(order_rot > 0.85);
  CHECK(order_rot < 1.15);
  CHECK(order_cell > 0.85);
  CHECK(order_cell < 1.15);
}
