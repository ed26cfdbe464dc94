#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "qdr/geometry.hpp"

using namespace qdr;
using qdr_test::random_convex_quad;
using qdr_test::random_frame;
using qdr_test::sample_quad;

namespace {

double shoelace_area(const std::array<Point2, 4>& v) {
  double twice = 0.0;
  for (int i = 0; i < 4; ++i) {
    const Point2 a = v[i], b = v[(i + 1) % 4];
    twice += a.x * b.y - a.y * b.x;
  }
  return 0.5 * twice;
}

}  // namespace

TEST_CASE("frame of the unit square") {
  const QuadFrame f =
      frame_from_vertices({1.0, 1.0}, {0.0, 1.0}, {0.0, 0.0}, {1.0, 0.0});
  CHECK(f.alpha == Catch::Approx(0.0).margin(1e-15));
  CHECK(f.beta == Catch::Approx(0.0).margin(1e-15));
  CHECK(f.r.x == Catch::Approx(0.5));
  CHECK(f.r.y == Catch::Approx(0.0).margin(1e-15));
  CHECK(f.s.x == Catch::Approx(0.0).margin(1e-15));
  CHECK(f.s.y == Catch::Approx(0.5));
  CHECK(f.area() == Catch::Approx(1.0));
}

TEST_CASE("parallelograms have vanishing shape parameters") {
  std::mt19937 rng(7);
  for (int k = 0; k < 50; ++k) {
    const Point2 o{qdr_test::pick(rng, -3, 3), qdr_test::pick(rng, -3, 3)};
    const Vec2 u{qdr_test::pick(rng, 0.2, 2), qdr_test::pick(rng, -1, 1)};
    Vec2 w{qdr_test::pick(rng, -1, 1), qdr_test::pick(rng, 0.2, 2)};
    if (cross(u, w) < 0.05) w = w + perp(-u);
    const QuadFrame f = frame_from_vertices(o, o + u, o + u + w, o + w);
    CHECK(std::abs(f.alpha) < 1e-13);
    CHECK(std::abs(f.beta) < 1e-13);
    const RegularityReport rep = regularity_report(f);
    CHECK(rep.midpoint_gap < 1e-13);
  }
}

TEST_CASE("worked quadrilateral frame") {
  const QuadFrame f = sample_quad();
  CHECK(f.alpha == Catch::Approx(1.0 / 7.0).epsilon(1e-12));
  CHECK(f.beta == Catch::Approx(2.0 / 7.0).epsilon(1e-12));
  CHECK(f.r.x == Catch::Approx(1.25));
  CHECK(f.r.y == Catch::Approx(0.25));
  CHECK(f.s.x == Catch::Approx(0.25));
  CHECK(f.s.y == Catch::Approx(0.75));
  CHECK(f.cross_rs == Catch::Approx(0.875));

  // Independent check of the 2x2 system defining (alpha, beta): substitute the
  // solution back into 2*alpha*r + 2*beta*s = A1 + A3 - 2*O componentwise.
  const Vec2 lhs = 2.0 * f.alpha * f.r + 2.0 * f.beta * f.s;
  const Vec2 rhs = (f.vertex[0] - f.center) + (f.vertex[2] - f.center);
  CHECK(lhs.x == Catch::Approx(rhs.x).margin(1e-13));
  CHECK(lhs.y == Catch::Approx(rhs.y).margin(1e-13));
}

TEST_CASE("vertex coordinates in the frame") {
  std::mt19937 rng(11);
  for (int k = 0; k < 100; ++k) {
    const QuadFrame f = random_frame(rng);
    const double a = f.alpha, b = f.beta;
    const double expected[4][2] = {
        {1 + a, 1 + b}, {-1 - a, 1 - b}, {-1 + a, -1 + b}, {1 - a, -1 - b}};
    for (int i = 0; i < 4; ++i) {
      auto [xi, eta] = f.xi_eta(f.vertex[i]);
      CHECK(xi == Catch::Approx(expected[i][0]).margin(1e-12));
      CHECK(eta == Catch::Approx(expected[i][1]).margin(1e-12));
    }
  }
}

TEST_CASE("frame coordinates at distinguished points") {
  const QuadFrame f = sample_quad();
  auto [xi0, eta0] = f.xi_eta(f.center);
  CHECK(std::abs(xi0) < 1e-14);
  CHECK(std::abs(eta0) < 1e-14);
  auto [xir, etar] = f.xi_eta(f.center + f.r);
  CHECK(xir == Catch::Approx(1.0));
  CHECK(std::abs(etar) < 1e-14);
}

TEST_CASE("point reconstruction from frame coordinates") {
  std::mt19937 rng(13);
  for (int k = 0; k < 100; ++k) {
    const QuadFrame f = random_frame(rng);
    for (int j = 0; j < 10; ++j) {
      // Random point inside the cell via bilinear blending of the vertices.
      const double u = qdr_test::pick(rng, 0, 1), v = qdr_test::pick(rng, 0, 1);
      const Point2 p{
          (1 - u) * ((1 - v) * f.vertex[0].x + v * f.vertex[1].x) +
              u * ((1 - v) * f.vertex[3].x + v * f.vertex[2].x),
          (1 - u) * ((1 - v) * f.vertex[0].y + v * f.vertex[1].y) +
              u * ((1 - v) * f.vertex[3].y + v * f.vertex[2].y)};
      auto [xi, eta] = f.xi_eta(p);
      const Point2 back = f.point_at(xi, eta);
      CHECK(distance(back, p) < 1e-12 * f.diameter);
    }
  }
}

TEST_CASE("dual frame gradients") {
  std::mt19937 rng(17);
  for (int k = 0; k < 100; ++k) {
    const QuadFrame f = random_frame(rng);
    CHECK(dot(f.grad_xi(), f.r) == Catch::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(dot(f.grad_xi(), f.s)) < 1e-12);
    CHECK(dot(f.grad_eta(), f.s) == Catch::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(dot(f.grad_eta(), f.r)) < 1e-12);
    // cross(grad_xi, grad_eta) = 1 / cross(r, s)
    CHECK(cross(f.grad_xi(), f.grad_eta()) ==
          Catch::Approx(1.0 / f.cross_rs).epsilon(1e-12));
  }
}

TEST_CASE("mean-free coordinates") {
  const QuadFrame square =
      frame_from_vertices({1.0, 1.0}, {0.0, 1.0}, {0.0, 0.0}, {1.0, 0.0});
  auto [xih, etah] = square.xi_eta_hat({0.75, 0.25});
  auto [xi, eta] = square.xi_eta({0.75, 0.25});
  CHECK(xih == Catch::Approx(xi));
  CHECK(etah == Catch::Approx(eta));

  const QuadFrame f = sample_quad();
  const QuadratureRule rule = quadrature_on_quad(f, 2);
  const double int_xihat = rule.integrate([&](Point2 p) { return f.xi_eta_hat(p).first; });
  CHECK(std::abs(int_xihat) < 1e-13 * f.area());
  const double int_xihat2 =
      rule.integrate([&](Point2 p) { auto [u, v] = f.xi_eta_hat(p); return u * u; });
  CHECK(int_xihat2 ==
        Catch::Approx(cell_integral_closed_form(f, CellMonomial::HatXiXi)).epsilon(1e-13));
}

TEST_CASE("cell monomial integrals match closed forms") {
  const QuadFrame f = sample_quad();
  const double c = f.cross_rs;
  CHECK(cell_monomial_integral(f, 0, 0) == Catch::Approx(4.0 * c).epsilon(1e-13));
  CHECK(cell_monomial_integral(f, 0, 0) ==
        Catch::Approx(shoelace_area(f.vertex)).epsilon(1e-13));
  CHECK(cell_monomial_integral(f, 1, 0) ==
        Catch::Approx(4.0 * f.beta / 3.0 * c).epsilon(1e-13));
  CHECK(cell_monomial_integral(f, 2, 0) ==
        Catch::Approx(4.0 / 3.0 * (1.0 + f.alpha * f.alpha) * c).epsilon(1e-13));
}

TEST_CASE("edge monomial integrals match closed forms") {
  const QuadFrame f = sample_quad();
  CHECK(edge_monomial_integral(f, 0, 2, 0) ==
        Catch::Approx(edge_integral_closed_form(f, 0, EdgeMonomial::XiXi)).epsilon(1e-13));
  CHECK(edge_monomial_integral(f, 1, 1, 1) ==
        Catch::Approx(edge_integral_closed_form(f, 1, EdgeMonomial::XiEta)).epsilon(1e-13));

  const QuadFrame square =
      frame_from_vertices({1.0, 1.0}, {0.0, 1.0}, {0.0, 0.0}, {1.0, 0.0});
  CHECK(edge_monomial_integral(square, 0, 0, 2) ==
        Catch::Approx(square.edge_length[0]).epsilon(1e-13));
}

TEST_CASE("boundary and cell integral tables versus quadrature") {
  std::mt19937 rng(23);
  for (int k = 0; k < 200; ++k) {
    const QuadFrame f = random_frame(rng);
    for (int i = 0; i < 4; ++i) {
      const double q_xx = edge_monomial_integral(f, i, 2, 0);
      const double q_xe = edge_monomial_integral(f, i, 1, 1);
      const double q_ee = edge_monomial_integral(f, i, 0, 2);
      CHECK(q_xx ==
            Catch::Approx(edge_integral_closed_form(f, i, EdgeMonomial::XiXi)).epsilon(1e-12));
      CHECK(q_xe ==
            Catch::Approx(edge_integral_closed_form(f, i, EdgeMonomial::XiEta)).epsilon(1e-12));
      CHECK(q_ee ==
            Catch::Approx(edge_integral_closed_form(f, i, EdgeMonomial::EtaEta)).epsilon(1e-12));
    }
    const QuadratureRule rule = quadrature_on_quad(f, 2);
    auto q_cell = [&](int a, int b) {
      return rule.integrate([&](Point2 p) {
        auto [xi, eta] = f.xi_eta(p);
        return std::pow(xi, a) * std::pow(eta, b);
      });
    };
    CHECK(q_cell(0, 0) ==
          Catch::Approx(cell_integral_closed_form(f, CellMonomial::One)).epsilon(1e-12));
    CHECK(q_cell(1, 0) ==
          Catch::Approx(cell_integral_closed_form(f, CellMonomial::Xi)).epsilon(1e-12));
    CHECK(q_cell(0, 1) ==
          Catch::Approx(cell_integral_closed_form(f, CellMonomial::Eta)).epsilon(1e-12));
    CHECK(q_cell(2, 0) ==
          Catch::Approx(cell_integral_closed_form(f, CellMonomial::XiXi)).epsilon(1e-12));
    CHECK(q_cell(1, 1) ==
          Catch::Approx(cell_integral_closed_form(f, CellMonomial::XiEta)).epsilon(1e-12));
    CHECK(q_cell(0, 2) ==
          Catch::Approx(cell_integral_closed_form(f, CellMonomial::EtaEta)).epsilon(1e-12));
  }
}

TEST_CASE("regularity report") {
  const QuadFrame square =
      frame_from_vertices({1.0, 1.0}, {0.0, 1.0}, {0.0, 0.0}, {1.0, 0.0});
  const RegularityReport srep = regularity_report(square);
  CHECK(srep.regularity == Catch::Approx(1.0));
  CHECK(srep.midpoint_gap == Catch::Approx(0.0).margin(1e-15));

  const QuadFrame f = sample_quad();
  const RegularityReport rep = regularity_report(f);
  CHECK(rep.midpoint_gap == Catch::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-12));

  std::mt19937 rng(29);
  for (int k = 0; k < 100; ++k) {
    const QuadFrame g = random_frame(rng);
    const RegularityReport r = regularity_report(g);
    CHECK(r.regularity >= 1.0 - 1e-14);
    const double via_frame = 2.0 * norm(g.alpha * g.r + g.beta * g.s);
    CHECK(r.midpoint_gap == Catch::Approx(via_frame).margin(1e-13));
  }
}

TEST_CASE("frame quantities are invariant under rigid motions") {
  std::mt19937 rng(31);
  for (int k = 0; k < 50; ++k) {
    const auto v = random_convex_quad(rng);
    const QuadFrame f = frame_from_vertices(v);
    const double theta = qdr_test::pick(rng, 0, 2 * M_PI);
    const Vec2 shift{qdr_test::pick(rng, -4, 4), qdr_test::pick(rng, -4, 4)};
    auto moved = [&](Point2 p) {
      return Point2{p.x * std::cos(theta) - p.y * std::sin(theta) + shift.x,
                    p.x * std::sin(theta) + p.y * std::cos(theta) + shift.y};
    };
    const QuadFrame g = frame_from_vertices(moved(v[0]), moved(v[1]), moved(v[2]), moved(v[3]));
    CHECK(g.alpha == Catch::Approx(f.alpha).margin(1e-12));
    CHECK(g.beta == Catch::Approx(f.beta).margin(1e-12));
    for (int i = 0; i < 4; ++i)
      CHECK(g.edge_length[i] == Catch::Approx(f.edge_length[i]).epsilon(1e-12));
    CHECK(regularity_report(g).regularity ==
          Catch::Approx(regularity_report(f).regularity).epsilon(1e-12));
  }
}

TEST_CASE("quadrature rules") {
  const QuadFrame square =
      frame_from_vertices({1.0, 1.0}, {0.0, 1.0}, {0.0, 0.0}, {1.0, 0.0});
  const QuadratureRule r0 = quadrature_on_quad(square, 0);
  double total = 0.0;
  for (double w : r0.weights) {
    CHECK(w > 0.0);
    total += w;
  }
  CHECK(total == Catch::Approx(1.0).epsilon(1e-14));

  const QuadFrame f = sample_quad();
  const double via_rule = quadrature_on_quad(f, 2).integrate([&](Point2 p) {
    auto [xi, eta] = f.xi_eta(p);
    return xi * eta;
  });
  CHECK(via_rule ==
        Catch::Approx(4.0 / 3.0 * f.alpha * f.beta * f.cross_rs).epsilon(1e-13));

  auto xi2eta2 = [&](Point2 p) {
    auto [xi, eta] = f.xi_eta(p);
    return xi * xi * eta * eta;
  };
  const double low = quadrature_on_quad(f, 4).integrate(xi2eta2);
  const double high = quadrature_on_quad(f, 10).integrate(xi2eta2);
  CHECK(low == Catch::Approx(high).epsilon(1e-13));
}

TEST_CASE("gauss-legendre rules integrate monomials exactly") {
  for (int n = 1; n <= 12; ++n) {
    const auto rule = gauss_legendre(n);
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double sum = 0.0;
      for (const auto& p : rule) sum += p.w * std::pow(p.x, k);
      const double exact = (k % 2 == 1) ? 0.0 : 2.0 / (k + 1);
      CHECK(sum == Catch::Approx(exact).margin(1e-13));
    }
  }
}

TEST_CASE("invalid cells are rejected") {
  // Clockwise ordering.
  CHECK_THROWS_AS(frame_from_vertices({0.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}, {1.0, 0.0}),
                  NonConvexError);
  // Dart (one reflex vertex).
  CHECK_THROWS_AS(frame_from_vertices({0.0, 0.0}, {2.0, 1.0}, {0.4, 0.4}, {1.0, 2.0}),
                  NonConvexError);
  // Repeated vertex collapses an edge.
  CHECK_THROWS_AS(frame_from_vertices({0.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}),
                  NonConvexError);
}

TEST_CASE("degree limits are enforced") {
  const QuadFrame f = sample_quad();
  CHECK_THROWS_AS(cell_monomial_integral(f, 15, 15), DegreeTooHighError);
  CHECK_THROWS_AS(quadrature_on_quad(f, kMaxQuadratureDegree + 1), DegreeTooHighError);
  CHECK_NOTHROW(quadrature_on_quad(f, 10));
}
