// Midpoint frame of a convex quadrilateral, closed-form monomial integrals,
// and quadrature rules on cells and edges.
//
// A strictly convex quadrilateral A1..A4 (counterclockwise) carries the affine
// frame (O; r, s) built from its edge midpoints: O is the common midpoint of
// the two segments joining opposite edge midpoints, r points from O to the
// midpoint of edge A4A1 and s from O to the midpoint of A1A2.  In frame
// coordinates the vertices read A1(1+a, 1+b), A2(-1-a, 1-b), A3(-1+a, -1+b),
// A4(1-a, -1-b) where (a, b) are the shape parameters of the cell; both vanish
// iff the cell is a parallelogram, and strict convexity means |a| + |b| < 1.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>
#include <vector>

#include "qdr/errors.hpp"

namespace qdr {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double c, Vec2 v) { return {c * v.x, c * v.y}; }
inline Vec2 operator*(Vec2 v, double c) { return {c * v.x, c * v.y}; }
inline Vec2 operator/(Vec2 v, double c) { return {v.x / c, v.y / c}; }
inline Vec2 operator-(Vec2 v) { return {-v.x, -v.y}; }

inline Vec2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator+(Point2 p, Vec2 v) { return {p.x + v.x, p.y + v.y}; }
inline Point2 operator-(Point2 p, Vec2 v) { return {p.x - v.x, p.y - v.y}; }

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }
inline Point2 midpoint(Point2 a, Point2 b) {
  return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
}

/// Quarter turn (x, y) -> (y, -x).  With this convention perp(s)·r = cross(r, s).
inline Vec2 perp(Vec2 v) { return {v.y, -v.x}; }

/// Shape tolerances for frame construction.
constexpr double kConvexityMargin = 1e-10;  // reject |a|+|b| > 1 - margin
constexpr double kAreaFloorFactor = 1e-14;  // reject cross(r,s) < factor * h^2

struct QuadFrame {
  std::array<Point2, 4> vertex;      // A1..A4, counterclockwise
  Point2 center;                     // O
  Vec2 r, s;                         // frame axes (O->m4, O->m1)
  double alpha = 0.0, beta = 0.0;    // shape parameters
  std::array<Vec2, 4> edge;          // e_i = A_{i+1} - A_i
  std::array<double, 4> edge_length;
  double cross_rs = 0.0;             // r x s > 0
  double diameter = 0.0;             // h_K

  /// Frame coordinates of p: p - O = xi * r + eta * s.
  std::pair<double, double> xi_eta(Point2 p) const {
    const Vec2 d = p - center;
    return {cross(d, s) / cross_rs, cross(r, d) / cross_rs};
  }

  /// Mean-free frame coordinates: xi - beta/3 and eta - alpha/3.
  std::pair<double, double> xi_eta_hat(Point2 p) const {
    auto [xi, eta] = xi_eta(p);
    return {xi - beta / 3.0, eta - alpha / 3.0};
  }

  Point2 point_at(double xi, double eta) const { return center + xi * r + eta * s; }

  // (grad_xi, grad_eta) is the frame dual to (r, s):
  // grad_xi·r = 1, grad_xi·s = 0, grad_eta·r = 0, grad_eta·s = 1.
  Vec2 grad_xi() const { return perp(s) / cross_rs; }
  Vec2 grad_eta() const { return Vec2{-r.y, r.x} / cross_rs; }

  double area() const { return 4.0 * cross_rs; }

  Point2 edge_midpoint(int i) const { return vertex[i] + 0.5 * edge[i]; }
  /// Unit tangent of edge i, counterclockwise along the boundary.
  Vec2 unit_tangent(int i) const { return edge[i] / edge_length[i]; }
  /// Outward unit normal of edge i.
  Vec2 outward_normal(int i) const { return perp(edge[i]) / edge_length[i]; }
};

/// Builds the midpoint frame of a strictly convex counterclockwise quadrilateral.
/// Throws NonConvexError / DegenerateError when the preconditions fail.
inline QuadFrame frame_from_vertices(Point2 a1, Point2 a2, Point2 a3, Point2 a4) {
  QuadFrame f;
  f.vertex = {a1, a2, a3, a4};
  for (int i = 0; i < 4; ++i) {
    f.edge[i] = f.vertex[(i + 1) % 4] - f.vertex[i];
    f.edge_length[i] = norm(f.edge[i]);
  }
  for (int i = 0; i < 4; ++i) {
    if (cross(f.edge[i], f.edge[(i + 1) % 4]) <= 0.0)
      throw NonConvexError("quadrilateral is not strictly convex counterclockwise");
  }

  f.center = {0.25 * (a1.x + a2.x + a3.x + a4.x), 0.25 * (a1.y + a2.y + a3.y + a4.y)};
  f.r = midpoint(a4, a1) - f.center;
  f.s = midpoint(a1, a2) - f.center;
  f.cross_rs = cross(f.r, f.s);

  f.diameter = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      f.diameter = std::max(f.diameter, distance(f.vertex[i], f.vertex[j]));

  if (f.cross_rs <= 0.0) throw NonConvexError("frame is not positively oriented");
  if (f.cross_rs < kAreaFloorFactor * f.diameter * f.diameter)
    throw DegenerateError("cell area below the degeneracy floor");

  // 2*alpha*r + 2*beta*s = A1 + A3 - 2*O.
  const Vec2 rhs{a1.x + a3.x - 2.0 * f.center.x, a1.y + a3.y - 2.0 * f.center.y};
  f.alpha = cross(rhs, f.s) / (2.0 * f.cross_rs);
  f.beta = cross(f.r, rhs) / (2.0 * f.cross_rs);
  if (std::abs(f.alpha) + std::abs(f.beta) > 1.0 - kConvexityMargin)
    throw NonConvexError("shape parameters too close to the convexity limit");
  return f;
}

inline QuadFrame frame_from_vertices(const std::array<Point2, 4>& v) {
  return frame_from_vertices(v[0], v[1], v[2], v[3]);
}

struct RegularityReport {
  double regularity = 0.0;       // >= 1, equal to 1 only for squares
  double midpoint_gap = 0.0;     // d_K: distance between the diagonal midpoints
  double diameter = 0.0;         // h_K
};

inline RegularityReport regularity_report(const QuadFrame& f) {
  RegularityReport rep;
  const double lr = norm(f.r), ls = norm(f.s);
  rep.regularity = std::max({lr * ls / f.cross_rs, lr / ls, ls / lr});
  rep.midpoint_gap =
      distance(midpoint(f.vertex[0], f.vertex[2]), midpoint(f.vertex[1], f.vertex[3]));
  rep.diameter = f.diameter;
  return rep;
}

//---------------------------------------------------------------------------
// Quadrature
//---------------------------------------------------------------------------

struct GaussPoint {
  double x;  // abscissa on [-1, 1]
  double w;
};

/// Gauss-Legendre rule with n points, exact for polynomials of degree 2n-1.
inline std::vector<GaussPoint> gauss_legendre(int n) {
  std::vector<GaussPoint> out(static_cast<std::size_t>(n));
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Newton iteration from the Chebyshev estimate of the i-th root.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 64; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = (n == 1) ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    out[static_cast<std::size_t>(i)] = {x, w};
    out[static_cast<std::size_t>(n - 1 - i)] = {-x, w};
  }
  if (n % 2 == 1) out[static_cast<std::size_t>(n / 2)].x = 0.0;
  return out;
}

struct QuadratureRule {
  std::vector<Point2> points;
  std::vector<double> weights;

  template <class F>
  double integrate(F&& f) const {
    double sum = 0.0;
    for (std::size_t q = 0; q < points.size(); ++q) sum += weights[q] * f(points[q]);
    return sum;
  }
};

constexpr int kMaxQuadratureDegree = 30;

/// Positive-weight rule on the triangle (a, b, c), exact to the given total
/// degree.  Conical product of Gauss-Legendre rules through the collapsed
/// square; the extra point in the first direction absorbs the collapse Jacobian.
inline QuadratureRule triangle_rule(Point2 a, Point2 b, Point2 c, int degree) {
  if (degree < 0 || degree > kMaxQuadratureDegree)
    throw DegreeTooHighError("triangle rule degree out of range");
  const int nu = (degree + 3) / 2;
  const int nv = (degree + 2) / 2;
  const auto gu = gauss_legendre(nu);
  const auto gv = gauss_legendre(nv);
  const double jac = std::abs(cross(b - a, c - a));  // twice the area
  QuadratureRule rule;
  rule.points.reserve(static_cast<std::size_t>(nu * nv));
  rule.weights.reserve(static_cast<std::size_t>(nu * nv));
  for (const auto& pu : gu) {
    const double u = 0.5 * (pu.x + 1.0);
    for (const auto& pv : gv) {
      const double v = 0.5 * (pv.x + 1.0);
      const double x = u;
      const double y = v * (1.0 - u);
      rule.points.push_back(a + x * (b - a) + y * (c - a));
      rule.weights.push_back(0.25 * pu.w * pv.w * (1.0 - u) * jac);
    }
  }
  return rule;
}

/// Rule on the cell, exact for bivariate polynomials up to the given total
/// degree, obtained by splitting along the diagonal A1A3.
inline QuadratureRule quadrature_on_quad(const QuadFrame& f, int degree) {
  if (degree < 0 || degree > kMaxQuadratureDegree)
    throw DegreeTooHighError("cell rule degree out of range");
  QuadratureRule rule = triangle_rule(f.vertex[0], f.vertex[1], f.vertex[2], degree);
  const QuadratureRule lower = triangle_rule(f.vertex[0], f.vertex[2], f.vertex[3], degree);
  rule.points.insert(rule.points.end(), lower.points.begin(), lower.points.end());
  rule.weights.insert(rule.weights.end(), lower.weights.begin(), lower.weights.end());
  return rule;
}

/// Gauss rule along edge i with ceil((degree+1)/2) points; weights carry ds.
inline QuadratureRule edge_rule(const QuadFrame& f, int i, int degree) {
  if (degree < 0 || degree > 2 * kMaxQuadratureDegree)
    throw DegreeTooHighError("edge rule degree out of range");
  const int n = (degree + 2) / 2;
  const auto g = gauss_legendre(n);
  QuadratureRule rule;
  rule.points.reserve(static_cast<std::size_t>(n));
  rule.weights.reserve(static_cast<std::size_t>(n));
  for (const auto& p : g) {
    const double t = 0.5 * (p.x + 1.0);
    rule.points.push_back(f.vertex[i] + t * f.edge[i]);
    rule.weights.push_back(0.5 * p.w * f.edge_length[i]);
  }
  return rule;
}

//---------------------------------------------------------------------------
// Monomial integrals
//---------------------------------------------------------------------------

constexpr int kMaxMonomialDegree = 20;

/// Integral of xi^a * eta^b over the cell, by exact quadrature.
inline double cell_monomial_integral(const QuadFrame& f, int a, int b) {
  if (a < 0 || b < 0 || a + b > kMaxMonomialDegree)
    throw DegreeTooHighError("cell monomial degree out of range");
  const QuadratureRule rule = quadrature_on_quad(f, a + b);
  return rule.integrate([&](Point2 p) {
    auto [xi, eta] = f.xi_eta(p);
    return std::pow(xi, a) * std::pow(eta, b);
  });
}

/// Integral of xi^a * eta^b along edge i, by Gauss quadrature.
inline double edge_monomial_integral(const QuadFrame& f, int i, int a, int b) {
  if (a < 0 || b < 0 || a + b > kMaxMonomialDegree)
    throw DegreeTooHighError("edge monomial degree out of range");
  const QuadratureRule rule = edge_rule(f, i, a + b);
  return rule.integrate([&](Point2 p) {
    auto [xi, eta] = f.xi_eta(p);
    return std::pow(xi, a) * std::pow(eta, b);
  });
}

/// Closed forms of the boundary integrals of xi^2, xi*eta, eta^2 on each edge.
enum class EdgeMonomial { XiXi, XiEta, EtaEta };

inline double edge_integral_closed_form(const QuadFrame& f, int i, EdgeMonomial m) {
  const double a = f.alpha, b = f.beta;
  const double len = f.edge_length[static_cast<std::size_t>(i)];
  switch (m) {
    case EdgeMonomial::XiXi:
      switch (i) {
        case 0: return (1.0 + a) * (1.0 + a) * len / 3.0;
        case 1: return (3.0 + a * a) * len / 3.0;
        case 2: return (1.0 - a) * (1.0 - a) * len / 3.0;
        default: return (3.0 + a * a) * len / 3.0;
      }
    case EdgeMonomial::XiEta:
      switch (i) {
        case 0: return (1.0 + a) * b * len / 3.0;
        case 1: return a * (-1.0 + b) * len / 3.0;
        case 2: return (-1.0 + a) * b * len / 3.0;
        default: return a * (1.0 + b) * len / 3.0;
      }
    case EdgeMonomial::EtaEta:
      switch (i) {
        case 0: return (3.0 + b * b) * len / 3.0;
        case 1: return (1.0 - b) * (1.0 - b) * len / 3.0;
        case 2: return (3.0 + b * b) * len / 3.0;
        default: return (1.0 + b) * (1.0 + b) * len / 3.0;
      }
  }
  return 0.0;
}

/// Closed forms of the cell integrals of low-order monomials in xi, eta and in
/// their mean-free counterparts.
enum class CellMonomial {
  One,
  Xi,
  Eta,
  XiXi,
  XiEta,
  EtaEta,
  HatXi,
  HatEta,
  HatXiXi,
  HatXiEta,
  HatEtaEta,
};

inline double cell_integral_closed_form(const QuadFrame& f, CellMonomial m) {
  const double a = f.alpha, b = f.beta, c = f.cross_rs;
  switch (m) {
    case CellMonomial::One: return 4.0 * c;
    case CellMonomial::Xi: return 4.0 * b / 3.0 * c;
    case CellMonomial::Eta: return 4.0 * a / 3.0 * c;
    case CellMonomial::XiXi: return 4.0 / 3.0 * (1.0 + a * a) * c;
    case CellMonomial::XiEta: return 4.0 / 3.0 * a * b * c;
    case CellMonomial::EtaEta: return 4.0 / 3.0 * (1.0 + b * b) * c;
    case CellMonomial::HatXi: return 0.0;
    case CellMonomial::HatEta: return 0.0;
    case CellMonomial::HatXiXi: return 4.0 / 9.0 * (3.0 + 3.0 * a * a - b * b) * c;
    case CellMonomial::HatXiEta: return 8.0 / 9.0 * a * b * c;
    case CellMonomial::HatEtaEta: return 4.0 / 9.0 * (3.0 + 3.0 * b * b - a * a) * c;
  }
  return 0.0;
}

}  // namespace qdr
