// Benchmark experiments: the Poisson, Laplace-eigenvalue, and H(rot) model
// problems on refined quadrilateral/triangle grids, convergence tables with
// observed orders, CSV output, and hand-rolled log-log SVG plots.
#pragma once

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdr/assembly.hpp"
#include "qdr/derham.hpp"
#include "qdr/solver.hpp"

namespace qdr {

//---------------------------------------------------------------------------
// Manufactured problems
//---------------------------------------------------------------------------

struct PoissonBenchmark {
  std::array<Point2, 4> corners;
  ScalarField u;
  VectorField grad_u;
  ScalarField f;
};

/// Skewed quadrilateral domain with a quartic solution vanishing on all four
/// sides (each factor is an edge line).
inline PoissonBenchmark poisson_benchmark() {
  PoissonBenchmark b;
  b.corners = {Point2{0.0, 0.0}, Point2{1.0, 0.0}, Point2{2.0, 2.0}, Point2{-1.0, 1.0}};
  b.u = [](Point2 p) {
    const double x = p.x, y = p.y;
    return y * (x + y) * (x - 3 * y + 4) * (2 * x - y - 2);
  };
  b.grad_u = [](Point2 p) {
    const double x = p.x, y = p.y;
    return Vec2{6 * x * x * y - 10 * x * y * y + 12 * x * y - 4 * y * y * y + 8 * y * y - 8 * y,
                2 * x * x * x - 10 * x * x * y + 6 * x * x - 12 * x * y * y + 16 * x * y - 8 * x +
                    12 * y * y * y + 6 * y * y - 16 * y};
  };
  b.f = [](Point2 p) {  // -laplacian of u
    const double x = p.x, y = p.y;
    return 10 * x * x + 12 * x * y - 16 * x - 26 * y * y - 24 * y + 16;
  };
  return b;
}

struct HrotBenchmark {
  VectorField sigma;
  ScalarField rot_sigma;
  VectorField f;
};

/// Unit-square field with vanishing tangential trace; curl(rot sigma) = (-1,-1).
inline HrotBenchmark hrot_benchmark() {
  HrotBenchmark b;
  b.sigma = [](Point2 p) {
    return Vec2{p.x * p.y * p.y - p.x * p.y, p.x * p.x * p.y - p.x * p.y};
  };
  b.rot_sigma = [](Point2 p) { return p.x - p.y; };
  b.f = [](Point2 p) {
    return Vec2{p.x * p.y * p.y - p.x * p.y - 1.0, p.x * p.x * p.y - p.x * p.y - 1.0};
  };
  return b;
}

/// First Dirichlet eigenvalue of the Laplacian on the unit square.
inline double unit_square_eigenvalue() { return 2.0 * M_PI * M_PI; }

//---------------------------------------------------------------------------
// Convergence reports
//---------------------------------------------------------------------------

struct ReportRow {
  std::string label;  // grid size, e.g. "16x16"
  double h = 0.0;
  int n_dof = 0;
  std::vector<double> values;
};

struct ConvergenceReport {
  std::string experiment;
  std::vector<std::string> columns;
  std::vector<int> plot_columns;  // indices drawn by emit_plot
  std::vector<ReportRow> rows;

  /// log2 error ratio against the previous row; rows halve h by construction.
  double order(std::size_t row, std::size_t col) const {
    return std::log2(rows[row - 1].values[col] / rows[row].values[col]);
  }

  /// Least-squares slope of log error against log h over all rows.
  double fitted_order(std::size_t col) const {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(rows.size());
    for (const ReportRow& row : rows) {
      const double x = std::log(row.h), y = std::log(row.values[col]);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }
};

enum class GridKind { Quad, Tri };

namespace detail {

inline void check_levels(int levels) {
  if (levels < 1 || levels > 8)
    throw std::invalid_argument("levels must lie in [1, 8]");
}

inline std::string grid_label(int cells_per_side) {
  return std::to_string(cells_per_side) + "x" + std::to_string(cells_per_side);
}

inline char* format_double(char* buf, std::size_t n, double v) {
  std::snprintf(buf, n, "%.12g", v);
  return buf;
}

}  // namespace detail

//---------------------------------------------------------------------------
// Experiment runners.  Row i of a table is the grid labelled n x n with
// n = 2^(bisections) * (cells per side of the initial mesh); every run starts
// at the 8x8 grid and halves h per row.
//---------------------------------------------------------------------------

inline ConvergenceReport run_poisson(int levels, GridKind grid, double tol = 1e-10,
                                     int quad_degree = 10) {
  detail::check_levels(levels);
  const PoissonBenchmark bench = poisson_benchmark();
  ConvergenceReport report;
  report.experiment = (grid == GridKind::Quad) ? "poisson-quad" : "poisson-tri";
  report.columns = {"h1_broken", "l2"};
  report.plot_columns = {0, 1};

  QuadMesh mesh = initial_quad_domain(bench.corners[0], bench.corners[1], bench.corners[2],
                                      bench.corners[3]);
  for (int i = 0; i < 3; ++i) mesh = bisection_refine(mesh);  // 8x8 start
  for (int level = 0; level < levels; ++level) {
    if (level > 0) mesh = bisection_refine(mesh);
    ReportRow row;
    row.label = detail::grid_label(8 << level);
    row.h = mesh_stats(mesh).h;
    if (grid == GridKind::Quad) {
      const SparseSystem system = assemble_poisson(mesh, bench.f, quad_degree);
      const CgResult cg = cg_solve(system.matrix, system.rhs, tol);
      const FeFunction u_h{Space::QBL, system.expand(cg.x), &mesh};
      const ErrorNorms norms = error_norms(u_h, bench.u, bench.grad_u, quad_degree);
      row.n_dof = system.num_free();
      row.values = {norms.h1_broken, norms.l2};
    } else {
      const TriMesh tri = split_to_triangles(mesh);
      const SparseSystem system = assemble_courant(tri, bench.f, quad_degree);
      const CgResult cg = cg_solve(system.matrix, system.rhs, tol);
      const ErrorNorms norms =
          error_norms_courant(tri, system.expand(cg.x), bench.u, bench.grad_u, quad_degree);
      row.n_dof = system.num_free();
      row.values = {norms.h1_broken, norms.l2};
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

inline ConvergenceReport run_eigen(int levels, GridKind grid, double offset = 0.125,
                                   double tol = 1e-10) {
  detail::check_levels(levels);
  const double exact = unit_square_eigenvalue();
  ConvergenceReport report;
  report.experiment = (grid == GridKind::Quad) ? "eigen-quad" : "eigen-tri";
  report.columns = {"lambda_h", "lambda_error"};
  report.plot_columns = {1};

  QuadMesh mesh = four_trapezoid_square(offset);
  for (int i = 0; i < 2; ++i) mesh = bisection_refine(mesh);  // 8x8 start
  for (int level = 0; level < levels; ++level) {
    if (level > 0) mesh = bisection_refine(mesh);
    ReportRow row;
    row.label = detail::grid_label(8 << level);
    row.h = mesh_stats(mesh).h;
    EigenResult eig;
    if (grid == GridKind::Quad) {
      const SparseSystem system = assemble_poisson(mesh, [](Point2) { return 0.0; });
      const SparseMatrix mass = restrict_to_free(assemble_mass_qbl(mesh), system);
      eig = smallest_eigenpair(system.matrix, mass, tol);
      row.n_dof = system.num_free();
    } else {
      const TriMesh tri = split_to_triangles(mesh);
      const SparseSystem system = assemble_courant(tri, [](Point2) { return 0.0; });
      const SparseMatrix mass = restrict_to_free(assemble_mass_courant(tri), system);
      eig = smallest_eigenpair(system.matrix, mass, tol);
      row.n_dof = system.num_free();
    }
    row.values = {eig.lambda, std::abs(eig.lambda - exact)};
    report.rows.push_back(std::move(row));
  }
  return report;
}

inline ConvergenceReport run_hrot(int levels, double offset = 0.125, double tol = 1e-10,
                                  int quad_degree = 10) {
  detail::check_levels(levels);
  const HrotBenchmark bench = hrot_benchmark();
  ConvergenceReport report;
  report.experiment = "hrot";
  report.columns = {"l2", "rot_semi", "rot_full"};
  report.plot_columns = {0, 1, 2};

  QuadMesh mesh = four_trapezoid_square(offset);
  for (int i = 0; i < 2; ++i) mesh = bisection_refine(mesh);  // 8x8 start
  for (int level = 0; level < levels; ++level) {
    if (level > 0) mesh = bisection_refine(mesh);
    const SparseSystem system = assemble_hrot(mesh, bench.f, quad_degree);
    const CgResult cg = cg_solve(system.matrix, system.rhs, tol);
    const FeFunction sigma_h{Space::QRT, system.expand(cg.x), &mesh};
    const ErrorNorms norms = error_norms(sigma_h, bench.sigma, bench.rot_sigma, quad_degree);
    ReportRow row;
    row.label = detail::grid_label(8 << level);
    row.h = mesh_stats(mesh).h;
    row.n_dof = system.num_free();
    row.values = {norms.l2, norms.rot_semi, norms.rot_full};
    report.rows.push_back(std::move(row));
  }
  return report;
}

//---------------------------------------------------------------------------
// Structure report: dimensions, ranks, commutativity and consistency
//---------------------------------------------------------------------------

inline void run_complex_check(int levels, double offset, std::ostream& out,
                              const std::string& matrix_dir = "") {
  detail::check_levels(levels);
  out << "== discrete sequence: vertex dofs -> edge dofs -> cell dofs ==\n";
  QuadMesh mesh = four_trapezoid_square(offset);
  for (int level = 0; level <= levels; ++level) {
    if (level > 0) mesh = bisection_refine(mesh);
    for (const bool bc : {false, true}) {
      const ComplexReport rep = exactness_check(mesh, bc);
      out << "level " << level << (bc ? " (essential bc)" : " (no bc)") << ": dims ("
          << rep.dim_qbl << ", " << rep.dim_qrt << ", " << rep.dim_w << ")"
          << ", rank grad " << rep.rank_grad << ", rank rot " << rep.rank_rot
          << ", ker rot " << rep.ker_rot_dim << ", composition "
          << rep.composition_max_abs / rep.composition_scale
          << (rep.exact() ? "  [exact]" : "  [NOT EXACT]") << '\n';
    }
  }

  out << "\n== commutativity residuals (level 1 grid) ==\n";
  const QuadMesh small = bisection_refine(four_trapezoid_square(offset));
  const CommutativityResidual smooth = commutativity_residual(
      small, [](Point2 p) { return p.x * p.x * p.y; },
      [](Point2 p) { return Vec2{2.0 * p.x * p.y, p.x * p.x}; });
  out << "grad exchange, pointwise : " << smooth.grad_pointwise / (1 + smooth.grad_scale) << '\n';
  out << "rot of interpolated grad : " << smooth.rot_cellwise / (1 + smooth.grad_scale) << '\n';
  out << "rot exchange, cellwise   : "
      << rot_commutativity_residual(
             small, [](Point2 p) { return Vec2{std::sin(p.y), std::cos(p.x)}; },
             [](Point2 p) { return -std::sin(p.x) - std::cos(p.y); })
      << '\n';

  out << "\n== consistency functionals (dual norms) ==\n";
  out << "parallelogram grid: ";
  {
    QuadMesh squares = initial_quad_domain({0, 0}, {1, 0}, {1, 1}, {0, 1});
    squares = bisection_refine(bisection_refine(squares));
    FeFunction v_h = interp_qbl(squares, [](Point2 p) { return p.x * p.x * p.y; });
    for (int v = 0; v < squares.num_vertices(); ++v)
      if (squares.vertex_on_boundary[static_cast<std::size_t>(v)])
        v_h.dofs[static_cast<std::size_t>(v)] = 0.0;
    const double e_h1 =
        consistency_h1(squares, [](Point2 p) { return Vec2{p.x, p.y}; }, v_h);
    const FeFunction tau = interp_qrt(squares, hrot_benchmark().sigma);
    const double e_rot =
        consistency_rot(squares, [](Point2 p) { return std::sin(p.x + p.y); }, tau);
    out << "E_h1 = " << e_h1 << ", E_rot = " << e_rot << "  (both vanish)\n";
  }
  out << "uniform-shape tiles, joint offset shrinking with h:\n";
  double prev1 = 0.0, prev2 = 0.0;
  for (int k = 2; k <= (2 << std::min(levels, 4)); k *= 2) {
    const QuadMesh tiles = tiled_trapezoid_square(k, 0.25 / k);
    const SparseSystem stiffness = assemble_poisson(tiles, [](Point2) { return 0.0; });
    const std::vector<double> b_full =
        consistency_h1_vector(tiles, [](Point2 p) { return Vec2{p.x, p.y}; });
    std::vector<double> b(static_cast<std::size_t>(stiffness.num_free()));
    for (int i = 0; i < stiffness.num_free(); ++i)
      b[static_cast<std::size_t>(i)] =
          b_full[static_cast<std::size_t>(stiffness.free_to_global[static_cast<std::size_t>(i)])];
    const double e1 = std::sqrt(dot(b, cg_solve(stiffness.matrix, b, 1e-12).x));

    const SparseSystem hrot = assemble_hrot(tiles, [](Point2) { return Vec2{0.0, 0.0}; });
    const std::vector<double> c_full =
        consistency_rot_vector(tiles, [](Point2 p) { return std::sin(p.x + p.y); });
    std::vector<double> c(static_cast<std::size_t>(hrot.num_free()));
    for (int i = 0; i < hrot.num_free(); ++i)
      c[static_cast<std::size_t>(i)] =
          c_full[static_cast<std::size_t>(hrot.free_to_global[static_cast<std::size_t>(i)])];
    const double e2 = std::sqrt(dot(c, cg_solve(hrot.matrix, c, 1e-12).x));
    out << "  " << detail::grid_label(2 * k) << ": E_h1* = " << e1;
    if (prev1 > 0) out << " (order " << std::log2(prev1 / e1) << ")";
    out << ", E_rot* = " << e2;
    if (prev2 > 0) out << " (order " << std::log2(prev2 / e2) << ")";
    out << '\n';
    prev1 = e1;
    prev2 = e2;
  }

  out << "\n== nonconformity witness ==\n";
  {
    const QuadMesh skew = four_trapezoid_square(offset);
    FeFunction hat{Space::QBL, std::vector<double>(static_cast<std::size_t>(skew.num_vertices()), 0.0),
                   &skew};
    for (int v = 0; v < skew.num_vertices(); ++v)
      if (!skew.vertex_on_boundary[static_cast<std::size_t>(v)])
        hat.dofs[static_cast<std::size_t>(v)] = 1.0;
    out << "trapezoid grid, interior hat: max interior trace jump = "
        << max_interior_trace_jump(skew, hat) << '\n';

    QuadMesh squares = initial_quad_domain({0, 0}, {1, 0}, {1, 1}, {0, 1});
    squares = bisection_refine(bisection_refine(squares));
    FeFunction v{Space::QBL,
                 std::vector<double>(static_cast<std::size_t>(squares.num_vertices()), 0.0),
                 &squares};
    for (int i = 0; i < squares.num_vertices(); ++i)
      v.dofs[static_cast<std::size_t>(i)] = std::sin(3.0 * i + 1.0);
    out << "parallelogram grid, rough dofs: max interior trace jump = "
        << max_interior_trace_jump(squares, v) << '\n';
  }

  if (!matrix_dir.empty()) {
    gradient_matrix(mesh).write_coordinate(matrix_dir + "/gradient.coo");
    rot_matrix(mesh).write_coordinate(matrix_dir + "/rot.coo");
    save_qmesh(mesh, matrix_dir + "/complex-check.qmesh");
    out << "\nwrote " << matrix_dir << "/gradient.coo, rot.coo, complex-check.qmesh\n";
  }
}

//---------------------------------------------------------------------------
// Output: stdout table, CSV, SVG
//---------------------------------------------------------------------------

inline void print_table(const ConvergenceReport& report, std::ostream& out) {
  out << "== " << report.experiment << " ==\n";
  out << std::left << std::setw(10) << "level" << std::setw(12) << "h" << std::setw(8) << "n_dof";
  for (const std::string& c : report.columns)
    out << std::setw(14) << c << std::setw(9) << "order";
  out << '\n';
  char buf[64];
  for (std::size_t r = 0; r < report.rows.size(); ++r) {
    const ReportRow& row = report.rows[r];
    std::snprintf(buf, sizeof buf, "%.4g", row.h);
    out << std::left << std::setw(10) << row.label << std::setw(12) << buf << std::setw(8)
        << row.n_dof;
    for (std::size_t c = 0; c < row.values.size(); ++c) {
      std::snprintf(buf, sizeof buf, "%.4e", row.values[c]);
      out << std::setw(14) << buf;
      if (r > 0) {
        std::snprintf(buf, sizeof buf, "%.2f", report.order(r, c));
        out << std::setw(9) << buf;
      } else {
        out << std::setw(9) << "-";
      }
    }
    out << '\n';
  }
  if (report.rows.size() >= 2) {
    out << "least-squares orders:";
    for (std::size_t c = 0; c < report.columns.size(); ++c) {
      std::snprintf(buf, sizeof buf, " %s %.2f", report.columns[c].c_str(),
                    report.fitted_order(c));
      out << buf;
    }
    out << '\n';
  }
}

/// One row per level: "level,h,n_dof,<norm1>,<order1>,...".  Orders are empty
/// on the first row; the byte stream is deterministic for a fixed report.
inline void write_csv(const ConvergenceReport& report, std::ostream& out) {
  out << "level,h,n_dof";
  for (const std::string& c : report.columns) out << ',' << c << ',' << c << "_order";
  out << '\n';
  char buf[64];
  for (std::size_t r = 0; r < report.rows.size(); ++r) {
    const ReportRow& row = report.rows[r];
    out << row.label << ',' << detail::format_double(buf, sizeof buf, row.h) << ',' << row.n_dof;
    for (std::size_t c = 0; c < row.values.size(); ++c) {
      out << ',' << detail::format_double(buf, sizeof buf, row.values[c]) << ',';
      if (r > 0) out << detail::format_double(buf, sizeof buf, report.order(r, c));
    }
    out << '\n';
  }
}

inline void write_csv(const ConvergenceReport& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  write_csv(report, out);
  if (!out.good()) throw IoError("write failure on " + path);
}

namespace detail {

inline const char* series_color(std::size_t i) {
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
  return palette[i % 4];
}

}  // namespace detail

/// Static log-log plot (SVG 1.1): one polyline per plotted column and short
/// reference segments of slopes one and two.  Byte output is deterministic
/// for a fixed report.
inline void emit_plot(const ConvergenceReport& report, std::ostream& out) {
  if (report.rows.size() < 2) throw IoError("plot needs at least two levels");
  const double width = 640, height = 480;
  const double left = 80, right = 620, top = 40, bottom = 430;

  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const ReportRow& row : report.rows) {
    const double x = std::log10(row.h);
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    for (int c : report.plot_columns) {
      const double y = std::log10(row.values[static_cast<std::size_t>(c)]);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  ymin -= 0.6;  // room for the reference slopes
  ymax += 0.2;
  xmin -= 0.05;
  xmax += 0.05;
  auto sx = [&](double x) { return left + (x - xmin) / (xmax - xmin) * (right - left); };
  auto sy = [&](double y) { return bottom - (y - ymin) / (ymax - ymin) * (bottom - top); };
  char buf[256];

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%g\" height=\"%g\" "
                "viewBox=\"0 0 %g %g\">\n",
                width, height, width, height);
  out << buf;
  out << "<rect x=\"0\" y=\"0\" width=\"640\" height=\"480\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof buf,
                "<text x=\"350\" y=\"24\" text-anchor=\"middle\" font-family=\"monospace\" "
                "font-size=\"15\">%s</text>\n",
                report.experiment.c_str());
  out << buf;
  std::snprintf(buf, sizeof buf,
                "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" fill=\"none\" "
                "stroke=\"black\"/>\n",
                left, top, right - left, bottom - top);
  out << buf;
  out << "<text x=\"350\" y=\"465\" text-anchor=\"middle\" font-family=\"monospace\" "
         "font-size=\"13\">log10 h</text>\n";
  out << "<text x=\"22\" y=\"235\" text-anchor=\"middle\" font-family=\"monospace\" "
         "font-size=\"13\" transform=\"rotate(-90 22 235)\">log10 error</text>\n";

  // Ticks: five per axis at even fractions.
  for (int t = 0; t <= 4; ++t) {
    const double fx = xmin + (xmax - xmin) * t / 4.0;
    const double fy = ymin + (ymax - ymin) * t / 4.0;
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"black\"/>\n",
                  sx(fx), bottom, sx(fx), bottom + 5);
    out << buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"middle\" font-family=\"monospace\" "
                  "font-size=\"11\">%.2f</text>\n",
                  sx(fx), bottom + 18.0, fx);
    out << buf;
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"black\"/>\n",
                  left - 5, sy(fy), left, sy(fy));
    out << buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"end\" font-family=\"monospace\" "
                  "font-size=\"11\">%.2f</text>\n",
                  left - 8.0, sy(fy) + 4.0, fy);
    out << buf;
  }

  // Data series.
  for (std::size_t s = 0; s < report.plot_columns.size(); ++s) {
    const int c = report.plot_columns[s];
    std::string points;
    for (const ReportRow& row : report.rows) {
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", sx(std::log10(row.h)),
                    sy(std::log10(row.values[static_cast<std::size_t>(c)])));
      points += buf;
    }
    std::snprintf(buf, sizeof buf,
                  "<polyline class=\"series\" id=\"series-%s\" fill=\"none\" stroke=\"%s\" "
                  "stroke-width=\"1.5\" points=\"%s\"/>\n",
                  report.columns[static_cast<std::size_t>(c)].c_str(), detail::series_color(s),
                  points.c_str());
    out << buf;
    for (const ReportRow& row : report.rows) {
      std::snprintf(buf, sizeof buf,
                    "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"2.5\" fill=\"%s\"/>\n",
                    sx(std::log10(row.h)),
                    sy(std::log10(row.values[static_cast<std::size_t>(c)])),
                    detail::series_color(s));
      out << buf;
    }
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.2f\" y=\"%.2f\" font-family=\"monospace\" font-size=\"12\" "
                  "fill=\"%s\">%s</text>\n",
                  right - 130.0, top + 20.0 + 16.0 * static_cast<double>(s),
                  detail::series_color(s),
                  report.columns[static_cast<std::size_t>(c)].c_str());
    out << buf;
  }

  // Reference slope triangles anchored under the data cloud: the hypotenuse
  // carries the slope, the legs close the triangle.
  const double x0 = xmin + 0.1 * (xmax - xmin);
  const double x1 = xmin + 0.4 * (xmax - xmin);
  for (int order = 1; order <= 2; ++order) {
    const double y0 = ymin + 0.35;
    const double y1 = y0 + order * (x1 - x0);
    std::snprintf(buf, sizeof buf,
                  "<polyline class=\"ref\" id=\"ref-order-%d\" fill=\"none\" stroke=\"#888888\" "
                  "points=\"%.2f,%.2f %.2f,%.2f\"/>\n",
                  order, sx(x0), sy(y0), sx(x1), sy(y1));
    out << buf;
    std::snprintf(buf, sizeof buf,
                  "<polyline class=\"ref-legs\" fill=\"none\" stroke=\"#888888\" "
                  "stroke-dasharray=\"3 3\" points=\"%.2f,%.2f %.2f,%.2f %.2f,%.2f\"/>\n",
                  sx(x0), sy(y0), sx(x1), sy(y0), sx(x1), sy(y1));
    out << buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.2f\" y=\"%.2f\" font-family=\"monospace\" font-size=\"11\" "
                  "fill=\"#888888\">slope %d</text>\n",
                  sx(x1) + 4.0, sy(y1), order);
    out << buf;
  }
  out << "</svg>\n";
}

inline void emit_plot(const ConvergenceReport& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  emit_plot(report, out);
  if (!out.good()) throw IoError("write failure on " + path);
}

}  // namespace qdr
