// Shared generators and small oracles for the test suites.
#pragma once

#include <array>
#include <cmath>
#include <random>

#include "qdr/geometry.hpp"

namespace qdr_test {

inline double pick(std::mt19937& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Random strictly convex quadrilateral with shape parameters bounded by
/// max_shape and kept away from zero by min_shape, at a random position,
/// orientation and scale.
inline std::array<qdr::Point2, 4> random_convex_quad(std::mt19937& rng,
                                                     double max_shape = 0.9,
                                                     double min_shape = 0.02) {
  double a = 0.0, b = 0.0;
  for (;;) {
    a = pick(rng, -max_shape, max_shape);
    b = pick(rng, -max_shape, max_shape);
    if (std::abs(a) >= min_shape && std::abs(b) >= min_shape &&
        std::abs(a) + std::abs(b) <= max_shape)
      break;
  }
  const double theta = pick(rng, 0.0, 2.0 * M_PI);
  const double phi = pick(rng, 0.5, M_PI - 0.5);
  const double lr = pick(rng, 0.3, 3.0);
  const double ls = pick(rng, 0.3, 3.0);
  const qdr::Vec2 r{lr * std::cos(theta), lr * std::sin(theta)};
  const qdr::Vec2 s{ls * std::cos(theta + phi), ls * std::sin(theta + phi)};
  const qdr::Point2 o{pick(rng, -5.0, 5.0), pick(rng, -5.0, 5.0)};
  auto at = [&](double xi, double eta) { return o + xi * r + eta * s; };
  if (qdr::cross(r, s) > 0.0)
    return {at(1 + a, 1 + b), at(-1 - a, 1 - b), at(-1 + a, -1 + b), at(1 - a, -1 - b)};
  // Mirrored frame: swap the roles so the vertex list stays counterclockwise.
  return {at(1 + a, 1 + b), at(1 - a, -1 - b), at(-1 + a, -1 + b), at(-1 - a, 1 - b)};
}

inline qdr::QuadFrame random_frame(std::mt19937& rng, double max_shape = 0.9,
                                   double min_shape = 0.02) {
  return qdr::frame_from_vertices(random_convex_quad(rng, max_shape, min_shape));
}

/// The worked quadrilateral used across the suites: shape parameters
/// (1/7, 2/7), frame axes (1.25, 0.25) and (0.25, 0.75).
inline qdr::QuadFrame sample_quad() {
  return qdr::frame_from_vertices({3.0, 2.0}, {0.0, 1.0}, {0.0, 0.0}, {2.0, 0.0});
}

}  // namespace qdr_test
