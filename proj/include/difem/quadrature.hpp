#pragma once

#include <array>
#include <vector>

namespace difem {

// Barycentric quadrature on the reference tetrahedron; weights are positive
// and sum to 1 (integrals scale with the physical tet volume).
struct QuadratureRule {
  struct Point {
    std::array<double, 4> bary;
    double weight;
  };
  std::vector<Point> points;
  int exactness_degree = 0;

  double weight_sum() const {
    double s = 0.0;
    for (const auto& p : points) s += p.weight;
    return s;
  }
};

// Degree-2, 4-point rule for far-field tets.
const QuadratureRule& quadrature_degree2();
// Positive-weight 14-point degree-5 rule for band tets.
const QuadratureRule& quadrature_degree5();
// Degree-5 rule applied on a regular 8-fold subdivision; used as the
// higher-accuracy spot check.
const QuadratureRule& quadrature_subdivided();

}  // namespace difem
