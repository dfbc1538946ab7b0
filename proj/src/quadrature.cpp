#include "difem/quadrature.hpp"

namespace difem {
namespace {

void add_orbit31(QuadratureRule& q, double a, double b, double w) {
  // one coordinate a, three coordinates b
  for (int k = 0; k < 4; ++k) {
    QuadratureRule::Point p{{b, b, b, b}, w};
    p.bary[k] = a;
    q.points.push_back(p);
  }
}

void add_orbit22(QuadratureRule& q, double c, double d, double w) {
  // two coordinates c, two coordinates d
  constexpr int pairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  for (const auto& pr : pairs) {
    QuadratureRule::Point p{{d, d, d, d}, w};
    p.bary[pr[0]] = c;
    p.bary[pr[1]] = c;
    q.points.push_back(p);
  }
}

QuadratureRule make_degree2() {
  QuadratureRule q;
  q.exactness_degree = 2;
  add_orbit31(q, 0.5854101966249685, 0.1381966011250105, 0.25);
  return q;
}

QuadratureRule make_degree5() {
  QuadratureRule q;
  q.exactness_degree = 5;
  add_orbit31(q, 0.0673422422100983, 0.3108859192633005, 0.1126879257180162);
  add_orbit31(q, 0.7217942490673264, 0.0927352503108912, 0.0734930431163619);
  add_orbit22(q, 0.4544962958743506, 0.0455037041256494, 0.0425460207770812);
  return q;
}

QuadratureRule make_subdivided() {
  // regular red refinement into 8 subtets of equal volume, degree-5 on each
  using B = std::array<double, 4>;
  auto mid = [](const B& x, const B& y) {
    return B{0.5 * (x[0] + y[0]), 0.5 * (x[1] + y[1]), 0.5 * (x[2] + y[2]), 0.5 * (x[3] + y[3])};
  };
  const B e0{1, 0, 0, 0}, e1{0, 1, 0, 0}, e2{0, 0, 1, 0}, e3{0, 0, 0, 1};
  const B m01 = mid(e0, e1), m02 = mid(e0, e2), m03 = mid(e0, e3);
  const B m12 = mid(e1, e2), m13 = mid(e1, e3), m23 = mid(e2, e3);
  const std::array<std::array<B, 4>, 8> subs{{
      {e0, m01, m02, m03},
      {e1, m01, m12, m13},
      {e2, m02, m12, m23},
      {e3, m03, m13, m23},
      {m01, m02, m03, m13},
      {m01, m02, m12, m13},
      {m02, m03, m13, m23},
      {m02, m12, m13, m23},
  }};
  const QuadratureRule& base = quadrature_degree5();
  QuadratureRule q;
  q.exactness_degree = 5;
  for (const auto& sub : subs)
    for (const auto& p : base.points) {
      QuadratureRule::Point out{{0, 0, 0, 0}, p.weight / 8.0};
      for (int v = 0; v < 4; ++v)
        for (int c = 0; c < 4; ++c) out.bary[c] += p.bary[v] * sub[v][c];
      q.points.push_back(out);
    }
  return q;
}

}  // namespace

const QuadratureRule& quadrature_degree2() {
  static const QuadratureRule q = make_degree2();
  return q;
}

const QuadratureRule& quadrature_degree5() {
  static const QuadratureRule q = make_degree5();
  return q;
}

const QuadratureRule& quadrature_subdivided() {
  static const QuadratureRule q = make_subdivided();
  return q;
}

}  // namespace difem
