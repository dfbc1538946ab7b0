#pragma once

#include <array>
#include <cmath>

namespace difem {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  double& operator[](int i) { return (&x)[i]; }
  double operator[](int i) const { return (&x)[i]; }

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  Vec3 operator-() const { return {-x, -y, -z}; }
  Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
  Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
  Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }
inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }
inline double norm2(const Vec3& v) { return dot(v, v); }
inline Vec3 normalized(const Vec3& v) { return v / norm(v); }

// Row-major 3x3 tensor in the embedding frame.
struct Mat3 {
  std::array<double, 9> a{};

  double& operator()(int i, int j) { return a[3 * i + j]; }
  double operator()(int i, int j) const { return a[3 * i + j]; }

  static Mat3 identity() {
    Mat3 m;
    m(0, 0) = m(1, 1) = m(2, 2) = 1.0;
    return m;
  }
  static Mat3 outer(const Vec3& u, const Vec3& v) {
    Mat3 m;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = u[i] * v[j];
    return m;
  }

  Mat3 operator+(const Mat3& o) const {
    Mat3 m;
    for (int i = 0; i < 9; ++i) m.a[i] = a[i] + o.a[i];
    return m;
  }
  Mat3 operator-(const Mat3& o) const {
    Mat3 m;
    for (int i = 0; i < 9; ++i) m.a[i] = a[i] - o.a[i];
    return m;
  }
  Mat3 operator*(double s) const {
    Mat3 m;
    for (int i = 0; i < 9; ++i) m.a[i] = a[i] * s;
    return m;
  }
  Mat3 operator*(const Mat3& o) const {
    Mat3 m;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double s = 0.0;
        for (int k = 0; k < 3; ++k) s += (*this)(i, k) * o(k, j);
        m(i, j) = s;
      }
    return m;
  }
  Vec3 operator*(const Vec3& v) const {
    return {a[0] * v.x + a[1] * v.y + a[2] * v.z,
            a[3] * v.x + a[4] * v.y + a[5] * v.z,
            a[6] * v.x + a[7] * v.y + a[8] * v.z};
  }

  double trace() const { return a[0] + a[4] + a[8]; }
  Mat3 transposed() const {
    Mat3 m;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = (*this)(j, i);
    return m;
  }
};

inline double frobenius_norm(const Mat3& m) {
  double s = 0.0;
  for (double v : m.a) s += v * v;
  return std::sqrt(s);
}

inline double double_contract(const Mat3& a, const Mat3& b) {
  double s = 0.0;
  for (int i = 0; i < 9; ++i) s += a.a[i] * b.a[i];
  return s;
}

// Surface identity Pi = I - nu nu^T for a unit normal.
Mat3 projector(const Vec3& nu);

}  // namespace difem
