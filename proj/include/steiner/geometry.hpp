#pragma once

#include <cmath>

namespace steiner {

/// Point (or displacement) in 3-D Euclidean space. Dimensionless units:
/// the generating helix has terminal radius 1.
struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend Point3 operator+(const Point3& a, const Point3& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend Point3 operator-(const Point3& a, const Point3& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend Point3 operator*(double s, const Point3& p) {
    return {s * p.x, s * p.y, s * p.z};
  }
  Point3& operator+=(const Point3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
};

inline double dot(const Point3& a, const Point3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline double norm(const Point3& p) { return std::sqrt(dot(p, p)); }

inline double distance(const Point3& a, const Point3& b) { return norm(a - b); }

inline bool finite(const Point3& p) {
  return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z);
}

}  // namespace steiner
