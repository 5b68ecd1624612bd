// Small shared pieces: 3-vectors, 3x3 matrices, deterministic reductions,
// float formatting and the MOTT_LOG stderr logger.
#pragma once

#include <array>
#include <complex>
#include <cmath>
#include <span>
#include <string>
#include <vector>

namespace mott {

using complexd = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr complexd kI{0.0, 1.0};

// ---------------------------------------------------------------------------
// Vectors / matrices
// ---------------------------------------------------------------------------

using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}
inline Vec3 operator+(const Vec3& a, const Vec3& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline Vec3 operator-(const Vec3& a, const Vec3& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline Vec3 operator*(double c, const Vec3& a) {
  return {c * a[0], c * a[1], c * a[2]};
}
inline Vec3 normalized(const Vec3& a) {
  double n = norm(a);
  return {a[0] / n, a[1] / n, a[2] / n};
}

// Row-major 3x3 matrix.
struct Mat3 {
  std::array<std::array<double, 3>, 3> m{};

  static Mat3 identity() {
    Mat3 r;
    r.m[0][0] = r.m[1][1] = r.m[2][2] = 1.0;
    return r;
  }
  Vec3 apply(const Vec3& v) const {
    return {m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
            m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
            m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2]};
  }
  // R^T v; for rotations this is the inverse action.
  Vec3 apply_transposed(const Vec3& v) const {
    return {m[0][0] * v[0] + m[1][0] * v[1] + m[2][0] * v[2],
            m[0][1] * v[0] + m[1][1] * v[1] + m[2][1] * v[2],
            m[0][2] * v[0] + m[1][2] * v[1] + m[2][2] * v[2]};
  }
  Mat3 multiply(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double s = 0;
        for (int k = 0; k < 3; ++k) s += m[i][k] * o.m[k][j];
        r.m[i][j] = s;
      }
    return r;
  }
  double det() const {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  }
};

// ---------------------------------------------------------------------------
// Deterministic reductions
// ---------------------------------------------------------------------------

// Pairwise-tree summation; result depends only on element order, never on
// thread count or chunking.
double pairwise_sum(std::span<const double> v);
complexd pairwise_sum(std::span<const complexd> v);

// ---------------------------------------------------------------------------
// Formatting
// ---------------------------------------------------------------------------

// %.*g with the given number of significant digits (17 round-trips a double).
std::string fmt_g(double v, int digits);

// ---------------------------------------------------------------------------
// Logging (MOTT_LOG = error|warn|info|debug, default warn; goes to stderr)
// ---------------------------------------------------------------------------

enum class LogLevel { Error = 0, Warn = 1, Info = 2, Debug = 3 };

LogLevel log_level();
void logf(LogLevel lvl, const char* fmt, ...);

}  // namespace mott
