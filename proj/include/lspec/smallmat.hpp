#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace lspec {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  double norm2() const { return x * x + y * y; }
  double norm() const { return std::sqrt(norm2()); }
  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  // rotation of *this by +90 degrees
  Vec2 perp() const { return {-y, x}; }

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator-() const { return {-x, -y}; }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

struct Mat2 {
  // row-major
  double m[2][2] = {{0.0, 0.0}, {0.0, 0.0}};

  static Mat2 identity() { return {{{1.0, 0.0}, {0.0, 1.0}}}; }
  static Mat2 scalar(double c) { return {{{c, 0.0}, {0.0, c}}}; }

  double operator()(int i, int j) const { return m[i][j]; }
  double& operator()(int i, int j) { return m[i][j]; }

  double det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
  double trace() const { return m[0][0] + m[1][1]; }
  double max_abs() const {
    return std::max(std::max(std::fabs(m[0][0]), std::fabs(m[0][1])),
                    std::max(std::fabs(m[1][0]), std::fabs(m[1][1])));
  }

  Mat2 transpose() const { return {{{m[0][0], m[1][0]}, {m[0][1], m[1][1]}}}; }

  Vec2 mul(const Vec2& v) const {
    return {m[0][0] * v.x + m[0][1] * v.y, m[1][0] * v.x + m[1][1] * v.y};
  }
  Mat2 mul(const Mat2& o) const {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        r.m[i][j] = m[i][0] * o.m[0][j] + m[i][1] * o.m[1][j];
    return r;
  }
  Mat2 operator+(const Mat2& o) const {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) r.m[i][j] = m[i][j] + o.m[i][j];
    return r;
  }
  Mat2 operator-(const Mat2& o) const {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) r.m[i][j] = m[i][j] - o.m[i][j];
    return r;
  }
  Mat2 operator*(double s) const {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) r.m[i][j] = m[i][j] * s;
    return r;
  }
};

// 3x3 real matrix with the block partition A = [At u; v^T a].
struct Mat3 {
  double m[3][3] = {};

  static Mat3 identity() {
    Mat3 r;
    r.m[0][0] = r.m[1][1] = r.m[2][2] = 1.0;
    return r;
  }
  static Mat3 from_blocks(const Mat2& tilde, const Vec2& u, const Vec2& v,
                          double a) {
    Mat3 r;
    r.m[0][0] = tilde.m[0][0];
    r.m[0][1] = tilde.m[0][1];
    r.m[1][0] = tilde.m[1][0];
    r.m[1][1] = tilde.m[1][1];
    r.m[0][2] = u.x;
    r.m[1][2] = u.y;
    r.m[2][0] = v.x;
    r.m[2][1] = v.y;
    r.m[2][2] = a;
    return r;
  }
  static Mat3 unit(int i, int j) {  // E_{ij} with 0-based indices
    Mat3 r;
    r.m[i][j] = 1.0;
    return r;
  }

  double operator()(int i, int j) const { return m[i][j]; }
  double& operator()(int i, int j) { return m[i][j]; }

  Mat2 tilde() const { return {{{m[0][0], m[0][1]}, {m[1][0], m[1][1]}}}; }
  Vec2 u() const { return {m[0][2], m[1][2]}; }
  Vec2 v() const { return {m[2][0], m[2][1]}; }
  double a() const { return m[2][2]; }

  double max_abs() const {
    double r = 0.0;
    for (auto& row : m)
      for (double e : row) r = std::max(r, std::fabs(e));
    return r;
  }

  Mat3 transpose() const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.m[i][j] = m[j][i];
    return r;
  }
  Mat3 operator+(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.m[i][j] = m[i][j] + o.m[i][j];
    return r;
  }
  Mat3 operator-(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.m[i][j] = m[i][j] - o.m[i][j];
    return r;
  }
  Mat3 operator*(double s) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.m[i][j] = m[i][j] * s;
    return r;
  }
  Mat3 mul(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double s = 0.0;
        for (int k = 0; k < 3; ++k) s += m[i][k] * o.m[k][j];
        r.m[i][j] = s;
      }
    return r;
  }
  std::array<double, 3> mul(const std::array<double, 3>& x) const {
    std::array<double, 3> r{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r[i] += m[i][j] * x[j];
    return r;
  }
};

// Rectangular matrix with at most 3 rows and 3 columns (dense, row-major).
// pinv_small takes inputs with <=3 rows and <=2 columns; results are stored
// in the same carrier with the transposed shape.
struct SmallMat {
  int rows = 0;
  int cols = 0;
  double m[3][3] = {};

  double operator()(int i, int j) const { return m[i][j]; }
  double& operator()(int i, int j) { return m[i][j]; }

  double max_abs() const {
    double r = 0.0;
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) r = std::max(r, std::fabs(m[i][j]));
    return r;
  }
  SmallMat transpose() const {
    SmallMat r;
    r.rows = cols;
    r.cols = rows;
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) r.m[j][i] = m[i][j];
    return r;
  }
  SmallMat mul(const SmallMat& o) const {
    SmallMat r;
    r.rows = rows;
    r.cols = o.cols;
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < o.cols; ++j) {
        double s = 0.0;
        for (int k = 0; k < cols; ++k) s += m[i][k] * o.m[k][j];
        r.m[i][j] = s;
      }
    return r;
  }
};

// Polynomial with real coefficients, ascending degree, degree <= 4 after
// trimming.
struct RealPoly {
  std::vector<double> coeff;

  double eval(double x) const {
    double r = 0.0;
    for (std::size_t i = coeff.size(); i-- > 0;) r = r * x + coeff[i];
    return r;
  }
};

struct ZeroPolynomial : std::runtime_error {
  ZeroPolynomial() : std::runtime_error("all polynomial coefficients below trim tolerance") {}
};

struct Eig2 {
  double value = 0.0;
  int geometric_multiplicity = 1;
  Vec2 eigenvector{1.0, 0.0};
};

struct RootMult {
  double value = 0.0;
  int multiplicity = 1;
};

Mat2 adj2(const Mat2& M);

// Real eigenvalues of a 2x2 matrix with unit eigenvectors; a complex pair
// yields an empty list.  Geometric multiplicity 2 is reported iff
// ||M - mu*I||_max <= tol * max(1, ||M||_max).
std::vector<Eig2> eig2_real(const Mat2& M, double tol);

// Moore-Penrose pseudoinverse for matrices with <=3 rows and <=2 columns.
SmallMat pinv_small(const SmallMat& M, double tol);

// All real roots of p with multiplicities.  Roots closer than the merge
// radius are clustered and reported once with the summed multiplicity.
std::vector<RootMult> real_roots(const RealPoly& p, double tol);

}  // namespace lspec
