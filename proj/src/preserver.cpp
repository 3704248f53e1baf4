#include "lspec/preserver.hpp"

#include <cmath>
#include <random>

namespace lspec {

namespace {

// column-major basis index <-> matrix position
inline int basis_index(int i, int j) { return 3 * j + i; }

std::array<double, 9> vec3(const Mat3& A) {
  std::array<double, 9> v{};
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i) v[basis_index(i, j)] = A.m[i][j];
  return v;
}

Mat3 unvec3(const std::array<double, 9>& v) {
  Mat3 A;
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i) A.m[i][j] = v[basis_index(i, j)];
  return A;
}

Mat3 extend_q(const Mat2& q) {
  Mat3 Q;
  Q.m[0][0] = q.m[0][0];
  Q.m[0][1] = q.m[0][1];
  Q.m[1][0] = q.m[1][0];
  Q.m[1][1] = q.m[1][1];
  Q.m[2][2] = 1.0;
  return Q;
}

}  // namespace

LinearMap3 make_preserver(const Mat2& q) {
  const Mat2 qtq = q.transpose().mul(q);
  if ((qtq - Mat2::identity()).max_abs() > 1e-10) throw NotOrthogonal();

  const Mat3 Q = extend_q(q);
  const Mat3 Qt = Q.transpose();
  LinearMap3 map;
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i) {
      const Mat3 img = Q.mul(Mat3::unit(i, j)).mul(Qt);
      const auto col = vec3(img);
      const int k = basis_index(i, j);
      for (int r = 0; r < 9; ++r) map.m[r][k] = col[r];
    }
  return map;
}

Mat3 apply_map(const LinearMap3& map, const Mat3& A) {
  const auto x = vec3(A);
  std::array<double, 9> y{};
  for (int r = 0; r < 9; ++r)
    for (int c = 0; c < 9; ++c) y[r] += map.m[r][c] * x[c];
  return unvec3(y);
}

std::vector<Mat3> battery_gen(std::uint64_t seed, std::size_t count) {
  if (count < 30) throw std::invalid_argument("battery_gen: count must be >= 30");
  std::vector<Mat3> out;
  out.reserve(count);

  const auto B = [](const Mat2& t, Vec2 u, Vec2 v, double a) {
    return Mat3::from_blocks(t, u, v, a);
  };

  out.push_back(Mat3::identity());
  out.push_back(Mat3::identity() * 2.0);
  out.push_back(Mat3::identity() * -0.5);
  out.push_back(Mat3::unit(2, 0));
  out.push_back(Mat3::unit(2, 1));
  out.push_back(Mat3::unit(0, 2));
  out.push_back(Mat3::unit(1, 2));
  // zero leading block, one representative per sign regime of a vs ||v||
  out.push_back(B(Mat2{}, {0, 0}, {1.0, 0.5}, 0.25));
  out.push_back(B(Mat2{}, {0, 0}, {0.6, 0.8}, -1.0));
  out.push_back(B(Mat2{}, {0, 0}, {0.6, 0.8}, -2.0));
  out.push_back(B(Mat2{}, {0, 0}, {0, 0}, 1.5));
  out.push_back(B(Mat2{}, {0, 0}, {0, 0}, -1.5));
  // scalar leading block with nonzero v: interval spectra
  out.push_back(B(Mat2{}, {0, 0}, {1.0, 0.0}, 0.0));
  out.push_back(B(Mat2::scalar(0.5), {0, 0}, {1.0, 1.0}, 1.0));
  out.push_back(B(Mat2::scalar(-1.0), {0, 0}, {0.0, 2.0}, -0.5));
  // nontrivial leading block only
  out.push_back(B(Mat2{{{1.0, 2.0}, {3.0, 4.0}}}, {0, 0}, {0, 0}, 0.0));
  out.push_back(B(Mat2{{{0.0, -1.0}, {1.0, 0.0}}}, {0, 0}, {0, 0}, 0.0));
  out.push_back(B(Mat2{}, {1.0, 2.0}, {0, 0}, 0.0));
  // symmetric zero-block cases
  out.push_back(B(Mat2{}, {1.0, 0.0}, {1.0, 0.0}, 0.0));
  out.push_back(B(Mat2{}, {0.6, -0.8}, {0.6, -0.8}, 0.5));
  out.push_back(B(Mat2{{{0.0, 1.0}, {1.0, 0.0}}}, {0, 0}, {0, 0}, 0.0));

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  while (out.size() < count) {
    Mat3 A;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) A.m[i][j] = dist(rng);
    out.push_back(A);
  }
  out.resize(count);
  return out;
}

namespace {

// LU with partial pivoting, determinant only
double det9(const LinearMap3& map) {
  double a[9][9];
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) a[i][j] = map.m[i][j];
  double det = 1.0;
  for (int k = 0; k < 9; ++k) {
    int piv = k;
    for (int i = k + 1; i < 9; ++i)
      if (std::fabs(a[i][k]) > std::fabs(a[piv][k])) piv = i;
    if (a[piv][k] == 0.0) return 0.0;
    if (piv != k) {
      for (int j = 0; j < 9; ++j) std::swap(a[k][j], a[piv][j]);
      det = -det;
    }
    det *= a[k][k];
    for (int i = k + 1; i < 9; ++i) {
      const double f = a[i][k] / a[k][k];
      for (int j = k; j < 9; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return det;
}

}  // namespace

Mat2 recover_q(const LinearMap3& map, double tol) {
  const Mat3 b1 = apply_map(map, Mat3::unit(2, 0));
  const Mat3 b2 = apply_map(map, Mat3::unit(2, 1));
  // images of E31, E32 under conjugation keep the bottom-left block shape
  for (const Mat3& b : {b1, b2}) {
    if (b.tilde().max_abs() > tol || b.u().norm() > tol ||
        std::fabs(b.a()) > tol)
      throw NotCanonical();
  }
  const Vec2 p = b1.v();
  const Vec2 r = b2.v();
  Mat2 q{{{p.x, r.x}, {p.y, r.y}}};
  if ((q.transpose().mul(q) - Mat2::identity()).max_abs() > tol)
    throw NotCanonical();
  return q;
}

PreserverVerdict check_preserver(const LinearMap3& map, std::uint64_t seed,
                                 std::size_t count, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("check_preserver: tol must be positive");
  PreserverVerdict verdict;

  auto fail_with = [&](const Mat3& A, Spectrum sA, Spectrum sImg) {
    verdict.is_preserver = false;
    verdict.witness = A;
    verdict.witness_spectrum = std::move(sA);
    verdict.image_spectrum = std::move(sImg);
  };

  // fast prechecks: identity is a fixed point, and preservers are bijective
  const Mat3 imgI = apply_map(map, Mat3::identity());
  if ((imgI - Mat3::identity()).max_abs() > tol) {
    fail_with(Mat3::identity(), full_spectrum(Mat3::identity(), tol),
              full_spectrum(imgI, tol));
    return verdict;
  }
  const bool singular = std::fabs(det9(map)) <= 1e-12;

  for (const Mat3& A : battery_gen(seed, count)) {
    Spectrum sA = full_spectrum(A, tol);
    Spectrum sImg = full_spectrum(apply_map(map, A), tol);
    const SpectrumDiff diff = spectra_equal(sA, sImg, tol);
    if (diff.hausdorff_distance > tol) {
      fail_with(A, std::move(sA), std::move(sImg));
      return verdict;
    }
  }

  if (singular) {
    // spectra agreed on every sample, but no bijection can be a preserver;
    // report the identity's image as the best available witness
    fail_with(Mat3::identity(), full_spectrum(Mat3::identity(), tol),
              full_spectrum(imgI, tol));
    return verdict;
  }

  verdict.is_preserver = true;
  try {
    const Mat2 q = recover_q(map, tol);
    const LinearMap3 rebuilt = make_preserver(q);
    double diff = 0.0;
    for (int i = 0; i < 9; ++i)
      for (int j = 0; j < 9; ++j)
        diff = std::max(diff, std::fabs(rebuilt.m[i][j] - map.m[i][j]));
    if (diff <= tol) verdict.q_recovered = q;
  } catch (const NotCanonical&) {
  } catch (const NotOrthogonal&) {
  }
  return verdict;
}

NatureVerdict check_nature(const LinearMap3& map, std::uint64_t seed,
                           std::size_t count, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("check_nature: tol must be positive");
  NatureVerdict verdict;
  for (const Mat3& A : battery_gen(seed, count)) {
    Spectrum sA = full_spectrum(A, tol);
    Spectrum sImg = full_spectrum(apply_map(map, A), tol);
    const double d_int =
        hausdorff_distance(interior_point_set(sA), interior_point_set(sImg));
    const double d_bd =
        hausdorff_distance(boundary_point_set(sA), boundary_point_set(sImg));
    if (d_int > tol || d_bd > tol) {
      verdict.preserves_nature = false;
      verdict.witness = A;
      verdict.witness_spectrum = std::move(sA);
      verdict.image_spectrum = std::move(sImg);
      return verdict;
    }
  }
  verdict.preserves_nature = true;
  return verdict;
}

}  // namespace lspec
