#include "lspec/smallmat.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <complex>

namespace lspec {

Mat2 adj2(const Mat2& M) {
  return {{{M.m[1][1], -M.m[0][1]}, {-M.m[1][0], M.m[0][0]}}};
}

std::vector<Eig2> eig2_real(const Mat2& M, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("eig2_real: tol must be positive");
  const double tr = M.trace();
  const double det = M.det();
  const double scale = std::max(1.0, M.max_abs());
  const double disc = tr * tr - 4.0 * det;
  const double disc_tol = tol * scale * scale;

  auto eigenvector_for = [&](double mu) -> Vec2 {
    // null vector of M - mu*I: orthogonal to its larger row
    const Vec2 r0{M.m[0][0] - mu, M.m[0][1]};
    const Vec2 r1{M.m[1][0], M.m[1][1] - mu};
    const Vec2 r = r0.norm2() >= r1.norm2() ? r0 : r1;
    if (r.norm() <= tol * scale) return {1.0, 0.0};
    const Vec2 n{r.y, -r.x};
    const double nn = n.norm();
    return {n.x / nn, n.y / nn};
  };

  std::vector<Eig2> out;
  if (disc < -disc_tol) return out;  // complex pair

  if (disc <= disc_tol) {
    const double mu = tr / 2.0;
    Mat2 shifted = M;
    shifted.m[0][0] -= mu;
    shifted.m[1][1] -= mu;
    const bool mult2 = shifted.max_abs() <= tol * scale;
    out.push_back({mu, mult2 ? 2 : 1, mult2 ? Vec2{1.0, 0.0} : eigenvector_for(mu)});
    return out;
  }

  const double sq = std::sqrt(disc);
  // stable quadratic roots: larger-magnitude root first, then det/root
  double mu1 = 0.5 * (tr + (tr >= 0.0 ? sq : -sq));
  double mu2 = det / mu1;
  if (mu1 > mu2) std::swap(mu1, mu2);
  out.push_back({mu1, 1, eigenvector_for(mu1)});
  out.push_back({mu2, 1, eigenvector_for(mu2)});
  return out;
}

namespace {

// symmetric 2x2 eigenvalues, descending
std::array<double, 2> sym2_eigs(double a, double b, double d) {
  const double mean = 0.5 * (a + d);
  const double rad = std::hypot(0.5 * (a - d), b);
  return {mean + rad, mean - rad};
}

}  // namespace

SmallMat pinv_small(const SmallMat& M, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("pinv_small: tol must be positive");
  if (M.rows < 1 || M.rows > 3 || M.cols < 1 || M.cols > 2)
    throw std::invalid_argument("pinv_small: shape must be <=3 rows, <=2 columns");

  SmallMat P;
  P.rows = M.cols;
  P.cols = M.rows;

  const double amax = M.max_abs();
  const double tau = tol * std::max(1.0, amax);
  if (amax <= tau * tol) {  // effectively zero: pinv is the zero transpose
    return P;
  }

  // Gram matrix G = M^T M (cols x cols)
  const SmallMat Mt = M.transpose();
  const SmallMat G = Mt.mul(M);

  int rank;
  if (M.cols == 1) {
    rank = G.m[0][0] > tau * tau ? 1 : 0;
  } else {
    const auto ev = sym2_eigs(G.m[0][0], G.m[0][1], G.m[1][1]);
    const double s1 = std::sqrt(std::max(0.0, ev[0]));
    const double s2 = std::sqrt(std::max(0.0, ev[1]));
    // forming the Gram matrix floors the smallest detectable singular value
    // at sqrt(eps)*s1, so the rank-2 gate must sit above that noise
    const double tau2 = std::max(tau, 1.2e-7 * s1);
    rank = (s1 > tau ? 1 : 0) + (s2 > tau2 ? 1 : 0);
  }

  if (rank == 0) return P;

  if (rank == 1) {
    // rank-1 closed formula: M^+ = M^T / tr(M^T M)
    double t = 0.0;
    for (int j = 0; j < M.cols; ++j) t += G.m[j][j];
    for (int i = 0; i < P.rows; ++i)
      for (int j = 0; j < P.cols; ++j) P.m[i][j] = Mt.m[i][j] / t;
    return P;
  }

  if (M.rows == 2 && M.cols == 2) {
    // full-rank square: exact inverse via the adjugate
    const double det = M.m[0][0] * M.m[1][1] - M.m[0][1] * M.m[1][0];
    P.m[0][0] = M.m[1][1] / det;
    P.m[0][1] = -M.m[0][1] / det;
    P.m[1][0] = -M.m[1][0] / det;
    P.m[1][1] = M.m[0][0] / det;
    return P;
  }

  // full column rank: M^+ = (M^T M)^{-1} M^T
  const double det = G.m[0][0] * G.m[1][1] - G.m[0][1] * G.m[1][0];
  SmallMat Ginv;
  Ginv.rows = Ginv.cols = 2;
  Ginv.m[0][0] = G.m[1][1] / det;
  Ginv.m[0][1] = -G.m[0][1] / det;
  Ginv.m[1][0] = -G.m[1][0] / det;
  Ginv.m[1][1] = G.m[0][0] / det;
  return Ginv.mul(Mt);
}

std::vector<RootMult> real_roots(const RealPoly& p, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("real_roots: tol must be positive");

  double cmax = 0.0;
  for (double c : p.coeff) cmax = std::max(cmax, std::fabs(c));
  if (cmax == 0.0) throw ZeroPolynomial();

  const double trim = tol * cmax;
  int deg = static_cast<int>(p.coeff.size()) - 1;
  while (deg > 0 && std::fabs(p.coeff[deg]) <= trim) --deg;
  if (deg == 0) {
    if (std::fabs(p.coeff[0]) <= trim) throw ZeroPolynomial();
    return {};
  }
  if (deg > 4) throw std::invalid_argument("real_roots: degree must be <= 4 after trimming");

  // monic coefficients
  std::vector<double> a(deg);
  for (int i = 0; i < deg; ++i) a[i] = p.coeff[i] / p.coeff[deg];

  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) C(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) C(i, deg - 1) = -a[i];

  Eigen::EigenSolver<Eigen::MatrixXd> es(C, false);
  std::vector<std::complex<double>> roots(es.eigenvalues().data(),
                                          es.eigenvalues().data() + deg);

  // A root of multiplicity k comes out of the companion eigensolver as a
  // star of k values spread by O(eps^(1/k)) around the true root, with
  // imaginary parts of the same order.  Cluster transitively, using the
  // imaginary parts as the spread estimate, so that distinct real roots
  // (tiny imaginary noise) never merge.
  const std::size_t n = roots.size();
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  auto eval_real = [&](double x) {
    double r = 1.0;
    for (int k = deg - 1; k >= 0; --k) r = r * x + a[k];
    return r;
  };
  auto deriv_real = [&](double x) {
    double r = static_cast<double>(deg);
    for (int k = deg - 1; k >= 1; --k) r = r * x + static_cast<double>(k) * a[k];
    return r;
  };
  auto deriv2_real = [&](double x) {
    double r = static_cast<double>(deg) * static_cast<double>(deg - 1);
    for (int k = deg - 1; k >= 2; --k)
      r = r * x + static_cast<double>(k) * static_cast<double>(k - 1) * a[k];
    return deg >= 2 ? r : 0.0;
  };
  auto noise_floor = [&](double x) {  // coefficient-noise level of |p| near x
    double s = 1.0;
    const double am = std::max(1.0, std::fabs(x));
    for (int k = deg - 1; k >= 0; --k) s = s * am + std::fabs(a[k]);
    return 1e4 * 2.2e-16 * s;
  };

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double scale = std::max({1.0, std::abs(roots[i]), std::abs(roots[j])});
      const double gap = std::abs(roots[i] - roots[j]);
      const double im_sum =
          std::fabs(roots[i].imag()) + std::fabs(roots[j].imag());
      double radius = tol * scale;
      // the imaginary spread only measures a split multiple root while it is
      // at noise scale; a genuinely complex pair must not widen the radius
      if (im_sum <= 1e-3 * scale) radius = std::max(radius, 5.0 * im_sum);
      bool merge = gap <= radius;
      if (!merge && gap <= 2e-6 * scale) {
        // a multiple root can split into a real pair wider than the radius
        // above; merge when the midpoint residual sits at coefficient noise,
        // i.e. the data cannot distinguish the pair from one double root
        const double mid = 0.5 * (roots[i].real() + roots[j].real());
        merge = std::fabs(eval_real(mid)) <= noise_floor(mid);
      }
      if (merge) parent[find(i)] = find(j);
    }

  std::vector<RootMult> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (find(i) != i) continue;
    int mult = 0;
    std::complex<double> centroid = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (find(j) == i) {
        ++mult;
        centroid += roots[j];
      }
    centroid /= static_cast<double>(mult);
    // anything still far from the real axis is a genuine complex root
    if (std::fabs(centroid.imag()) >
        1e-3 * std::max(1.0, std::fabs(centroid.real())))
      continue;
    double mu = centroid.real();

    if (mult == 1) {
      for (int it = 0; it < 3; ++it) {  // simple root: Newton polish
        const double pd = deriv_real(mu);
        if (std::fabs(pd) < 1e-300) break;
        const double step = eval_real(mu) / pd;
        if (!std::isfinite(step) ||
            std::fabs(step) > 0.5 * std::max(1.0, std::fabs(mu)))
          break;
        mu -= step;
      }
    } else if (mult == 2) {
      // a double root of p is a simple root of p'
      for (int it = 0; it < 3; ++it) {
        const double pdd = deriv2_real(mu);
        if (std::fabs(pdd) < 1e-300) break;
        const double step = deriv_real(mu) / pdd;
        // stay inside the merge window so this cannot run off to an
        // unrelated extremum of p
        if (!std::isfinite(step) || std::fabs(step) > 1e-5 * std::max(1.0, std::fabs(mu)))
          break;
        mu -= step;
      }
    }

    // keep only clusters whose centroid really is a root; this rejects the
    // real midpoint of a genuine complex-conjugate pair
    double poly_scale = 1.0;
    const double am = std::max(1.0, std::fabs(mu));
    for (int k = deg - 1; k >= 0; --k) poly_scale = poly_scale * am + std::fabs(a[k]);
    if (std::fabs(eval_real(mu)) > std::max(tol, 1e4 * 2.2e-16) * poly_scale)
      continue;
    out.push_back({mu, mult});
  }

  // merge real clusters that ended up within tol of each other
  std::sort(out.begin(), out.end(),
            [](const RootMult& l, const RootMult& r) { return l.value < r.value; });
  std::vector<RootMult> merged;
  for (const auto& r : out) {
    if (!merged.empty() &&
        std::fabs(r.value - merged.back().value) <=
            tol * std::max(1.0, std::fabs(merged.back().value))) {
      merged.back().multiplicity += r.multiplicity;
    } else {
      merged.push_back(r);
    }
  }
  return merged;
}

}  // namespace lspec
