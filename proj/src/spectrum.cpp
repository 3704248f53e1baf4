#include "lspec/spectrum.hpp"

#include <algorithm>
#include <cmath>

namespace lspec {

namespace {

constexpr double kDedupTol = 1e-8;        // lambda merge radius (relative)
constexpr double kDegenerateWidth = 1e-10;  // interval -> point demotion
constexpr double kThirdCoordCutoff = 1e-7;
constexpr double kNegSTol = 1e-9;  // slack below s = 0 before rejection

double p2_eval(const Mat2& At, double mu) {
  // det(At - mu I)
  return (At.m[0][0] - mu) * (At.m[1][1] - mu) - At.m[0][1] * At.m[1][0];
}

// Minimal-norm xi with [xi; 1] in the null space of a (numerically) singular
// 3x3 matrix, or nullopt when every null vector has third coordinate ~ 0.
std::optional<Vec2> min_null_xi(const Mat3& B, double tol) {
  const double bmax = B.max_abs();
  const double t2 = tol * std::max(1.0, bmax * bmax);

  std::array<std::array<double, 3>, 3> r;
  for (int i = 0; i < 3; ++i) r[i] = {B.m[i][0], B.m[i][1], B.m[i][2]};
  auto cross = [](const std::array<double, 3>& x, const std::array<double, 3>& y) {
    return std::array<double, 3>{x[1] * y[2] - x[2] * y[1],
                                 x[2] * y[0] - x[0] * y[2],
                                 x[0] * y[1] - x[1] * y[0]};
  };
  auto norm3 = [](const std::array<double, 3>& x) {
    return std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
  };

  std::array<double, 3> best{};
  double best_norm = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      const auto c = cross(r[i], r[j]);
      const double n = norm3(c);
      if (n > best_norm) {
        best_norm = n;
        best = c;
      }
    }

  if (best_norm > t2) {
    // rank 2: one-dimensional null space spanned by the cross product
    if (std::fabs(best[2]) <= kThirdCoordCutoff * best_norm) return std::nullopt;
    return Vec2{best[0] / best[2], best[1] / best[2]};
  }

  // rank <= 1
  int imax = 0;
  double rn = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double n = norm3(r[i]);
    if (n > rn) {
      rn = n;
      imax = i;
    }
  }
  if (rn <= tol * std::max(1.0, bmax)) return Vec2{0.0, 0.0};  // rank 0

  // rank 1: null space is the plane r . x = 0
  const auto& rr = r[imax];
  const double head2 = rr[0] * rr[0] + rr[1] * rr[1];
  if (std::sqrt(head2) <= kThirdCoordCutoff * rn) return std::nullopt;  // plane x3 = 0
  const double f = -rr[2] / head2;
  return Vec2{f * rr[0], f * rr[1]};
}

RealPoly characteristic_cubic(const Mat3& A) {
  const double tr = A.m[0][0] + A.m[1][1] + A.m[2][2];
  const double c2 = A.m[0][0] * A.m[1][1] - A.m[0][1] * A.m[1][0] +
                    A.m[0][0] * A.m[2][2] - A.m[0][2] * A.m[2][0] +
                    A.m[1][1] * A.m[2][2] - A.m[1][2] * A.m[2][1];
  const double det = A.m[0][0] * (A.m[1][1] * A.m[2][2] - A.m[1][2] * A.m[2][1]) -
                     A.m[0][1] * (A.m[1][0] * A.m[2][2] - A.m[1][2] * A.m[2][0]) +
                     A.m[0][2] * (A.m[1][0] * A.m[2][1] - A.m[1][1] * A.m[2][0]);
  return RealPoly{{det, -c2, tr, -1.0}};
}

LEigenvalue boundary_point(double mu, double s, const Vec2& xi) {
  LEigenvalue e;
  if (s < 0.0) s = 0.0;  // accepted slack below zero is rounding noise
  e.value = mu + s;
  e.boundary = true;
  e.boundary_witness = BoundaryWitness{mu, s, xi};
  return e;
}

// unit xi with v . xi = target (requires |target| <= ||v||)
Vec2 xi_with_dot(const Vec2& v, double target) {
  const double vn = v.norm();
  const double c = std::clamp(target / vn, -1.0, 1.0);
  const double sfrac = std::sqrt(std::max(0.0, 1.0 - c * c));
  const Vec2 vhat{v.x / vn, v.y / vn};
  return vhat * c + vhat.perp() * sfrac;
}

void add_point(std::vector<LEigenvalue>& pts, const LEigenvalue& e) {
  for (auto& p : pts) {
    if (std::fabs(p.value - e.value) <= kDedupTol * std::max(1.0, std::fabs(p.value))) {
      p.interior = p.interior || e.interior;
      p.boundary = p.boundary || e.boundary;
      if (!p.interior_xi && e.interior_xi) p.interior_xi = e.interior_xi;
      if (!p.boundary_witness && e.boundary_witness) p.boundary_witness = e.boundary_witness;
      return;
    }
  }
  pts.push_back(e);
}

}  // namespace

Mat3 assemble(const FamilyTag& f) {
  struct V {
    Mat3 operator()(const DiagCA& d) const {
      return Mat3::from_blocks(Mat2::scalar(d.c), {0, 0}, {0, 0}, d.a);
    }
    Mat3 operator()(const ZeroTilde& z) const {
      return Mat3::from_blocks(Mat2{}, z.u, z.v, z.a);
    }
    Mat3 operator()(const CIva& c) const {
      return Mat3::from_blocks(Mat2::scalar(c.c), {0, 0}, c.v, c.a);
    }
    Mat3 operator()(const OffDiag& o) const {
      return Mat3::from_blocks(Mat2{{{0.0, o.c}, {o.d, 0.0}}}, {0, 0},
                               {o.v1, o.v2}, o.a);
    }
    Mat3 operator()(const GeneralFamily&) const { throw UnsupportedFamily(); }
  };
  return std::visit(V{}, f);
}

double boundary_residual(const Mat3& A, double lambda, const Vec2& xi, double s) {
  const std::array<double, 3> x{xi.x, xi.y, 1.0};
  const auto Ax = A.mul(x);
  const double r0 = Ax[0] - lambda * xi.x + s * xi.x;
  const double r1 = Ax[1] - lambda * xi.y + s * xi.y;
  const double r2 = Ax[2] - lambda - s;
  return std::sqrt(r0 * r0 + r1 * r1 + r2 * r2);
}

std::vector<LEigenvalue> interior_spectrum(const Mat3& A, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("interior_spectrum: tol must be positive");
  std::vector<LEigenvalue> out;
  for (const auto& root : real_roots(characteristic_cubic(A), tol)) {
    Mat3 B = A;
    B.m[0][0] -= root.value;
    B.m[1][1] -= root.value;
    B.m[2][2] -= root.value;
    const auto xi = min_null_xi(B, tol);
    if (!xi) continue;
    if (xi->norm() < 1.0 - tol) {
      LEigenvalue e;
      e.value = root.value;
      e.interior = true;
      e.interior_xi = *xi;
      add_point(out, e);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const LEigenvalue& l, const LEigenvalue& r) { return l.value < r.value; });
  return out;
}

std::vector<LEigenvalue> solve_system_I(const Mat3& A, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("solve_system_I: tol must be positive");
  std::vector<LEigenvalue> out;
  const Mat2 At = A.tilde();
  const Vec2 u = A.u();
  const Vec2 v = A.v();
  const double a = A.a();
  const double scale = std::max(1.0, A.max_abs());

  if (u.norm() <= tol * scale) return out;  // I.3 cannot hold

  // ||adj(At - mu I) u||^2 - det(At - mu I)^2 = 0, degree 4 in mu
  const Vec2 w0{At.m[1][1] * u.x - At.m[0][1] * u.y,
                -At.m[1][0] * u.x + At.m[0][0] * u.y};
  const Vec2 w1{-u.x, -u.y};
  const double e0 = At.det();
  const double e1 = -At.trace();
  RealPoly q{{w0.norm2() - e0 * e0, 2.0 * w0.dot(w1) - 2.0 * e0 * e1,
              w1.norm2() - (e1 * e1 + 2.0 * e0), -2.0 * e1, -1.0}};

  const double eig_gate = tol * (1.0 + At.max_abs() * At.max_abs());
  for (const auto& root : real_roots(q, tol)) {
    const double mu = root.value;
    const double det = p2_eval(At, mu);
    if (std::fabs(det) <= eig_gate) continue;  // handled by Systems II-IV
    Vec2 xi{-(w0.x + mu * w1.x) / det, -(w0.y + mu * w1.y) / det};
    const double n = xi.norm();
    if (n < 0.5 || n > 2.0) continue;  // spurious root, cannot satisfy I.3
    xi = xi * (1.0 / n);
    const double s = (a - mu + v.dot(xi)) / 2.0;
    if (s < -kNegSTol * scale) continue;
    out.push_back(boundary_point(mu, s, xi));
  }
  return out;
}

SystemOut solve_systems_II_III_IV(const Mat3& A, double mu, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("solve_systems_II_III_IV: tol must be positive");
  SystemOut res;
  const Mat2 At = A.tilde();
  const Vec2 u = A.u();
  const Vec2 v = A.v();
  const double a = A.a();
  const double scale = std::max(1.0, A.max_abs());

  if (std::fabs(p2_eval(At, mu)) > tol * (1.0 + At.max_abs() * At.max_abs()))
    throw InvalidMu();

  Mat2 S = At;
  S.m[0][0] -= mu;
  S.m[1][1] -= mu;

  const bool mult2 = S.max_abs() <= tol * std::max(1.0, At.max_abs());

  if (mult2) {
    // At = mu I; II.2 forces u = 0
    if (u.norm() > tol * scale) return res;
    if (v.norm() <= tol * scale) {
      // System II, zero stacked matrix: s pinned by II.4
      const double s = (a - mu) / 2.0;
      if (s >= -kNegSTol * scale)
        res.points.push_back(boundary_point(mu, s, {1.0, 0.0}));
      return res;
    }
    // System IV: |a - mu - 2s| <= ||v||, s >= 0
    const double vn = v.norm();
    const double s_hi = (a - mu + vn) / 2.0;
    if (s_hi < -kNegSTol * scale) return res;
    const double s_lo = std::max(0.0, (a - mu - vn) / 2.0);
    const double lam_lo = mu + s_lo;
    const double lam_hi = mu + std::max(s_hi, s_lo);
    if (lam_hi - lam_lo <= kDegenerateWidth) {
      res.points.push_back(
          boundary_point(mu, s_lo, xi_with_dot(v, mu + 2.0 * s_lo - a)));
    } else {
      res.interval = Interval{lam_lo, lam_hi};
    }
    return res;
  }

  // geometric multiplicity 1: S has rank 1
  auto null_of = [&](const Mat2& M) -> Vec2 {
    const Vec2 r0{M.m[0][0], M.m[0][1]};
    const Vec2 r1{M.m[1][0], M.m[1][1]};
    const Vec2 r = r0.norm2() >= r1.norm2() ? r0 : r1;
    const Vec2 n = r.perp();
    const double nn = n.norm();
    return {n.x / nn, n.y / nn};
  };
  const Vec2 n_right = null_of(S);
  const Vec2 n_left = null_of(S.transpose());

  // II.2: u in Img(S)  <=>  u orthogonal to the left null vector
  if (std::fabs(n_left.dot(u)) > tol * std::max(1.0, u.norm())) return res;
  // II.3 vs III.3: v in Img(S^T)  <=>  v orthogonal to the right null vector
  const bool v_in_img = std::fabs(n_right.dot(v)) <= tol * std::max(1.0, v.norm());

  SmallMat M;
  M.rows = 3;
  M.cols = 2;
  M.m[0][0] = S.m[0][0];
  M.m[0][1] = S.m[0][1];
  M.m[1][0] = S.m[1][0];
  M.m[1][1] = S.m[1][1];
  M.m[2][0] = v.x;
  M.m[2][1] = v.y;
  const SmallMat P = pinv_small(M, tol);

  auto apply_P = [&](double b0, double b1, double b2) {
    return Vec2{P.m[0][0] * b0 + P.m[0][1] * b1 + P.m[0][2] * b2,
                P.m[1][0] * b0 + P.m[1][1] * b1 + P.m[1][2] * b2};
  };

  if (v_in_img) {
    // System II: s pinned by v^T S^+ u = a - mu - 2s
    SmallMat S22;
    S22.rows = S22.cols = 2;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) S22.m[i][j] = S.m[i][j];
    const SmallMat Sp = pinv_small(S22, tol);
    const Vec2 Spu{Sp.m[0][0] * u.x + Sp.m[0][1] * u.y,
                   Sp.m[1][0] * u.x + Sp.m[1][1] * u.y};
    const double s = (a - mu - v.dot(Spu)) / 2.0;
    if (s < -kNegSTol * scale) return res;
    const Vec2 xi0 = apply_P(-u.x, -u.y, -(a - mu - 2.0 * s));
    const double n0 = xi0.norm();
    if (n0 > 1.0 + tol) return res;  // II.5 fails
    Vec2 xi;
    if (n0 >= 1.0) {
      xi = xi0 * (1.0 / n0);
    } else {
      const double t = std::sqrt(1.0 - n0 * n0);
      xi = xi0 + n_right * t;
    }
    res.points.push_back(boundary_point(mu, s, xi));
    return res;
  }

  // System III: ||xi(s)|| = 1 with xi(s) = c0 + s * c1 affine in s
  const Vec2 c0 = apply_P(-u.x, -u.y, -(a - mu));
  const Vec2 c1 = apply_P(0.0, 0.0, 2.0);
  const double qa = c1.norm2();
  const double qb = 2.0 * c0.dot(c1);
  const double qc = c0.norm2() - 1.0;
  std::vector<double> svals;
  if (qa <= 1e-14) {
    if (std::fabs(qb) > 1e-14) svals.push_back(-qc / qb);
  } else {
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc >= 0.0) {
      const double sq = std::sqrt(disc);
      svals.push_back((-qb - sq) / (2.0 * qa));
      if (sq > 0.0) svals.push_back((-qb + sq) / (2.0 * qa));
    }
  }
  for (double s : svals) {
    if (s < -kNegSTol * scale) continue;
    Vec2 xi = c0 + c1 * s;
    const double n = xi.norm();
    if (n > 0.0) xi = xi * (1.0 / n);
    res.points.push_back(boundary_point(mu, s, xi));
  }
  return res;
}

BoundaryOut boundary_spectrum(const Mat3& A, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("boundary_spectrum: tol must be positive");
  BoundaryOut out;
  std::vector<LEigenvalue> candidates = solve_system_I(A, tol);

  for (const auto& eig : eig2_real(A.tilde(), tol)) {
    const auto sys = solve_systems_II_III_IV(A, eig.value, tol);
    candidates.insert(candidates.end(), sys.points.begin(), sys.points.end());
    if (sys.interval) out.intervals.push_back(*sys.interval);
  }

  // re-verify every candidate against the geometric characterization
  const double tau_verify = tol * (1.0 + A.max_abs());
  for (const auto& c : candidates) {
    const auto& w = *c.boundary_witness;
    if (boundary_residual(A, c.value, w.xi, w.s) > tau_verify) continue;
    if (std::fabs(w.xi.norm() - 1.0) > 1e-6) continue;
    add_point(out.points, c);
  }
  std::sort(out.points.begin(), out.points.end(),
            [](const LEigenvalue& l, const LEigenvalue& r) { return l.value < r.value; });

  std::sort(out.intervals.begin(), out.intervals.end(),
            [](const Interval& l, const Interval& r) { return l.lo < r.lo; });
  std::vector<Interval> merged;
  for (const auto& iv : out.intervals) {
    if (!merged.empty() && iv.lo <= merged.back().hi + kDedupTol)
      merged.back().hi = std::max(merged.back().hi, iv.hi);
    else
      merged.push_back(iv);
  }
  out.intervals = std::move(merged);
  return out;
}

std::optional<Interval> detect_infinite(const Mat3& A, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("detect_infinite: tol must be positive");
  const double tau = tol * std::max(1.0, A.max_abs());
  const double c = (A.m[0][0] + A.m[1][1]) / 2.0;
  if (std::fabs(A.m[0][0] - c) > tau || std::fabs(A.m[1][1] - c) > tau ||
      std::fabs(A.m[0][1]) > tau || std::fabs(A.m[1][0]) > tau)
    return std::nullopt;
  if (A.u().norm() > tau) return std::nullopt;
  const double vn = A.v().norm();
  if (vn <= tau) return std::nullopt;
  const double a = A.a();
  if (!(c < a + vn - tau)) return std::nullopt;
  return Interval{std::max(c, (a + c - vn) / 2.0), (a + c + vn) / 2.0};
}

void canonicalize(Spectrum& s, double tol) {
  // merge intervals
  std::sort(s.intervals.begin(), s.intervals.end(),
            [](const Interval& l, const Interval& r) { return l.lo < r.lo; });
  std::vector<Interval> ivs;
  for (const auto& iv : s.intervals) {
    if (!ivs.empty() && iv.lo <= ivs.back().hi + kDedupTol)
      ivs.back().hi = std::max(ivs.back().hi, iv.hi);
    else
      ivs.push_back(iv);
  }
  // demote degenerate intervals to boundary points
  std::vector<LEigenvalue> pts = std::move(s.points);
  s.intervals.clear();
  for (const auto& iv : ivs) {
    if (iv.hi - iv.lo <= kDegenerateWidth) {
      LEigenvalue e;
      e.value = (iv.lo + iv.hi) / 2.0;
      e.boundary = true;
      LEigenvalue merged = e;
      bool found = false;
      for (auto& p : pts) {
        if (std::fabs(p.value - e.value) <= kDedupTol * std::max(1.0, std::fabs(p.value))) {
          p.boundary = true;
          found = true;
          break;
        }
      }
      if (!found) pts.push_back(merged);
    } else {
      s.intervals.push_back(iv);
    }
  }

  // dedupe points
  std::sort(pts.begin(), pts.end(),
            [](const LEigenvalue& l, const LEigenvalue& r) { return l.value < r.value; });
  std::vector<LEigenvalue> dedup;
  for (const auto& p : pts) {
    if (!dedup.empty() && std::fabs(p.value - dedup.back().value) <=
                              kDedupTol * std::max(1.0, std::fabs(dedup.back().value))) {
      auto& b = dedup.back();
      b.interior = b.interior || p.interior;
      b.boundary = b.boundary || p.boundary;
      if (!b.interior_xi && p.interior_xi) b.interior_xi = p.interior_xi;
      if (!b.boundary_witness && p.boundary_witness) b.boundary_witness = p.boundary_witness;
    } else {
      dedup.push_back(p);
    }
  }

  // absorb pure-boundary points covered by an interval; mark covered points
  // of any other nature as boundary
  const double pad = std::max(tol, kDedupTol);
  s.points.clear();
  for (auto& p : dedup) {
    bool covered = false;
    for (const auto& iv : s.intervals) {
      if (p.value >= iv.lo - pad && p.value <= iv.hi + pad) {
        covered = true;
        break;
      }
    }
    if (covered) {
      if (!p.interior) continue;  // absorbed into the interval
      p.boundary = true;
    }
    s.points.push_back(p);
  }
}

Spectrum full_spectrum(const Mat3& A, double tol) {
  Spectrum s;
  s.points = interior_spectrum(A, tol);
  auto bd = boundary_spectrum(A, tol);
  s.points.insert(s.points.end(), bd.points.begin(), bd.points.end());
  s.intervals = std::move(bd.intervals);
  canonicalize(s, tol);
  return s;
}

namespace {

void cf_point(Spectrum& s, double value, bool interior, bool boundary) {
  LEigenvalue e;
  e.value = value;
  e.interior = interior;
  e.boundary = boundary;
  add_point(s.points, e);
}

Spectrum cf_diag(const DiagCA& f) {
  Spectrum s;
  cf_point(s, f.a, true, false);
  if (f.c <= f.a) cf_point(s, (f.a + f.c) / 2.0, false, true);
  return s;
}

Spectrum cf_zero_tilde(const ZeroTilde& f) {
  const double un = f.u.norm();
  const double vn = f.v.norm();
  if (un == 0.0 && vn == 0.0)
    throw FamilyDomainError("ZeroTilde requires u, v not both zero");
  const double vu = f.v.dot(f.u);
  const double a = f.a;
  Spectrum s;

  // standard L-eigenvalues: roots of lambda^2 - a*lambda - v^T u
  const double disc = a * a + 4.0 * vu;
  if (disc >= 0.0) {
    const double sq = std::sqrt(disc);
    for (double lam : {(a - sq) / 2.0, (a + sq) / 2.0}) {
      if (lam == 0.0) continue;  // covered by the zero case below
      // |lam| > ||u||: eigenvector scales into the cone interior;
      // |lam| = ||u||: the eigenvector itself sits on the cone boundary
      const bool in = std::fabs(lam) > un;
      const bool bd = std::fabs(std::fabs(lam) - un) <= 1e-12 * std::max(1.0, un);
      if (in || bd) cf_point(s, lam, in, bd);
    }
  }
  if (un == 0.0) {
    if (std::fabs(a) <= vn) cf_point(s, 0.0, std::fabs(a) < vn, true);
  }

  // nonstandard boundary L-eigenvalues
  if (un > 0.0) {
    if (vu + a * un - un * un > 0.0)
      cf_point(s, (a * un + un * un + vu) / (2.0 * un), false, true);
    if (un * un + a * un - vu > 0.0)
      cf_point(s, (a * un - un * un - vu) / (2.0 * un), false, true);
  } else {
    const double lo = (a - vn) / 2.0;
    const double hi = (a + vn) / 2.0;
    if (hi > 0.0) {
      // closure at 0 is supplied by the standard zero eigenvalue above
      s.intervals.push_back({std::max(lo, 0.0), hi});
    }
  }
  canonicalize(s, 1e-12);
  return s;
}

Spectrum cf_civa(const CIva& f) {
  const double vn = f.v.norm();
  if (vn == 0.0) throw FamilyDomainError("CIva requires v != 0");
  const double a = f.a;
  const double c = f.c;
  Spectrum s;
  cf_point(s, a, true, false);
  if (c < a - vn) {
    s.intervals.push_back({(c + a - vn) / 2.0, (c + a + vn) / 2.0});
  } else if (c == a - vn) {
    s.intervals.push_back({c, c + vn});
  } else if (c < a + vn) {
    cf_point(s, c, true, false);
    s.intervals.push_back({c, (c + a + vn) / 2.0});
  } else if (c == a + vn) {
    cf_point(s, c, false, true);
  }
  canonicalize(s, 1e-12);
  return s;
}

Spectrum cf_offdiag(const OffDiag& f) {
  if (f.c * f.d < 0.0) throw FamilyDomainError("OffDiag requires c*d >= 0");
  if (f.c == 0.0 && f.d == 0.0)
    throw FamilyDomainError("OffDiag requires c, d not both zero");
  Spectrum s;
  const double scd = std::sqrt(f.c * f.d);

  // boundary: for each eigenvalue mu = +-sqrt(cd) the unit eigenvector is
  // xi ~ (c, mu) (or (mu, d) when c = 0), with both overall signs allowed
  for (double mu : {scd, -scd}) {
    const Vec2 dir = f.c != 0.0 ? Vec2{f.c, mu} : Vec2{mu, f.d};
    const double n = dir.norm();
    for (double sign : {1.0, -1.0}) {
      const double dot = sign * (dir.x * f.v1 + dir.y * f.v2) / n;
      const double sv = (dot + f.a - mu) / 2.0;
      if (sv >= 0.0) cf_point(s, mu + sv, false, true);
    }
  }

  // interior
  cf_point(s, f.a, true, false);
  if (f.c * f.d > 0.0) {
    for (double lam : {scd, -scd}) {
      if (lam == f.a) continue;
      const double x3 = (f.v1 * f.c + f.v2 * lam) / (lam - f.a);
      if (std::fabs(x3) > std::hypot(f.c, lam)) cf_point(s, lam, true, false);
    }
  } else if (f.a != 0.0) {
    // one of c, d vanishes; the double standard eigenvalue 0 may be interior
    if (f.d == 0.0) {
      if (f.v1 != 0.0 && std::fabs(f.a) < std::fabs(f.v1)) cf_point(s, 0.0, true, false);
    } else {
      if (f.v2 != 0.0 && std::fabs(f.a) < std::fabs(f.v2)) cf_point(s, 0.0, true, false);
    }
  }
  canonicalize(s, 1e-12);
  return s;
}

}  // namespace

Spectrum closed_form_spectrum(const FamilyTag& f) {
  struct V {
    Spectrum operator()(const DiagCA& x) const { return cf_diag(x); }
    Spectrum operator()(const ZeroTilde& x) const { return cf_zero_tilde(x); }
    Spectrum operator()(const CIva& x) const { return cf_civa(x); }
    Spectrum operator()(const OffDiag& x) const { return cf_offdiag(x); }
    Spectrum operator()(const GeneralFamily&) const { throw UnsupportedFamily(); }
  };
  return std::visit(V{}, f);
}

}  // namespace lspec
