#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "lspec/oracle.hpp"
#include "lspec/spectrum.hpp"

using namespace lspec;

namespace {

constexpr double kTol = 1e-8;

Mat3 rand_mat3(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  Mat3 A;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) A.m[i][j] = d(rng);
  return A;
}

Mat2 rand_rotation(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ang(0.0, 6.283185307179586);
  const double t = ang(rng);
  Mat2 q{{{std::cos(t), -std::sin(t)}, {std::sin(t), std::cos(t)}}};
  if (rng() & 1) {  // allow reflections
    q.m[0][1] = -q.m[0][1];
    q.m[1][1] = -q.m[1][1];
  }
  return q;
}

std::vector<Interval> shifted(std::vector<Interval> set, double gamma) {
  for (auto& iv : set) {
    iv.lo += gamma;
    iv.hi += gamma;
  }
  return set;
}

bool has_point(const Spectrum& s, double v, bool interior, bool boundary,
               double tol = 1e-9) {
  for (const auto& p : s.points)
    if (std::fabs(p.value - v) <= tol)
      return p.interior == interior && p.boundary == boundary;
  return false;
}

}  // namespace

TEST_CASE("interior spectrum fixed cases") {
  auto id = interior_spectrum(Mat3::identity(), kTol);
  REQUIRE(id.size() == 1);
  CHECK(id[0].value == doctest::Approx(1.0).epsilon(1e-12));
  REQUIRE(id[0].interior_xi.has_value());
  CHECK(id[0].interior_xi->norm() < 1e-8);

  Mat3 D;
  D.m[2][2] = 2.0;
  auto d2 = interior_spectrum(D, kTol);
  REQUIRE(d2.size() == 1);  // 0 excluded: its eigenvectors have third coord 0
  CHECK(d2[0].value == doctest::Approx(2.0));

  Mat3 E31 = Mat3::unit(2, 0);
  auto e = interior_spectrum(E31, kTol);
  REQUIRE(e.size() == 1);
  CHECK(e[0].value == doctest::Approx(0.0));
}

TEST_CASE("system I fixed cases") {
  // resolvent quartic keeps only the non-eigenvalue root mu=0
  Mat3 A = Mat3::from_blocks({{{1.0, 0.0}, {0.0, 2.0}}}, {1.0, 0.0}, {0.0, 0.0}, 5.0);
  auto pts = solve_system_I(A, kTol);
  REQUIRE(pts.size() == 1);
  CHECK(pts[0].value == doctest::Approx(2.5));
  REQUIRE(pts[0].boundary_witness.has_value());
  CHECK(pts[0].boundary_witness->mu == doctest::Approx(0.0));
  CHECK(pts[0].boundary_witness->s == doctest::Approx(2.5));
  CHECK(boundary_residual(A, pts[0].value, pts[0].boundary_witness->xi,
                          pts[0].boundary_witness->s) < 1e-10);

  Mat3 B = Mat3::from_blocks({{{1.0, 2.0}, {3.0, 4.0}}}, {0.0, 0.0}, {1.0, 1.0}, 0.5);
  CHECK(solve_system_I(B, kTol).empty());  // u = 0

  CHECK(solve_system_I(Mat3::identity(), kTol).empty());
}

TEST_CASE("systems II-IV fixed cases") {
  // scalar-block, u=0, v=e1: interval [0, 1/2]
  Mat3 A = Mat3::from_blocks(Mat2{}, {0.0, 0.0}, {1.0, 0.0}, 0.0);
  auto r = solve_systems_II_III_IV(A, 0.0, kTol);
  CHECK(r.points.empty());
  REQUIRE(r.interval.has_value());
  CHECK(r.interval->lo == doctest::Approx(0.0));
  CHECK(r.interval->hi == doctest::Approx(0.5));

  // rank-1 shifted block at mu=-1: single point -1/2 with xi along (1,-1)
  Mat3 B = Mat3::from_blocks({{{0.0, 1.0}, {1.0, 0.0}}}, {0.0, 0.0}, {0.0, 0.0}, 0.0);
  auto rb = solve_systems_II_III_IV(B, -1.0, kTol);
  CHECK(!rb.interval.has_value());
  REQUIRE(rb.points.size() == 1);
  CHECK(rb.points[0].value == doctest::Approx(-0.5));
  const Vec2 xi = rb.points[0].boundary_witness->xi;
  CHECK(std::fabs(xi.x + xi.y) < 1e-9);

  // s-range empty: c=2 exceeds a+||v||=1
  Mat3 C = Mat3::from_blocks(Mat2::scalar(2.0), {0.0, 0.0}, {1.0, 0.0}, 0.0);
  auto rc = solve_systems_II_III_IV(C, 2.0, kTol);
  CHECK(rc.points.empty());
  CHECK(!rc.interval.has_value());

  CHECK_THROWS_AS(solve_systems_II_III_IV(C, 0.7, kTol), InvalidMu);
}

TEST_CASE("boundary spectrum fixed cases") {
  auto id = boundary_spectrum(Mat3::identity(), kTol);
  REQUIRE(id.points.size() == 1);
  CHECK(id.points[0].value == doctest::Approx(1.0));
  CHECK(id.intervals.empty());

  auto e31 = boundary_spectrum(Mat3::unit(2, 0), kTol);
  REQUIRE(e31.intervals.size() == 1);
  CHECK(e31.intervals[0].lo == doctest::Approx(0.0));
  CHECK(e31.intervals[0].hi == doctest::Approx(0.5));

  Mat3 off = Mat3::from_blocks({{{0.0, 1.0}, {1.0, 0.0}}}, {0.0, 0.0}, {0.0, 0.0}, 0.0);
  auto ob = boundary_spectrum(off, kTol);
  REQUIRE(ob.points.size() == 1);
  CHECK(ob.points[0].value == doctest::Approx(-0.5));

  Mat3 sym = Mat3::from_blocks(Mat2{}, {1.0, 0.0}, {1.0, 0.0}, 0.0);
  auto sb = boundary_spectrum(sym, kTol);
  REQUIRE(sb.points.size() == 2);
  CHECK(sb.points[0].value == doctest::Approx(-1.0));
  CHECK(sb.points[1].value == doctest::Approx(1.0));
}

TEST_CASE("infinite-spectrum detection") {
  auto iv = detect_infinite(Mat3::unit(2, 0), kTol);
  REQUIRE(iv.has_value());
  CHECK(iv->lo == 0.0);
  CHECK(iv->hi == 0.5);

  Mat3 D;
  D.m[0][0] = 1.0;
  D.m[1][1] = 2.0;
  D.m[2][2] = 3.0;
  CHECK(!detect_infinite(D, kTol).has_value());

  Mat3 C = Mat3::from_blocks(Mat2::scalar(2.0), {0.0, 0.0}, {1.0, 0.0}, 0.0);
  CHECK(!detect_infinite(C, kTol).has_value());  // c >= a + ||v||
}

TEST_CASE("full spectrum fixed cases") {
  Mat3 D;
  D.m[2][2] = 2.0;
  auto s = full_spectrum(D, kTol);
  CHECK(s.intervals.empty());
  CHECK(has_point(s, 1.0, false, true));
  CHECK(has_point(s, 2.0, true, false));

  auto e31 = full_spectrum(Mat3::unit(2, 0), kTol);
  REQUIRE(e31.intervals.size() == 1);
  CHECK(has_point(e31, 0.0, true, true));

  auto e13 = full_spectrum(Mat3::unit(0, 2), kTol);
  CHECK(e13.intervals.empty());
  CHECK(has_point(e13, -0.5, false, true));
}

TEST_CASE("closed forms for the four families") {
  auto dg = closed_form_spectrum(DiagCA{3.0, 1.0});
  REQUIRE(dg.points.size() == 1);
  CHECK(has_point(dg, 1.0, true, false));

  auto zt = closed_form_spectrum(ZeroTilde{{1.0, 0.0}, {1.0, 0.0}, 0.0});
  REQUIRE(zt.points.size() == 2);
  CHECK(has_point(zt, -1.0, false, true));
  CHECK(has_point(zt, 1.0, false, true));

  auto ci = closed_form_spectrum(CIva{0.0, {1.0, 0.0}, 0.0});
  REQUIRE(ci.intervals.size() == 1);
  CHECK(ci.intervals[0].lo == 0.0);
  CHECK(ci.intervals[0].hi == 0.5);
  CHECK(has_point(ci, 0.0, true, true));

  auto od = closed_form_spectrum(OffDiag{1.0, 1.0, 0.0, 0.0, 0.0});
  CHECK(has_point(od, -0.5, false, true));
  CHECK(has_point(od, 0.0, true, false));

  CHECK_THROWS_AS(closed_form_spectrum(GeneralFamily{}), UnsupportedFamily);
  CHECK_THROWS_AS(closed_form_spectrum(OffDiag{1.0, -1.0, 0.0, 0.0, 0.0}),
                  FamilyDomainError);
  CHECK_THROWS_AS(closed_form_spectrum(ZeroTilde{{0.0, 0.0}, {0.0, 0.0}, 1.0}),
                  FamilyDomainError);
  CHECK_THROWS_AS(closed_form_spectrum(CIva{1.0, {0.0, 0.0}, 1.0}),
                  FamilyDomainError);
}

TEST_CASE("assemble block layout") {
  const Mat3 A = assemble(OffDiag{1.5, 2.5, -1.0, 0.5, 3.0});
  CHECK(A.m[0][1] == 1.5);
  CHECK(A.m[1][0] == 2.5);
  CHECK(A.m[2][0] == -1.0);
  CHECK(A.m[2][1] == 0.5);
  CHECK(A.m[2][2] == 3.0);
  CHECK(A.m[0][0] == 0.0);
  CHECK_THROWS_AS(assemble(GeneralFamily{}), UnsupportedFamily);
}

TEST_CASE("interior values are standard eigenvalues") {
  std::mt19937_64 rng(31);
  for (int k = 0; k < 200; ++k) {
    const Mat3 A = rand_mat3(rng);
    for (const auto& e : interior_spectrum(A, kTol)) {
      Mat3 B = A;
      B.m[0][0] -= e.value;
      B.m[1][1] -= e.value;
      B.m[2][2] -= e.value;
      const double det =
          B.m[0][0] * (B.m[1][1] * B.m[2][2] - B.m[1][2] * B.m[2][1]) -
          B.m[0][1] * (B.m[1][0] * B.m[2][2] - B.m[1][2] * B.m[2][0]) +
          B.m[0][2] * (B.m[1][0] * B.m[2][1] - B.m[1][1] * B.m[2][0]);
      CHECK(std::fabs(det) <= 1e-8 * std::pow(1.0 + A.max_abs(), 3));
      REQUIRE(e.interior_xi.has_value());
      CHECK(e.interior_xi->norm() < 1.0);
      const std::array<double, 3> x{e.interior_xi->x, e.interior_xi->y, 1.0};
      const auto Ax = A.mul(x);
      const double r = std::hypot(Ax[0] - e.value * x[0],
                                  std::hypot(Ax[1] - e.value * x[1],
                                             Ax[2] - e.value));
      CHECK(r <= 1e-6 * (1.0 + A.max_abs()));
    }
  }
}

TEST_CASE("shift equivariance") {
  std::mt19937_64 rng(37);
  for (int k = 0; k < 200; ++k) {
    const Mat3 A = rand_mat3(rng);
    const auto base = spectrum_point_set(full_spectrum(A, kTol));
    for (double gamma : {-1.0, 0.5, 3.0}) {
      Mat3 B = A;
      B.m[0][0] += gamma;
      B.m[1][1] += gamma;
      B.m[2][2] += gamma;
      const auto moved = spectrum_point_set(full_spectrum(B, kTol));
      CHECK(hausdorff_distance(shifted(base, gamma), moved) <= 1e-8);
    }
  }
}

TEST_CASE("orthogonal conjugation invariance") {
  std::mt19937_64 rng(41);
  for (int k = 0; k < 200; ++k) {
    const Mat3 A = rand_mat3(rng);
    const Mat2 q = rand_rotation(rng);
    Mat3 Q;
    Q.m[0][0] = q.m[0][0];
    Q.m[0][1] = q.m[0][1];
    Q.m[1][0] = q.m[1][0];
    Q.m[1][1] = q.m[1][1];
    Q.m[2][2] = 1.0;
    const Mat3 B = Q.mul(A).mul(Q.transpose());
    const auto sa = spectrum_point_set(full_spectrum(A, kTol));
    const auto sb = spectrum_point_set(full_spectrum(B, kTol));
    CHECK(hausdorff_distance(sa, sb) <= 1e-8);
  }
}

TEST_CASE("infinite detection fires iff an interval is present") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  int fired = 0;
  for (int k = 0; k < 200; ++k) {
    Mat3 A;
    if (k % 2 == 0) {
      A = assemble(CIva{d(rng), {d(rng), d(rng)}, d(rng)});
    } else {
      A = rand_mat3(rng);
    }
    const auto iv = detect_infinite(A, kTol);
    const auto s = full_spectrum(A, kTol);
    CHECK(iv.has_value() == !s.intervals.empty());
    if (iv) ++fired;
  }
  CHECK(fired > 20);  // the structured half fires often
}

TEST_CASE("closed-form agreement per family") {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  for (int k = 0; k < 50; ++k) {
    std::vector<FamilyTag> fams;
    fams.push_back(DiagCA{d(rng), d(rng)});
    fams.push_back(ZeroTilde{{d(rng), d(rng)}, {d(rng), d(rng)}, d(rng)});
    fams.push_back(ZeroTilde{{0.0, 0.0}, {d(rng), d(rng)}, d(rng)});
    fams.push_back(CIva{d(rng), {d(rng), d(rng)}, d(rng)});
    const double c = d(rng);
    fams.push_back(OffDiag{c, std::fabs(d(rng)) * (c >= 0 ? 1.0 : -1.0),
                           d(rng), d(rng), d(rng)});
    for (const auto& f : fams) {
      Spectrum cf;
      try {
        cf = closed_form_spectrum(f);
      } catch (const FamilyDomainError&) {
        continue;
      }
      const Spectrum full = full_spectrum(assemble(f), kTol);
      CHECK(hausdorff_distance(spectrum_point_set(cf), spectrum_point_set(full)) <= 1e-8);
      CHECK(hausdorff_distance(interior_point_set(cf), interior_point_set(full)) <= 1e-8);
      CHECK(hausdorff_distance(boundary_point_set(cf), boundary_point_set(full)) <= 1e-8);
    }
  }
}

TEST_CASE("large diagonal entry becomes interior") {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  for (int k = 0; k < 100; ++k) {
    const Mat2 At{{{d(rng), d(rng)}, {d(rng), d(rng)}}};
    const Vec2 u{d(rng), d(rng)};
    const double a = 10.0 * (1.0 + 2.0 * At.max_abs() + u.norm());
    const Mat3 A = Mat3::from_blocks(At, u, {0.0, 0.0}, a);
    bool found = false;
    for (const auto& e : interior_spectrum(A, kTol))
      if (std::fabs(e.value - a) <= 1e-6 * a) found = true;
    CHECK(found);
  }
}

TEST_CASE("emitted boundary eigenvalues re-verify the defining equation") {
  std::mt19937_64 rng(59);
  for (int k = 0; k < 300; ++k) {
    const Mat3 A = rand_mat3(rng);
    const auto bd = boundary_spectrum(A, kTol);
    for (const auto& p : bd.points) {
      REQUIRE(p.boundary_witness.has_value());
      const auto& w = *p.boundary_witness;
      CHECK(w.s >= -1e-10);
      CHECK(std::fabs(w.xi.norm() - 1.0) <= 1e-8);
      CHECK(std::fabs(w.mu + w.s - p.value) <= 1e-9 * (1.0 + std::fabs(p.value)));
      CHECK(boundary_residual(A, p.value, w.xi, w.s) <= 1e-8 * (1.0 + A.max_abs()));
    }
  }
}

TEST_CASE("canonical spectrum ordering and deduplication") {
  std::mt19937_64 rng(61);
  for (int k = 0; k < 100; ++k) {
    const Mat3 A = rand_mat3(rng);
    const Spectrum s = full_spectrum(A, kTol);
    for (std::size_t i = 1; i < s.points.size(); ++i) {
      CHECK(s.points[i].value > s.points[i - 1].value);
      CHECK(s.points[i].value - s.points[i - 1].value >
            1e-8 * std::max(1.0, std::fabs(s.points[i].value)) / 2.0);
    }
    for (std::size_t i = 1; i < s.intervals.size(); ++i)
      CHECK(s.intervals[i].lo > s.intervals[i - 1].hi);
    for (const auto& p : s.points) CHECK((p.interior || p.boundary));
    for (const auto& iv : s.intervals) CHECK(iv.hi - iv.lo > 1e-10);
  }
}
